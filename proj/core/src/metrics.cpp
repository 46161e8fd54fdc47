#include "eon/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "eon/errors.hpp"

namespace eon {

Index argmax_index(const Vector& v) {
  if (v.size() == 0) throw invalid_argument("argmax_index: empty vector");
  Index best = 0;
  for (Index i = 1; i < v.size(); ++i)
    if (v[i] > v[best]) best = i;
  return best;
}

double accuracy(const Matrix& predicted, const Matrix& truth) {
  if (predicted.cols() != truth.cols() || predicted.rows() != truth.rows())
    throw invalid_argument("accuracy: shape mismatch between predictions and truth");
  if (predicted.cols() == 0) throw invalid_argument("accuracy: empty input");
  long hits = 0;
  for (Index t = 0; t < predicted.cols(); ++t)
    if (argmax_index(predicted.col(t)) == argmax_index(truth.col(t))) ++hits;
  return static_cast<double>(hits) / static_cast<double>(predicted.cols());
}

double auc(const Vector& scores, const std::vector<int>& labels) {
  const Index n = scores.size();
  if (n != static_cast<Index>(labels.size()))
    throw invalid_argument("auc: scores and labels length mismatch");
  if (n == 0) throw invalid_argument("auc: empty input");
  long n_pos = 0;
  for (Index i = 0; i < n; ++i) {
    if (!std::isfinite(scores[i])) throw invalid_argument("auc: non-finite score");
    if (labels[static_cast<std::size_t>(i)] != 0 && labels[static_cast<std::size_t>(i)] != 1)
      throw invalid_argument("auc: labels must be 0 or 1");
    n_pos += labels[static_cast<std::size_t>(i)];
  }
  const long n_neg = n - n_pos;
  if (n_pos == 0 || n_neg == 0)
    throw undefined_metric("auc: undefined with a single class present");

  std::vector<Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Index{0});
  std::sort(order.begin(), order.end(),
            [&](Index a, Index b) { return scores[a] < scores[b]; });

  // Average ranks over tie groups (1-based ranks).
  double rank_sum_pos = 0.0;
  Index i = 0;
  while (i < n) {
    Index j = i;
    while (j + 1 < n && scores[order[static_cast<std::size_t>(j + 1)]] ==
                            scores[order[static_cast<std::size_t>(i)]])
      ++j;
    const double avg_rank = 0.5 * static_cast<double>(i + 1 + j + 1);
    for (Index k = i; k <= j; ++k)
      if (labels[static_cast<std::size_t>(order[static_cast<std::size_t>(k)])] == 1)
        rank_sum_pos += avg_rank;
    i = j + 1;
  }
  const double u = rank_sum_pos - 0.5 * static_cast<double>(n_pos) *
                                      static_cast<double>(n_pos + 1);
  return u / (static_cast<double>(n_pos) * static_cast<double>(n_neg));
}

}  // namespace eon
