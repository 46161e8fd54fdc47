#include "eon/inference.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>
#include <thread>

#include "eon/errors.hpp"
#include "eon/simplex.hpp"
#include "eon/training.hpp"

namespace eon {

namespace {

// gamma0 column used for out-of-sample points: the feature marginal at the
// training per-point scale 1/T, so a training point scores exactly as it
// did during fitting.
Vector prediction_gamma0_column(const EonModel& model) {
  return model.gamma0.feature_marginal(model.train_T, model.K(0)) /
         static_cast<double>(model.train_T);
}

BlockVector uniform_stack(const Hyperparameters& hyper) {
  BlockVector g;
  const int N = hyper.N();
  g.blocks.reserve(static_cast<std::size_t>(N + 1));
  for (int n = 1; n <= N + 1; ++n) {
    const Index K = hyper.layer_dims[static_cast<std::size_t>(n)];
    g.blocks.push_back(Vector::Constant(K, 1.0 / static_cast<double>(K)));
  }
  return g;
}

double reliability_from_gamma1(const EonModel& model, const Vector& x,
                               const Vector& gamma1) {
  const Index K0 = model.K(0);
  const Vector w = model.gamma0.feature_marginal(model.train_T, K0);
  double dist = 0.0;
  for (Index k = 0; k < model.S.cols(); ++k) {
    double acc = 0.0;
    for (Index d = 0; d < K0; ++d) {
      const double r = x[d] - model.S(d, k);
      acc += w[d] * r * r;
    }
    dist += gamma1[k] * acc;
  }
  const double eps0_s = split_eps0(model.hyper.epsilon[0], K0, model.train_T).s;
  const double v = eps0_s > 0.0 ? std::exp(-dist / eps0_s) : (dist == 0.0 ? 1.0 : 0.0);
  return std::max(v, std::numeric_limits<double>::min());
}

Prediction predict_with(const EonModel& model, const std::vector<Matrix>& A,
                        const Vector& x) {
  if (x.size() != model.K(0))
    throw invalid_argument("predict: x has " + std::to_string(x.size()) +
                           " entries, model expects " + std::to_string(model.K(0)));
  if (!x.allFinite()) throw invalid_argument("predict: x has non-finite entries");

  const Vector b = assemble_b(x, model.S, prediction_gamma0_column(model));
  GammaSolveResult r = solve_gamma_point(b, A, model.hyper.epsilon, nullptr,
                                         uniform_stack(model.hyper),
                                         model.hyper.max_gamma_iters,
                                         model.hyper.tolerance);
  Prediction p;
  p.label_dist = r.gamma.blocks.back();
  p.reliability = reliability_from_gamma1(model, x, r.gamma.blocks.front());
  p.gamma = std::move(r.gamma);
  p.iterations = r.iterations;
  p.converged = r.converged;
  return p;
}

}  // namespace

Prediction predict(const EonModel& model, const Vector& x) {
  const std::vector<Matrix> A =
      build_a_matrices(model.theta, model.hyper.delta, model.hyper.theta_floor);
  return predict_with(model, A, x);
}

double reliability_score(const EonModel& model, const Vector& x) {
  return predict(model, x).reliability;
}

BatchPrediction predict_batch(const EonModel& model, const Matrix& X, int threads) {
  if (X.rows() != model.K(0))
    throw invalid_argument("predict_batch: feature dim mismatch");
  const std::vector<Matrix> A =
      build_a_matrices(model.theta, model.hyper.delta, model.hyper.theta_floor);
  const Index T = X.cols();
  BatchPrediction out;
  out.rows.resize(static_cast<std::size_t>(T));
  std::mutex error_mutex;

  const int usable =
      static_cast<int>(std::clamp<Index>(threads, 1, std::max<Index>(T, 1)));
  auto run_range = [&](Index lo, Index hi) {
    for (Index t = lo; t < hi; ++t) {
      try {
        out.rows[static_cast<std::size_t>(t)] = predict_with(model, A, X.col(t));
      } catch (const std::exception& e) {
        Prediction failed;
        const Index M = model.K(model.N() + 1);
        failed.label_dist = Vector::Constant(M, 1.0 / static_cast<double>(M));
        failed.reliability = std::numeric_limits<double>::quiet_NaN();
        failed.converged = false;
        out.rows[static_cast<std::size_t>(t)] = std::move(failed);
        std::lock_guard<std::mutex> lock(error_mutex);
        out.errors.emplace_back(t, e.what());
      }
    }
  };

  if (usable <= 1) {
    run_range(0, T);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(usable));
    for (int c = 0; c < usable; ++c) {
      const Index lo = T * c / usable;
      const Index hi = T * (c + 1) / usable;
      pool.emplace_back([&run_range, lo, hi]() { run_range(lo, hi); });
    }
    for (auto& th : pool) th.join();
  }
  // Canonical error ordering regardless of thread interleaving.
  std::sort(out.errors.begin(), out.errors.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

}  // namespace eon
