#include "eon/simplex.hpp"

#include <cmath>
#include <random>

#include "eon/errors.hpp"

namespace eon::simplex {

bool is_prob_vector(const Vector& v, double tol) {
  if (v.size() == 0) return false;
  for (Index i = 0; i < v.size(); ++i) {
    if (!(v[i] >= 0.0)) return false;  // catches negatives and NaN
  }
  return std::abs(v.sum() - 1.0) <= tol;
}

Vector softmax(const Vector& z) {
  if (z.size() == 0) throw invalid_argument("softmax: empty input");
  for (Index i = 0; i < z.size(); ++i) {
    if (!std::isfinite(z[i]))
      throw numerical_error("softmax: non-finite input at index " +
                            std::to_string(i));
  }
  const double m = z.maxCoeff();
  // Scalar std::exp rather than Eigen's vectorized exp: the vectorized path
  // clamps arguments below roughly -709.8 and returns a subnormal, which would
  // keep saturated entries away from exact zero.
  Vector e(z.size());
  for (Index i = 0; i < z.size(); ++i) e[i] = std::exp(z[i] - m);
  const double s = e.sum();
  // s >= 1 because the max entry contributes exp(0) = 1.
  return e / s;
}

BlockVector block_softmax(const BlockVector& z) {
  BlockVector out;
  out.blocks.reserve(z.blocks.size());
  for (const auto& b : z.blocks) out.blocks.push_back(softmax(b));
  return out;
}

Vector hard_argmin(const Vector& b) {
  if (b.size() == 0) throw invalid_argument("hard_argmin: empty input");
  Index best = 0;
  for (Index i = 1; i < b.size(); ++i) {
    if (b[i] < b[best]) best = i;
  }
  Vector out = Vector::Zero(b.size());
  out[best] = 1.0;
  return out;
}

double normalized_entropy(const Vector& p, int base) {
  if (base < 2) throw invalid_argument("normalized_entropy: base must be >= 2");
  if (!is_prob_vector(p, 1e-9))
    throw invalid_argument("normalized_entropy: input is not a probability vector");
  double h = 0.0;
  for (Index i = 0; i < p.size(); ++i) {
    if (p[i] > 0.0) h -= p[i] * std::log(p[i]);
  }
  return h / std::log(static_cast<double>(base));
}

Vector solve_entropic_lp(const Vector& b, double eps) {
  if (!(eps > 0.0)) throw invalid_argument("solve_entropic_lp: eps must be > 0");
  return softmax(-b / eps);
}

double softmax_lipschitz_bound(int K) {
  if (K < 1) throw invalid_argument("softmax_lipschitz_bound: K must be >= 1");
  return (K - 1.0) / K;
}

double monte_carlo_lipschitz(int K, long samples, std::uint64_t seed) {
  if (K < 2) throw invalid_argument("monte_carlo_lipschitz: K must be >= 2");
  if (samples < 1) throw invalid_argument("monte_carlo_lipschitz: samples must be >= 1");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vector x(K), y(K);
  double best = 0.0;
  for (long s = 0; s < samples; ++s) {
    for (Index i = 0; i < K; ++i) x[i] = gauss(rng);
    for (Index i = 0; i < K; ++i) y[i] = gauss(rng);
    const double dx = (x - y).norm();
    if (dx < 1e-12) continue;
    const double dp = (softmax(x) - softmax(y)).norm();
    best = std::max(best, dp / dx);
  }
  return best;
}

double spectral_norm(const Matrix& A) {
  if (A.size() == 0) return 0.0;
  const Matrix G = A.transpose() * A;
  const Index n = G.rows();
  // Deterministic, mildly asymmetric start so no eigenvector is missed by
  // symmetry of an all-ones start.
  Vector v(n);
  for (Index i = 0; i < n; ++i) v[i] = 1.0 + 1e-3 * static_cast<double>(i);
  v.normalize();
  double lambda = 0.0;
  for (int it = 0; it < 10000; ++it) {
    Vector w = G * v;
    const double nw = w.norm();
    if (nw == 0.0) return 0.0;
    const double lambda_new = v.dot(w);
    v = w / nw;
    if (it > 0 && std::abs(lambda_new - lambda) <= 1e-10 * std::max(1.0, std::abs(lambda_new))) {
      lambda = lambda_new;
      break;
    }
    lambda = lambda_new;
  }
  return std::sqrt(std::max(0.0, lambda));
}

}  // namespace eon::simplex
