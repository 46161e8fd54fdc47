#include "eon/model.hpp"

#include <cmath>

#include "eon/errors.hpp"

namespace eon {

const char* to_string(Gamma0Mode mode) {
  switch (mode) {
    case Gamma0Mode::kFixedUniform: return "fixed-uniform";
    case Gamma0Mode::kFeatureWeights: return "feature-weights";
    case Gamma0Mode::kRank1: return "rank-1";
    case Gamma0Mode::kFullMatrix: return "full-matrix";
  }
  throw invalid_argument("to_string: unknown gamma0 mode");
}

Gamma0Mode gamma0_mode_from_string(const std::string& name) {
  if (name == "fixed-uniform") return Gamma0Mode::kFixedUniform;
  if (name == "feature-weights") return Gamma0Mode::kFeatureWeights;
  if (name == "rank-1") return Gamma0Mode::kRank1;
  if (name == "full-matrix") return Gamma0Mode::kFullMatrix;
  throw invalid_argument("unknown gamma0 mode '" + name + "'");
}

void Hyperparameters::validate() const {
  if (layer_dims.size() < 3)
    throw invalid_argument("layer_dims: need at least K0, K1, K2 (N >= 1)");
  for (std::size_t i = 0; i < layer_dims.size(); ++i) {
    if (layer_dims[i] < 1)
      throw invalid_argument("layer_dims[" + std::to_string(i) + "]: must be >= 1");
  }
  if (epsilon.size() != layer_dims.size())
    throw invalid_argument("epsilon: expected " + std::to_string(layer_dims.size()) +
                           " entries (one per layer), got " + std::to_string(epsilon.size()));
  for (std::size_t i = 0; i < epsilon.size(); ++i) {
    if (!(epsilon[i] > 0.0) || !std::isfinite(epsilon[i]))
      throw invalid_argument("epsilon[" + std::to_string(i) + "]: must be finite and > 0");
  }
  if (delta.size() != layer_dims.size() - 2)
    throw invalid_argument("delta: expected " + std::to_string(layer_dims.size() - 2) +
                           " entries, got " + std::to_string(delta.size()));
  for (std::size_t i = 0; i < delta.size(); ++i) {
    if (!(delta[i] > 0.0) || !std::isfinite(delta[i]))
      throw invalid_argument("delta[" + std::to_string(i + 1) + "]: must be finite and > 0");
  }
  if (!(tolerance >= 0.0)) throw invalid_argument("tolerance: must be >= 0");
  if (max_outer_iters < 1) throw invalid_argument("max_outer_iters: must be >= 1");
  if (max_gamma_iters < 1) throw invalid_argument("max_gamma_iters: must be >= 1");
  if (!(theta_floor > 0.0) || theta_floor >= 1.0)
    throw invalid_argument("theta_floor: must be in (0, 1)");
  if (restarts < 1) throw invalid_argument("restarts: must be >= 1");
}

Eps0Split split_eps0(double eps0, Index K0, Index T) {
  if (!(eps0 > 0.0)) throw invalid_argument("split_eps0: eps0 must be > 0");
  if (K0 < 1 || T < 1) throw invalid_argument("split_eps0: K0 and T must be >= 1");
  const double log_k0 = std::log(static_cast<double>(K0));
  const double log_t = std::log(static_cast<double>(T));
  const double log_kt = log_k0 + log_t;
  if (log_kt == 0.0) return {eps0 / 2.0, eps0 / 2.0};  // K0 == T == 1
  return {eps0 * log_k0 / log_kt, eps0 * log_t / log_kt};
}

Vector Gamma0::column(Index t, Index T, Index K0) const {
  switch (mode) {
    case Gamma0Mode::kFixedUniform:
      return Vector::Constant(K0, 1.0 / (static_cast<double>(T) * static_cast<double>(K0)));
    case Gamma0Mode::kFeatureWeights:
      return w / static_cast<double>(T);
    case Gamma0Mode::kRank1:
      return w * s[t];
    case Gamma0Mode::kFullMatrix:
      return full.col(t);
  }
  throw invalid_argument("Gamma0::column: unknown mode");
}

Vector Gamma0::feature_marginal(Index T, Index K0) const {
  switch (mode) {
    case Gamma0Mode::kFixedUniform:
      return Vector::Constant(K0, 1.0 / static_cast<double>(K0));
    case Gamma0Mode::kFeatureWeights:
    case Gamma0Mode::kRank1:
      return w;
    case Gamma0Mode::kFullMatrix:
      return full.rowwise().sum();
  }
  throw invalid_argument("Gamma0::feature_marginal: unknown mode");
}

namespace {

void check_finite(const Matrix& M, const std::string& name,
                  std::vector<Violation>& out) {
  for (Index j = 0; j < M.cols(); ++j) {
    for (Index i = 0; i < M.rows(); ++i) {
      if (!std::isfinite(M(i, j))) {
        out.push_back({name + " entry (" + std::to_string(i) + "," +
                           std::to_string(j) + ")",
                       std::numeric_limits<double>::quiet_NaN(),
                       "non-finite value"});
        return;  // one report per matrix is enough to localize
      }
    }
  }
}

void check_simplex_vector(const Vector& v, const std::string& name, double tol,
                          std::vector<Violation>& out) {
  for (Index i = 0; i < v.size(); ++i) {
    if (!std::isfinite(v[i])) {
      out.push_back({name, std::numeric_limits<double>::quiet_NaN(), "non-finite entry"});
      return;
    }
    if (v[i] < -tol) {
      out.push_back({name + " entry " + std::to_string(i), -v[i], "negative entry"});
      return;
    }
  }
  const double r = std::abs(v.sum() - 1.0);
  if (r > tol) out.push_back({name, r, "does not sum to 1"});
}

}  // namespace

std::vector<Violation> validate(const EonModel& model, double tol) {
  std::vector<Violation> out;
  try {
    model.hyper.validate();
  } catch (const invalid_argument& e) {
    out.push_back({"hyper", std::numeric_limits<double>::quiet_NaN(), e.what()});
    return out;
  }
  const int N = model.N();
  const Index K0 = model.K(0);
  const Index K1 = model.K(1);
  const Index T = model.train_T;

  if (model.S.rows() != K0 || model.S.cols() != K1)
    out.push_back({"S", std::numeric_limits<double>::quiet_NaN(),
                   "expected " + std::to_string(K0) + "x" + std::to_string(K1)});
  else
    check_finite(model.S, "S", out);

  if (static_cast<int>(model.theta.size()) != N) {
    out.push_back({"theta", std::numeric_limits<double>::quiet_NaN(),
                   "expected " + std::to_string(N) + " transition matrices"});
  } else {
    for (int n = 1; n <= N; ++n) {
      const Matrix& th = model.theta[static_cast<std::size_t>(n - 1)];
      const std::string name = "theta[" + std::to_string(n) + "]";
      if (th.rows() != model.K(n) || th.cols() != model.K(n + 1)) {
        out.push_back({name, std::numeric_limits<double>::quiet_NaN(), "wrong shape"});
        continue;
      }
      check_finite(th, name, out);
      for (Index j = 0; j < th.cols(); ++j)
        check_simplex_vector(th.col(j), name + " column " + std::to_string(j), tol, out);
    }
  }

  if (model.train_T < 1)
    out.push_back({"train_T", std::numeric_limits<double>::quiet_NaN(), "must be >= 1"});

  const Gamma0& g0 = model.gamma0;
  if (g0.mode != model.hyper.gamma0_mode)
    out.push_back({"gamma0.mode", std::numeric_limits<double>::quiet_NaN(),
                   "payload mode disagrees with hyperparameters"});
  switch (g0.mode) {
    case Gamma0Mode::kFixedUniform:
      break;
    case Gamma0Mode::kFeatureWeights:
      if (g0.w.size() != K0)
        out.push_back({"gamma0.w", std::numeric_limits<double>::quiet_NaN(), "wrong size"});
      else
        check_simplex_vector(g0.w, "gamma0.w", tol, out);
      break;
    case Gamma0Mode::kRank1:
      if (g0.w.size() != K0)
        out.push_back({"gamma0.w", std::numeric_limits<double>::quiet_NaN(), "wrong size"});
      else
        check_simplex_vector(g0.w, "gamma0.w", tol, out);
      if (g0.s.size() != T)
        out.push_back({"gamma0.s", std::numeric_limits<double>::quiet_NaN(), "wrong size"});
      else
        check_simplex_vector(g0.s, "gamma0.s", tol, out);
      break;
    case Gamma0Mode::kFullMatrix: {
      if (g0.full.rows() != K0 || g0.full.cols() != T) {
        out.push_back({"gamma0.full", std::numeric_limits<double>::quiet_NaN(), "wrong shape"});
        break;
      }
      check_finite(g0.full, "gamma0.full", out);
      double mn = 0.0;
      double total = 0.0;
      for (Index j = 0; j < g0.full.cols(); ++j)
        for (Index i = 0; i < g0.full.rows(); ++i) {
          mn = std::min(mn, g0.full(i, j));
          total += g0.full(i, j);
        }
      if (mn < -tol)
        out.push_back({"gamma0.full", -mn, "negative entry"});
      if (std::abs(total - 1.0) > tol)
        out.push_back({"gamma0.full", std::abs(total - 1.0), "does not sum to 1"});
      break;
    }
  }
  return out;
}

std::vector<Matrix> build_a_matrices(const std::vector<Matrix>& theta,
                                     const std::vector<double>& delta,
                                     double theta_floor) {
  if (theta.size() != delta.size())
    throw invalid_argument("build_a_matrices: theta/delta size mismatch");
  if (!(theta_floor > 0.0))
    throw invalid_argument("build_a_matrices: theta_floor must be > 0");
  std::vector<Matrix> A;
  A.reserve(theta.size());
  for (std::size_t n = 0; n < theta.size(); ++n) {
    const Matrix& th = theta[n];
    Matrix a(th.cols(), th.rows());
    for (Index i = 0; i < th.rows(); ++i)
      for (Index j = 0; j < th.cols(); ++j)
        a(j, i) = -delta[n] * std::log(std::max(th(i, j), theta_floor));
    A.push_back(std::move(a));
  }
  return A;
}

long descriptor_length(const EonModel& model, double weight_threshold) {
  const int N = model.N();
  const Index K0 = model.K(0);
  const Index K1 = model.K(1);

  long informative = 0;
  bool count_weights = model.gamma0.mode != Gamma0Mode::kFixedUniform;
  if (count_weights) {
    const Vector w = model.gamma0.feature_marginal(model.train_T, K0);
    for (Index d = 0; d < K0; ++d)
      if (w[d] > weight_threshold) ++informative;
  } else {
    informative = K0;
  }

  long transitions = 0;
  for (int n = 1; n <= N; ++n)
    transitions += (model.K(n + 1) - 1) * model.K(n);

  return informative * K1 + transitions + (count_weights ? K0 : 0);
}

}  // namespace eon
