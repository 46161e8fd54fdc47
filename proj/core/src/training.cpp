#include "eon/training.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <mutex>
#include <random>
#include <thread>

#include "eon/errors.hpp"
#include "eon/simplex.hpp"

namespace eon {

namespace {

double plogp_sum(const Matrix& M) {
  double s = 0.0;
  for (Index j = 0; j < M.cols(); ++j)
    for (Index i = 0; i < M.rows(); ++i) {
      const double p = M(i, j);
      if (p > 0.0) s += p * std::log(p);
    }
  return s;
}

double plogp_sum(const Vector& v) {
  double s = 0.0;
  for (Index i = 0; i < v.size(); ++i)
    if (v[i] > 0.0) s += v[i] * std::log(v[i]);
  return s;
}

// Factorized view gamma0(d,t) = w_eff[d] * s_eff[t]; valid for every mode
// except full-matrix.
void factorized_gamma0(const Gamma0& g0, Index K0, Index T, Vector& w_eff,
                       Vector& s_eff) {
  switch (g0.mode) {
    case Gamma0Mode::kFixedUniform:
      w_eff = Vector::Constant(K0, 1.0 / static_cast<double>(K0));
      s_eff = Vector::Constant(T, 1.0 / static_cast<double>(T));
      return;
    case Gamma0Mode::kFeatureWeights:
      w_eff = g0.w;
      s_eff = Vector::Constant(T, 1.0 / static_cast<double>(T));
      return;
    case Gamma0Mode::kRank1:
      w_eff = g0.w;
      s_eff = g0.s;
      return;
    case Gamma0Mode::kFullMatrix:
      throw invalid_argument("factorized_gamma0: full-matrix mode is not factorized");
  }
  throw invalid_argument("factorized_gamma0: unknown mode");
}

void parallel_for(Index n, int threads, const std::function<void(Index, Index, int)>& chunk_fn) {
  const int usable = static_cast<int>(
      std::clamp<Index>(threads, 1, std::max<Index>(n, 1)));
  if (usable <= 1) {
    chunk_fn(0, n, 0);
    return;
  }
  std::vector<std::thread> pool;
  std::exception_ptr first_error;
  std::mutex error_mutex;
  pool.reserve(static_cast<std::size_t>(usable));
  for (int c = 0; c < usable; ++c) {
    const Index lo = n * c / usable;
    const Index hi = n * (c + 1) / usable;
    pool.emplace_back([&, lo, hi, c]() {
      try {
        chunk_fn(lo, hi, c);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace

BlockVector GammaStack::point(Index t) const {
  BlockVector g;
  g.blocks.reserve(layers.size());
  for (const auto& L : layers) g.blocks.emplace_back(L.col(t));
  return g;
}

void GammaStack::set_point(Index t, const BlockVector& g) {
  for (std::size_t i = 0; i < layers.size(); ++i) layers[i].col(t) = g.blocks[i];
}

Vector assemble_b(const Vector& x, const Matrix& S, const Vector& gamma0_col) {
  if (x.size() != S.rows() || gamma0_col.size() != S.rows())
    throw invalid_argument("assemble_b: dimension mismatch between x, S, gamma0 column");
  Vector b(S.cols());
  for (Index k = 0; k < S.cols(); ++k) {
    double acc = 0.0;
    for (Index d = 0; d < S.rows(); ++d) {
      const double r = x[d] - S(d, k);
      acc += gamma0_col[d] * r * r;
    }
    b[k] = acc;
  }
  return b;
}

Matrix assemble_b_all(const Matrix& X, const Matrix& S, const Gamma0& gamma0) {
  const Index K0 = X.rows();
  const Index T = X.cols();
  const Index K1 = S.cols();
  if (S.rows() != K0) throw invalid_argument("assemble_b_all: S row count != feature dim");
  Matrix B(K1, T);
  if (gamma0.mode == Gamma0Mode::kFullMatrix) {
    if (gamma0.full.rows() != K0 || gamma0.full.cols() != T)
      throw invalid_argument("assemble_b_all: gamma0 payload shape mismatch");
    const Matrix GX = gamma0.full.cwiseProduct(X);
    const Eigen::RowVectorXd xx = GX.cwiseProduct(X).colwise().sum();
    const Matrix cross = S.transpose() * GX;
    const Matrix sq = S.cwiseProduct(S).transpose() * gamma0.full;
    B = (-2.0 * cross + sq).rowwise() + xx;
  } else {
    Vector w_eff, s_eff;
    factorized_gamma0(gamma0, K0, T, w_eff, s_eff);
    const Eigen::RowVectorXd xx =
        w_eff.transpose() * X.cwiseProduct(X);                 // 1 x T
    const Matrix cross = S.transpose() * (w_eff.asDiagonal() * X);  // K1 x T
    const Vector sq = S.cwiseProduct(S).transpose() * w_eff;        // K1
    B = ((-2.0 * cross).colwise() + sq).rowwise() + xx;
    B = B * s_eff.asDiagonal();
  }
  return B;
}

Matrix gamma0_distance_matrix(const Matrix& X, const Matrix& S,
                              const Matrix& gamma1) {
  if (S.rows() != X.rows() || gamma1.rows() != S.cols() || gamma1.cols() != X.cols())
    throw invalid_argument("gamma0_distance_matrix: dimension mismatch");
  const Matrix mean = S * gamma1;                      // K0 x T
  const Matrix sqmean = S.cwiseProduct(S) * gamma1;    // K0 x T
  return X.cwiseProduct(X) - 2.0 * X.cwiseProduct(mean) + sqmean;
}

GammaSolveResult solve_gamma_point(const Vector& b, const std::vector<Matrix>& A,
                                   const std::vector<double>& epsilon,
                                   const Vector* pinned_last,
                                   const BlockVector& init, int max_iters,
                                   double tol) {
  const int N = static_cast<int>(A.size());
  if (N < 1) throw invalid_argument("solve_gamma_point: need at least one coupling matrix");
  if (static_cast<int>(epsilon.size()) != N + 2)
    throw invalid_argument("solve_gamma_point: epsilon must have N+2 entries");
  if (static_cast<int>(init.blocks.size()) != N + 1)
    throw invalid_argument("solve_gamma_point: init must have N+1 blocks");
  if (b.size() != A[0].cols())
    throw invalid_argument("solve_gamma_point: b size disagrees with A[0]");
  if (max_iters < 1) throw invalid_argument("solve_gamma_point: max_iters must be >= 1");

  GammaSolveResult res;
  res.gamma = init;
  if (pinned_last) {
    if (pinned_last->size() != init.blocks.back().size())
      throw invalid_argument("solve_gamma_point: pinned block size mismatch");
    res.gamma.blocks.back() = *pinned_last;
  }

  Vector q;
  for (int it = 1; it <= max_iters; ++it) {
    const BlockVector prev = res.gamma;
    // Sweep last layer to first: each update below the top uses the not yet
    // updated block beneath it and the freshly updated block above it.
    for (int i = N; i >= 0; --i) {
      if (i == N) {
        if (pinned_last) continue;
        q.noalias() = A[static_cast<std::size_t>(N - 1)] * res.gamma.blocks[static_cast<std::size_t>(N - 1)];
      } else {
        if (i == 0)
          q = b;
        else
          q.noalias() = A[static_cast<std::size_t>(i - 1)] * res.gamma.blocks[static_cast<std::size_t>(i - 1)];
        q.noalias() += A[static_cast<std::size_t>(i)].transpose() * res.gamma.blocks[static_cast<std::size_t>(i + 1)];
      }
      if (!q.allFinite())
        throw numerical_error("gamma sweep: non-finite coefficients at layer " +
                              std::to_string(i + 1));
      const double eps = epsilon[static_cast<std::size_t>(i + 1)];
      res.gamma.blocks[static_cast<std::size_t>(i)] =
          eps < simplex::kHardEpsilon ? simplex::hard_argmin(q)
                                      : simplex::solve_entropic_lp(q, eps);
    }
    res.iterations = it;
    if (res.gamma.distance(prev) <= tol) {
      res.converged = true;
      break;
    }
  }
  return res;
}

Matrix solve_s(const Matrix& X, const Matrix& gamma1, const Gamma0& gamma0,
               const Matrix& S_prev) {
  const Index K0 = X.rows();
  const Index T = X.cols();
  const Index K1 = gamma1.rows();
  if (gamma1.cols() != T) throw invalid_argument("solve_s: gamma1 column count != T");
  if (S_prev.rows() != K0 || S_prev.cols() != K1)
    throw invalid_argument("solve_s: S_prev shape mismatch");

  Matrix S(K0, K1);
  if (gamma0.mode == Gamma0Mode::kFullMatrix) {
    const Matrix num = gamma0.full.cwiseProduct(X) * gamma1.transpose();
    const Matrix den = gamma0.full * gamma1.transpose();
    for (Index k = 0; k < K1; ++k)
      for (Index d = 0; d < K0; ++d)
        S(d, k) = den(d, k) < 1e-300 ? S_prev(d, k) : num(d, k) / den(d, k);
  } else {
    Vector w_eff, s_eff;
    factorized_gamma0(gamma0, K0, T, w_eff, s_eff);
    const Matrix R = gamma1 * s_eff.asDiagonal();  // R(k,t) = gamma1(k,t) s_t
    const Matrix num0 = X * R.transpose();         // K0 x K1
    const Vector den0 = R.rowwise().sum();         // K1
    for (Index k = 0; k < K1; ++k)
      for (Index d = 0; d < K0; ++d) {
        // The w_d factor cancels in the ratio but decides degeneracy.
        const double den = w_eff[d] * den0[k];
        S(d, k) = den < 1e-300 ? S_prev(d, k) : num0(d, k) / den0[k];
      }
  }
  return S;
}

std::vector<Matrix> solve_theta(const GammaStack& gamma, double theta_floor) {
  if (gamma.layers.size() < 2)
    throw invalid_argument("solve_theta: need at least two layers");
  if (!(theta_floor > 0.0) || theta_floor >= 1.0)
    throw invalid_argument("solve_theta: theta_floor must be in (0, 1)");
  std::vector<Matrix> theta;
  theta.reserve(gamma.layers.size() - 1);
  for (std::size_t n = 0; n + 1 < gamma.layers.size(); ++n) {
    Matrix counts = gamma.layers[n] * gamma.layers[n + 1].transpose();
    const Index rows = counts.rows();
    for (Index j = 0; j < counts.cols(); ++j) {
      const double mass = counts.col(j).sum();
      if (mass < 1e-300)
        counts.col(j).setConstant(1.0 / static_cast<double>(rows));
      else
        counts.col(j) /= mass;
      for (Index i = 0; i < rows; ++i)
        counts(i, j) = std::max(counts(i, j), theta_floor);
      counts.col(j) /= counts.col(j).sum();
    }
    theta.push_back(std::move(counts));
  }
  return theta;
}

Gamma0 solve_gamma0(Gamma0Mode mode, const Matrix& B, double eps0,
                    const Gamma0& prev) {
  if (!(eps0 > 0.0)) throw invalid_argument("solve_gamma0: eps0 must be > 0");
  const Index K0 = B.rows();
  const Index T = B.cols();
  Gamma0 out;
  out.mode = mode;
  const Eps0Split split = split_eps0(eps0, K0, T);
  switch (mode) {
    case Gamma0Mode::kFixedUniform:
      return prev;
    case Gamma0Mode::kFeatureWeights: {
      const Vector bw = B * Vector::Constant(T, 1.0 / static_cast<double>(T));
      out.w = K0 == 1 ? Vector::Ones(1) : simplex::solve_entropic_lp(bw, split.w);
      return out;
    }
    case Gamma0Mode::kRank1: {
      if (prev.s.size() != T) throw invalid_argument("solve_gamma0: rank-1 needs previous s of length T");
      out.w = K0 == 1 ? Vector::Ones(1)
                      : simplex::solve_entropic_lp(B * prev.s, split.w);
      out.s = T == 1 ? Vector::Ones(1)
                     : simplex::solve_entropic_lp(B.transpose() * out.w, split.s);
      return out;
    }
    case Gamma0Mode::kFullMatrix: {
      const Matrix Q = -B / eps0;
      const double m = Q.maxCoeff();
      out.full = (Q.array() - m).exp();
      out.full /= out.full.sum();
      return out;
    }
  }
  throw invalid_argument("solve_gamma0: unknown mode");
}

double loss(const GammaStack& gamma, const Gamma0& gamma0, const Matrix& S,
            const std::vector<Matrix>& theta, const Matrix& X,
            const Hyperparameters& hyper) {
  hyper.validate();
  const int N = hyper.N();
  const Index K0 = X.rows();
  const Index T = X.cols();
  if (static_cast<int>(gamma.layers.size()) != N + 1)
    throw invalid_argument("loss: gamma stack has wrong layer count");
  if (static_cast<int>(theta.size()) != N)
    throw invalid_argument("loss: theta has wrong transition count");

  double total = 0.0;

  // Input term, accumulated directly so it matches a naive evaluation.
  const Matrix& g1 = gamma.layers[0];
  for (Index t = 0; t < T; ++t) {
    const Vector g0col = gamma0.column(t, T, K0);
    for (Index k = 0; k < S.cols(); ++k) {
      double acc = 0.0;
      for (Index d = 0; d < K0; ++d) {
        const double r = X(d, t) - S(d, k);
        acc += g0col[d] * r * r;
      }
      total += g1(k, t) * acc;
    }
  }

  // Transition coupling: -delta_n sum_t <gamma_{n+1}, log theta^T gamma_n>.
  for (int n = 1; n <= N; ++n) {
    const Matrix& th = theta[static_cast<std::size_t>(n - 1)];
    Matrix logth(th.rows(), th.cols());
    for (Index j = 0; j < th.cols(); ++j)
      for (Index i = 0; i < th.rows(); ++i)
        logth(i, j) = std::log(std::max(th(i, j), hyper.theta_floor));
    const Matrix coupled = gamma.layers[static_cast<std::size_t>(n - 1)] *
                           gamma.layers[static_cast<std::size_t>(n)].transpose();
    total -= hyper.delta[static_cast<std::size_t>(n - 1)] *
             coupled.cwiseProduct(logth).sum();
  }

  // Layer entropies.
  for (int n = 1; n <= N + 1; ++n)
    total += hyper.epsilon[static_cast<std::size_t>(n)] *
             plogp_sum(gamma.layers[static_cast<std::size_t>(n - 1)]);

  // gamma0 regularizer at the same temperatures its block solver uses.
  const double eps0 = hyper.epsilon[0];
  switch (gamma0.mode) {
    case Gamma0Mode::kFixedUniform:
      total += eps0 * std::log(1.0 / (static_cast<double>(T) * static_cast<double>(K0)));
      break;
    case Gamma0Mode::kFeatureWeights:
      total += split_eps0(eps0, K0, T).w * plogp_sum(gamma0.w);
      break;
    case Gamma0Mode::kRank1: {
      const Eps0Split split = split_eps0(eps0, K0, T);
      total += split.w * plogp_sum(gamma0.w) + split.s * plogp_sum(gamma0.s);
      break;
    }
    case Gamma0Mode::kFullMatrix:
      total += eps0 * plogp_sum(gamma0.full);
      break;
  }
  return total;
}

UniquenessReport check_uniqueness(const std::vector<double>& epsilon,
                                  const std::vector<Matrix>& A) {
  const int N = static_cast<int>(A.size());
  if (N < 1) throw invalid_argument("check_uniqueness: need at least one coupling matrix");
  if (static_cast<int>(epsilon.size()) != N + 2)
    throw invalid_argument("check_uniqueness: epsilon must have N+2 entries");
  UniquenessReport rep;
  rep.a_norms.resize(static_cast<std::size_t>(N));
  for (int n = 0; n < N; ++n)
    rep.a_norms[static_cast<std::size_t>(n)] = simplex::spectral_norm(A[static_cast<std::size_t>(n)]);
  rep.threshold = 0.0;
  for (int n = 1; n <= N; ++n) {
    const double next = n == N ? 0.0 : rep.a_norms[static_cast<std::size_t>(n)];
    rep.threshold = std::max(rep.threshold, rep.a_norms[static_cast<std::size_t>(n - 1)] + next);
  }
  rep.min_epsilon = *std::min_element(epsilon.begin() + 1, epsilon.end());
  rep.holds = rep.min_epsilon > rep.threshold;
  return rep;
}

ContractionReport check_contraction(const std::vector<double>& epsilon,
                                    const std::vector<Matrix>& A,
                                    const std::vector<int>& layer_dims) {
  const int N = static_cast<int>(A.size());
  if (N < 1) throw invalid_argument("check_contraction: need at least one coupling matrix");
  if (static_cast<int>(epsilon.size()) != N + 2 ||
      static_cast<int>(layer_dims.size()) != N + 2)
    throw invalid_argument("check_contraction: epsilon and layer_dims must have N+2 entries");
  ContractionReport rep;
  for (int n = 1; n <= N + 1; ++n) {
    const double K = layer_dims[static_cast<std::size_t>(n)];
    rep.l_bsf = std::max(rep.l_bsf, (K - 1.0) / K);
  }
  for (int n = 1; n <= N; ++n) {
    const double norm = simplex::spectral_norm(A[static_cast<std::size_t>(n - 1)]);
    rep.l_g = std::max(rep.l_g, norm / epsilon[static_cast<std::size_t>(n)]);
    rep.l_h = std::max(rep.l_h, norm / epsilon[static_cast<std::size_t>(n + 1)]);
  }
  rep.holds = rep.l_g + rep.l_h < 1.0 / rep.l_bsf;
  const double denom = 1.0 - rep.l_bsf * rep.l_g;
  rep.l_tilde = denom > 0.0 ? rep.l_bsf * rep.l_h / denom
                            : std::numeric_limits<double>::infinity();
  return rep;
}

bool FitTrace::monotone(double slack) const {
  double prev = initial_loss;
  for (const auto& it : iterations) {
    if (it.loss > prev + slack) return false;
    prev = it.loss;
  }
  return true;
}

namespace {

struct InitState {
  Matrix S;
  std::vector<Matrix> theta;
  Gamma0 gamma0;
};

InitState initialize(const Dataset& data, const Hyperparameters& hyper,
                     InitStrategy strategy, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const Index T = data.size();
  const Index K0 = data.feature_dim();
  const Index K1 = hyper.layer_dims[1];
  InitState st;

  if (strategy == InitStrategy::kSubsample) {
    std::vector<Index> idx(static_cast<std::size_t>(T));
    for (Index t = 0; t < T; ++t) idx[static_cast<std::size_t>(t)] = t;
    st.S.resize(K0, K1);
    if (T >= K1) {
      // Partial Fisher-Yates: first K1 entries become a distinct sample.
      for (Index k = 0; k < K1; ++k) {
        std::uniform_int_distribution<Index> pick(k, T - 1);
        std::swap(idx[static_cast<std::size_t>(k)], idx[static_cast<std::size_t>(pick(rng))]);
        st.S.col(k) = data.X.col(idx[static_cast<std::size_t>(k)]);
      }
    } else {
      std::uniform_int_distribution<Index> pick(0, T - 1);
      for (Index k = 0; k < K1; ++k) st.S.col(k) = data.X.col(pick(rng));
    }
  } else {
    const Vector lo = data.X.rowwise().minCoeff();
    const Vector hi = data.X.rowwise().maxCoeff();
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    st.S.resize(K0, K1);
    for (Index k = 0; k < K1; ++k)
      for (Index d = 0; d < K0; ++d)
        st.S(d, k) = lo[d] + (hi[d] - lo[d]) * unit(rng);
  }

  // Random column-stochastic transitions: exponential draws normalized per
  // column, floored like every later theta iterate.
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const int N = hyper.N();
  st.theta.reserve(static_cast<std::size_t>(N));
  for (int n = 1; n <= N; ++n) {
    Matrix th(hyper.layer_dims[static_cast<std::size_t>(n)],
              hyper.layer_dims[static_cast<std::size_t>(n + 1)]);
    for (Index j = 0; j < th.cols(); ++j) {
      for (Index i = 0; i < th.rows(); ++i)
        th(i, j) = -std::log(1.0 - unit(rng));
      th.col(j) /= th.col(j).sum();
      for (Index i = 0; i < th.rows(); ++i)
        th(i, j) = std::max(th(i, j), hyper.theta_floor);
      th.col(j) /= th.col(j).sum();
    }
    st.theta.push_back(std::move(th));
  }

  st.gamma0.mode = hyper.gamma0_mode;
  switch (hyper.gamma0_mode) {
    case Gamma0Mode::kFixedUniform:
      break;
    case Gamma0Mode::kFeatureWeights:
      st.gamma0.w = Vector::Constant(K0, 1.0 / static_cast<double>(K0));
      break;
    case Gamma0Mode::kRank1:
      st.gamma0.w = Vector::Constant(K0, 1.0 / static_cast<double>(K0));
      st.gamma0.s = Vector::Constant(T, 1.0 / static_cast<double>(T));
      break;
    case Gamma0Mode::kFullMatrix:
      st.gamma0.full = Matrix::Constant(K0, T, 1.0 / (static_cast<double>(K0) * static_cast<double>(T)));
      break;
  }
  return st;
}

FitResult fit_single(const Dataset& data, const Hyperparameters& hyper,
                     const FitOptions& options, std::uint64_t seed) {
  using clock = std::chrono::steady_clock;
  const auto seconds_since = [](clock::time_point t0) {
    return std::chrono::duration<double>(clock::now() - t0).count();
  };

  const Index T = data.size();
  const int N = hyper.N();
  InitState st = initialize(data, hyper, options.init, seed);

  GammaStack stack;
  stack.layers.reserve(static_cast<std::size_t>(N + 1));
  for (int n = 1; n <= N; ++n) {
    const Index K = hyper.layer_dims[static_cast<std::size_t>(n)];
    stack.layers.push_back(Matrix::Constant(K, T, 1.0 / static_cast<double>(K)));
  }
  stack.layers.push_back(data.pi);  // pinned throughout training

  std::vector<Matrix> A = build_a_matrices(st.theta, hyper.delta, hyper.theta_floor);

  FitResult out;
  out.trace.initial_loss = loss(stack, st.gamma0, st.S, st.theta, data.X, hyper);

  double loss_prev = out.trace.initial_loss;
  for (int it = 1; it <= hyper.max_outer_iters; ++it) {
    FitIterRecord rec;

    auto t0 = clock::now();
    const Matrix B_all = assemble_b_all(data.X, st.S, st.gamma0);
    const int threads = std::max(1, options.threads);
    std::vector<long> sweeps(static_cast<std::size_t>(threads), 0);
    std::vector<int> sweeps_max(static_cast<std::size_t>(threads), 0);
    parallel_for(T, threads, [&](Index lo, Index hi, int chunk) {
      for (Index t = lo; t < hi; ++t) {
        const Vector pi_t = data.pi.col(t);
        GammaSolveResult r = solve_gamma_point(
            B_all.col(t), A, hyper.epsilon, &pi_t, stack.point(t),
            hyper.max_gamma_iters, hyper.tolerance);
        stack.set_point(t, r.gamma);
        sweeps[static_cast<std::size_t>(chunk)] += r.iterations;
        sweeps_max[static_cast<std::size_t>(chunk)] =
            std::max(sweeps_max[static_cast<std::size_t>(chunk)], r.iterations);
      }
    });
    for (long s : sweeps) rec.gamma_sweeps_total += s;
    for (int m : sweeps_max) rec.gamma_sweeps_max = std::max(rec.gamma_sweeps_max, m);
    rec.gamma_seconds = seconds_since(t0);

    t0 = clock::now();
    st.S = solve_s(data.X, stack.layers[0], st.gamma0, st.S);
    rec.s_seconds = seconds_since(t0);

    t0 = clock::now();
    st.theta = solve_theta(stack, hyper.theta_floor);
    A = build_a_matrices(st.theta, hyper.delta, hyper.theta_floor);
    rec.theta_seconds = seconds_since(t0);

    t0 = clock::now();
    if (hyper.gamma0_mode != Gamma0Mode::kFixedUniform) {
      const Matrix B0 = gamma0_distance_matrix(data.X, st.S, stack.layers[0]);
      st.gamma0 = solve_gamma0(hyper.gamma0_mode, B0, hyper.epsilon[0], st.gamma0);
    }
    rec.gamma0_seconds = seconds_since(t0);

    rec.loss = loss(stack, st.gamma0, st.S, st.theta, data.X, hyper);
    const ContractionReport con = check_contraction(hyper.epsilon, A, hyper.layer_dims);
    rec.contraction_l_tilde = con.l_tilde;
    rec.contraction_holds = con.holds;
    out.trace.iterations.push_back(rec);

    if (std::abs(loss_prev - rec.loss) <=
        hyper.tolerance * std::max(1.0, std::abs(rec.loss))) {
      out.trace.converged = true;
      break;
    }
    loss_prev = rec.loss;
  }

  out.model.hyper = hyper;
  out.model.S = std::move(st.S);
  out.model.theta = std::move(st.theta);
  out.model.gamma0 = std::move(st.gamma0);
  out.model.train_T = T;
  return out;
}

}  // namespace

FitResult fit(const Dataset& data, const Hyperparameters& hyper,
              const FitOptions& options) {
  hyper.validate();
  const Index T = data.size();
  if (T < 1) throw invalid_argument("fit: empty dataset");
  if (data.feature_dim() != hyper.layer_dims.front())
    throw invalid_argument("fit: feature dim " + std::to_string(data.feature_dim()) +
                           " != K0 " + std::to_string(hyper.layer_dims.front()));
  if (data.label_dim() != hyper.layer_dims.back())
    throw invalid_argument("fit: label dim " + std::to_string(data.label_dim()) +
                           " != last layer width " + std::to_string(hyper.layer_dims.back()));
  if (data.pi.cols() != T)
    throw invalid_argument("fit: X and pi disagree on sample count");
  for (Index t = 0; t < T; ++t) {
    if (!simplex::is_prob_vector(data.pi.col(t), 1e-6))
      throw invalid_argument("fit: pi column " + std::to_string(t) +
                             " is not a probability vector");
    if (!data.X.col(t).allFinite())
      throw invalid_argument("fit: X column " + std::to_string(t) + " has non-finite entries");
  }

  FitResult best;
  for (int r = 0; r < hyper.restarts; ++r) {
    FitResult run = fit_single(data, hyper, options, hyper.seed + static_cast<std::uint64_t>(r));
    run.trace.restart_index = r;
    if (r == 0 || run.trace.final_loss() < best.trace.final_loss()) best = std::move(run);
  }
  return best;
}

}  // namespace eon
