#pragma once

#include <vector>

#include "eon/model.hpp"
#include "eon/types.hpp"

namespace eon {

// Layer coefficients for a whole dataset: layers[n-1] is the K_n x T matrix
// of layer n (n = 1..N+1); every column lies on the K_n simplex.
struct GammaStack {
  std::vector<Matrix> layers;

  Index T() const { return layers.empty() ? 0 : layers.front().cols(); }
  BlockVector point(Index t) const;
  void set_point(Index t, const BlockVector& g);
};

// Input-layer costs for one point: b[k] = sum_d gamma0_col[d] * (x[d] - S(d,k))^2.
Vector assemble_b(const Vector& x, const Matrix& S, const Vector& gamma0_col);

// All columns at once: B_all(k,t) = sum_d gamma0(d,t) * (X(d,t) - S(d,k))^2.
Matrix assemble_b_all(const Matrix& X, const Matrix& S, const Gamma0& gamma0);

// Distance matrix of the gamma0 subproblem:
// B(d,t) = sum_k gamma1(k,t) * (X(d,t) - S(d,k))^2.
Matrix gamma0_distance_matrix(const Matrix& X, const Matrix& S, const Matrix& gamma1);

struct GammaSolveResult {
  BlockVector gamma;
  int iterations = 0;
  bool converged = false;
};

// Solves the per-point layer problem
//   min  <b, g1> + sum_n <g_{n+1}, A[n-1] g_n> + sum_n eps_n <g_n, log g_n>
// over the product of simplices by last-to-first layer sweeps, each layer
// update an exact entropic-LP solve (softmax) at temperature eps_n; layers
// with eps below simplex::kHardEpsilon take the argmin vertex instead.
// `epsilon` is the full per-layer vector eps0..eps_{N+1}; eps0 is unused here.
// If pinned_last is non-null the last block is held at *pinned_last.
// Convergence: concatenated change across one full sweep <= tol.
GammaSolveResult solve_gamma_point(const Vector& b, const std::vector<Matrix>& A,
                                   const std::vector<double>& epsilon,
                                   const Vector* pinned_last,
                                   const BlockVector& init, int max_iters,
                                   double tol);

// Weighted codebook update: S(d,k) = sum_t gamma0(d,t) gamma1(k,t) X(d,t)
// / sum_t gamma0(d,t) gamma1(k,t); entries whose denominator falls below
// 1e-300 keep their previous value.
Matrix solve_s(const Matrix& X, const Matrix& gamma1, const Gamma0& gamma0,
               const Matrix& S_prev);

// Transition updates: theta^(n) proportional to gamma_n gamma_{n+1}^T per
// column; zero-mass columns fall back to uniform; entries are floor-clamped
// and columns renormalized.
std::vector<Matrix> solve_theta(const GammaStack& gamma, double theta_floor);

// One exact block sweep of the gamma0 subproblem at the split temperatures
// (see split_eps0). B is the gamma0 distance matrix. Rank-1 updates w first,
// then s. Fixed-uniform is a no-op.
Gamma0 solve_gamma0(Gamma0Mode mode, const Matrix& B, double eps0,
                    const Gamma0& prev);

// Full training objective (natural logs):
//   sum_t sum_k gamma1(k,t) b_t(k)
// - sum_n delta_n sum_t <gamma_{n+1}(t), log theta^(n)^T gamma_n(t)> summed
//   entrywise (theta floor-clamped before the log)
// + sum_{n=1}^{N+1} eps_n sum_t <gamma_n(t), log gamma_n(t)>
// + gamma0 regularizer, mode-consistent with solve_gamma0's temperatures:
//   fixed-uniform: eps0 * log(1/(T*K0)); feature-weights: eps0_w <w, log w>;
//   rank-1: eps0_w <w, log w> + eps0_s <s, log s>; full: eps0 <g0, log g0>.
double loss(const GammaStack& gamma, const Gamma0& gamma0, const Matrix& S,
            const std::vector<Matrix>& theta, const Matrix& X,
            const Hyperparameters& hyper);

struct UniquenessReport {
  bool holds = false;
  double min_epsilon = 0.0;  // min over eps1..eps_{N+1}
  double threshold = 0.0;    // max_n (||A_n|| + ||A_{n+1}||), ||A_{N+1}|| := 0
  std::vector<double> a_norms;
};

// Sufficient condition for a unique Gamma fixed point:
// min(eps1..eps_{N+1}) > threshold. `epsilon` is the full eps0..eps_{N+1}.
UniquenessReport check_uniqueness(const std::vector<double>& epsilon,
                                  const std::vector<Matrix>& A);

struct ContractionReport {
  bool holds = false;
  double l_bsf = 0.0;    // max_n (K_n - 1)/K_n over layers 1..N+1
  double l_g = 0.0;      // max_n ||A_n|| / eps_n
  double l_h = 0.0;      // max_n ||A_n|| / eps_{n+1}
  double l_tilde = 0.0;  // l_bsf * l_h / (1 - l_bsf * l_g); inf if not contracting
};

// Contraction certificate for the layer sweep: holds iff
// l_g + l_h < 1 / l_bsf; then the sweep error obeys the geometric bound
// ||gamma^it - gamma*|| <= l_tilde^it / (1 - l_tilde) * ||gamma^1 - gamma^0||.
ContractionReport check_contraction(const std::vector<double>& epsilon,
                                    const std::vector<Matrix>& A,
                                    const std::vector<int>& layer_dims);

struct FitIterRecord {
  double loss = 0.0;
  double gamma_seconds = 0.0;
  double s_seconds = 0.0;
  double theta_seconds = 0.0;
  double gamma0_seconds = 0.0;
  long gamma_sweeps_total = 0;  // summed over points
  int gamma_sweeps_max = 0;
  double contraction_l_tilde = 0.0;
  bool contraction_holds = false;
};

struct FitTrace {
  double initial_loss = 0.0;
  std::vector<FitIterRecord> iterations;
  bool converged = false;
  int restart_index = 0;

  double final_loss() const {
    return iterations.empty() ? initial_loss : iterations.back().loss;
  }
  // True iff the loss sequence (initial included) never increases by more
  // than `slack`.
  bool monotone(double slack = 1e-10) const;
};

enum class InitStrategy {
  kSubsample,      // codebook columns drawn from distinct data points
  kRandomUniform,  // codebook uniform in the per-dim data range
};

struct FitOptions {
  InitStrategy init = InitStrategy::kSubsample;
  int threads = 1;  // parallelism of the per-point gamma step
};

struct FitResult {
  EonModel model;
  FitTrace trace;
};

// Coordinate descent with exact block solves, cycling gamma / S / theta /
// gamma0 until the relative loss change drops below hyper.tolerance or
// hyper.max_outer_iters is reached. hyper.restarts independent restarts
// (seed + r) are run; the lowest final loss wins. The last layer is pinned
// to the labels pi throughout. Deterministic for fixed seed, any thread count.
FitResult fit(const Dataset& data, const Hyperparameters& hyper,
              const FitOptions& options = {});

}  // namespace eon
