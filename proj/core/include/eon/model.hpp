#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "eon/types.hpp"

namespace eon {

// Structure of the input-layer coefficient matrix gamma0 (K0 x T).
enum class Gamma0Mode : std::uint32_t {
  kFixedUniform = 0,   // all entries 1/(T*K0); no learned payload
  kFeatureWeights = 1, // gamma0 = (1/T) * w * 1^T; payload: w (K0 simplex)
  kRank1 = 2,          // gamma0 = w * s^T; payload: w (K0 simplex), s (T simplex)
  kFullMatrix = 3,     // payload: full K0 x T matrix on the K0*T simplex
};

const char* to_string(Gamma0Mode mode);
Gamma0Mode gamma0_mode_from_string(const std::string& name);

struct Hyperparameters {
  // K0..K_{N+1}: input dim, layer widths, label dim. Size N+2, N >= 1.
  std::vector<int> layer_dims;
  // eps0..eps_{N+1}: entropy temperatures per layer. Size N+2.
  std::vector<double> epsilon;
  // delta1..deltaN: transition-coupling weights. Size N.
  std::vector<double> delta;
  Gamma0Mode gamma0_mode = Gamma0Mode::kFeatureWeights;
  double tolerance = 1e-8;     // relative loss-change stopping threshold
  int max_outer_iters = 500;
  int max_gamma_iters = 100;   // layer sweeps per point per outer iteration
  double theta_floor = 1e-12;  // clamp on transition entries before log
  std::uint64_t seed = 0;
  int restarts = 1;            // restart r reseeds with seed + r

  int N() const { return static_cast<int>(layer_dims.size()) - 2; }
  // Throws invalid_argument naming the first offending field.
  void validate() const;
};

// Learned gamma0 payload; which members are meaningful depends on mode.
struct Gamma0 {
  Gamma0Mode mode = Gamma0Mode::kFixedUniform;
  Vector w;     // K0 (feature-weights, rank-1)
  Vector s;     // T (rank-1)
  Matrix full;  // K0 x T (full-matrix)

  // Column of gamma0 for training point t (length K0).
  Vector column(Index t, Index T, Index K0) const;
  // Feature marginal: length-K0 vector summing to 1 (rowsum of gamma0).
  Vector feature_marginal(Index T, Index K0) const;
};

// Temperature split between the w- and s-factors of gamma0:
// eps0_w = (log K0 / log(K0*T)) * eps0, eps0_s = (log T / log(K0*T)) * eps0.
// The two always sum to eps0. Degenerate sizes (K0*T == 1) split evenly.
struct Eps0Split {
  double w;
  double s;
};
Eps0Split split_eps0(double eps0, Index K0, Index T);

struct EonModel {
  Hyperparameters hyper;
  Matrix S;                   // K0 x K1 codebook
  std::vector<Matrix> theta;  // theta[n-1]: K_n x K_{n+1}, column-stochastic
  Gamma0 gamma0;
  std::int64_t train_T = 0;   // training sample count; fixes the eps0 split

  int N() const { return hyper.N(); }
  Index K(int n) const { return hyper.layer_dims[static_cast<std::size_t>(n)]; }
};

// One reported invariant violation from validate().
struct Violation {
  std::string field;   // e.g. "theta[1] column 3"
  double residual;     // distance from feasibility, NaN if non-finite
  std::string detail;
};

// Checks shapes, simplex constraints, finiteness. Empty result means valid.
std::vector<Violation> validate(const EonModel& model, double tol = 1e-9);

// Coupling matrices of the Gamma problem: A[n-1] = -delta_n * log(theta^(n))^T,
// shape K_{n+1} x K_n, entries clamped with max(theta, theta_floor) before log.
std::vector<Matrix> build_a_matrices(const std::vector<Matrix>& theta,
                                     const std::vector<double>& delta,
                                     double theta_floor);

// Effective parameter count: (informative dims) * K1 codebook entries
// + sum_n (K_{n+1}-1) * K_n free transition entries + K0 feature weights.
// A dim is informative iff its feature-marginal weight exceeds
// weight_threshold; fixed-uniform mode counts every dim informative and
// omits the K0 term (no learned weights).
long descriptor_length(const EonModel& model, double weight_threshold = 1e-3);

}  // namespace eon
