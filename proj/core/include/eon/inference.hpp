#pragma once

#include <string>
#include <utility>
#include <vector>

#include "eon/model.hpp"
#include "eon/types.hpp"

namespace eon {

struct Prediction {
  Vector label_dist;      // probability vector over the K_{N+1} classes
  double reliability = 0.0;
  BlockVector gamma;      // full layer stack at the query point
  int iterations = 0;
  bool converged = false; // fixed-point sweep converged within max iters
};

// Free fixed-point solve of the layer problem at x (no pinned last layer),
// warm-started from uniform blocks, using the model's stored temperatures,
// sweep budget and tolerance. Non-convergence is reported via `converged`,
// never thrown.
Prediction predict(const EonModel& model, const Vector& x);

// exp(-(1/eps0_s) * sum_k gamma1(k) * sum_d w_d (x_d - S(d,k))^2) where w is
// the gamma0 feature marginal and eps0_s the s-factor temperature at the
// training sample count. Always in (0, 1]; 1 exactly at codebook columns
// under a one-hot gamma1.
double reliability_score(const EonModel& model, const Vector& x);

struct BatchPrediction {
  std::vector<Prediction> rows;
  // (row index, message) for rows whose solve threw; such rows carry a
  // uniform label_dist, NaN reliability and converged = false.
  std::vector<std::pair<Index, std::string>> errors;
};

// Independent per-column predictions, parallelized over columns.
// Deterministic for any thread count.
BatchPrediction predict_batch(const EonModel& model, const Matrix& X,
                              int threads = 1);

}  // namespace eon
