#pragma once

#include <optional>
#include <vector>

#include "eon/model.hpp"
#include "eon/types.hpp"

namespace eon {

struct AdversarialResult {
  Vector x_adv;                  // synthesized input, K0
  BlockVector gamma_stack;       // layer stack at x_adv (last block uniform)
  Vector label_dist;             // predict()'s label distribution at x_adv
  double final_label_entropy = 0.0;  // normalized entropy of label_dist, in [0,1]
  double objective = 0.0;            // final surrogate objective value
  std::vector<double> objective_trace;  // one value per outer iteration
  int iterations = 0;
  bool converged = false;
};

// x_d = sum_k gamma1[k] * S(d,k): the exact minimizer of the weighted
// squared-distance term over x for a fixed assignment gamma1.
Vector solve_x_given_gamma(const Vector& gamma1, const Matrix& S);

// Alternates (i) a layer sweep with the last layer pinned to the uniform
// (maximum-entropy) label distribution and (ii) the closed-form input update
// x = S * gamma1, until the relative objective change drops below tol.
// The objective is the input term plus transition couplings plus the entropy
// terms for layers 0..N (the pinned last layer's entropy is constant and
// excluded). gamma0 stays at the trained feature marginal unless
// resolve_gamma0 is set, in which case the weight vector is re-solved each
// iteration like any other block. init_x defaults to the codebook column mean.
AdversarialResult find_adversarial(const EonModel& model,
                                   std::optional<Vector> init_x = std::nullopt,
                                   double tol = 1e-8, int max_iters = 500,
                                   bool resolve_gamma0 = false);

}  // namespace eon
