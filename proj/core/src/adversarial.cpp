#include "eon/adversarial.hpp"

#include <cmath>

#include "eon/errors.hpp"
#include "eon/inference.hpp"
#include "eon/simplex.hpp"
#include "eon/training.hpp"

namespace eon {

Vector solve_x_given_gamma(const Vector& gamma1, const Matrix& S) {
  if (gamma1.size() != S.cols())
    throw invalid_argument("solve_x_given_gamma: gamma1 size != codebook width");
  if (!simplex::is_prob_vector(gamma1, 1e-9))
    throw invalid_argument("solve_x_given_gamma: gamma1 is not a probability vector");
  return S * gamma1;
}

namespace {

// Surrogate objective of the search: input term at the per-point gamma0
// column, transition couplings against the pinned uniform top, and entropy
// terms for layers 1..N plus the weight-vector term for layer 0.
double adversarial_objective(const EonModel& model, const std::vector<Matrix>& A,
                             const Vector& x, const BlockVector& g,
                             const Vector& w, double eps0_w) {
  const int N = model.N();
  const Index K0 = model.K(0);
  double total = 0.0;
  const double scale = 1.0 / static_cast<double>(model.train_T);
  for (Index k = 0; k < model.S.cols(); ++k) {
    double acc = 0.0;
    for (Index d = 0; d < K0; ++d) {
      const double r = x[d] - model.S(d, k);
      acc += scale * w[d] * r * r;
    }
    total += g.blocks[0][k] * acc;
  }
  for (int n = 1; n <= N; ++n)
    total += g.blocks[static_cast<std::size_t>(n)].dot(
        A[static_cast<std::size_t>(n - 1)] * g.blocks[static_cast<std::size_t>(n - 1)]);
  for (int n = 1; n <= N; ++n) {
    const Vector& gn = g.blocks[static_cast<std::size_t>(n - 1)];
    double h = 0.0;
    for (Index i = 0; i < gn.size(); ++i)
      if (gn[i] > 0.0) h += gn[i] * std::log(gn[i]);
    total += model.hyper.epsilon[static_cast<std::size_t>(n)] * h;
  }
  double hw = 0.0;
  for (Index d = 0; d < w.size(); ++d)
    if (w[d] > 0.0) hw += w[d] * std::log(w[d]);
  total += eps0_w * hw;
  return total;
}

}  // namespace

AdversarialResult find_adversarial(const EonModel& model,
                                   std::optional<Vector> init_x, double tol,
                                   int max_iters, bool resolve_gamma0) {
  model.hyper.validate();
  if (max_iters < 1) throw invalid_argument("find_adversarial: max_iters must be >= 1");
  if (!(tol >= 0.0)) throw invalid_argument("find_adversarial: tol must be >= 0");
  const int N = model.N();
  const Index K0 = model.K(0);
  const Index M = model.K(N + 1);

  const std::vector<Matrix> A =
      build_a_matrices(model.theta, model.hyper.delta, model.hyper.theta_floor);
  const Vector uniform_label = Vector::Constant(M, 1.0 / static_cast<double>(M));
  const double eps0_w = split_eps0(model.hyper.epsilon[0], K0, model.train_T).w;

  Vector x;
  if (init_x) {
    if (init_x->size() != K0)
      throw invalid_argument("find_adversarial: init_x has wrong dimension");
    if (!init_x->allFinite())
      throw invalid_argument("find_adversarial: init_x has non-finite entries");
    x = *init_x;
  } else {
    x = model.S.rowwise().mean();
  }

  Vector w = model.gamma0.feature_marginal(model.train_T, K0);
  BlockVector g;
  g.blocks.reserve(static_cast<std::size_t>(N + 1));
  for (int n = 1; n <= N; ++n) {
    const Index K = model.K(n);
    g.blocks.push_back(Vector::Constant(K, 1.0 / static_cast<double>(K)));
  }
  g.blocks.push_back(uniform_label);

  AdversarialResult res;
  double obj_prev = adversarial_objective(model, A, x, g, w, eps0_w);
  for (int it = 1; it <= max_iters; ++it) {
    const Vector b = assemble_b(x, model.S, w / static_cast<double>(model.train_T));
    GammaSolveResult sweep = solve_gamma_point(
        b, A, model.hyper.epsilon, &uniform_label, g, model.hyper.max_gamma_iters,
        model.hyper.tolerance);
    g = std::move(sweep.gamma);

    if (resolve_gamma0 && K0 > 1) {
      Vector b0(K0);
      for (Index d = 0; d < K0; ++d) {
        double acc = 0.0;
        for (Index k = 0; k < model.S.cols(); ++k) {
          const double r = x[d] - model.S(d, k);
          acc += g.blocks[0][k] * r * r;
        }
        b0[d] = acc / static_cast<double>(model.train_T);
      }
      w = simplex::solve_entropic_lp(b0, eps0_w);
    }

    x = solve_x_given_gamma(g.blocks[0], model.S);

    const double obj = adversarial_objective(model, A, x, g, w, eps0_w);
    res.objective_trace.push_back(obj);
    res.iterations = it;
    if (std::abs(obj_prev - obj) <= tol * std::max(1.0, std::abs(obj))) {
      res.converged = true;
      obj_prev = obj;
      break;
    }
    obj_prev = obj;
  }

  res.x_adv = x;
  res.gamma_stack = std::move(g);
  res.objective = obj_prev;
  const Prediction p = predict(model, res.x_adv);
  res.label_dist = p.label_dist;
  res.final_label_entropy =
      M >= 2 ? simplex::normalized_entropy(p.label_dist, static_cast<int>(M)) : 0.0;
  return res;
}

}  // namespace eon
