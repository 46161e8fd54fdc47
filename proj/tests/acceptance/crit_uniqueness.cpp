#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <vector>

#include "acceptance.hpp"
#include "eon/model.hpp"
#include "eon/training.hpp"
#include "eon/types.hpp"
#include "helpers.hpp"

using namespace eon;

namespace acceptance {

namespace {

double stack_inf_distance(const BlockVector& a, const BlockVector& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.blocks.size(); ++i)
    m = std::max(m, (a.blocks[i] - b.blocks[i]).cwiseAbs().maxCoeff());
  return m;
}

}  // namespace

// Where the sufficient uniqueness condition holds (every layer temperature
// strictly above the summed coupling norms), fixed points reached from 50
// random starts must coincide within 1e-6. 50 instances with temperature
// margins from 1.05x to 3x the threshold.
Result criterion_uniqueness() {
  std::mt19937_64 rng(20240005);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double margins[4] = {1.05, 1.5, 2.2, 3.0};

  Stopwatch watch;
  int instances = 0;
  int failures = 0;
  int nonconverged = 0;
  double worst_spread = 0.0;

  while (instances < 50) {
    const int N = instances % 2 ? 2 : 1;
    std::vector<int> dims(static_cast<std::size_t>(N) + 2);
    for (auto& d : dims) d = 2 + static_cast<int>(unit(rng) * 5);

    EonModel model = random_model(dims, Gamma0Mode::kFeatureWeights, 6, rng);
    const std::vector<Matrix> A =
        build_a_matrices(model.theta, model.hyper.delta, model.hyper.theta_floor);

    UniquenessReport probe = check_uniqueness(model.hyper.epsilon, A);
    if (!(probe.threshold > 0.0)) continue;  // degenerate couplings
    const double margin = margins[instances % 4];
    for (std::size_t i = 1; i < model.hyper.epsilon.size(); ++i)
      model.hyper.epsilon[i] = probe.threshold * margin;
    const UniquenessReport report = check_uniqueness(model.hyper.epsilon, A);
    if (!report.holds) continue;
    ++instances;

    Vector b(dims[1]);
    for (Index k = 0; k < b.size(); ++k) b[k] = 0.5 * unit(rng);

    std::vector<BlockVector> fixed_points;
    bool all_converged = true;
    for (int start = 0; start < 50; ++start) {
      BlockVector init;
      for (std::size_t n = 1; n < dims.size(); ++n)
        init.blocks.push_back(random_simplex(dims[n], rng));
      const GammaSolveResult r = solve_gamma_point(
          b, A, model.hyper.epsilon, nullptr, init, 5000, 1e-12);
      if (!r.converged) {
        all_converged = false;
        break;
      }
      fixed_points.push_back(r.gamma);
    }
    if (!all_converged) {
      ++nonconverged;
      ++failures;
      continue;
    }

    double spread = 0.0;
    for (std::size_t i = 0; i < fixed_points.size(); ++i)
      for (std::size_t j = i + 1; j < fixed_points.size(); ++j)
        spread = std::max(spread, stack_inf_distance(fixed_points[i], fixed_points[j]));
    worst_spread = std::max(worst_spread, spread);
    if (spread > 1e-6) ++failures;
  }

  std::ostringstream detail;
  detail << "50 certified instances x 50 starts: max fixed-point spread = "
         << worst_spread << " (limit 1e-6), " << failures << " failures ("
         << nonconverged << " non-converged), " << format_seconds(watch.seconds());
  return {failures == 0, detail.str()};
}

}  // namespace acceptance
