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

// Coordinate descent with exact block solves must never increase the
// objective. 100 random (dataset, hyperparameter) instances covering all
// gamma0 modes, depths 1 and 2, soft and hard temperatures; each loss
// sequence (initial loss included) is checked step by step with 1e-10 slack.
Result criterion_monotone() {
  std::mt19937_64 rng(20240001);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const Gamma0Mode modes[4] = {Gamma0Mode::kFixedUniform, Gamma0Mode::kFeatureWeights,
                               Gamma0Mode::kRank1, Gamma0Mode::kFullMatrix};

  Stopwatch watch;
  double worst_rise = 0.0;
  int worst_instance = -1;
  int violations = 0;
  long total_iters = 0;

  for (int inst = 0; inst < 100; ++inst) {
    const long T = 5 + static_cast<long>(unit(rng) * 495);  // <= 500
    const int K0 = 1 + static_cast<int>(unit(rng) * 8);     // <= 8
    const int K1 = 2 + static_cast<int>(unit(rng) * 7);
    const int M = 2 + static_cast<int>(unit(rng) * 4);
    const int N = inst % 3 == 0 ? 2 : 1;

    Hyperparameters hyper;
    if (N == 1) {
      hyper.layer_dims = {K0, K1, M};
    } else {
      const int K2 = 2 + static_cast<int>(unit(rng) * 7);
      hyper.layer_dims = {K0, K1, K2, M};
    }
    hyper.epsilon.resize(static_cast<std::size_t>(N) + 2);
    for (std::size_t i = 0; i < hyper.epsilon.size(); ++i) {
      // Log-uniform in [1e-6, 1e-1]; every seventh instance stresses the
      // hard-assignment path on the layer temperatures.
      hyper.epsilon[i] = std::pow(10.0, -6.0 + 5.0 * unit(rng));
      if (inst % 7 == 3 && i >= 1) hyper.epsilon[i] = 1e-300;
    }
    // delta <= 1e-2 keeps the transition-floor renormalization effect on the
    // objective far below the 1e-10 monotonicity slack.
    hyper.delta.assign(static_cast<std::size_t>(N), 0.0);
    for (auto& d : hyper.delta) d = std::pow(10.0, -4.0 + 2.0 * unit(rng));
    hyper.gamma0_mode = modes[inst % 4];
    hyper.seed = rng();
    hyper.restarts = 1;
    hyper.max_outer_iters = 30;
    hyper.max_gamma_iters = 30;
    hyper.tolerance = 1e-12;

    FitOptions options;
    options.init = inst % 2 ? InitStrategy::kSubsample : InitStrategy::kRandomUniform;

    const Dataset data = random_dataset(K0, M, T, rng);
    const FitResult result = fit(data, hyper, options);
    total_iters += static_cast<long>(result.trace.iterations.size());

    double prev = result.trace.initial_loss;
    double rise = 0.0;
    for (const FitIterRecord& it : result.trace.iterations) {
      rise = std::max(rise, it.loss - prev);
      prev = it.loss;
    }
    if (rise > worst_rise) {
      worst_rise = rise;
      worst_instance = inst;
    }
    if (!result.trace.monotone(1e-10)) ++violations;
  }

  std::ostringstream detail;
  detail << "100 instances, " << total_iters << " outer iterations, max step rise "
         << worst_rise << " (instance " << worst_instance << "), slack 1e-10, "
         << violations << " violations, " << format_seconds(watch.seconds());
  return {violations == 0 && worst_rise <= 1e-10, detail.str()};
}

}  // namespace acceptance
