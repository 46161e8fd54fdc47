#include <cmath>
#include <sstream>
#include <vector>

#include "acceptance.hpp"
#include "eon/datagen.hpp"
#include "eon/experiment.hpp"
#include "helpers.hpp"

using namespace eon;

namespace acceptance {

// Stacked-Gaussians benchmark, D = 10, K in {3, 4, 5}, T = 1000, 10-fold
// cross-validation. Mean fold-best test accuracy must reach 0.95 and the
// selected model's descriptor length must stay below the memorization bound
// and within 3x of the generator's parameter count.
Result criterion_stacked() {
  Stopwatch watch;
  std::ostringstream detail;
  bool pass = true;

  for (int K : {3, 4, 5}) {
    SyntheticSpec spec;
    spec.kind = SyntheticSpec::Kind::kStackedGaussians;
    spec.D = 10;
    spec.K = K;
    spec.T = 1000;
    spec.seed = 700 + static_cast<std::uint64_t>(K);

    ExperimentConfig config;
    config.synthetic = spec;
    config.train_count = 800;
    config.val_count = 100;
    config.test_count = 100;
    config.folds = 10;
    config.restarts = 3;
    config.seed = 31 + static_cast<std::uint64_t>(K);
    config.metric = "accuracy";
    config.max_outer_iters = 100;
    // Small model-selection grid. K1 above K gives the subsample init spare
    // columns (a draw covering every mixture component is rare at K1 = K),
    // and the temperature/mode spread lets validation reject fits whose
    // feature weights collapsed.
    config.grid.K1 = {K, K + 1, K + 2};
    config.grid.delta = {1e-3, 1e-1};
    config.grid.eps0 = {4e-3, 8e-3};
    config.grid.eps1 = {1e-4, 1e-3, 5e-3};
    config.grid.eps2 = {};
    config.grid.gamma0_modes = {Gamma0Mode::kFeatureWeights,
                                Gamma0Mode::kFixedUniform};

    const ResultsTable table = run_cv(config);

    double acc_sum = 0.0;
    int acc_count = 0;
    for (int f = 0; f < config.folds; ++f)
      if (const ResultsRow* row = table.fold_best(f)) {
        acc_sum += row->test_metric;
        ++acc_count;
      }
    const double mean_acc = acc_count ? acc_sum / acc_count : 0.0;

    const ResultsRow* best = table.overall_best();
    const long kc = kolmogorov_complexity(spec);
    const long dc = data_complexity(config.train_count, spec.D);
    const long dl = best ? best->descriptor_len : -1;

    const bool k_pass = acc_count == config.folds && mean_acc >= 0.95 &&
                        best != nullptr && dl <= dc && dl <= 3 * kc;
    pass = pass && k_pass;

    detail << "K=" << K << ": mean test acc = " << mean_acc << " over "
           << acc_count << "/" << config.folds << " folds, DL = " << dl
           << " (<= DC = " << dc << ", <= 3*KC = " << 3 * kc << ")"
           << (k_pass ? "" : " FAIL") << "; ";
  }

  detail << format_seconds(watch.seconds());
  return {pass, detail.str()};
}

}  // namespace acceptance
