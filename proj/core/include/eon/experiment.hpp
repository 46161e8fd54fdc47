#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "eon/config.hpp"
#include "eon/datagen.hpp"
#include "eon/model.hpp"
#include "eon/training.hpp"
#include "eon/types.hpp"

namespace eon {

// Hyperparameter lists crossed exhaustively (single entropic layer, N = 1).
// An empty eps2 list mirrors eps1 (the last-layer temperature only shapes
// prediction sharpness; argmax decisions are invariant to it).
struct GridSpec {
  std::vector<int> K1;
  std::vector<double> delta;
  std::vector<double> eps0;
  std::vector<double> eps1;
  std::vector<double> eps2;
  std::vector<Gamma0Mode> gamma0_modes;

  long cell_count() const;
};

// The reference grid: delta in {1e-5,1e-4,1e-3,5e-3,1e-2,1e-1,1,10},
// eps0 in {1e-3,3e-3,4e-3,5e-3,8e-3}, eps1 in {1e-12,1e-6,1e-5,5e-5,1e-4,
// 5e-4,1e-3,5e-3}, K in {3..8}, feature-weights gamma0.
GridSpec default_grid();

struct GridCell {
  int K1 = 0;
  double delta = 0.0;
  double eps0 = 0.0;
  double eps1 = 0.0;
  double eps2 = 0.0;
  Gamma0Mode gamma0_mode = Gamma0Mode::kFeatureWeights;
};

// Cell at flat index `i` in the canonical enumeration (K1 outermost, then
// delta, eps0, eps1/eps2 pairs, gamma0 mode innermost).
GridCell grid_cell(const GridSpec& grid, long i);

struct ExperimentConfig {
  // Exactly one dataset source: a CSV path or a synthetic spec.
  std::string dataset_path;
  std::optional<SyntheticSpec> synthetic;

  long train_count = 0;  // counts take precedence; must sum to T
  long val_count = 0;
  long test_count = 0;
  double train_frac = 0.0;  // used when counts are all zero; must sum to 1
  double val_frac = 0.0;
  double test_frac = 0.0;

  int folds = 1;
  int restarts = 1;
  std::uint64_t seed = 0;
  std::string metric = "accuracy";  // or "auc"
  std::string split_mode = "flat";  // or "nested" (test split first, then an
                                    // inner shuffle divides train/validation)
  GridSpec grid = default_grid();

  double tolerance = 1e-8;
  int max_outer_iters = 200;
  int max_gamma_iters = 100;
  double theta_floor = 1e-12;
  InitStrategy init = InitStrategy::kSubsample;
  int threads = 1;
  double weight_threshold = 1e-3;  // informative-dim cutoff for audits

  void validate() const;
};

// Reads an ExperimentConfig from flat key-value text. Keys mirror the field
// names (folds, train, val, test, metric, seed, restarts, tolerance,
// max_outer_iters, max_gamma_iters, split_mode, threads, weight_threshold,
// dataset, synthetic.kind/D/K/T/seed/..., grid.K, grid.delta, grid.eps0,
// grid.eps1, grid.eps2, grid.gamma0_mode). Missing grid keys fall back to
// the reference grid.
ExperimentConfig experiment_config_from(const Config& cfg);

// Overrides the lists of `grid` from any grid.* keys present in cfg; keys
// that are absent leave the current list untouched.
void apply_grid_keys(const Config& cfg, GridSpec& grid);

struct Split {
  std::vector<Index> train, val, test;
};

// Deterministic per (seed, fold); identical for every grid cell. Flat mode
// shuffles once and cuts three blocks; nested mode cuts the test block, then
// reshuffles the rest into train/validation.
Split make_split(Index T, long train_count, long val_count, long test_count,
                 std::uint64_t seed, int fold, const std::string& mode);

struct ResultsRow {
  int fold = 0;
  long cell = 0;
  GridCell hyper;
  double val_metric = 0.0;
  double test_metric = 0.0;
  double fit_seconds = 0.0;
  double predict_seconds = 0.0;
  long descriptor_len = 0;
  int iterations = 0;
  bool converged = false;
  double final_loss = 0.0;
  bool ok = false;
  std::string error;
};

struct ResultsTable {
  std::string metric;
  int folds = 0;
  long cells = 0;
  std::vector<ResultsRow> rows;          // fold-major, then cell: canonical order
  std::vector<long> best_row_per_fold;   // index into rows, -1 if fold had no ok row

  const ResultsRow* fold_best(int fold) const;
  // Best across all fold-best rows under the same ordering.
  const ResultsRow* overall_best() const;
};

// True iff a beats b: higher validation metric, ties to smaller descriptor
// length, then lower fit time.
bool row_precedes(const ResultsRow& a, const ResultsRow& b);

using ProgressFn = std::function<void(const ResultsRow&)>;

// Runs the full fold x cell grid. Fit/metric errors are recorded in the row
// (ok = false) and the run continues. Deterministic result content for fixed
// config and seed, independent of thread count (timing fields excepted).
ResultsTable run_cv(const ExperimentConfig& config,
                    const ProgressFn& progress = nullptr);

// CSV table plus a versioned JSON report (schema_version 1) with config echo,
// all rows, per-fold best rows and aggregate statistics.
void save_results(const ResultsTable& table, const ExperimentConfig& config,
                  const std::string& csv_path, const std::string& json_path);

}  // namespace eon
