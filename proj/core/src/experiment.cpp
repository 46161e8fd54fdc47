#include "eon/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <mutex>
#include <numeric>
#include <random>
#include <thread>

#include <json.hpp>

#include "eon/dataset_io.hpp"
#include "eon/errors.hpp"
#include "eon/inference.hpp"
#include "eon/metrics.hpp"

namespace eon {

long GridSpec::cell_count() const {
  const long eps2_factor = eps2.empty() ? 1 : static_cast<long>(eps2.size());
  return static_cast<long>(K1.size()) * static_cast<long>(delta.size()) *
         static_cast<long>(eps0.size()) * static_cast<long>(eps1.size()) *
         eps2_factor * static_cast<long>(gamma0_modes.size());
}

GridSpec default_grid() {
  GridSpec g;
  g.K1 = {3, 4, 5, 6, 7, 8};
  g.delta = {1e-5, 1e-4, 1e-3, 5e-3, 1e-2, 1e-1, 1.0, 10.0};
  g.eps0 = {1e-3, 3e-3, 4e-3, 5e-3, 8e-3};
  g.eps1 = {1e-12, 1e-6, 1e-5, 5e-5, 1e-4, 5e-4, 1e-3, 5e-3};
  g.gamma0_modes = {Gamma0Mode::kFeatureWeights};
  return g;
}

GridCell grid_cell(const GridSpec& grid, long i) {
  if (i < 0 || i >= grid.cell_count())
    throw invalid_argument("grid_cell: index out of range");
  GridCell cell;
  const long n_modes = static_cast<long>(grid.gamma0_modes.size());
  cell.gamma0_mode = grid.gamma0_modes[static_cast<std::size_t>(i % n_modes)];
  i /= n_modes;
  if (!grid.eps2.empty()) {
    const long n = static_cast<long>(grid.eps2.size());
    cell.eps2 = grid.eps2[static_cast<std::size_t>(i % n)];
    i /= n;
  }
  const long n_eps1 = static_cast<long>(grid.eps1.size());
  cell.eps1 = grid.eps1[static_cast<std::size_t>(i % n_eps1)];
  if (grid.eps2.empty()) cell.eps2 = cell.eps1;
  i /= n_eps1;
  const long n_eps0 = static_cast<long>(grid.eps0.size());
  cell.eps0 = grid.eps0[static_cast<std::size_t>(i % n_eps0)];
  i /= n_eps0;
  const long n_delta = static_cast<long>(grid.delta.size());
  cell.delta = grid.delta[static_cast<std::size_t>(i % n_delta)];
  i /= n_delta;
  cell.K1 = grid.K1[static_cast<std::size_t>(i)];
  return cell;
}

void ExperimentConfig::validate() const {
  if (dataset_path.empty() == !synthetic.has_value())
    throw invalid_argument("config: exactly one of dataset path or synthetic spec required");
  if (synthetic) synthetic->validate();
  if (folds < 1) throw invalid_argument("config: folds must be >= 1");
  if (restarts < 1) throw invalid_argument("config: restarts must be >= 1");
  if (metric != "accuracy" && metric != "auc")
    throw invalid_argument("config: metric must be accuracy or auc");
  if (split_mode != "flat" && split_mode != "nested")
    throw invalid_argument("config: split_mode must be flat or nested");
  const bool have_counts = train_count || val_count || test_count;
  if (have_counts) {
    if (train_count < 1 || val_count < 1 || test_count < 1)
      throw invalid_argument("config: train/val/test counts must all be >= 1");
  } else {
    if (!(train_frac > 0.0) || !(val_frac > 0.0) || !(test_frac > 0.0))
      throw invalid_argument("config: need split counts or positive fractions");
    if (std::abs(train_frac + val_frac + test_frac - 1.0) > 1e-9)
      throw invalid_argument("config: split fractions must sum to 1");
  }
  if (grid.K1.empty() || grid.delta.empty() || grid.eps0.empty() ||
      grid.eps1.empty() || grid.gamma0_modes.empty())
    throw invalid_argument("config: grid lists must be non-empty");
  for (int k : grid.K1)
    if (k < 1) throw invalid_argument("config: grid.K entries must be >= 1");
  if (threads < 1) throw invalid_argument("config: threads must be >= 1");
  if (max_outer_iters < 1 || max_gamma_iters < 1)
    throw invalid_argument("config: iteration caps must be >= 1");
  if (!(tolerance >= 0.0)) throw invalid_argument("config: tolerance must be >= 0");
  if (!(weight_threshold >= 0.0))
    throw invalid_argument("config: weight_threshold must be >= 0");
}

ExperimentConfig experiment_config_from(const Config& cfg) {
  ExperimentConfig ec;
  ec.dataset_path = cfg.get_string("dataset", "");
  if (cfg.has("synthetic.kind")) {
    SyntheticSpec spec;
    spec.kind = synthetic_kind_from_string(cfg.get_string("synthetic.kind"));
    if (spec.kind == SyntheticSpec::Kind::kBioinformatics) {
      spec.D = 6;
      spec.K = 3;
    }
    spec.D = static_cast<int>(cfg.get_long("synthetic.D", spec.D));
    spec.K = static_cast<int>(cfg.get_long("synthetic.K", spec.K));
    spec.T = cfg.get_long("synthetic.T", spec.T);
    spec.seed = cfg.get_seed("synthetic.seed", 0);
    spec.gauss_separation = cfg.get_double("synthetic.separation", spec.gauss_separation);
    spec.ring_noise = cfg.get_double("synthetic.ring_noise", spec.ring_noise);
    ec.synthetic = spec;
  }
  ec.train_count = cfg.get_long("train", 0);
  ec.val_count = cfg.get_long("val", 0);
  ec.test_count = cfg.get_long("test", 0);
  ec.train_frac = cfg.get_double("train_frac", 0.0);
  ec.val_frac = cfg.get_double("val_frac", 0.0);
  ec.test_frac = cfg.get_double("test_frac", 0.0);
  ec.folds = static_cast<int>(cfg.get_long("folds", 1));
  ec.restarts = static_cast<int>(cfg.get_long("restarts", 1));
  ec.seed = cfg.get_seed("seed", 0);
  ec.metric = cfg.get_string("metric", "accuracy");
  ec.split_mode = cfg.get_string("split_mode", "flat");
  ec.tolerance = cfg.get_double("tolerance", 1e-8);
  ec.max_outer_iters = static_cast<int>(cfg.get_long("max_outer_iters", 200));
  ec.max_gamma_iters = static_cast<int>(cfg.get_long("max_gamma_iters", 100));
  ec.theta_floor = cfg.get_double("theta_floor", 1e-12);
  ec.threads = static_cast<int>(cfg.get_long("threads", 1));
  ec.weight_threshold = cfg.get_double("weight_threshold", 1e-3);
  const std::string init = cfg.get_string("init", "subsample");
  if (init == "subsample")
    ec.init = InitStrategy::kSubsample;
  else if (init == "random-uniform")
    ec.init = InitStrategy::kRandomUniform;
  else
    throw invalid_argument("config: init must be subsample or random-uniform");

  apply_grid_keys(cfg, ec.grid);
  return ec;
}

void apply_grid_keys(const Config& cfg, GridSpec& grid) {
  if (cfg.has("grid.K")) {
    grid.K1.clear();
    for (long k : cfg.get_long_list("grid.K")) grid.K1.push_back(static_cast<int>(k));
  }
  if (cfg.has("grid.delta")) grid.delta = cfg.get_double_list("grid.delta");
  if (cfg.has("grid.eps0")) grid.eps0 = cfg.get_double_list("grid.eps0");
  if (cfg.has("grid.eps1")) grid.eps1 = cfg.get_double_list("grid.eps1");
  if (cfg.has("grid.eps2")) grid.eps2 = cfg.get_double_list("grid.eps2");
  if (cfg.has("grid.gamma0_mode")) {
    grid.gamma0_modes.clear();
    for (const std::string& name : cfg.get_string_list("grid.gamma0_mode"))
      grid.gamma0_modes.push_back(gamma0_mode_from_string(name));
  }
}

Split make_split(Index T, long train_count, long val_count, long test_count,
                 std::uint64_t seed, int fold, const std::string& mode) {
  if (train_count + val_count + test_count != T)
    throw invalid_argument("make_split: counts must sum to the dataset size");
  if (mode != "flat" && mode != "nested")
    throw invalid_argument("make_split: mode must be flat or nested");
  std::vector<Index> perm(static_cast<std::size_t>(T));
  std::iota(perm.begin(), perm.end(), Index{0});
  std::mt19937_64 rng(mix_seed(seed, static_cast<std::uint64_t>(fold)));
  std::shuffle(perm.begin(), perm.end(), rng);

  Split split;
  if (mode == "flat") {
    split.train.assign(perm.begin(), perm.begin() + train_count);
    split.val.assign(perm.begin() + train_count, perm.begin() + train_count + val_count);
    split.test.assign(perm.begin() + train_count + val_count, perm.end());
  } else {
    split.test.assign(perm.begin(), perm.begin() + test_count);
    std::vector<Index> rest(perm.begin() + test_count, perm.end());
    std::mt19937_64 inner(mix_seed(mix_seed(seed, static_cast<std::uint64_t>(fold)), 1));
    std::shuffle(rest.begin(), rest.end(), inner);
    split.train.assign(rest.begin(), rest.begin() + train_count);
    split.val.assign(rest.begin() + train_count, rest.end());
  }
  return split;
}

namespace {

Dataset subset(const Dataset& data, const std::vector<Index>& idx) {
  Dataset out;
  out.X.resize(data.feature_dim(), static_cast<Index>(idx.size()));
  out.pi.resize(data.label_dim(), static_cast<Index>(idx.size()));
  for (std::size_t i = 0; i < idx.size(); ++i) {
    out.X.col(static_cast<Index>(i)) = data.X.col(idx[i]);
    out.pi.col(static_cast<Index>(i)) = data.pi.col(idx[i]);
  }
  return out;
}

double evaluate_metric(const EonModel& model, const Dataset& data,
                       const std::string& metric) {
  const BatchPrediction batch = predict_batch(model, data.X, 1);
  if (!batch.errors.empty())
    throw numerical_error("prediction failed on " +
                          std::to_string(batch.errors.size()) + " rows: " +
                          batch.errors.front().second);
  if (metric == "accuracy") {
    Matrix pred(data.label_dim(), data.size());
    for (Index t = 0; t < data.size(); ++t)
      pred.col(t) = batch.rows[static_cast<std::size_t>(t)].label_dist;
    return accuracy(pred, data.pi);
  }
  if (data.label_dim() != 2)
    throw undefined_metric("auc: needs exactly 2 classes, dataset has " +
                           std::to_string(data.label_dim()));
  Vector scores(data.size());
  std::vector<int> labels(static_cast<std::size_t>(data.size()));
  for (Index t = 0; t < data.size(); ++t) {
    scores[t] = batch.rows[static_cast<std::size_t>(t)].label_dist[1];
    labels[static_cast<std::size_t>(t)] =
        static_cast<int>(argmax_index(data.pi.col(t)));
  }
  return auc(scores, labels);
}

}  // namespace

bool row_precedes(const ResultsRow& a, const ResultsRow& b) {
  if (a.val_metric != b.val_metric) return a.val_metric > b.val_metric;
  if (a.descriptor_len != b.descriptor_len) return a.descriptor_len < b.descriptor_len;
  return a.fit_seconds < b.fit_seconds;
}

const ResultsRow* ResultsTable::fold_best(int fold) const {
  if (fold < 0 || fold >= folds) return nullptr;
  const long idx = best_row_per_fold[static_cast<std::size_t>(fold)];
  return idx < 0 ? nullptr : &rows[static_cast<std::size_t>(idx)];
}

const ResultsRow* ResultsTable::overall_best() const {
  const ResultsRow* best = nullptr;
  for (int f = 0; f < folds; ++f) {
    const ResultsRow* r = fold_best(f);
    if (r && (!best || row_precedes(*r, *best))) best = r;
  }
  return best;
}

ResultsTable run_cv(const ExperimentConfig& config, const ProgressFn& progress) {
  config.validate();
  const Dataset full = config.synthetic ? generate(*config.synthetic)
                                        : load_csv(config.dataset_path);
  const Index T = full.size();

  long train_n = config.train_count;
  long val_n = config.val_count;
  long test_n = config.test_count;
  if (!train_n && !val_n && !test_n) {
    train_n = static_cast<long>(std::floor(config.train_frac * static_cast<double>(T)));
    val_n = static_cast<long>(std::floor(config.val_frac * static_cast<double>(T)));
    test_n = T - train_n - val_n;
  }
  if (train_n < 1 || val_n < 1 || test_n < 1 || train_n + val_n + test_n != T)
    throw invalid_argument("run_cv: split sizes " + std::to_string(train_n) + "/" +
                           std::to_string(val_n) + "/" + std::to_string(test_n) +
                           " do not partition T=" + std::to_string(T));

  std::vector<Split> splits;
  splits.reserve(static_cast<std::size_t>(config.folds));
  for (int f = 0; f < config.folds; ++f)
    splits.push_back(make_split(T, train_n, val_n, test_n, config.seed, f, config.split_mode));

  ResultsTable table;
  table.metric = config.metric;
  table.folds = config.folds;
  table.cells = config.grid.cell_count();
  const long total = static_cast<long>(config.folds) * table.cells;
  table.rows.resize(static_cast<std::size_t>(total));

  std::mutex progress_mutex;
  auto run_job = [&](long job) {
    using clock = std::chrono::steady_clock;
    const int fold = static_cast<int>(job / table.cells);
    const long cell = job % table.cells;
    ResultsRow& row = table.rows[static_cast<std::size_t>(job)];
    row.fold = fold;
    row.cell = cell;
    row.hyper = grid_cell(config.grid, cell);
    try {
      const Split& split = splits[static_cast<std::size_t>(fold)];
      const Dataset train = subset(full, split.train);
      const Dataset val = subset(full, split.val);
      const Dataset test = subset(full, split.test);

      Hyperparameters hyper;
      hyper.layer_dims = {static_cast<int>(full.feature_dim()), row.hyper.K1,
                          static_cast<int>(full.label_dim())};
      hyper.epsilon = {row.hyper.eps0, row.hyper.eps1, row.hyper.eps2};
      hyper.delta = {row.hyper.delta};
      hyper.gamma0_mode = row.hyper.gamma0_mode;
      hyper.tolerance = config.tolerance;
      hyper.max_outer_iters = config.max_outer_iters;
      hyper.max_gamma_iters = config.max_gamma_iters;
      hyper.theta_floor = config.theta_floor;
      hyper.restarts = config.restarts;
      hyper.seed = mix_seed(mix_seed(config.seed, static_cast<std::uint64_t>(fold) + 1),
                            static_cast<std::uint64_t>(cell));

      FitOptions options;
      options.init = config.init;
      options.threads = 1;  // parallelism lives at the job level

      auto t0 = clock::now();
      FitResult fr = fit(train, hyper, options);
      row.fit_seconds = std::chrono::duration<double>(clock::now() - t0).count();

      t0 = clock::now();
      row.val_metric = evaluate_metric(fr.model, val, config.metric);
      row.test_metric = evaluate_metric(fr.model, test, config.metric);
      row.predict_seconds = std::chrono::duration<double>(clock::now() - t0).count();

      row.descriptor_len = descriptor_length(fr.model, config.weight_threshold);
      row.iterations = static_cast<int>(fr.trace.iterations.size());
      row.converged = fr.trace.converged;
      row.final_loss = fr.trace.final_loss();
      row.ok = true;
    } catch (const std::exception& e) {
      row.ok = false;
      row.error = e.what();
    }
    if (progress) {
      std::lock_guard<std::mutex> lock(progress_mutex);
      progress(row);
    }
  };

  const int threads = std::max(1, config.threads);
  if (threads == 1 || total <= 1) {
    for (long j = 0; j < total; ++j) run_job(j);
  } else {
    std::atomic<long> next{0};
    std::vector<std::thread> pool;
    const int workers = static_cast<int>(std::min<long>(threads, total));
    pool.reserve(static_cast<std::size_t>(workers));
    for (int c = 0; c < workers; ++c)
      pool.emplace_back([&]() {
        while (true) {
          const long j = next.fetch_add(1);
          if (j >= total) break;
          run_job(j);
        }
      });
    for (auto& th : pool) th.join();
  }

  table.best_row_per_fold.assign(static_cast<std::size_t>(config.folds), -1);
  for (int f = 0; f < config.folds; ++f) {
    long best = -1;
    for (long c = 0; c < table.cells; ++c) {
      const long idx = static_cast<long>(f) * table.cells + c;
      const ResultsRow& row = table.rows[static_cast<std::size_t>(idx)];
      if (!row.ok) continue;
      if (best < 0 || row_precedes(row, table.rows[static_cast<std::size_t>(best)]))
        best = idx;
    }
    table.best_row_per_fold[static_cast<std::size_t>(f)] = best;
  }
  return table;
}

namespace {

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += c == '"' ? '\'' : c;
  out += '"';
  return out;
}

nlohmann::json grid_to_json(const GridSpec& grid) {
  nlohmann::json j;
  j["K"] = grid.K1;
  j["delta"] = grid.delta;
  j["eps0"] = grid.eps0;
  j["eps1"] = grid.eps1;
  j["eps2"] = grid.eps2;
  std::vector<std::string> modes;
  for (Gamma0Mode m : grid.gamma0_modes) modes.emplace_back(to_string(m));
  j["gamma0_mode"] = modes;
  return j;
}

nlohmann::json row_to_json(const ResultsRow& row, bool best) {
  nlohmann::json j;
  j["fold"] = row.fold;
  j["cell"] = row.cell;
  j["K1"] = row.hyper.K1;
  j["delta"] = row.hyper.delta;
  j["eps0"] = row.hyper.eps0;
  j["eps1"] = row.hyper.eps1;
  j["eps2"] = row.hyper.eps2;
  j["gamma0_mode"] = to_string(row.hyper.gamma0_mode);
  j["val_metric"] = row.val_metric;
  j["test_metric"] = row.test_metric;
  j["fit_seconds"] = row.fit_seconds;
  j["predict_seconds"] = row.predict_seconds;
  j["descriptor_length"] = row.descriptor_len;
  j["iterations"] = row.iterations;
  j["converged"] = row.converged;
  j["final_loss"] = row.final_loss;
  j["ok"] = row.ok;
  if (!row.ok) j["error"] = row.error;
  j["best"] = best;
  return j;
}

}  // namespace

void save_results(const ResultsTable& table, const ExperimentConfig& config,
                  const std::string& csv_path, const std::string& json_path) {
  std::ofstream csv(csv_path, std::ios::trunc);
  if (!csv) throw io_error("cannot open '" + csv_path + "' for writing");
  csv << "fold,cell,K1,delta,eps0,eps1,eps2,gamma0_mode,val_metric,test_metric,"
         "fit_seconds,predict_seconds,descriptor_length,iterations,converged,"
         "final_loss,ok,best,error\n";
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    const ResultsRow& row = table.rows[i];
    const bool best =
        table.best_row_per_fold[static_cast<std::size_t>(row.fold)] ==
        static_cast<long>(i);
    csv << row.fold << ',' << row.cell << ',' << row.hyper.K1 << ','
        << format_double(row.hyper.delta) << ',' << format_double(row.hyper.eps0)
        << ',' << format_double(row.hyper.eps1) << ','
        << format_double(row.hyper.eps2) << ',' << to_string(row.hyper.gamma0_mode)
        << ',' << format_double(row.val_metric) << ','
        << format_double(row.test_metric) << ',' << format_double(row.fit_seconds)
        << ',' << format_double(row.predict_seconds) << ',' << row.descriptor_len
        << ',' << row.iterations << ',' << (row.converged ? 1 : 0) << ','
        << format_double(row.final_loss) << ',' << (row.ok ? 1 : 0) << ','
        << (best ? 1 : 0) << ',' << csv_escape(row.error) << "\n";
  }
  csv.flush();
  if (!csv) throw io_error("write to '" + csv_path + "' failed");

  nlohmann::json j;
  j["schema_version"] = 1;
  j["metric"] = table.metric;
  j["folds"] = table.folds;
  j["cells"] = table.cells;
  nlohmann::json cfg;
  if (config.synthetic) {
    cfg["synthetic"] = {{"kind", to_string(config.synthetic->kind)},
                        {"D", config.synthetic->D},
                        {"K", config.synthetic->K},
                        {"T", config.synthetic->T},
                        {"seed", config.synthetic->seed}};
  } else {
    cfg["dataset"] = config.dataset_path;
  }
  cfg["train"] = config.train_count;
  cfg["val"] = config.val_count;
  cfg["test"] = config.test_count;
  cfg["folds"] = config.folds;
  cfg["restarts"] = config.restarts;
  cfg["seed"] = config.seed;
  cfg["metric"] = config.metric;
  cfg["split_mode"] = config.split_mode;
  cfg["tolerance"] = config.tolerance;
  cfg["max_outer_iters"] = config.max_outer_iters;
  cfg["max_gamma_iters"] = config.max_gamma_iters;
  cfg["weight_threshold"] = config.weight_threshold;
  cfg["grid"] = grid_to_json(config.grid);
  j["config"] = cfg;

  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    const ResultsRow& row = table.rows[i];
    const bool best =
        table.best_row_per_fold[static_cast<std::size_t>(row.fold)] ==
        static_cast<long>(i);
    rows.push_back(row_to_json(row, best));
  }
  j["rows"] = rows;

  nlohmann::json best_rows = nlohmann::json::array();
  double mean_test = 0.0, mean_val = 0.0, mean_dl = 0.0, mean_fit = 0.0;
  double m2_test = 0.0;
  int n_best = 0;
  for (int f = 0; f < table.folds; ++f) {
    const ResultsRow* r = table.fold_best(f);
    if (!r) continue;
    best_rows.push_back(row_to_json(*r, true));
    ++n_best;
    const double d = r->test_metric - mean_test;
    mean_test += d / n_best;
    m2_test += d * (r->test_metric - mean_test);
    mean_val += (r->val_metric - mean_val) / n_best;
    mean_dl += (static_cast<double>(r->descriptor_len) - mean_dl) / n_best;
    mean_fit += (r->fit_seconds - mean_fit) / n_best;
  }
  j["fold_best"] = best_rows;
  nlohmann::json summary;
  summary["folds_with_result"] = n_best;
  if (n_best > 0) {
    summary["mean_test_metric"] = mean_test;
    summary["std_test_metric"] = n_best > 1 ? std::sqrt(m2_test / (n_best - 1)) : 0.0;
    summary["mean_val_metric"] = mean_val;
    summary["mean_descriptor_length"] = mean_dl;
    summary["mean_fit_seconds"] = mean_fit;
    const ResultsRow* overall = table.overall_best();
    if (overall) summary["overall_best"] = row_to_json(*overall, true);
  }
  j["summary"] = summary;

  std::ofstream jf(json_path, std::ios::trunc);
  if (!jf) throw io_error("cannot open '" + json_path + "' for writing");
  jf << j.dump(2) << "\n";
  jf.flush();
  if (!jf) throw io_error("write to '" + json_path + "' failed");
}

}  // namespace eon
