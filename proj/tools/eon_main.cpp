// eon: command-line driver for the entropic network library.
//
// Subcommands: generate, fit, predict, cv, adversarial, raster, audit, check.
// Exit codes: 0 success, 2 usage error, 3 data error, 4 numerical failure.

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "eon/adversarial.hpp"
#include "eon/config.hpp"
#include "eon/datagen.hpp"
#include "eon/dataset_io.hpp"
#include "eon/errors.hpp"
#include "eon/experiment.hpp"
#include "eon/inference.hpp"
#include "eon/metrics.hpp"
#include "eon/model.hpp"
#include "eon/raster.hpp"
#include "eon/serialize.hpp"
#include "eon/simplex.hpp"
#include "eon/training.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitData = 3;
constexpr int kExitNumerical = 4;

using eon::format_double;

struct GenerateArgs {
  std::string kind = "stacked-gaussians";
  int D = 2;
  int K = 2;
  long T = 100;
  std::uint64_t seed = 0;
  double separation = 8.0;
  double ring_noise = 0.02;
  std::string out;
};

int run_generate(const GenerateArgs& a) {
  eon::SyntheticSpec spec;
  spec.kind = eon::synthetic_kind_from_string(a.kind);
  if (spec.kind == eon::SyntheticSpec::Kind::kBioinformatics) {
    spec.D = 6;
    spec.K = 3;
  } else {
    spec.D = a.D;
    spec.K = a.K;
  }
  spec.T = a.T;
  spec.seed = a.seed;
  spec.gauss_separation = a.separation;
  spec.ring_noise = a.ring_noise;
  spec.validate();

  const eon::Dataset data = eon::generate(spec);
  eon::save_csv(data, a.out);
  std::cout << "wrote " << a.out << ": T=" << data.size() << " K0="
            << data.feature_dim() << " classes=" << data.label_dim()
            << " KC=" << eon::kolmogorov_complexity(spec)
            << " DC=" << eon::data_complexity(spec.T, spec.D) << "\n";
  return kExitOk;
}

struct FitArgs {
  std::string data_path;
  std::string config_path;
  std::string out;
  std::string trace_path;
  // Flag overrides; negative/empty means "not given".
  int K1 = 0;
  double eps0 = -1.0, eps1 = -1.0, eps2 = -1.0, delta = -1.0;
  std::string gamma0_mode;
  std::optional<std::uint64_t> seed;
  double tolerance = -1.0;
  int max_iters = 0;
  int restarts = 0;
  int threads = 1;
  std::string init;
};

eon::Hyperparameters hyper_from_config(const eon::Config& cfg, eon::Index K0,
                                       eon::Index M) {
  eon::Hyperparameters h;
  std::vector<long> hidden = cfg.has("hidden") ? cfg.get_long_list("hidden")
                                               : std::vector<long>{3};
  h.layer_dims.push_back(static_cast<int>(K0));
  for (long k : hidden) h.layer_dims.push_back(static_cast<int>(k));
  h.layer_dims.push_back(static_cast<int>(M));
  if (cfg.has("epsilon")) {
    h.epsilon = cfg.get_double_list("epsilon");
  } else {
    h.epsilon.assign(h.layer_dims.size(), 1e-4);
    h.epsilon[0] = 4e-3;
  }
  if (cfg.has("delta")) {
    h.delta = cfg.get_double_list("delta");
  } else {
    h.delta.assign(h.layer_dims.size() - 2, 1e-3);
  }
  h.gamma0_mode =
      eon::gamma0_mode_from_string(cfg.get_string("gamma0_mode", "feature-weights"));
  h.tolerance = cfg.get_double("tolerance", h.tolerance);
  h.max_outer_iters = static_cast<int>(cfg.get_long("max_outer_iters", h.max_outer_iters));
  h.max_gamma_iters = static_cast<int>(cfg.get_long("max_gamma_iters", h.max_gamma_iters));
  h.theta_floor = cfg.get_double("theta_floor", h.theta_floor);
  h.seed = cfg.get_seed("seed", h.seed);
  h.restarts = static_cast<int>(cfg.get_long("restarts", h.restarts));
  return h;
}

int run_fit(const FitArgs& a) {
  const eon::Dataset data = eon::load_csv(a.data_path);
  if (data.label_dim() < 1)
    throw eon::invalid_argument("fit: training data has no label columns");

  eon::Config cfg = a.config_path.empty() ? eon::Config::parse_string("")
                                          : eon::Config::parse_file(a.config_path);
  eon::Hyperparameters h = hyper_from_config(cfg, data.feature_dim(), data.label_dim());
  if (a.K1 > 0) {
    h.layer_dims = {static_cast<int>(data.feature_dim()), a.K1,
                    static_cast<int>(data.label_dim())};
    if (h.epsilon.size() != 3) h.epsilon.assign(3, 1e-4), h.epsilon[0] = 4e-3;
    if (h.delta.size() != 1) h.delta.assign(1, 1e-3);
  }
  if (a.eps0 >= 0.0) h.epsilon[0] = a.eps0;
  if (a.eps1 >= 0.0) h.epsilon[1] = a.eps1;
  if (a.eps2 >= 0.0) h.epsilon.back() = a.eps2;
  if (a.delta >= 0.0) h.delta.assign(h.delta.size(), a.delta);
  if (!a.gamma0_mode.empty()) h.gamma0_mode = eon::gamma0_mode_from_string(a.gamma0_mode);
  if (a.seed) h.seed = *a.seed;
  if (a.tolerance >= 0.0) h.tolerance = a.tolerance;
  if (a.max_iters > 0) h.max_outer_iters = a.max_iters;
  if (a.restarts > 0) h.restarts = a.restarts;

  eon::FitOptions options;
  options.threads = a.threads;
  const std::string init = a.init.empty() ? cfg.get_string("init", "subsample") : a.init;
  if (init == "subsample")
    options.init = eon::InitStrategy::kSubsample;
  else if (init == "random-uniform")
    options.init = eon::InitStrategy::kRandomUniform;
  else
    throw eon::invalid_argument("fit: init must be subsample or random-uniform");

  const eon::FitResult res = eon::fit(data, h, options);
  eon::save_model(res.model, a.out);

  if (!a.trace_path.empty()) {
    std::ofstream tf(a.trace_path, std::ios::trunc);
    if (!tf) throw eon::io_error("cannot open '" + a.trace_path + "' for writing");
    tf << "iter,loss,gamma_seconds,s_seconds,theta_seconds,gamma0_seconds,"
          "gamma_sweeps_total,gamma_sweeps_max,contraction_l_tilde,contraction_holds\n";
    tf << "0," << format_double(res.trace.initial_loss) << ",0,0,0,0,0,0,0,0\n";
    for (std::size_t i = 0; i < res.trace.iterations.size(); ++i) {
      const auto& r = res.trace.iterations[i];
      tf << (i + 1) << ',' << format_double(r.loss) << ','
         << format_double(r.gamma_seconds) << ',' << format_double(r.s_seconds) << ','
         << format_double(r.theta_seconds) << ',' << format_double(r.gamma0_seconds)
         << ',' << r.gamma_sweeps_total << ',' << r.gamma_sweeps_max << ','
         << format_double(r.contraction_l_tilde) << ',' << (r.contraction_holds ? 1 : 0)
         << "\n";
    }
  }

  std::cout << "wrote " << a.out << ": iterations=" << res.trace.iterations.size()
            << " final_loss=" << format_double(res.trace.final_loss())
            << " converged=" << (res.trace.converged ? "yes" : "no")
            << " descriptor_length=" << eon::descriptor_length(res.model) << "\n";
  return kExitOk;
}

struct PredictArgs {
  std::string model_path;
  std::string data_path;
  std::string out;
  int threads = 1;
};

int run_predict(const PredictArgs& a) {
  const eon::EonModel model = eon::load_model(a.model_path);
  const eon::Dataset data = eon::load_csv(a.data_path);
  if (data.feature_dim() != model.K(0))
    throw eon::invalid_argument("predict: data feature dim " +
                                std::to_string(data.feature_dim()) + " != model K0 " +
                                std::to_string(model.K(0)));

  const eon::BatchPrediction batch = eon::predict_batch(model, data.X, a.threads);
  const eon::Index M = model.K(model.N() + 1);

  std::ofstream f(a.out, std::ios::trunc);
  if (!f) throw eon::io_error("cannot open '" + a.out + "' for writing");
  for (eon::Index m = 0; m < M; ++m) f << (m ? "," : "") << "pi" << m;
  f << ",label,reliability,iterations,converged\n";
  for (const auto& p : batch.rows) {
    for (eon::Index m = 0; m < M; ++m)
      f << (m ? "," : "") << format_double(p.label_dist[m]);
    f << ',' << eon::argmax_index(p.label_dist) << ',' << format_double(p.reliability)
      << ',' << p.iterations << ',' << (p.converged ? 1 : 0) << "\n";
  }
  f.flush();
  if (!f) throw eon::io_error("write to '" + a.out + "' failed");

  std::cout << "wrote " << a.out << ": rows=" << batch.rows.size();
  if (data.label_dim() == M) {
    eon::Matrix pred(M, data.size());
    for (eon::Index t = 0; t < data.size(); ++t)
      pred.col(t) = batch.rows[static_cast<std::size_t>(t)].label_dist;
    std::cout << " accuracy=" << format_double(eon::accuracy(pred, data.pi));
  }
  if (!batch.errors.empty()) std::cout << " errors=" << batch.errors.size();
  std::cout << "\n";
  for (const auto& [t, msg] : batch.errors)
    std::cerr << "row " << t << ": " << msg << "\n";
  return kExitOk;
}

struct CvArgs {
  std::string config_path;
  std::string grid_path;
  std::string out_prefix = "results";
  std::optional<std::uint64_t> seed;
  int threads = 0;
  int folds = 0;
  std::string metric;
  double tolerance = -1.0;
  int max_iters = 0;
  bool quiet = false;
};

int run_cv(const CvArgs& a) {
  eon::ExperimentConfig config =
      eon::experiment_config_from(eon::Config::parse_file(a.config_path));
  if (!a.grid_path.empty())
    eon::apply_grid_keys(eon::Config::parse_file(a.grid_path), config.grid);
  if (a.seed) config.seed = *a.seed;
  if (a.threads > 0) config.threads = a.threads;
  if (a.folds > 0) config.folds = a.folds;
  if (!a.metric.empty()) config.metric = a.metric;
  if (a.tolerance >= 0.0) config.tolerance = a.tolerance;
  if (a.max_iters > 0) config.max_outer_iters = a.max_iters;
  config.validate();

  const long cells = config.grid.cell_count();
  std::cout << "grid: " << cells << " cells x " << config.folds << " folds\n";
  const eon::ProgressFn progress = [&](const eon::ResultsRow& row) {
    if (a.quiet) return;
    std::printf("fold %d cell %ld/%ld: val=%.4f test=%.4f dl=%ld %s\n", row.fold,
                row.cell + 1, cells, row.val_metric, row.test_metric,
                row.descriptor_len, row.ok ? "" : row.error.c_str());
    std::fflush(stdout);
  };

  const eon::ResultsTable table = eon::run_cv(config, progress);
  const std::string csv = a.out_prefix + ".csv";
  const std::string json = a.out_prefix + ".json";
  eon::save_results(table, config, csv, json);

  const eon::ResultsRow* best = table.overall_best();
  std::cout << "wrote " << csv << " and " << json << "\n";
  if (best) {
    std::cout << "best: fold=" << best->fold << " K1=" << best->hyper.K1
              << " delta=" << format_double(best->hyper.delta)
              << " eps0=" << format_double(best->hyper.eps0)
              << " eps1=" << format_double(best->hyper.eps1)
              << " gamma0=" << eon::to_string(best->hyper.gamma0_mode)
              << " val=" << format_double(best->val_metric)
              << " test=" << format_double(best->test_metric)
              << " dl=" << best->descriptor_len << "\n";
  } else {
    std::cout << "no grid cell fitted successfully\n";
  }
  return kExitOk;
}

struct AdversarialArgs {
  std::string model_path;
  std::string out;
  int count = 1;
  std::uint64_t seed = 0;
  double tol = 1e-8;
  int max_iters = 500;
  bool resolve_gamma0 = false;
};

int run_adversarial(const AdversarialArgs& a) {
  const eon::EonModel model = eon::load_model(a.model_path);
  const eon::Index K0 = model.K(0);
  const eon::Index K1 = model.K(1);
  const eon::Index M = model.K(model.N() + 1);

  std::ofstream f(a.out, std::ios::trunc);
  if (!f) throw eon::io_error("cannot open '" + a.out + "' for writing");
  for (eon::Index d = 0; d < K0; ++d) f << (d ? "," : "") << "x" << d;
  for (eon::Index m = 0; m < M; ++m) f << ",pi" << m;
  f << ",entropy,objective,iterations,converged\n";

  std::mt19937_64 rng(a.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int i = 0; i < a.count; ++i) {
    std::optional<eon::Vector> init;
    if (i > 0) {
      // Further searches start from random convex combinations of codebook
      // columns; the first uses the default (codebook mean).
      eon::Vector mix(K1);
      for (eon::Index k = 0; k < K1; ++k) mix[k] = -std::log(1.0 - unit(rng));
      mix /= mix.sum();
      init = model.S * mix;
    }
    const eon::AdversarialResult res =
        eon::find_adversarial(model, init, a.tol, a.max_iters, a.resolve_gamma0);
    for (eon::Index d = 0; d < K0; ++d)
      f << (d ? "," : "") << format_double(res.x_adv[d]);
    for (eon::Index m = 0; m < M; ++m) f << ',' << format_double(res.label_dist[m]);
    f << ',' << format_double(res.final_label_entropy) << ','
      << format_double(res.objective) << ',' << res.iterations << ','
      << (res.converged ? 1 : 0) << "\n";
    std::cout << "adversarial " << i << ": entropy="
              << format_double(res.final_label_entropy)
              << " iterations=" << res.iterations
              << " converged=" << (res.converged ? "yes" : "no") << "\n";
  }
  f.flush();
  if (!f) throw eon::io_error("write to '" + a.out + "' failed");
  return kExitOk;
}

struct RasterArgs {
  std::string model_path;
  std::string data_path;
  std::string out;
  std::vector<int> dims = {0, 1};
  int resolution = 64;
  std::string policy = "uniform-random";
  double fixed_value = 0.5;
  std::uint64_t seed = 0;
};

int run_raster(const RasterArgs& a) {
  if (a.dims.size() != 2)
    throw eon::invalid_argument("raster: --dims needs exactly two indices");
  const eon::EonModel model = eon::load_model(a.model_path);
  const eon::Dataset data = eon::load_csv(a.data_path);
  const eon::Raster raster = eon::emit_decision_raster(
      model, data.X, a.dims[0], a.dims[1], a.resolution,
      eon::raster_policy_from_string(a.policy), a.fixed_value, a.seed);
  eon::save_raster(raster, a.out);
  std::cout << "wrote " << a.out << ": " << raster.rows.size() << " cells over dims ("
            << a.dims[0] << "," << a.dims[1] << ")\n";
  return kExitOk;
}

struct AuditArgs {
  std::string model_path;
  double threshold = 1e-3;
  std::string kind;
  int D = 0;
  int K = 0;
  long T = 0;
};

int run_audit(const AuditArgs& a) {
  const eon::EonModel model = eon::load_model(a.model_path);
  const long dl = eon::descriptor_length(model, a.threshold);
  const long dc = eon::data_complexity(model.train_T, static_cast<int>(model.K(0)));
  std::cout << "descriptor_length=" << dl << " (weight_threshold="
            << format_double(a.threshold) << ")\n";
  std::cout << "data_complexity=" << dc << " (train_T=" << model.train_T << ")\n";
  if (!a.kind.empty()) {
    eon::SyntheticSpec spec;
    spec.kind = eon::synthetic_kind_from_string(a.kind);
    spec.D = spec.kind == eon::SyntheticSpec::Kind::kBioinformatics ? 6 : a.D;
    spec.K = spec.kind == eon::SyntheticSpec::Kind::kBioinformatics ? 3 : a.K;
    spec.T = std::max<long>(a.T, spec.K);
    spec.validate();
    const long kc = eon::kolmogorov_complexity(spec);
    std::cout << "kolmogorov_complexity=" << kc
              << " ratio=" << format_double(static_cast<double>(dl) / static_cast<double>(kc))
              << "\n";
  }
  const eon::Vector w = model.gamma0.feature_marginal(model.train_T, model.K(0));
  std::cout << "feature_weights=";
  for (eon::Index d = 0; d < w.size(); ++d)
    std::cout << (d ? "," : "") << format_double(w[d]);
  std::cout << "\n";
  return kExitOk;
}

struct CheckArgs {
  std::string model_path;
  std::vector<double> epsilon;
};

int run_check(const CheckArgs& a) {
  const eon::EonModel model = eon::load_model(a.model_path);
  std::vector<double> eps = a.epsilon.empty() ? model.hyper.epsilon : a.epsilon;
  if (eps.size() != model.hyper.epsilon.size())
    throw eon::invalid_argument("check: --eps needs " +
                                std::to_string(model.hyper.epsilon.size()) + " values");
  const std::vector<eon::Matrix> A = eon::build_a_matrices(
      model.theta, model.hyper.delta, model.hyper.theta_floor);
  const eon::UniquenessReport uniq = eon::check_uniqueness(eps, A);
  const eon::ContractionReport con =
      eon::check_contraction(eps, A, model.hyper.layer_dims);

  std::cout << "uniqueness: " << (uniq.holds ? "holds" : "fails")
            << " min_epsilon=" << format_double(uniq.min_epsilon)
            << " threshold=" << format_double(uniq.threshold) << "\n";
  std::cout << "contraction: " << (con.holds ? "holds" : "fails")
            << " L_bsf=" << format_double(con.l_bsf)
            << " L_G=" << format_double(con.l_g) << " L_H=" << format_double(con.l_h)
            << " L_tilde=" << format_double(con.l_tilde) << "\n";
  const auto violations = eon::validate(model);
  for (const auto& v : violations)
    std::cout << "violation: " << v.field << ": " << v.detail << "\n";
  std::cout << "model: " << (violations.empty() ? "valid" : "invalid") << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"entropic feed-forward network toolkit"};
  app.require_subcommand(1);

  GenerateArgs gen;
  auto* cmd_gen = app.add_subcommand("generate", "write a synthetic dataset CSV");
  cmd_gen->add_option("--kind", gen.kind,
                      "stacked-gaussians | rings | bioinformatics");
  cmd_gen->add_option("--D", gen.D, "ambient dimension");
  cmd_gen->add_option("--K", gen.K, "components / rings / clusters");
  cmd_gen->add_option("--T", gen.T, "sample count");
  cmd_gen->add_option("--seed", gen.seed, "generator seed");
  cmd_gen->add_option("--separation", gen.separation,
                      "gaussian center spacing in sigma units");
  cmd_gen->add_option("--ring-noise", gen.ring_noise,
                      "radial noise fraction for rings");
  cmd_gen->add_option("--out", gen.out, "output CSV path")->required();

  FitArgs fit;
  auto* cmd_fit = app.add_subcommand("fit", "train a model on a labeled CSV");
  cmd_fit->add_option("--data", fit.data_path, "training CSV")->required();
  cmd_fit->add_option("--config", fit.config_path,
                      "key-value hyperparameter file");
  cmd_fit->add_option("--out", fit.out, "model file path")->required();
  cmd_fit->add_option("--trace", fit.trace_path, "per-iteration loss CSV");
  cmd_fit->add_option("--K1", fit.K1, "single hidden layer width");
  cmd_fit->add_option("--eps0", fit.eps0, "input-layer temperature");
  cmd_fit->add_option("--eps1", fit.eps1, "first-layer temperature");
  cmd_fit->add_option("--eps2", fit.eps2, "last-layer temperature");
  cmd_fit->add_option("--delta", fit.delta, "transition coupling weight");
  cmd_fit->add_option("--gamma0-mode", fit.gamma0_mode,
                      "fixed-uniform | feature-weights | rank-1 | full-matrix");
  cmd_fit->add_option("--seed", fit.seed, "fit seed");
  cmd_fit->add_option("--tolerance", fit.tolerance, "relative loss tolerance");
  cmd_fit->add_option("--max-iters", fit.max_iters, "outer iteration cap");
  cmd_fit->add_option("--restarts", fit.restarts, "independent restarts");
  cmd_fit->add_option("--threads", fit.threads, "gamma-step threads");
  cmd_fit->add_option("--init", fit.init, "subsample | random-uniform");

  PredictArgs pred;
  auto* cmd_pred = app.add_subcommand("predict", "label distributions for a CSV");
  cmd_pred->add_option("--model", pred.model_path, "model file")->required();
  cmd_pred->add_option("--data", pred.data_path, "input CSV (labels optional)")
      ->required();
  cmd_pred->add_option("--out", pred.out, "predictions CSV")->required();
  cmd_pred->add_option("--threads", pred.threads, "prediction threads");

  CvArgs cv;
  auto* cmd_cv = app.add_subcommand("cv", "Monte-Carlo cross-validated grid search");
  cmd_cv->add_option("--config", cv.config_path, "experiment config file")->required();
  cmd_cv->add_option("--grid", cv.grid_path, "grid override file (grid.* keys)");
  cmd_cv->add_option("--out", cv.out_prefix, "output prefix (.csv and .json)");
  cmd_cv->add_option("--seed", cv.seed, "experiment seed");
  cmd_cv->add_option("--threads", cv.threads, "parallel (fold,cell) jobs");
  cmd_cv->add_option("--folds", cv.folds, "fold count");
  cmd_cv->add_option("--metric", cv.metric, "accuracy | auc");
  cmd_cv->add_option("--tolerance", cv.tolerance, "fit tolerance");
  cmd_cv->add_option("--max-iters", cv.max_iters, "outer iteration cap");
  cmd_cv->add_flag("--quiet", cv.quiet, "suppress per-cell progress");

  AdversarialArgs adv;
  auto* cmd_adv = app.add_subcommand("adversarial", "synthesize maximum-entropy inputs");
  cmd_adv->add_option("--model", adv.model_path, "model file")->required();
  cmd_adv->add_option("--out", adv.out, "adversarial points CSV")->required();
  cmd_adv->add_option("--count", adv.count, "number of searches");
  cmd_adv->add_option("--seed", adv.seed, "seed for extra starting points");
  cmd_adv->add_option("--tolerance", adv.tol, "relative objective tolerance");
  cmd_adv->add_option("--max-iters", adv.max_iters, "iteration cap");
  cmd_adv->add_flag("--resolve-gamma0", adv.resolve_gamma0,
                    "re-solve feature weights during the search");

  RasterArgs ras;
  auto* cmd_ras = app.add_subcommand("raster", "decision / reliability raster CSV");
  cmd_ras->add_option("--model", ras.model_path, "model file")->required();
  cmd_ras->add_option("--data", ras.data_path, "CSV defining the data hull")->required();
  cmd_ras->add_option("--out", ras.out, "raster CSV")->required();
  cmd_ras->add_option("--dims", ras.dims, "two feature indices (default 0 1)");
  cmd_ras->add_option("--resolution", ras.resolution, "grid points per axis");
  cmd_ras->add_option("--policy", ras.policy, "uniform-random | fixed");
  cmd_ras->add_option("--fixed-value", ras.fixed_value,
                      "fill value for the fixed policy");
  cmd_ras->add_option("--seed", ras.seed, "seed for the uniform-random policy");

  AuditArgs audit;
  auto* cmd_audit = app.add_subcommand("audit", "descriptor length and complexity");
  cmd_audit->add_option("--model", audit.model_path, "model file")->required();
  cmd_audit->add_option("--threshold", audit.threshold, "informative-dim cutoff");
  cmd_audit->add_option("--kind", audit.kind, "synthetic kind for the KC reference");
  cmd_audit->add_option("--D", audit.D, "synthetic dimension");
  cmd_audit->add_option("--K", audit.K, "synthetic object count");
  cmd_audit->add_option("--T", audit.T, "synthetic sample count");

  CheckArgs check;
  auto* cmd_check = app.add_subcommand("check", "uniqueness / contraction reports");
  cmd_check->add_option("--model", check.model_path, "model file")->required();
  cmd_check->add_option("--eps", check.epsilon, "temperature overrides (N+2 values)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (cmd_gen->parsed()) return run_generate(gen);
    if (cmd_fit->parsed()) return run_fit(fit);
    if (cmd_pred->parsed()) return run_predict(pred);
    if (cmd_cv->parsed()) return run_cv(cv);
    if (cmd_adv->parsed()) return run_adversarial(adv);
    if (cmd_ras->parsed()) return run_raster(ras);
    if (cmd_audit->parsed()) return run_audit(audit);
    if (cmd_check->parsed()) return run_check(check);
    std::cerr << "no subcommand given\n";
    return kExitUsage;
  } catch (const eon::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const eon::parse_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const eon::malformed_file& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const eon::version_mismatch& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const eon::io_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const eon::undefined_metric& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const eon::numerical_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitNumerical;
  }
}
