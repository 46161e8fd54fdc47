#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "eon/datagen.hpp"
#include "eon/inference.hpp"
#include "eon/simplex.hpp"
#include "eon/training.hpp"
#include "eon/types.hpp"

namespace {

using namespace eon;

Vector random_gaussian(Index n, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vector v(n);
  for (Index i = 0; i < n; ++i) v[i] = gauss(rng);
  return v;
}

Dataset stacked_data(long T, int D, int K, std::uint64_t seed) {
  SyntheticSpec spec;
  spec.kind = SyntheticSpec::Kind::kStackedGaussians;
  spec.D = D;
  spec.K = K;
  spec.T = T;
  spec.seed = seed;
  return generate(spec);
}

Hyperparameters stacked_hyper(const Dataset& data, int K1) {
  Hyperparameters h;
  h.layer_dims = {static_cast<int>(data.feature_dim()), K1,
                  static_cast<int>(data.label_dim())};
  h.epsilon = {4e-3, 1e-4, 1e-4};
  h.delta = {1e-3};
  h.seed = 1;
  return h;
}

void BM_Softmax(benchmark::State& state) {
  const Index K = state.range(0);
  std::mt19937_64 rng(7);
  const Vector z = random_gaussian(K, rng);
  for (auto _ : state) benchmark::DoNotOptimize(simplex::softmax(z));
}
BENCHMARK(BM_Softmax)->Arg(8)->Arg(64)->Arg(512);

void BM_EntropicLp(benchmark::State& state) {
  const Index K = state.range(0);
  std::mt19937_64 rng(11);
  const Vector b = random_gaussian(K, rng);
  for (auto _ : state)
    benchmark::DoNotOptimize(simplex::solve_entropic_lp(b, 1e-2));
}
BENCHMARK(BM_EntropicLp)->Arg(8)->Arg(64)->Arg(512);

// One per-point layer solve: the inner loop of both training and prediction.
void BM_GammaPoint(benchmark::State& state) {
  const Index K1 = state.range(0);
  std::mt19937_64 rng(13);
  const Vector b = random_gaussian(K1, rng).cwiseAbs();
  const Matrix theta =
      Matrix::Constant(K1, 3, 1.0 / static_cast<double>(K1));
  const std::vector<Matrix> A = build_a_matrices({theta}, {1e-3}, 1e-12);
  const std::vector<double> eps = {4e-3, 1e-3, 1e-3};
  BlockVector init;
  init.blocks = {Vector::Constant(K1, 1.0 / static_cast<double>(K1)),
                 Vector::Constant(3, 1.0 / 3.0)};
  for (auto _ : state)
    benchmark::DoNotOptimize(
        solve_gamma_point(b, A, eps, nullptr, init, 100, 1e-10));
}
BENCHMARK(BM_GammaPoint)->Arg(4)->Arg(16)->Arg(64);

// Full training runs with a fixed outer-iteration budget; wall time per
// iteration should grow affinely with T (see the scaling acceptance check).
void BM_Fit(benchmark::State& state) {
  const long T = state.range(0);
  const Dataset data = stacked_data(T, 10, 4, 5);
  Hyperparameters h = stacked_hyper(data, 4);
  h.tolerance = 0.0;
  h.max_outer_iters = 3;
  h.max_gamma_iters = 20;
  for (auto _ : state) benchmark::DoNotOptimize(fit(data, h));
  state.SetItemsProcessed(state.iterations() * T);
}
BENCHMARK(BM_Fit)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

void BM_PredictBatch(benchmark::State& state) {
  const long T = state.range(0);
  const Dataset train = stacked_data(1000, 10, 4, 5);
  const Dataset query = stacked_data(T, 10, 4, 6);
  const FitResult fr = fit(train, stacked_hyper(train, 4));
  for (auto _ : state)
    benchmark::DoNotOptimize(predict_batch(fr.model, query.X));
  state.SetItemsProcessed(state.iterations() * T);
}
BENCHMARK(BM_PredictBatch)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

void BM_Loss(benchmark::State& state) {
  const long T = state.range(0);
  const Dataset data = stacked_data(T, 10, 4, 5);
  const Hyperparameters h = stacked_hyper(data, 4);
  const FitResult fr = fit(data, h);
  GammaStack stack;
  stack.layers = {Matrix::Constant(4, T, 0.25), data.pi};
  for (auto _ : state)
    benchmark::DoNotOptimize(loss(stack, fr.model.gamma0, fr.model.S,
                                  fr.model.theta, data.X, h));
  state.SetItemsProcessed(state.iterations() * T);
}
BENCHMARK(BM_Loss)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
