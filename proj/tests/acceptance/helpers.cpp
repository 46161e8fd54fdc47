#include "helpers.hpp"

#include <cmath>
#include <cstdio>

using namespace eon;

namespace acceptance {

Vector random_simplex(Index K, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Vector v(K);
  for (Index i = 0; i < K; ++i) v[i] = -std::log(1.0 - unit(rng));
  return v / v.sum();
}

Matrix random_column_stochastic(Index rows, Index cols, std::mt19937_64& rng) {
  Matrix m(rows, cols);
  for (Index j = 0; j < cols; ++j) m.col(j) = random_simplex(rows, rng);
  return m;
}

Matrix random_uniform_matrix(Index rows, Index cols, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Matrix m(rows, cols);
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i) m(i, j) = unit(rng);
  return m;
}

Matrix one_hot_columns(const std::vector<int>& labels, Index M) {
  Matrix pi = Matrix::Zero(M, static_cast<Index>(labels.size()));
  for (std::size_t t = 0; t < labels.size(); ++t)
    pi(labels[t], static_cast<Index>(t)) = 1.0;
  return pi;
}

EonModel random_model(const std::vector<int>& layer_dims, Gamma0Mode mode,
                      Index train_T, std::mt19937_64& rng) {
  EonModel model;
  model.hyper.layer_dims = layer_dims;
  const int N = model.hyper.N();
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  model.hyper.epsilon.resize(static_cast<std::size_t>(N) + 2);
  for (auto& e : model.hyper.epsilon) e = 0.01 + 0.1 * unit(rng);
  model.hyper.delta.assign(static_cast<std::size_t>(N), 0.0);
  for (auto& d : model.hyper.delta) d = 0.01 + 0.1 * unit(rng);
  model.hyper.gamma0_mode = mode;
  model.hyper.seed = rng();
  model.train_T = train_T;

  const Index K0 = layer_dims[0];
  const Index K1 = layer_dims[1];
  model.S = random_uniform_matrix(K0, K1, rng);
  for (int n = 0; n < N; ++n)
    model.theta.push_back(
        random_column_stochastic(layer_dims[static_cast<std::size_t>(n) + 1],
                                 layer_dims[static_cast<std::size_t>(n) + 2], rng));
  model.gamma0.mode = mode;
  switch (mode) {
    case Gamma0Mode::kFixedUniform:
      break;
    case Gamma0Mode::kFeatureWeights:
      model.gamma0.w = random_simplex(K0, rng);
      break;
    case Gamma0Mode::kRank1:
      model.gamma0.w = random_simplex(K0, rng);
      model.gamma0.s = random_simplex(train_T, rng);
      break;
    case Gamma0Mode::kFullMatrix: {
      Vector flat = random_simplex(K0 * train_T, rng);
      model.gamma0.full = Eigen::Map<Matrix>(flat.data(), K0, train_T);
      break;
    }
  }
  return model;
}

Dataset random_dataset(Index K0, Index M, Index T, std::mt19937_64& rng) {
  Dataset data;
  data.X = random_uniform_matrix(K0, T, rng);
  std::uniform_int_distribution<int> label(0, static_cast<int>(M) - 1);
  std::vector<int> labels(static_cast<std::size_t>(T));
  for (auto& l : labels) l = label(rng);
  data.pi = one_hot_columns(labels, M);
  return data;
}

std::string format_seconds(double seconds) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.1fs", seconds);
  return buf;
}

}  // namespace acceptance
