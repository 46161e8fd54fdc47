#pragma once

// Shared seeded builders for unit tests. Everything here is deterministic in
// the passed RNG so test failures reproduce exactly.

#include <random>
#include <vector>

#include "eon/model.hpp"
#include "eon/training.hpp"
#include "eon/types.hpp"

namespace testutil {

inline eon::Vector random_simplex(eon::Index K, std::mt19937_64& rng) {
  // -log(1-U) draws are Exp(1); normalizing yields a Dirichlet(1,..,1) point.
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  eon::Vector v(K);
  for (eon::Index i = 0; i < K; ++i) v[i] = -std::log(1.0 - unit(rng));
  return v / v.sum();
}

inline eon::Matrix random_column_stochastic(eon::Index rows, eon::Index cols,
                                            std::mt19937_64& rng) {
  eon::Matrix m(rows, cols);
  for (eon::Index j = 0; j < cols; ++j) m.col(j) = random_simplex(rows, rng);
  return m;
}

inline eon::Matrix random_uniform_matrix(eon::Index rows, eon::Index cols,
                                         std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  eon::Matrix m(rows, cols);
  for (eon::Index j = 0; j < cols; ++j)
    for (eon::Index i = 0; i < rows; ++i) m(i, j) = unit(rng);
  return m;
}

inline eon::Matrix one_hot_columns(const std::vector<int>& labels, eon::Index M) {
  eon::Matrix pi = eon::Matrix::Zero(M, static_cast<eon::Index>(labels.size()));
  for (std::size_t t = 0; t < labels.size(); ++t)
    pi(labels[t], static_cast<eon::Index>(t)) = 1.0;
  return pi;
}

// Fully populated valid model with random parameters. layer_dims has N+2
// entries; theta entries stay well above the floor so logs are clamp-free.
inline eon::EonModel random_model(const std::vector<int>& layer_dims,
                                  eon::Gamma0Mode mode, eon::Index train_T,
                                  std::mt19937_64& rng) {
  eon::EonModel model;
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

  const eon::Index K0 = layer_dims[0];
  const eon::Index K1 = layer_dims[1];
  model.S = random_uniform_matrix(K0, K1, rng);
  for (int n = 0; n < N; ++n)
    model.theta.push_back(random_column_stochastic(layer_dims[static_cast<std::size_t>(n) + 1],
                                                   layer_dims[static_cast<std::size_t>(n) + 2],
                                                   rng));
  model.gamma0.mode = mode;
  switch (mode) {
    case eon::Gamma0Mode::kFixedUniform:
      break;
    case eon::Gamma0Mode::kFeatureWeights:
      model.gamma0.w = random_simplex(K0, rng);
      break;
    case eon::Gamma0Mode::kRank1:
      model.gamma0.w = random_simplex(K0, rng);
      model.gamma0.s = random_simplex(train_T, rng);
      break;
    case eon::Gamma0Mode::kFullMatrix: {
      eon::Vector flat = random_simplex(K0 * train_T, rng);
      model.gamma0.full = Eigen::Map<eon::Matrix>(flat.data(), K0, train_T);
      break;
    }
  }
  return model;
}

// Random per-dataset layer stack with simplex columns; layer n has size
// layer_dims[n+1].
inline eon::GammaStack random_stack(const std::vector<int>& layer_dims, eon::Index T,
                                    std::mt19937_64& rng) {
  eon::GammaStack stack;
  for (std::size_t n = 1; n < layer_dims.size(); ++n)
    stack.layers.push_back(
        random_column_stochastic(layer_dims[n], T, rng));
  return stack;
}

}  // namespace testutil
