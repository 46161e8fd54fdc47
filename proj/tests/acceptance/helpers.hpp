#pragma once

// Shared builders and small utilities for the acceptance battery.

#include <chrono>
#include <random>
#include <string>
#include <vector>

#include "eon/model.hpp"
#include "eon/training.hpp"
#include "eon/types.hpp"

namespace acceptance {

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

eon::Vector random_simplex(eon::Index K, std::mt19937_64& rng);
eon::Matrix random_column_stochastic(eon::Index rows, eon::Index cols,
                                     std::mt19937_64& rng);
eon::Matrix random_uniform_matrix(eon::Index rows, eon::Index cols,
                                  std::mt19937_64& rng);
eon::Matrix one_hot_columns(const std::vector<int>& labels, eon::Index M);

// Fully random valid model (theta entries bounded away from the floor).
eon::EonModel random_model(const std::vector<int>& layer_dims, eon::Gamma0Mode mode,
                           eon::Index train_T, std::mt19937_64& rng);

// Random labeled dataset with uniform features and one-hot labels.
eon::Dataset random_dataset(eon::Index K0, eon::Index M, eon::Index T,
                            std::mt19937_64& rng);

std::string format_seconds(double seconds);

}  // namespace acceptance
