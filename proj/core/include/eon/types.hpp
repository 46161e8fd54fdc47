#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

namespace eon {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using Index = Eigen::Index;

// Ordered list of probability vectors, one per network layer (sizes K_1..K_{N+1}).
// Used for the per-point layer stack in the Gamma problem.
struct BlockVector {
  std::vector<Vector> blocks;

  Index block_count() const { return static_cast<Index>(blocks.size()); }

  Index total_size() const {
    Index n = 0;
    for (const auto& b : blocks) n += b.size();
    return n;
  }

  // Euclidean norm of the concatenation.
  double norm() const {
    double s = 0.0;
    for (const auto& b : blocks) s += b.squaredNorm();
    return std::sqrt(s);
  }

  double distance(const BlockVector& other) const {
    double s = 0.0;
    for (std::size_t i = 0; i < blocks.size(); ++i)
      s += (blocks[i] - other.blocks[i]).squaredNorm();
    return std::sqrt(s);
  }
};

// Labeled dataset: X is K0 x T (features in columns), pi is M x T with
// probability-vector columns (class affiliation).
struct Dataset {
  Matrix X;
  Matrix pi;

  Index feature_dim() const { return X.rows(); }
  Index size() const { return X.cols(); }
  Index label_dim() const { return pi.rows(); }
};

// splitmix64 step; used to derive independent RNG streams from a base seed.
inline std::uint64_t mix_seed(std::uint64_t base, std::uint64_t stream) {
  std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace eon
