#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "eon/types.hpp"

namespace eon {

struct SyntheticSpec {
  enum class Kind { kStackedGaussians, kRings, kBioinformatics };

  Kind kind = Kind::kStackedGaussians;
  int D = 2;        // ambient dimension (bioinformatics forces 6)
  int K = 2;        // object count: components / rings / clusters
  long T = 100;     // sample count
  std::uint64_t seed = 0;
  // stacked-gaussians: distance between adjacent centers in sigma units.
  double gauss_separation = 8.0;
  // rings: radial Gaussian noise sigma as a fraction of the ring radius.
  double ring_noise = 0.02;

  // Throws invalid_argument on inconsistent fields (D >= 2 for rings, T >= K,
  // bioinformatics pinned to D=6, K=3).
  void validate() const;
};

SyntheticSpec::Kind synthetic_kind_from_string(const std::string& name);
const char* to_string(SyntheticSpec::Kind kind);

struct RingInfo {
  Vector center;
  Vector u, v;  // orthonormal plane basis
  double radius = 0.0;
};

// Ground-truth internals exposed for oracle checks.
struct GenInfo {
  Matrix rotation;                // stacked-gaussians embedding
  std::vector<Vector> centers;    // component centers (pre-rescale coordinates)
  Vector rescale_min;             // stacked-gaussians per-dim affine map into [0,1]
  Vector rescale_range;
  std::vector<RingInfo> rings;
  std::vector<int> components;    // generating component per point
};

// Orthonormal D x D matrix from the QR factorization of a seeded Gaussian
// matrix.
Matrix random_rotation(int D, std::mt19937_64& rng);

// K unit-variance Gaussians with centers spaced gauss_separation sigma apart
// along a line, rotated into D dims and min-max rescaled into [0,1]^D.
// Component of point t is t mod K. Deterministic per seed.
Dataset gen_stacked_gaussians(const SyntheticSpec& spec, GenInfo* info = nullptr);

// K circles of random radius in random 2-D planes through random centers,
// with radial Gaussian noise ring_noise * radius; all points in [0,1]^D.
// Ring of point t is t mod K. Deterministic per seed.
Dataset gen_rings(const SyntheticSpec& spec, GenInfo* info = nullptr);

// 6 dims, three tight 2-D clusters in dims 1-2 (two map to the first class,
// one to the second), dims 3-6 i.i.d. uniform noise. The cluster layout is an
// L: each single-dim projection merges two differently-labeled clusters, so
// both informative dims are needed. Cluster of point t is t mod 3.
// Deterministic per seed.
Dataset gen_bioinformatics(long T, std::uint64_t seed, GenInfo* info = nullptr);

// Dispatch on spec.kind.
Dataset generate(const SyntheticSpec& spec, GenInfo* info = nullptr);

// Exact parameter counts of the generating process:
// bioinformatics -> 13; stacked-gaussians -> (K-1)(D+1) + K;
// rings -> K(3D + 2).
long kolmogorov_complexity(const SyntheticSpec& spec);

// Worst-case memorization size: T * (K0 + 1).
long data_complexity(long T, int K0);

}  // namespace eon
