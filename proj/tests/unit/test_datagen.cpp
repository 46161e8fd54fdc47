#include <cmath>
#include <random>

#include "doctest.h"
#include "eon/datagen.hpp"
#include "eon/errors.hpp"
#include "eon/types.hpp"

using namespace eon;

namespace {

SyntheticSpec stacked_spec(int D, int K, long T, std::uint64_t seed,
                           double separation = 8.0) {
  SyntheticSpec spec;
  spec.kind = SyntheticSpec::Kind::kStackedGaussians;
  spec.D = D;
  spec.K = K;
  spec.T = T;
  spec.seed = seed;
  spec.gauss_separation = separation;
  return spec;
}

SyntheticSpec rings_spec(int D, int K, long T, std::uint64_t seed,
                         double noise = 0.02) {
  SyntheticSpec spec;
  spec.kind = SyntheticSpec::Kind::kRings;
  spec.D = D;
  spec.K = K;
  spec.T = T;
  spec.seed = seed;
  spec.ring_noise = noise;
  return spec;
}

int argmax_col(const Matrix& pi, Index t) {
  Index best = 0;
  pi.col(t).maxCoeff(&best);
  return static_cast<int>(best);
}

}  // namespace

TEST_SUITE_BEGIN("datagen");

TEST_CASE("stacked gaussians land in the unit box with exact per-dim extremes") {
  const Dataset data = gen_stacked_gaussians(stacked_spec(3, 2, 50, 7));
  REQUIRE(data.X.rows() == 3);
  REQUIRE(data.X.cols() == 50);
  for (Index d = 0; d < 3; ++d) {
    // Min-max rescaling maps the per-dim extremes to exactly 0 and 1.
    CHECK(data.X.row(d).minCoeff() == 0.0);
    CHECK(data.X.row(d).maxCoeff() == 1.0);
  }
}

TEST_CASE("stacked gaussians are separable by their generating centers") {
  GenInfo info;
  const SyntheticSpec spec = stacked_spec(4, 3, 3000, 11);
  const Dataset data = gen_stacked_gaussians(spec, &info);

  REQUIRE(info.centers.size() == 3);
  REQUIRE(info.components.size() == 3000);
  // Undo the affine rescale, then classify by the nearest pre-rescale center.
  long hits = 0;
  for (Index t = 0; t < 3000; ++t) {
    Vector z(4);
    for (Index d = 0; d < 4; ++d)
      z[d] = data.X(d, t) * info.rescale_range[d] + info.rescale_min[d];
    int best = 0;
    double best_dist = (z - info.centers[0]).squaredNorm();
    for (int k = 1; k < 3; ++k) {
      const double dist = (z - info.centers[static_cast<std::size_t>(k)]).squaredNorm();
      if (dist < best_dist) {
        best_dist = dist;
        best = k;
      }
    }
    const int truth = info.components[static_cast<std::size_t>(t)];
    CHECK(truth == static_cast<int>(t % 3));
    CHECK(argmax_col(data.pi, t) == truth);
    if (best == truth) ++hits;
  }
  CHECK(static_cast<double>(hits) / 3000.0 >= 0.998);
}

TEST_CASE("stacked gaussians use an orthonormal rotation") {
  GenInfo info;
  gen_stacked_gaussians(stacked_spec(5, 2, 20, 3), &info);
  REQUIRE(info.rotation.rows() == 5);
  REQUIRE(info.rotation.cols() == 5);
  const Matrix gram = info.rotation.transpose() * info.rotation;
  CHECK((gram - Matrix::Identity(5, 5)).norm() <= 1e-10);
}

TEST_CASE("constant dimensions rescale to one half") {
  // D = 1 with a single component: the lone informative direction spans the
  // data, so every other behavior reduces to the K = 1 degenerate case.
  GenInfo info;
  const Dataset data = gen_stacked_gaussians(stacked_spec(1, 1, 30, 5), &info);
  CHECK(data.X.row(0).minCoeff() == 0.0);
  CHECK(data.X.row(0).maxCoeff() == 1.0);
  REQUIRE(data.pi.rows() == 1);
  CHECK(data.pi.row(0).minCoeff() == 1.0);
}

TEST_CASE("noise-free rings have exact radius and lie in their plane") {
  GenInfo info;
  const Dataset data = gen_rings(rings_spec(4, 2, 200, 13, 0.0), &info);
  REQUIRE(info.rings.size() == 2);

  for (Index t = 0; t < 200; ++t) {
    const RingInfo& ring = info.rings[static_cast<std::size_t>(t % 2)];
    const Vector r = data.X.col(t) - ring.center;
    CHECK(std::abs(r.norm() - ring.radius) <= 1e-12);
    // Component orthogonal to the plane basis vanishes.
    const Vector residual = r - r.dot(ring.u) * ring.u - r.dot(ring.v) * ring.v;
    CHECK(residual.norm() <= 1e-12);
  }
}

TEST_CASE("ring planes are orthonormal and points stay in the unit box") {
  GenInfo info;
  const Dataset data = gen_rings(rings_spec(3, 3, 120, 17, 0.05), &info);
  for (const RingInfo& ring : info.rings) {
    CHECK(std::abs(ring.u.norm() - 1.0) <= 1e-12);
    CHECK(std::abs(ring.v.norm() - 1.0) <= 1e-12);
    CHECK(std::abs(ring.u.dot(ring.v)) <= 1e-12);
    CHECK(ring.radius >= 0.1);
    CHECK(ring.radius <= 0.25);
  }
  CHECK(data.X.minCoeff() >= 0.0);
  CHECK(data.X.maxCoeff() <= 1.0);
  for (Index t = 0; t < 120; ++t)
    CHECK(argmax_col(data.pi, t) == static_cast<int>(t % 3));
}

TEST_CASE("bioinformatics clusters are recovered by the informative dims") {
  GenInfo info;
  const Dataset data = gen_bioinformatics(600, 23, &info);
  REQUIRE(data.X.rows() == 6);
  REQUIRE(data.X.cols() == 600);
  REQUIRE(data.pi.rows() == 2);
  REQUIRE(info.centers.size() == 3);

  // Frozen generating layout: L-shaped cluster centers in dims 1-2 with the
  // corner cluster and the far diagonal cluster sharing a class.
  const double centers[3][2] = {{0.25, 0.25}, {0.25, 0.75}, {0.75, 0.75}};
  const int cls[3] = {0, 1, 0};
  for (int k = 0; k < 3; ++k) {
    CHECK(info.centers[static_cast<std::size_t>(k)][0] == centers[k][0]);
    CHECK(info.centers[static_cast<std::size_t>(k)][1] == centers[k][1]);
  }

  long hits = 0;
  for (Index t = 0; t < 600; ++t) {
    int best = 0;
    double best_dist = 1e300;
    for (int k = 0; k < 3; ++k) {
      const double dx = data.X(0, t) - centers[k][0];
      const double dy = data.X(1, t) - centers[k][1];
      if (dx * dx + dy * dy < best_dist) {
        best_dist = dx * dx + dy * dy;
        best = k;
      }
    }
    CHECK(info.components[static_cast<std::size_t>(t)] == static_cast<int>(t % 3));
    if (cls[best] == argmax_col(data.pi, t)) ++hits;
  }
  CHECK(hits == 600);

  // Every single-dim projection merges two clusters with different labels,
  // so no one dimension can separate the classes on its own.
  for (int k = 0; k < 3; ++k)
    for (int j = k + 1; j < 3; ++j) {
      const bool share_x = centers[k][0] == centers[j][0];
      const bool share_y = centers[k][1] == centers[j][1];
      if (share_x || share_y) CHECK(cls[k] != cls[j]);
    }
}

TEST_CASE("bioinformatics noise dims are uniform draws in the unit box") {
  const Dataset data = gen_bioinformatics(400, 29);
  for (Index d = 2; d < 6; ++d) {
    CHECK(data.X.row(d).minCoeff() >= 0.0);
    CHECK(data.X.row(d).maxCoeff() <= 1.0);
    // A uniform sample of 400 points covers the box; a tight cluster would not.
    CHECK(data.X.row(d).maxCoeff() - data.X.row(d).minCoeff() > 0.8);
  }
}

TEST_CASE("generation is deterministic per seed") {
  const SyntheticSpec spec = rings_spec(3, 2, 40, 31);
  const Dataset a = generate(spec);
  const Dataset b = generate(spec);
  CHECK((a.X - b.X).cwiseAbs().maxCoeff() == 0.0);
  CHECK((a.pi - b.pi).cwiseAbs().maxCoeff() == 0.0);

  SyntheticSpec other = spec;
  other.seed = 32;
  const Dataset c = generate(other);
  CHECK((a.X - c.X).cwiseAbs().maxCoeff() > 0.0);
}

TEST_CASE("generate dispatches on kind") {
  const SyntheticSpec spec = stacked_spec(2, 2, 10, 37);
  const Dataset a = generate(spec);
  const Dataset b = gen_stacked_gaussians(spec);
  CHECK((a.X - b.X).cwiseAbs().maxCoeff() == 0.0);

  SyntheticSpec bio;
  bio.kind = SyntheticSpec::Kind::kBioinformatics;
  bio.D = 6;
  bio.K = 3;
  bio.T = 12;
  bio.seed = 41;
  const Dataset c = generate(bio);
  const Dataset d = gen_bioinformatics(12, 41);
  CHECK((c.X - d.X).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("kind strings round-trip") {
  for (auto kind : {SyntheticSpec::Kind::kStackedGaussians,
                    SyntheticSpec::Kind::kRings,
                    SyntheticSpec::Kind::kBioinformatics})
    CHECK(synthetic_kind_from_string(to_string(kind)) == kind);
  CHECK_THROWS_AS(synthetic_kind_from_string("moons"), invalid_argument);
}

TEST_CASE("generating-process parameter counts") {
  SyntheticSpec bio;
  bio.kind = SyntheticSpec::Kind::kBioinformatics;
  bio.D = 6;
  bio.K = 3;
  bio.T = 100;
  CHECK(kolmogorov_complexity(bio) == 13);

  // K-1 hyperplanes of D+1 numbers each plus K labels.
  CHECK(kolmogorov_complexity(stacked_spec(2, 2, 10, 0)) == 5);
  CHECK(kolmogorov_complexity(stacked_spec(5, 4, 10, 0)) == 22);
  CHECK(kolmogorov_complexity(stacked_spec(7, 1, 10, 0)) == 1);

  // Per ring: center, two basis vectors, radius, label.
  CHECK(kolmogorov_complexity(rings_spec(3, 2, 10, 0)) == 22);
  CHECK(kolmogorov_complexity(rings_spec(2, 1, 10, 0)) == 8);
}

TEST_CASE("memorization size is T times K0 plus one") {
  CHECK(data_complexity(260, 13) == 3640);
  CHECK(data_complexity(1, 1) == 2);
  CHECK_THROWS_AS(data_complexity(0, 4), invalid_argument);
  CHECK_THROWS_AS(data_complexity(10, 0), invalid_argument);
}

TEST_CASE("spec validation rejects inconsistent fields") {
  CHECK_THROWS_AS(gen_stacked_gaussians(stacked_spec(2, 5, 3, 0)), invalid_argument);
  CHECK_THROWS_AS(gen_stacked_gaussians(stacked_spec(0, 2, 10, 0)), invalid_argument);
  CHECK_THROWS_AS(gen_stacked_gaussians(stacked_spec(2, 2, 10, 0, -1.0)), invalid_argument);
  CHECK_THROWS_AS(gen_rings(rings_spec(1, 2, 10, 0)), invalid_argument);
  CHECK_THROWS_AS(gen_rings(rings_spec(3, 2, 10, 0, -0.1)), invalid_argument);
  CHECK_THROWS_AS(gen_bioinformatics(2, 0), invalid_argument);

  SyntheticSpec bad_bio;
  bad_bio.kind = SyntheticSpec::Kind::kBioinformatics;
  bad_bio.D = 5;
  bad_bio.K = 3;
  bad_bio.T = 30;
  CHECK_THROWS_AS(bad_bio.validate(), invalid_argument);

  // Kind-specific entry points reject mismatched specs.
  CHECK_THROWS_AS(gen_rings(stacked_spec(2, 2, 10, 0)), invalid_argument);
  CHECK_THROWS_AS(gen_stacked_gaussians(rings_spec(2, 2, 10, 0)), invalid_argument);
}

TEST_SUITE_END();
