#include <bit>
#include <cstdint>
#include <fstream>
#include <random>
#include <sstream>

#include "doctest.h"
#include "eon/errors.hpp"
#include "eon/serialize.hpp"
#include "eon/training.hpp"
#include "helpers.hpp"

using namespace eon;

namespace {

bool bits_equal(double a, double b) {
  return std::bit_cast<std::uint64_t>(a) == std::bit_cast<std::uint64_t>(b);
}

bool bits_equal(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (Index j = 0; j < a.cols(); ++j)
    for (Index i = 0; i < a.rows(); ++i)
      if (!bits_equal(a(i, j), b(i, j))) return false;
  return true;
}

bool bits_equal(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) return false;
  for (Index i = 0; i < a.size(); ++i)
    if (!bits_equal(a[i], b[i])) return false;
  return true;
}

bool models_equal(const EonModel& a, const EonModel& b) {
  if (a.hyper.layer_dims != b.hyper.layer_dims) return false;
  if (a.hyper.epsilon.size() != b.hyper.epsilon.size()) return false;
  for (std::size_t i = 0; i < a.hyper.epsilon.size(); ++i)
    if (!bits_equal(a.hyper.epsilon[i], b.hyper.epsilon[i])) return false;
  if (a.hyper.delta.size() != b.hyper.delta.size()) return false;
  for (std::size_t i = 0; i < a.hyper.delta.size(); ++i)
    if (!bits_equal(a.hyper.delta[i], b.hyper.delta[i])) return false;
  if (a.hyper.gamma0_mode != b.hyper.gamma0_mode) return false;
  if (!bits_equal(a.hyper.tolerance, b.hyper.tolerance)) return false;
  if (a.hyper.max_outer_iters != b.hyper.max_outer_iters) return false;
  if (a.hyper.max_gamma_iters != b.hyper.max_gamma_iters) return false;
  if (!bits_equal(a.hyper.theta_floor, b.hyper.theta_floor)) return false;
  if (a.hyper.seed != b.hyper.seed) return false;
  if (a.hyper.restarts != b.hyper.restarts) return false;
  if (a.train_T != b.train_T) return false;
  if (!bits_equal(a.S, b.S)) return false;
  if (a.theta.size() != b.theta.size()) return false;
  for (std::size_t n = 0; n < a.theta.size(); ++n)
    if (!bits_equal(a.theta[n], b.theta[n])) return false;
  if (a.gamma0.mode != b.gamma0.mode) return false;
  switch (a.gamma0.mode) {
    case Gamma0Mode::kFixedUniform:
      break;
    case Gamma0Mode::kFeatureWeights:
      if (!bits_equal(a.gamma0.w, b.gamma0.w)) return false;
      break;
    case Gamma0Mode::kRank1:
      if (!bits_equal(a.gamma0.w, b.gamma0.w)) return false;
      if (!bits_equal(a.gamma0.s, b.gamma0.s)) return false;
      break;
    case Gamma0Mode::kFullMatrix:
      if (!bits_equal(a.gamma0.full, b.gamma0.full)) return false;
      break;
  }
  return true;
}

std::string to_bytes(const EonModel& model) {
  std::ostringstream out(std::ios::binary);
  save_model(model, out);
  return out.str();
}

EonModel from_bytes(const std::string& bytes) {
  std::istringstream in(bytes, std::ios::binary);
  return load_model(in);
}

// Fixed reference model used for the on-disk golden file: every value is
// pinned so the committed bytes stay meaningful across refactors.
EonModel golden_model() {
  EonModel m;
  m.hyper.layer_dims = {2, 2, 2};
  m.hyper.epsilon = {4e-3, 1e-4, 1e-4};
  m.hyper.delta = {1e-3};
  m.hyper.gamma0_mode = Gamma0Mode::kFeatureWeights;
  m.hyper.tolerance = 1e-8;
  m.hyper.max_outer_iters = 200;
  m.hyper.max_gamma_iters = 100;
  m.hyper.theta_floor = 1e-12;
  m.hyper.seed = 424242;
  m.hyper.restarts = 3;
  m.train_T = 7;
  m.S = Matrix(2, 2);
  m.S << 0.125, 0.875,
         0.25, 0.75;
  m.theta.push_back(Matrix(2, 2));
  m.theta[0] << 0.9, 0.2,
                0.1, 0.8;
  m.gamma0.mode = Gamma0Mode::kFeatureWeights;
  m.gamma0.w = Vector(2);
  m.gamma0.w << 0.625, 0.375;
  return m;
}

}  // namespace

TEST_SUITE_BEGIN("serialize");

TEST_CASE("round trip is bit-identical for every gamma0 mode") {
  std::mt19937_64 rng(101);
  for (Gamma0Mode mode :
       {Gamma0Mode::kFixedUniform, Gamma0Mode::kFeatureWeights, Gamma0Mode::kRank1,
        Gamma0Mode::kFullMatrix}) {
    EonModel model = testutil::random_model({4, 3, 2}, mode, 9, rng);
    const std::string bytes = to_bytes(model);
    const EonModel back = from_bytes(bytes);
    CHECK(models_equal(model, back));
    // Re-serializing the loaded model reproduces the byte stream exactly.
    CHECK(to_bytes(back) == bytes);
  }
}

TEST_CASE("round trip covers deep stacks") {
  std::mt19937_64 rng(103);
  EonModel model = testutil::random_model({5, 4, 3, 2}, Gamma0Mode::kRank1, 11, rng);
  CHECK(models_equal(model, from_bytes(to_bytes(model))));
}

TEST_CASE("serialization is deterministic") {
  std::mt19937_64 rng(105);
  EonModel model = testutil::random_model({3, 3, 3}, Gamma0Mode::kFullMatrix, 6, rng);
  CHECK(to_bytes(model) == to_bytes(model));
}

TEST_CASE("truncated and padded streams are rejected") {
  std::mt19937_64 rng(107);
  EonModel model = testutil::random_model({3, 2, 2}, Gamma0Mode::kFeatureWeights, 5, rng);
  const std::string bytes = to_bytes(model);

  CHECK_THROWS_AS(from_bytes(bytes.substr(0, bytes.size() - 1)), malformed_file);
  CHECK_THROWS_AS(from_bytes(bytes.substr(0, 12)), malformed_file);
  CHECK_THROWS_AS(from_bytes(std::string()), malformed_file);
  CHECK_THROWS_AS(from_bytes(bytes + "x"), malformed_file);
}

TEST_CASE("bad magic and newer version are distinct failures") {
  std::mt19937_64 rng(109);
  EonModel model = testutil::random_model({3, 2, 2}, Gamma0Mode::kFixedUniform, 5, rng);
  std::string bytes = to_bytes(model);

  std::string wrong_magic = bytes;
  wrong_magic[0] = 'X';
  CHECK_THROWS_AS(from_bytes(wrong_magic), malformed_file);

  // Layout: magic(8) | endian(4) | version(4) -> version lives at offset 12.
  std::string newer = bytes;
  newer[12] = static_cast<char>(kModelFormatVersion + 1);
  CHECK_THROWS_AS(from_bytes(newer), version_mismatch);
}

TEST_CASE("file-path overloads reject unreadable paths") {
  std::mt19937_64 rng(111);
  EonModel model = testutil::random_model({2, 2, 2}, Gamma0Mode::kFixedUniform, 4, rng);
  CHECK_THROWS_AS(save_model(model, "/nonexistent-dir/model.eon"), io_error);
  CHECK_THROWS_AS(load_model("/nonexistent-dir/model.eon"), io_error);
}

TEST_CASE("golden file from a previous release still loads") {
  const std::string path = std::string(EON_TEST_DATA_DIR) + "/golden_model_v1.eon";
  const EonModel loaded = load_model(path);
  CHECK(models_equal(loaded, golden_model()));
}

// Regeneration hook for the golden file; excluded from normal runs. Run
// explicitly after a deliberate format change together with a version bump:
//   eon_unit -ts=serialize -tc="regenerate golden file" -ns
TEST_CASE("regenerate golden file" * doctest::skip()) {
  const std::string path = std::string(EON_TEST_DATA_DIR) + "/golden_model_v1.eon";
  save_model(golden_model(), path);
  CHECK(models_equal(load_model(path), golden_model()));
}

TEST_SUITE_END();
