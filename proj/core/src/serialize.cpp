#include "eon/serialize.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <sstream>

#include "eon/errors.hpp"

static_assert(std::endian::native == std::endian::little,
              "model serialization assumes a little-endian host");

namespace eon {

namespace {

constexpr char kMagic[8] = {'E', 'O', 'N', 'M', 'O', 'D', 'E', 'L'};
constexpr std::uint32_t kEndianTag = 0x01020304u;

void put_bytes(std::ostream& out, const void* p, std::size_t n) {
  out.write(static_cast<const char*>(p), static_cast<std::streamsize>(n));
  if (!out) throw io_error("model write failed");
}

template <typename T>
void put(std::ostream& out, T v) {
  put_bytes(out, &v, sizeof(T));
}

void put_matrix_rowmajor(std::ostream& out, const Matrix& M) {
  for (Index i = 0; i < M.rows(); ++i)
    for (Index j = 0; j < M.cols(); ++j) put<double>(out, M(i, j));
}

void get_bytes(std::istream& in, void* p, std::size_t n) {
  in.read(static_cast<char*>(p), static_cast<std::streamsize>(n));
  if (static_cast<std::size_t>(in.gcount()) != n)
    throw malformed_file("model file truncated");
}

template <typename T>
T get(std::istream& in) {
  T v;
  get_bytes(in, &v, sizeof(T));
  return v;
}

Matrix get_matrix_rowmajor(std::istream& in, Index rows, Index cols) {
  Matrix M(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) M(i, j) = get<double>(in);
  return M;
}

}  // namespace

void save_model(const EonModel& model, std::ostream& out) {
  model.hyper.validate();
  const int N = model.N();
  put_bytes(out, kMagic, sizeof(kMagic));
  put<std::uint32_t>(out, kEndianTag);
  put<std::uint32_t>(out, kModelFormatVersion);
  put<std::uint32_t>(out, static_cast<std::uint32_t>(N));
  put<std::uint32_t>(out, static_cast<std::uint32_t>(model.hyper.gamma0_mode));
  put<std::int64_t>(out, model.train_T);
  for (int k : model.hyper.layer_dims) put<std::uint32_t>(out, static_cast<std::uint32_t>(k));
  for (double e : model.hyper.epsilon) put<double>(out, e);
  for (double d : model.hyper.delta) put<double>(out, d);
  put<double>(out, model.hyper.tolerance);
  put<std::uint32_t>(out, static_cast<std::uint32_t>(model.hyper.max_outer_iters));
  put<std::uint32_t>(out, static_cast<std::uint32_t>(model.hyper.max_gamma_iters));
  put<double>(out, model.hyper.theta_floor);
  put<std::uint64_t>(out, model.hyper.seed);
  put<std::uint32_t>(out, static_cast<std::uint32_t>(model.hyper.restarts));
  put_matrix_rowmajor(out, model.S);
  for (const Matrix& th : model.theta) put_matrix_rowmajor(out, th);
  switch (model.gamma0.mode) {
    case Gamma0Mode::kFixedUniform:
      break;
    case Gamma0Mode::kFeatureWeights:
      for (Index i = 0; i < model.gamma0.w.size(); ++i) put<double>(out, model.gamma0.w[i]);
      break;
    case Gamma0Mode::kRank1:
      for (Index i = 0; i < model.gamma0.w.size(); ++i) put<double>(out, model.gamma0.w[i]);
      for (Index i = 0; i < model.gamma0.s.size(); ++i) put<double>(out, model.gamma0.s[i]);
      break;
    case Gamma0Mode::kFullMatrix:
      put_matrix_rowmajor(out, model.gamma0.full);
      break;
  }
}

void save_model(const EonModel& model, const std::string& path) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw io_error("cannot open '" + path + "' for writing");
  save_model(model, f);
  f.flush();
  if (!f) throw io_error("write to '" + path + "' failed");
}

EonModel load_model(std::istream& in) {
  char magic[8];
  get_bytes(in, magic, sizeof(magic));
  if (std::memcmp(magic, kMagic, sizeof(kMagic)) != 0)
    throw malformed_file("bad magic: not a model file");
  const auto endian_tag = get<std::uint32_t>(in);
  if (endian_tag != kEndianTag)
    throw malformed_file("unsupported byte order in model file");
  const auto version = get<std::uint32_t>(in);
  if (version > kModelFormatVersion)
    throw version_mismatch("model file format version " + std::to_string(version) +
                           " is newer than supported version " +
                           std::to_string(kModelFormatVersion));
  if (version == 0) throw malformed_file("model file format version 0 is invalid");

  const auto N = get<std::uint32_t>(in);
  if (N < 1 || N > 1024) throw malformed_file("implausible layer count");
  const auto mode_raw = get<std::uint32_t>(in);
  if (mode_raw > 3) throw malformed_file("unknown gamma0 mode tag");

  EonModel model;
  model.hyper.gamma0_mode = static_cast<Gamma0Mode>(mode_raw);
  model.train_T = get<std::int64_t>(in);
  if (model.train_T < 1) throw malformed_file("train_T must be >= 1");

  model.hyper.layer_dims.resize(N + 2);
  for (auto& k : model.hyper.layer_dims) {
    const auto v = get<std::uint32_t>(in);
    if (v < 1 || v > (1u << 24)) throw malformed_file("implausible layer width");
    k = static_cast<int>(v);
  }
  model.hyper.epsilon.resize(N + 2);
  for (auto& e : model.hyper.epsilon) e = get<double>(in);
  model.hyper.delta.resize(N);
  for (auto& d : model.hyper.delta) d = get<double>(in);
  model.hyper.tolerance = get<double>(in);
  model.hyper.max_outer_iters = static_cast<int>(get<std::uint32_t>(in));
  model.hyper.max_gamma_iters = static_cast<int>(get<std::uint32_t>(in));
  model.hyper.theta_floor = get<double>(in);
  model.hyper.seed = get<std::uint64_t>(in);
  model.hyper.restarts = static_cast<int>(get<std::uint32_t>(in));
  try {
    model.hyper.validate();
  } catch (const invalid_argument& e) {
    throw malformed_file(std::string("invalid hyperparameters in model file: ") + e.what());
  }

  model.S = get_matrix_rowmajor(in, model.K(0), model.K(1));
  model.theta.reserve(N);
  for (std::uint32_t n = 1; n <= N; ++n)
    model.theta.push_back(get_matrix_rowmajor(in, model.K(static_cast<int>(n)),
                                              model.K(static_cast<int>(n) + 1)));
  model.gamma0.mode = model.hyper.gamma0_mode;
  switch (model.gamma0.mode) {
    case Gamma0Mode::kFixedUniform:
      break;
    case Gamma0Mode::kFeatureWeights:
      model.gamma0.w.resize(model.K(0));
      for (Index i = 0; i < model.gamma0.w.size(); ++i) model.gamma0.w[i] = get<double>(in);
      break;
    case Gamma0Mode::kRank1:
      model.gamma0.w.resize(model.K(0));
      for (Index i = 0; i < model.gamma0.w.size(); ++i) model.gamma0.w[i] = get<double>(in);
      model.gamma0.s.resize(model.train_T);
      for (Index i = 0; i < model.gamma0.s.size(); ++i) model.gamma0.s[i] = get<double>(in);
      break;
    case Gamma0Mode::kFullMatrix:
      model.gamma0.full = get_matrix_rowmajor(in, model.K(0), model.train_T);
      break;
  }

  char extra;
  in.read(&extra, 1);
  if (in.gcount() != 0) throw malformed_file("trailing bytes after model payload");
  return model;
}

EonModel load_model(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw io_error("cannot open '" + path + "' for reading");
  return load_model(f);
}

}  // namespace eon
