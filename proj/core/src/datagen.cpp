#include "eon/datagen.hpp"

#include <cmath>
#include <string>

#include "eon/errors.hpp"

namespace eon {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Bioinformatics layout: three clusters in dims 1-2, two classes, two
// separating lines. The L-shape makes every single-dim projection merge two
// clusters with different labels, so a classifier needs both informative dims.
constexpr double kBioSigma = 0.04;
const double kBioCenters[3][2] = {{0.25, 0.25}, {0.25, 0.75}, {0.75, 0.75}};
constexpr int kBioClass[3] = {0, 1, 0};

Matrix one_hot_labels(const std::vector<int>& components, int classes) {
  Matrix pi = Matrix::Zero(classes, static_cast<Index>(components.size()));
  for (std::size_t t = 0; t < components.size(); ++t)
    pi(components[t], static_cast<Index>(t)) = 1.0;
  return pi;
}

}  // namespace

void SyntheticSpec::validate() const {
  if (T < 1) throw invalid_argument("synthetic spec: T must be >= 1");
  if (K < 1) throw invalid_argument("synthetic spec: K must be >= 1");
  if (T < K) throw invalid_argument("synthetic spec: T must be >= K");
  switch (kind) {
    case Kind::kStackedGaussians:
      if (D < 1) throw invalid_argument("synthetic spec: D must be >= 1");
      if (!(gauss_separation > 0.0))
        throw invalid_argument("synthetic spec: gauss_separation must be > 0");
      break;
    case Kind::kRings:
      if (D < 2) throw invalid_argument("synthetic spec: rings need D >= 2");
      if (!(ring_noise >= 0.0))
        throw invalid_argument("synthetic spec: ring_noise must be >= 0");
      break;
    case Kind::kBioinformatics:
      if (D != 6) throw invalid_argument("synthetic spec: bioinformatics is 6-dimensional");
      if (K != 3) throw invalid_argument("synthetic spec: bioinformatics has 3 clusters");
      break;
  }
}

SyntheticSpec::Kind synthetic_kind_from_string(const std::string& name) {
  if (name == "stacked-gaussians") return SyntheticSpec::Kind::kStackedGaussians;
  if (name == "rings") return SyntheticSpec::Kind::kRings;
  if (name == "bioinformatics") return SyntheticSpec::Kind::kBioinformatics;
  throw invalid_argument("unknown synthetic kind '" + name + "'");
}

const char* to_string(SyntheticSpec::Kind kind) {
  switch (kind) {
    case SyntheticSpec::Kind::kStackedGaussians: return "stacked-gaussians";
    case SyntheticSpec::Kind::kRings: return "rings";
    case SyntheticSpec::Kind::kBioinformatics: return "bioinformatics";
  }
  throw invalid_argument("unknown synthetic kind");
}

Matrix random_rotation(int D, std::mt19937_64& rng) {
  if (D < 1) throw invalid_argument("random_rotation: D must be >= 1");
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix G(D, D);
  for (Index j = 0; j < D; ++j)
    for (Index i = 0; i < D; ++i) G(i, j) = gauss(rng);
  Eigen::HouseholderQR<Matrix> qr(G);
  return qr.householderQ() * Matrix::Identity(D, D);
}

Dataset gen_stacked_gaussians(const SyntheticSpec& spec, GenInfo* info) {
  spec.validate();
  if (spec.kind != SyntheticSpec::Kind::kStackedGaussians)
    throw invalid_argument("gen_stacked_gaussians: wrong spec kind");
  std::mt19937_64 rng(spec.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const int D = spec.D;
  const long T = spec.T;

  const Matrix R = random_rotation(D, rng);
  std::vector<Vector> centers(static_cast<std::size_t>(spec.K));
  for (int k = 0; k < spec.K; ++k) {
    Vector c = Vector::Zero(D);
    c[0] = spec.gauss_separation * k;
    centers[static_cast<std::size_t>(k)] = R * c;
  }

  Dataset data;
  data.X.resize(D, T);
  std::vector<int> components(static_cast<std::size_t>(T));
  Vector z(D);
  for (long t = 0; t < T; ++t) {
    const int k = static_cast<int>(t % spec.K);
    components[static_cast<std::size_t>(t)] = k;
    for (Index d = 0; d < D; ++d) z[d] = gauss(rng);
    data.X.col(t) = centers[static_cast<std::size_t>(k)] + R * z;
  }

  // Min-max rescale each dim into [0,1]; constant dims map to 0.5.
  const Vector lo = data.X.rowwise().minCoeff();
  const Vector hi = data.X.rowwise().maxCoeff();
  Vector range = hi - lo;
  for (Index d = 0; d < D; ++d) {
    if (range[d] > 0.0)
      data.X.row(d) = (data.X.row(d).array() - lo[d]) / range[d];
    else
      data.X.row(d).setConstant(0.5);
  }

  data.pi = one_hot_labels(components, spec.K);
  if (info) {
    info->rotation = R;
    info->centers = std::move(centers);
    info->rescale_min = lo;
    info->rescale_range = range;
    info->components = std::move(components);
  }
  return data;
}

Dataset gen_rings(const SyntheticSpec& spec, GenInfo* info) {
  spec.validate();
  if (spec.kind != SyntheticSpec::Kind::kRings)
    throw invalid_argument("gen_rings: wrong spec kind");
  std::mt19937_64 rng(spec.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const int D = spec.D;
  const long T = spec.T;

  std::vector<RingInfo> rings(static_cast<std::size_t>(spec.K));
  for (auto& ring : rings) {
    ring.center.resize(D);
    for (Index d = 0; d < D; ++d) ring.center[d] = 0.3 + 0.4 * unit(rng);
    ring.radius = 0.1 + 0.15 * unit(rng);
    // Orthonormal plane basis by Gram-Schmidt on Gaussian draws.
    Vector u(D), v(D);
    do {
      for (Index d = 0; d < D; ++d) u[d] = gauss(rng);
    } while (u.norm() < 1e-12);
    u.normalize();
    double vnorm = 0.0;
    do {
      for (Index d = 0; d < D; ++d) v[d] = gauss(rng);
      v -= v.dot(u) * u;
      vnorm = v.norm();
    } while (vnorm < 1e-12);
    v /= vnorm;
    ring.u = u;
    ring.v = v;
  }

  Dataset data;
  data.X.resize(D, T);
  std::vector<int> components(static_cast<std::size_t>(T));
  for (long t = 0; t < T; ++t) {
    const int k = static_cast<int>(t % spec.K);
    components[static_cast<std::size_t>(t)] = k;
    const RingInfo& ring = rings[static_cast<std::size_t>(k)];
    const double phi = 2.0 * kPi * unit(rng);
    const double rho = ring.radius * (1.0 + spec.ring_noise * gauss(rng));
    Vector x = ring.center + rho * (std::cos(phi) * ring.u + std::sin(phi) * ring.v);
    for (Index d = 0; d < D; ++d) x[d] = std::clamp(x[d], 0.0, 1.0);
    data.X.col(t) = x;
  }

  data.pi = one_hot_labels(components, spec.K);
  if (info) {
    info->rings = std::move(rings);
    info->components = std::move(components);
  }
  return data;
}

Dataset gen_bioinformatics(long T, std::uint64_t seed, GenInfo* info) {
  if (T < 3) throw invalid_argument("gen_bioinformatics: T must be >= 3");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  Dataset data;
  data.X.resize(6, T);
  std::vector<int> components(static_cast<std::size_t>(T));
  std::vector<int> classes(static_cast<std::size_t>(T));
  for (long t = 0; t < T; ++t) {
    const int k = static_cast<int>(t % 3);
    components[static_cast<std::size_t>(t)] = k;
    classes[static_cast<std::size_t>(t)] = kBioClass[k];
    data.X(0, t) = std::clamp(kBioCenters[k][0] + kBioSigma * gauss(rng), 0.0, 1.0);
    data.X(1, t) = std::clamp(kBioCenters[k][1] + kBioSigma * gauss(rng), 0.0, 1.0);
    for (Index d = 2; d < 6; ++d) data.X(d, t) = unit(rng);
  }
  data.pi = one_hot_labels(classes, 2);

  if (info) {
    info->components = std::move(components);
    info->centers.clear();
    for (int k = 0; k < 3; ++k) {
      Vector c(2);
      c << kBioCenters[k][0], kBioCenters[k][1];
      info->centers.push_back(std::move(c));
    }
  }
  return data;
}

Dataset generate(const SyntheticSpec& spec, GenInfo* info) {
  switch (spec.kind) {
    case SyntheticSpec::Kind::kStackedGaussians: return gen_stacked_gaussians(spec, info);
    case SyntheticSpec::Kind::kRings: return gen_rings(spec, info);
    case SyntheticSpec::Kind::kBioinformatics: return gen_bioinformatics(spec.T, spec.seed, info);
  }
  throw invalid_argument("generate: unknown kind");
}

long kolmogorov_complexity(const SyntheticSpec& spec) {
  spec.validate();
  switch (spec.kind) {
    case SyntheticSpec::Kind::kBioinformatics:
      // Two separating lines (4), informative-dims vector (6), cluster labels (3).
      return 13;
    case SyntheticSpec::Kind::kStackedGaussians:
      // K-1 separating hyperplanes with D+1 params each, plus K labels.
      return static_cast<long>(spec.K - 1) * (spec.D + 1) + spec.K;
    case SyntheticSpec::Kind::kRings:
      // Per ring: center (D), plane basis (2D), radius (1), label (1).
      return static_cast<long>(spec.K) * (3 * spec.D + 2);
  }
  throw invalid_argument("kolmogorov_complexity: unknown kind");
}

long data_complexity(long T, int K0) {
  if (T < 1 || K0 < 1) throw invalid_argument("data_complexity: T and K0 must be >= 1");
  return T * (static_cast<long>(K0) + 1);
}

}  // namespace eon
