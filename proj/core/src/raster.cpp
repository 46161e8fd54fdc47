#include "eon/raster.hpp"

#include <fstream>
#include <random>

#include "eon/dataset_io.hpp"
#include "eon/errors.hpp"
#include "eon/inference.hpp"

namespace eon {

RasterPolicy raster_policy_from_string(const std::string& name) {
  if (name == "uniform-random") return RasterPolicy::kUniformRandom;
  if (name == "fixed") return RasterPolicy::kFixed;
  throw invalid_argument("unknown raster policy '" + name + "'");
}

Raster emit_decision_raster(const EonModel& model, const Matrix& X, int dim_a,
                            int dim_b, int resolution, RasterPolicy policy,
                            double fixed_value, std::uint64_t seed) {
  const Index K0 = model.K(0);
  if (X.rows() != K0) throw invalid_argument("raster: data feature dim != model K0");
  if (X.cols() < 1) throw invalid_argument("raster: empty data");
  if (dim_a < 0 || dim_b < 0 || dim_a >= K0 || dim_b >= K0 || dim_a == dim_b)
    throw invalid_argument("raster: dims must be distinct and within the feature range");
  if (resolution < 2) throw invalid_argument("raster: resolution must be >= 2");

  const Vector lo = X.rowwise().minCoeff();
  const Vector hi = X.rowwise().maxCoeff();
  const auto extended = [&](int d) {
    const double range = hi[d] - lo[d];
    const double pad = 0.2 * (range > 0.0 ? range : 1.0);
    return std::pair<double, double>(lo[d] - pad, hi[d] + pad);
  };
  const auto [a_lo, a_hi] = extended(dim_a);
  const auto [b_lo, b_hi] = extended(dim_b);

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  Raster raster;
  raster.dim_a = dim_a;
  raster.dim_b = dim_b;
  raster.resolution = resolution;
  raster.rows.reserve(static_cast<std::size_t>(resolution) *
                      static_cast<std::size_t>(resolution));

  Vector x(K0);
  for (int i = 0; i < resolution; ++i) {
    const double a = a_lo + (a_hi - a_lo) * i / (resolution - 1);
    for (int j = 0; j < resolution; ++j) {
      const double b = b_lo + (b_hi - b_lo) * j / (resolution - 1);
      for (Index d = 0; d < K0; ++d) {
        if (d == dim_a || d == dim_b) continue;
        x[d] = policy == RasterPolicy::kFixed
                   ? fixed_value
                   : lo[d] + (hi[d] - lo[d]) * unit(rng);
      }
      x[dim_a] = a;
      x[dim_b] = b;
      const Prediction p = predict(model, x);
      RasterRow row;
      row.a = a;
      row.b = b;
      row.label_dist = p.label_dist;
      row.reliability = p.reliability;
      row.converged = p.converged;
      raster.rows.push_back(std::move(row));
    }
  }
  return raster;
}

void save_raster(const Raster& raster, const std::string& path) {
  std::ofstream f(path, std::ios::trunc);
  if (!f) throw io_error("cannot open '" + path + "' for writing");
  const Index M = raster.rows.empty() ? 0 : raster.rows.front().label_dist.size();
  f << "a,b";
  for (Index m = 0; m < M; ++m) f << ",pi" << m;
  f << ",reliability,converged\n";
  for (const RasterRow& row : raster.rows) {
    f << format_double(row.a) << ',' << format_double(row.b);
    for (Index m = 0; m < M; ++m) f << ',' << format_double(row.label_dist[m]);
    f << ',' << format_double(row.reliability) << ',' << (row.converged ? 1 : 0)
      << "\n";
  }
  f.flush();
  if (!f) throw io_error("write to '" + path + "' failed");
}

}  // namespace eon
