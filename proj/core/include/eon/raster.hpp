#pragma once

#include <string>
#include <vector>

#include "eon/model.hpp"
#include "eon/types.hpp"

namespace eon {

// How raster dims other than the chosen pair are filled.
enum class RasterPolicy {
  kUniformRandom,  // per grid point, uniform within each dim's data range
  kFixed,          // constant fixed_value in every remaining dim
};

RasterPolicy raster_policy_from_string(const std::string& name);

struct RasterRow {
  double a = 0.0;  // coordinate in dim_a
  double b = 0.0;  // coordinate in dim_b
  Vector label_dist;
  double reliability = 0.0;
  bool converged = false;
};

struct Raster {
  int dim_a = 0;
  int dim_b = 0;
  int resolution = 0;
  std::vector<RasterRow> rows;  // row-major: a-index outer, b-index inner
};

// Evaluates the model on a resolution x resolution grid over (dim_a, dim_b),
// spanning the data hull extended by 20% on each side; remaining dims follow
// the policy. Deterministic per seed.
Raster emit_decision_raster(const EonModel& model, const Matrix& X, int dim_a,
                            int dim_b, int resolution, RasterPolicy policy,
                            double fixed_value = 0.5, std::uint64_t seed = 0);

// CSV: a,b,pi0..pi{M-1},reliability,converged.
void save_raster(const Raster& raster, const std::string& path);

}  // namespace eon
