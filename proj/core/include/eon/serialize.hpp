#pragma once

#include <iosfwd>
#include <string>

#include "eon/model.hpp"

namespace eon {

// Current model file format version. Loaders accept versions <= this and
// reject newer files with version_mismatch.
inline constexpr std::uint32_t kModelFormatVersion = 1;

// Self-describing little-endian binary layout (all integers and IEEE-754
// doubles are dumped as raw bit patterns, so save/load round-trips are
// bit-identical):
//   magic "EONMODEL" | u32 endian tag 0x01020304 | u32 format_version |
//   u32 N | u32 gamma0_mode | i64 train_T | u32 layer_dims[N+2] |
//   f64 epsilon[N+2] | f64 delta[N] | f64 tolerance | u32 max_outer_iters |
//   u32 max_gamma_iters | f64 theta_floor | u64 seed | u32 restarts |
//   f64 S (K0*K1, row-major) | f64 theta[n] (K_n*K_{n+1}, row-major, n=1..N) |
//   gamma0 payload (mode-dependent: none | w | w,s | full row-major).
// Exact file length is enforced; trailing bytes are malformed.
void save_model(const EonModel& model, std::ostream& out);
void save_model(const EonModel& model, const std::string& path);

EonModel load_model(std::istream& in);
EonModel load_model(const std::string& path);

}  // namespace eon
