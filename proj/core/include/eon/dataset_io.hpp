#pragma once

#include <iosfwd>
#include <string>

#include "eon/types.hpp"

namespace eon {

// CSV dataset format: header row, then one sample per line. Feature columns
// are named x0..x{K0-1}; labels follow as either a single integer `label`
// column (expanded on load to one-hot over 0..max) or probability columns
// pi0..pi{M-1} (each row validated to sum to 1). A header with only feature
// columns loads as an unlabeled dataset (pi has zero rows). Numeric cells are
// parsed and written with shortest round-trip formatting, so save->load is
// lossless.
Dataset load_csv(const std::string& path);
Dataset load_csv(std::istream& in);

// Writes a `label` column when every pi column is exactly one-hot, else
// writes the pi columns.
void save_csv(const Dataset& data, const std::string& path);
void save_csv(const Dataset& data, std::ostream& out);

// Shortest decimal string that parses back to exactly the same double.
std::string format_double(double v);

}  // namespace eon
