#pragma once

#include <vector>

#include "eon/types.hpp"

namespace eon {

// Fraction of columns whose argmax matches (ties to the lowest index).
// Columns are probability vectors; both matrices are M x n.
double accuracy(const Matrix& predicted, const Matrix& truth);

// Mann-Whitney AUC with tie correction (average ranks). labels are 0/1;
// throws undefined_metric unless both classes are present.
double auc(const Vector& scores, const std::vector<int>& labels);

// Lowest argmax index of a column vector.
Index argmax_index(const Vector& v);

}  // namespace eon
