#pragma once

#include <cstdint>

#include "eon/types.hpp"

namespace eon::simplex {

// Temperatures below this are treated as the exact zero-temperature limit
// (argmin selection) wherever a solver supports hard mode.
inline constexpr double kHardEpsilon = 1e-300;

// True iff v has non-negative entries summing to 1 within tol.
bool is_prob_vector(const Vector& v, double tol = 1e-12);

// Max-shifted softmax: exp(z - max z) / sum exp(z - max z).
// Throws numerical_error if z has non-finite entries.
Vector softmax(const Vector& z);

// softmax applied independently to each block.
BlockVector block_softmax(const BlockVector& z);

// One-hot vector at the argmin of b; ties resolved to the lowest index.
// This is the zero-temperature limit of solve_entropic_lp.
Vector hard_argmin(const Vector& b);

// Entropy of p normalized by log(base): -sum_k p_k log(p_k) / log(base).
// 0 log 0 = 0. Requires base >= 2 and a probability vector.
double normalized_entropy(const Vector& p, int base);

// argmin over the simplex of <b, p> + eps * <p, log p>; closed form
// softmax(-b/eps). Requires eps > 0.
Vector solve_entropic_lp(const Vector& b, double eps);

// Upper bound (K-1)/K on the softmax Lipschitz constant in the 2-norm.
double softmax_lipschitz_bound(int K);

// Maximum observed ||softmax(x)-softmax(y)|| / ||x-y|| over `samples` pairs
// of standard Gaussian K-vectors. Never exceeds softmax_lipschitz_bound(K).
double monte_carlo_lipschitz(int K, long samples, std::uint64_t seed);

// Largest singular value via power iteration on A^T A
// (relative tolerance 1e-10, at most 10000 iterations).
double spectral_norm(const Matrix& A);

}  // namespace eon::simplex
