#pragma once

#include <complex>
#include <vector>

#include "stablecut/matrix.hpp"

namespace stablecut {

/// Eigenvalues of a general real square matrix: balance, Hessenberg
/// reduction, then Francis double-shift QR with deflation. Used only for
/// stability verdicts, where complex eigenvalues matter; every certificate
/// path stays on the symmetric solver.
/// Result is sorted by (real, imag). Throws Error(NoConvergence) if a
/// 1x1/2x2 block fails to deflate within 30 iterations.
std::vector<std::complex<double>> general_eigenvalues(Matrix a);

}  // namespace stablecut
