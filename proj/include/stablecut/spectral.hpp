#pragma once

#include <vector>

#include "stablecut/graph.hpp"
#include "stablecut/matrix.hpp"

namespace stablecut {

/// Full symmetric eigendecomposition. Eigenvalues ascend; column k of
/// `eigenvectors` pairs with `eigenvalues[k]`. Ties are broken by the
/// original column index (stable sort), columns are orthonormal.
struct EigenDecomposition {
  std::vector<double> eigenvalues;
  Matrix eigenvectors;
};

/// Second-smallest Laplacian eigenvalue and its sign-normalized unit
/// eigenvector (first component with |y| > 1e-12 is positive).
/// `degenerate` is set when the eigenvalue is (numerically) repeated,
/// in which case downstream vector-based conclusions depend on the choice.
struct FiedlerPair {
  double value = 0.0;
  std::vector<double> vector;
  bool degenerate = false;
};

/// Cyclic Jacobi rotations; converges when the off-diagonal Frobenius norm
/// falls below 1e-12 * ||M||_F, capped at 100 sweeps.
EigenDecomposition eig_symmetric(const Matrix& m);  // NotSymmetric, NoConvergence

FiedlerPair fiedler(const WeightedGraph& g);  // Disconnected, TooSmall

/// Independent eigenvalue oracle for n <= 6: sign-change bisection on
/// det(M - lambda I) (pivoted elimination) over the Gershgorin interval.
/// Shares no code with eig_symmetric; assumes distinct eigenvalues
/// (even-multiplicity roots produce no sign change and are not found).
std::vector<double> oracle_eigenvalues(const Matrix& m);  // TooLarge

}  // namespace stablecut
