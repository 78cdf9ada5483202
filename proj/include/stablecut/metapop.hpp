#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "stablecut/graph.hpp"
#include "stablecut/matrix.hpp"

namespace stablecut {

/// n species on m patches: per-patch local dynamics, one dispersal graph per
/// species over the shared patch set, and one dispersal loss rate per species.
/// State ordering is species-major: entry (i - 1) * m + j is species i at
/// patch j, matching the block structure of the dispersal operator.
struct MetapopModel {
  std::size_t n_species = 0;
  std::vector<std::string> patches;  // canonical (lexicographic) order
  std::vector<WeightedGraph> species_graphs;
  std::vector<double> losses;  // per species, >= 0

  /// Local vector field at one patch: reads x[0..n), writes dx[0..n).
  using LocalRhs =
      std::function<void(std::size_t patch, std::span<const double> x,
                         std::span<double> dx)>;
  /// Analytic local Jacobian at one patch, row-major n*n; optional.
  using LocalJac =
      std::function<void(std::size_t patch, std::span<const double> x,
                         std::span<double> jac)>;

  LocalRhs local_rhs;
  LocalJac local_jac;  // empty -> central finite differences

  /// Rebuilds this model with zero dispersal losses. Builtins whose vector
  /// field embeds a loss parameter must set this; when empty, the generic
  /// fallback just zeroes `losses`.
  std::function<MetapopModel(const MetapopModel&)> strip_losses;

  /// Preferred Newton seed (e.g. a closed-form equilibrium); may be empty.
  std::vector<double> default_guess;

  std::size_t patch_count() const { return patches.size(); }
  std::size_t dim() const { return n_species * patches.size(); }
};

void validate_model(const MetapopModel& model);  // PatchSetMismatch, BadParams

/// Right-hand side of the full dispersal system f(x) - Lx - Ex.
void eval_rhs(const MetapopModel& model, std::span<const double> x,
              std::span<double> out);

/// Df(x): patch-local couplings only (analytic when provided, otherwise
/// central finite differences with step 1e-6 * (1 + |x_k|)).
Matrix local_jacobian_matrix(const MetapopModel& model, std::span<const double> x);

struct AssembledOperators {
  Matrix block_laplacian;            // L = L_1 (+) ... (+) L_n
  std::vector<double> loss_diagonal;  // E as a diagonal
};
AssembledOperators assemble(const MetapopModel& model);

struct EquilibriumResult {
  std::vector<double> x;
  bool positive = false;  // component-wise positive (the co-existential case)
  std::size_t iterations = 0;
  double residual = 0.0;
};
/// Newton iteration on f(x) - Lx - Ex = 0 to residual <= 1e-10 (inf norm),
/// at most 100 steps. A non-positive solution is flagged, not rejected.
EquilibriumResult find_equilibrium(const MetapopModel& model,
                                   std::vector<double> guess);  // NoConvergence

/// Everything the modal-coordinate analysis needs: the linearization
/// Df(x) - L - E expressed in the per-species Laplacian eigenbasis.
struct LinearizedSystem {
  std::size_t n_species = 0;
  std::size_t n_patches = 0;
  std::vector<double> equilibrium;
  Matrix local_jacobian;            // Df(x-bar)
  Matrix block_laplacian;           // L
  std::vector<double> loss_diagonal;
  Matrix modal_matrix;              // P, block-orthonormal
  std::vector<double> modal_spectrum;  // Lambda diagonal, ascending per block
  Matrix modal_local;               // P^T Df(x-bar) P
  Matrix coefficient_matrix;        // P^T Df P - Lambda - E
  std::vector<double> species_lambda2;  // per-species block Fiedler value
  std::vector<bool> species_connected;

  double loss_of_row(std::size_t q) const;
  bool zero_row(std::size_t q) const;  // paired with the block's 0 eigenvalue
};
LinearizedSystem linearize(const MetapopModel& model, std::vector<double> xbar);

struct SpectrumVerdict {
  std::vector<std::complex<double>> eigenvalues;  // sorted by (real, imag)
  double max_real_part = 0.0;
  bool stable = false;  // max real part <= 1e-9
};
SpectrumVerdict spectrum_verdict(const LinearizedSystem& sys);

struct GershgorinRow {
  std::size_t row = 0;
  std::size_t species = 0;
  double lhs = 0.0;     // loss (+ lambda2 for positive rows) minus diagonal
  double radius = 0.0;  // off-diagonal absolute row sum of P^T Df P
  bool pass = false;
};
struct GershgorinReport {
  std::vector<GershgorinRow> zero_rows;      // condition 1
  std::vector<GershgorinRow> positive_rows;  // condition 2
  double lambda2_min = 0.0;  // min over species of the block Fiedler value
  bool certified = false;    // certified implies stable; not conversely
};
GershgorinReport gershgorin_conditions(const LinearizedSystem& sys);
// throws DisconnectedSpeciesGraph

/// Fiedler-value threshold: max over rows s of
///   sum_{t != s} |(P^T Df P)_st| + (P^T Df P)_ss - l_s.
/// Default runs over positive rows only (the rows condition 2 governs);
/// `all_rows` includes the zero rows as well.
double tau_threshold(const LinearizedSystem& sys, bool all_rows = false);
// throws DisconnectedSpeciesGraph

/// Lower bound on the minimum species Fiedler value that forces
/// tr(coefficient matrix) <= 0; a necessary condition, m >= 2 required.
double trace_lower_bound(const LinearizedSystem& sys);  // SinglePatch

}  // namespace stablecut
