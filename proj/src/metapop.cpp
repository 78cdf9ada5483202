#include "stablecut/metapop.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "stablecut/error.hpp"
#include "stablecut/qr_eig.hpp"
#include "stablecut/spectral.hpp"

namespace stablecut {

void validate_model(const MetapopModel& model) {
  if (model.n_species < 1 || model.patches.empty())
    throw Error(ErrorCode::BadParams, "model needs at least one species and one patch");
  if (model.species_graphs.size() != model.n_species)
    throw Error(ErrorCode::PatchSetMismatch, "one dispersal graph per species required");
  if (model.losses.size() != model.n_species)
    throw Error(ErrorCode::BadParams, "one loss rate per species required");
  for (double l : model.losses)
    if (l < 0.0) throw Error(ErrorCode::BadParams, "losses must be non-negative");
  for (const auto& g : model.species_graphs)
    if (g.nodes() != model.patches)
      throw Error(ErrorCode::PatchSetMismatch,
                  "species graphs must share the model patch set");
  if (!model.local_rhs)
    throw Error(ErrorCode::BadParams, "model has no local dynamics");
}

void eval_rhs(const MetapopModel& model, std::span<const double> x,
              std::span<double> out) {
  const std::size_t n = model.n_species;
  const std::size_t m = model.patch_count();
  std::vector<double> local(n), dlocal(n);
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t i = 0; i < n; ++i) local[i] = x[i * m + j];
    model.local_rhs(j, local, dlocal);
    for (std::size_t i = 0; i < n; ++i) out[i * m + j] = dlocal[i];
  }
  for (std::size_t i = 0; i < n; ++i) {
    const auto& g = model.species_graphs[i];
    for (std::size_t j = 0; j < m; ++j) {
      double coupling = 0.0;
      for (const auto& [k, w] : g.neighbors(j))
        coupling += w * (x[i * m + j] - x[i * m + k]);
      out[i * m + j] -= coupling + model.losses[i] * x[i * m + j];
    }
  }
}

Matrix local_jacobian_matrix(const MetapopModel& model, std::span<const double> x) {
  const std::size_t n = model.n_species;
  const std::size_t m = model.patch_count();
  Matrix df(n * m, n * m);
  std::vector<double> local(n), jac(n * n);
  std::vector<double> plus(n), minus(n), xp(n);
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t i = 0; i < n; ++i) local[i] = x[i * m + j];
    if (model.local_jac) {
      model.local_jac(j, local, jac);
    } else {
      for (std::size_t col = 0; col < n; ++col) {
        const double h = 1e-6 * (1.0 + std::abs(local[col]));
        xp = local;
        xp[col] = local[col] + h;
        model.local_rhs(j, xp, plus);
        xp[col] = local[col] - h;
        model.local_rhs(j, xp, minus);
        for (std::size_t row = 0; row < n; ++row)
          jac[row * n + col] = (plus[row] - minus[row]) / (2.0 * h);
      }
    }
    for (std::size_t row = 0; row < n; ++row)
      for (std::size_t col = 0; col < n; ++col)
        df(row * m + j, col * m + j) = jac[row * n + col];
  }
  return df;
}

AssembledOperators assemble(const MetapopModel& model) {
  validate_model(model);
  const std::size_t n = model.n_species;
  const std::size_t m = model.patch_count();
  AssembledOperators out;
  out.block_laplacian = Matrix(n * m, n * m);
  out.loss_diagonal.assign(n * m, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const Matrix li = laplacian(model.species_graphs[i]);
    for (std::size_t r = 0; r < m; ++r) {
      for (std::size_t c = 0; c < m; ++c)
        out.block_laplacian(i * m + r, i * m + c) = li(r, c);
      out.loss_diagonal[i * m + r] = model.losses[i];
    }
  }
  return out;
}

namespace {

Matrix system_jacobian(const MetapopModel& model, const AssembledOperators& ops,
                       std::span<const double> x) {
  Matrix j = local_jacobian_matrix(model, x) - ops.block_laplacian;
  for (std::size_t q = 0; q < j.rows(); ++q) j(q, q) -= ops.loss_diagonal[q];
  return j;
}

}  // namespace

EquilibriumResult find_equilibrium(const MetapopModel& model,
                                   std::vector<double> guess) {
  validate_model(model);
  const std::size_t dim = model.dim();
  if (guess.size() != dim)
    throw Error(ErrorCode::BadParams, "guess has wrong dimension");
  const auto ops = assemble(model);

  EquilibriumResult out;
  out.x = std::move(guess);
  std::vector<double> residual(dim);
  for (std::size_t it = 0; it <= 100; ++it) {
    eval_rhs(model, out.x, residual);
    out.residual = max_abs(residual);
    out.iterations = it;
    if (out.residual <= 1e-10) {
      out.positive = std::all_of(out.x.begin(), out.x.end(),
                                 [](double v) { return v > 0.0; });
      return out;
    }
    if (it == 100) break;
    const auto step = solve_linear(system_jacobian(model, ops, out.x), residual);
    for (std::size_t k = 0; k < dim; ++k) out.x[k] -= step[k];
  }
  throw Error(ErrorCode::NoConvergence, "Newton iteration did not converge");
}

double LinearizedSystem::loss_of_row(std::size_t q) const {
  return loss_diagonal[q];
}

bool LinearizedSystem::zero_row(std::size_t q) const {
  return q % n_patches == 0;  // spectrum ascends within each block
}

LinearizedSystem linearize(const MetapopModel& model, std::vector<double> xbar) {
  validate_model(model);
  if (xbar.size() != model.dim())
    throw Error(ErrorCode::BadParams, "equilibrium has wrong dimension");

  const std::size_t n = model.n_species;
  const std::size_t m = model.patch_count();
  auto ops = assemble(model);

  LinearizedSystem sys;
  sys.n_species = n;
  sys.n_patches = m;
  sys.equilibrium = std::move(xbar);
  sys.local_jacobian = local_jacobian_matrix(model, sys.equilibrium);
  sys.block_laplacian = std::move(ops.block_laplacian);
  sys.loss_diagonal = std::move(ops.loss_diagonal);

  sys.modal_matrix = Matrix(n * m, n * m);
  sys.modal_spectrum.assign(n * m, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const auto decomp = eig_symmetric(laplacian(model.species_graphs[i]));
    for (std::size_t r = 0; r < m; ++r) {
      sys.modal_spectrum[i * m + r] = decomp.eigenvalues[r];
      // deterministic column signs: first component of magnitude positive
      double flip = 1.0;
      for (std::size_t k = 0; k < m; ++k) {
        if (std::abs(decomp.eigenvectors(k, r)) > 1e-12) {
          flip = decomp.eigenvectors(k, r) < 0.0 ? -1.0 : 1.0;
          break;
        }
      }
      for (std::size_t c = 0; c < m; ++c)
        sys.modal_matrix(i * m + c, i * m + r) = flip * decomp.eigenvectors(c, r);
    }
    sys.species_connected.push_back(is_connected(model.species_graphs[i]));
    sys.species_lambda2.push_back(m >= 2 ? decomp.eigenvalues[1] : 0.0);
  }

  sys.modal_local =
      transpose(sys.modal_matrix) * sys.local_jacobian * sys.modal_matrix;
  sys.coefficient_matrix = sys.modal_local;
  for (std::size_t q = 0; q < n * m; ++q)
    sys.coefficient_matrix(q, q) -= sys.modal_spectrum[q] + sys.loss_diagonal[q];
  return sys;
}

SpectrumVerdict spectrum_verdict(const LinearizedSystem& sys) {
  Matrix a = sys.local_jacobian - sys.block_laplacian;
  for (std::size_t q = 0; q < a.rows(); ++q) a(q, q) -= sys.loss_diagonal[q];

  SpectrumVerdict out;
  out.eigenvalues = general_eigenvalues(std::move(a));
  out.max_real_part = out.eigenvalues.empty() ? 0.0 : out.eigenvalues.front().real();
  for (const auto& ev : out.eigenvalues)
    out.max_real_part = std::max(out.max_real_part, ev.real());
  out.stable = out.max_real_part <= 1e-9;
  return out;
}

namespace {

void require_connected_species(const LinearizedSystem& sys) {
  for (std::size_t i = 0; i < sys.species_connected.size(); ++i)
    if (!sys.species_connected[i])
      throw Error(ErrorCode::DisconnectedSpeciesGraph,
                  "species graph " + std::to_string(i + 1) +
                      " is disconnected; zero rows are ambiguous");
}

double off_diagonal_row_sum(const Matrix& a, std::size_t q) {
  double s = 0.0;
  for (std::size_t t = 0; t < a.cols(); ++t)
    if (t != q) s += std::abs(a(q, t));
  return s;
}

}  // namespace

GershgorinReport gershgorin_conditions(const LinearizedSystem& sys) {
  require_connected_species(sys);
  GershgorinReport report;
  report.lambda2_min =
      *std::min_element(sys.species_lambda2.begin(), sys.species_lambda2.end());

  const std::size_t dim = sys.n_species * sys.n_patches;
  report.certified = true;
  for (std::size_t q = 0; q < dim; ++q) {
    GershgorinRow row;
    row.row = q;
    row.species = q / sys.n_patches;
    row.radius = off_diagonal_row_sum(sys.modal_local, q);
    if (sys.zero_row(q)) {
      row.lhs = sys.loss_of_row(q) - sys.modal_local(q, q);
      row.pass = row.lhs >= row.radius;
      report.zero_rows.push_back(row);
    } else {
      row.lhs = report.lambda2_min + sys.loss_of_row(q) - sys.modal_local(q, q);
      row.pass = row.lhs >= row.radius;
      report.positive_rows.push_back(row);
    }
    report.certified = report.certified && row.pass;
  }
  return report;
}

double tau_threshold(const LinearizedSystem& sys, bool all_rows) {
  require_connected_species(sys);
  if (sys.n_patches < 2 && !all_rows)
    throw Error(ErrorCode::SinglePatch,
                "no dispersal modes on a single patch; no positive rows");
  const std::size_t dim = sys.n_species * sys.n_patches;
  double tau = -std::numeric_limits<double>::infinity();
  for (std::size_t q = 0; q < dim; ++q) {
    if (!all_rows && sys.zero_row(q)) continue;
    tau = std::max(tau, off_diagonal_row_sum(sys.modal_local, q) +
                            sys.modal_local(q, q) - sys.loss_of_row(q));
  }
  return tau;
}

double trace_lower_bound(const LinearizedSystem& sys) {
  if (sys.n_patches < 2)
    throw Error(ErrorCode::SinglePatch, "trace bound needs at least 2 patches");
  double total = trace(sys.modal_local);
  for (double l : sys.loss_diagonal) total -= l;
  return total / (static_cast<double>(sys.n_species) *
                  static_cast<double>(sys.n_patches - 1));
}

}  // namespace stablecut
