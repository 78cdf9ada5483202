#include "stablecut/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "stablecut/error.hpp"

namespace stablecut {

namespace {

double off_diagonal_norm(const Matrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (i != j) s += a(i, j) * a(i, j);
  return std::sqrt(s);
}

void sign_normalize(std::vector<double>& v) {
  for (double c : v) {
    if (std::abs(c) > 1e-12) {
      if (c < 0.0)
        for (double& x : v) x = -x;
      return;
    }
  }
}

}  // namespace

EigenDecomposition eig_symmetric(const Matrix& m) {
  const std::size_t n = m.rows();
  if (m.cols() != n)
    throw Error(ErrorCode::NotSymmetric, "matrix is not square");
  if (symmetry_gap(m) > 1e-12 * (1.0 + max_abs(m)))
    throw Error(ErrorCode::NotSymmetric, "matrix is not symmetric");

  Matrix a = m;
  Matrix v = Matrix::identity(n);
  const double target = 1e-12 * std::max(frobenius_norm(a), 1e-300);

  bool converged = n < 2;
  for (int sweep = 0; sweep < 100 && !converged; ++sweep) {
    if (off_diagonal_norm(a) <= target) {
      converged = true;
      break;
    }
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (std::abs(apq) < 1e-300) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v(k, p);
          const double vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
    if (off_diagonal_norm(a) <= target) converged = true;
  }
  if (!converged)
    throw Error(ErrorCode::NoConvergence, "Jacobi sweeps did not converge");

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a(i, i) < a(j, j); });

  EigenDecomposition out;
  out.eigenvalues.resize(n);
  out.eigenvectors = Matrix(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    out.eigenvalues[k] = a(order[k], order[k]);
    for (std::size_t r = 0; r < n; ++r) out.eigenvectors(r, k) = v(r, order[k]);
  }
  return out;
}

FiedlerPair fiedler(const WeightedGraph& g) {
  if (g.node_count() < 2)
    throw Error(ErrorCode::TooSmall, "Fiedler pair needs at least 2 nodes");
  if (!is_connected(g))
    throw Error(ErrorCode::Disconnected, "graph is disconnected");

  const auto decomp = eig_symmetric(laplacian(g));
  FiedlerPair out;
  out.value = decomp.eigenvalues[1];
  out.vector.resize(g.node_count());
  for (std::size_t r = 0; r < g.node_count(); ++r)
    out.vector[r] = decomp.eigenvectors(r, 1);
  sign_normalize(out.vector);

  const double scale = std::max(1.0, std::abs(decomp.eigenvalues.back()));
  if (g.node_count() > 2 &&
      std::abs(decomp.eigenvalues[2] - decomp.eigenvalues[1]) <= 1e-9 * scale)
    out.degenerate = true;
  return out;
}

namespace {

double shifted_determinant(const Matrix& m, double lambda) {
  Matrix shifted = m;
  for (std::size_t i = 0; i < m.rows(); ++i) shifted(i, i) -= lambda;
  return determinant(std::move(shifted));
}

}  // namespace

std::vector<double> oracle_eigenvalues(const Matrix& m) {
  const std::size_t n = m.rows();
  if (n > 6)
    throw Error(ErrorCode::TooLarge, "oracle limited to n <= 6");
  if (n == 0) return {};

  double lo = m(0, 0), hi = m(0, 0);
  for (std::size_t i = 0; i < n; ++i) {
    double radius = 0.0;
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) radius += std::abs(m(i, j));
    lo = std::min(lo, m(i, i) - radius);
    hi = std::max(hi, m(i, i) + radius);
  }
  lo -= 1.0;
  hi += 1.0;

  std::vector<double> roots;
  for (std::size_t panels : {4096u, 65536u}) {
    roots.clear();
    double prev_x = lo;
    double prev_f = shifted_determinant(m, lo);
    for (std::size_t k = 1; k <= panels; ++k) {
      const double x = lo + (hi - lo) * static_cast<double>(k) / panels;
      const double f = shifted_determinant(m, x);
      if (prev_f == 0.0) {
        roots.push_back(prev_x);
      } else if (f != 0.0 && ((prev_f < 0.0) != (f < 0.0))) {
        double a = prev_x, b = x, fa = prev_f;
        for (int it = 0; it < 80; ++it) {
          const double mid = 0.5 * (a + b);
          const double fm = shifted_determinant(m, mid);
          if (fm == 0.0) {
            a = b = mid;
            break;
          }
          if ((fa < 0.0) != (fm < 0.0)) {
            b = mid;
          } else {
            a = mid;
            fa = fm;
          }
        }
        roots.push_back(0.5 * (a + b));
      }
      prev_x = x;
      prev_f = f;
    }
    if (roots.size() == n) break;
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

}  // namespace stablecut
