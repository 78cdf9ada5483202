#pragma once

#include <cstddef>
#include <vector>

namespace stablecut {

/// Dense row-major matrix of doubles. Target sizes are small (a few hundred
/// rows at most), so everything is kept dense and value-semantic.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix identity(std::size_t n);

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return data_.empty(); }

  const std::vector<double>& data() const { return data_; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);
Matrix operator+(const Matrix& a, const Matrix& b);
std::vector<double> operator*(const Matrix& a, const std::vector<double>& x);
Matrix transpose(const Matrix& a);

double max_abs(const Matrix& a);
double max_abs(const std::vector<double>& v);
double frobenius_norm(const Matrix& a);
double norm2(const std::vector<double>& v);
double trace(const Matrix& a);

/// Largest |a_ij - a_ji| over all pairs.
double symmetry_gap(const Matrix& a);

/// Determinant via LU with partial pivoting; returns 0 when a pivot vanishes.
double determinant(Matrix a);

/// Solves A x = b by LU with partial pivoting.
/// Throws Error(NoConvergence) when A is numerically singular.
std::vector<double> solve_linear(Matrix a, std::vector<double> b);

}  // namespace stablecut
