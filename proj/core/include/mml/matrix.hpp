#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace mml {

using Vector = std::vector<double>;

/// Small dense row-major matrix. Sized for the d <= 3 information matrices
/// this library deals with; no attempt at blocking or vectorisation.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  Matrix(std::initializer_list<std::initializer_list<double>> rows);

  static Matrix identity(std::size_t d);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::span<const double> entries() const noexcept { return data_; }

  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  Matrix transpose() const;
  bool is_symmetric(double rel_tol = 1e-12) const;
  bool all_finite() const;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

Matrix operator*(const Matrix& a, const Matrix& b);
Vector operator*(const Matrix& a, std::span<const double> x);
Matrix operator+(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);
Matrix operator*(double s, const Matrix& a);

Vector operator+(std::span<const double> a, std::span<const double> b);
Vector operator-(std::span<const double> a, std::span<const double> b);
Vector operator*(double s, std::span<const double> a);

double norm_inf(std::span<const double> v);
double max_abs_entry(const Matrix& m);

/// Cholesky factor L (lower triangular, m = L Lᵀ). Throws NotPositiveDefinite
/// when a pivot is not strictly positive or m is not symmetric.
Matrix cholesky(const Matrix& m);

/// Solves m x = b for symmetric positive definite m.
Vector solve_spd(const Matrix& m, std::span<const double> b);

/// Inverse of a symmetric positive definite matrix (symmetrised on output).
Matrix inverse_spd(const Matrix& m);

/// log det of a symmetric positive definite matrix via its Cholesky factor.
double log_det_spd(const Matrix& m);

double determinant(const Matrix& m);

/// Column-stacking vectorisation: vec(m)[i + rows*j] = m(i, j).
Vector vec(const Matrix& m);

}  // namespace mml
