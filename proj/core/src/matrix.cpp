#include "mml/matrix.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "mml/errors.hpp"

namespace mml {

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw std::invalid_argument("Matrix: ragged initializer");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

Matrix Matrix::identity(std::size_t d) {
  Matrix m(d, d);
  for (std::size_t i = 0; i < d; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

bool Matrix::is_symmetric(double rel_tol) const {
  if (rows_ != cols_) return false;
  const double scale = std::max(1.0, max_abs_entry(*this));
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = i + 1; j < cols_; ++j)
      if (std::abs((*this)(i, j) - (*this)(j, i)) > rel_tol * scale) return false;
  return true;
}

bool Matrix::all_finite() const {
  return std::all_of(data_.begin(), data_.end(), [](double v) { return std::isfinite(v); });
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  assert(a.cols() == b.rows());
  Matrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

Vector operator*(const Matrix& a, std::span<const double> x) {
  assert(a.cols() == x.size());
  Vector y(a.rows(), 0.0);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) y[i] += a(i, j) * x[j];
  return y;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
  assert(a.rows() == b.rows() && a.cols() == b.cols());
  Matrix c(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j) + b(i, j);
  return c;
}

Matrix operator-(const Matrix& a, const Matrix& b) { return a + (-1.0) * b; }

Matrix operator*(double s, const Matrix& a) {
  Matrix c(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = s * a(i, j);
  return c;
}

Vector operator+(std::span<const double> a, std::span<const double> b) {
  assert(a.size() == b.size());
  Vector c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] + b[i];
  return c;
}

Vector operator-(std::span<const double> a, std::span<const double> b) {
  assert(a.size() == b.size());
  Vector c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] - b[i];
  return c;
}

Vector operator*(double s, std::span<const double> a) {
  Vector c(a.begin(), a.end());
  for (double& v : c) v *= s;
  return c;
}

double norm_inf(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

double max_abs_entry(const Matrix& m) { return norm_inf(m.entries()); }

Matrix cholesky(const Matrix& m) {
  const std::size_t d = m.rows();
  if (d != m.cols()) throw NotPositiveDefinite("cholesky: matrix is not square");
  if (!m.all_finite()) throw NotPositiveDefinite("cholesky: non-finite entry");
  if (!m.is_symmetric(1e-12)) throw NotPositiveDefinite("cholesky: matrix is not symmetric");
  Matrix l(d, d);
  for (std::size_t j = 0; j < d; ++j) {
    double pivot = m(j, j);
    for (std::size_t k = 0; k < j; ++k) pivot -= l(j, k) * l(j, k);
    if (!(pivot > 0.0)) {
      std::ostringstream os;
      os << "cholesky: pivot " << j << " is " << pivot;
      throw NotPositiveDefinite(os.str());
    }
    l(j, j) = std::sqrt(pivot);
    for (std::size_t i = j + 1; i < d; ++i) {
      double s = m(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
      l(i, j) = s / l(j, j);
    }
  }
  return l;
}

namespace {

Vector cholesky_solve(const Matrix& l, std::span<const double> b) {
  const std::size_t d = l.rows();
  Vector y(d);
  for (std::size_t i = 0; i < d; ++i) {
    double s = b[i];
    for (std::size_t k = 0; k < i; ++k) s -= l(i, k) * y[k];
    y[i] = s / l(i, i);
  }
  Vector x(d);
  for (std::size_t i = d; i-- > 0;) {
    double s = y[i];
    for (std::size_t k = i + 1; k < d; ++k) s -= l(k, i) * x[k];
    x[i] = s / l(i, i);
  }
  return x;
}

}  // namespace

Vector solve_spd(const Matrix& m, std::span<const double> b) {
  if (b.size() != m.rows()) throw std::invalid_argument("solve_spd: dimension mismatch");
  const Matrix l = cholesky(m);
  Vector x = cholesky_solve(l, b);
  // One step of iterative refinement keeps the residual at the round-off floor
  // for the mildly ill-conditioned Weibull information at small k.
  const Vector r = b - m * x;
  const Vector dx = cholesky_solve(l, r);
  for (std::size_t i = 0; i < x.size(); ++i) x[i] += dx[i];
  return x;
}

Matrix inverse_spd(const Matrix& m) {
  const std::size_t d = m.rows();
  const Matrix l = cholesky(m);
  Matrix inv(d, d);
  Vector e(d, 0.0);
  for (std::size_t j = 0; j < d; ++j) {
    std::fill(e.begin(), e.end(), 0.0);
    e[j] = 1.0;
    const Vector col = cholesky_solve(l, e);
    for (std::size_t i = 0; i < d; ++i) inv(i, j) = col[i];
  }
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j) {
      const double avg = 0.5 * (inv(i, j) + inv(j, i));
      inv(i, j) = inv(j, i) = avg;
    }
  return inv;
}

double log_det_spd(const Matrix& m) {
  const Matrix l = cholesky(m);
  double s = 0.0;
  for (std::size_t i = 0; i < l.rows(); ++i) s += std::log(l(i, i));
  return 2.0 * s;
}

double determinant(const Matrix& m) {
  assert(m.rows() == m.cols());
  switch (m.rows()) {
    case 0: return 1.0;
    case 1: return m(0, 0);
    case 2: return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
    case 3:
      return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) -
             m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
             m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
    default: {
      // Gaussian elimination with partial pivoting; unused by the shipped models.
      Matrix a = m;
      const std::size_t d = a.rows();
      double det = 1.0;
      for (std::size_t c = 0; c < d; ++c) {
        std::size_t p = c;
        for (std::size_t r = c + 1; r < d; ++r)
          if (std::abs(a(r, c)) > std::abs(a(p, c))) p = r;
        if (a(p, c) == 0.0) return 0.0;
        if (p != c) {
          for (std::size_t k = 0; k < d; ++k) std::swap(a(p, k), a(c, k));
          det = -det;
        }
        det *= a(c, c);
        for (std::size_t r = c + 1; r < d; ++r) {
          const double f = a(r, c) / a(c, c);
          for (std::size_t k = c; k < d; ++k) a(r, k) -= f * a(c, k);
        }
      }
      return det;
    }
  }
}

Vector vec(const Matrix& m) {
  Vector v(m.rows() * m.cols());
  for (std::size_t j = 0; j < m.cols(); ++j)
    for (std::size_t i = 0; i < m.rows(); ++i) v[i + m.rows() * j] = m(i, j);
  return v;
}

}  // namespace mml
