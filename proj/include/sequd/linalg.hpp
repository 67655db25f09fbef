// Copyright 2026 The sequd Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Small dense complex linear algebra for the qubit (2), qutrit (3) and
// qubit x qutrit (6) spaces. Storage is inline, so every value is a plain
// copyable object with no heap traffic.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "sequd/errors.hpp"

namespace sequd {

using Complex = std::complex<double>;

inline constexpr std::size_t kMaxDim = 6;
inline constexpr double kDefaultTol = 1e-10;

class ComplexVector {
 public:
  ComplexVector() = default;

  explicit ComplexVector(std::size_t dim) : dim_(dim) {
    if (dim == 0 || dim > kMaxDim) {
      throw DimensionError("vector dimension must be in [1, 6], got " + std::to_string(dim));
    }
  }

  ComplexVector(std::initializer_list<Complex> entries) : ComplexVector(entries.size()) {
    std::copy(entries.begin(), entries.end(), data_.begin());
  }

  static ComplexVector basis(std::size_t dim, std::size_t index) {
    ComplexVector v(dim);
    if (index >= dim) throw DimensionError("basis index out of range");
    v[index] = 1.0;
    return v;
  }

  std::size_t dim() const { return dim_; }

  Complex& operator[](std::size_t i) { return data_[i]; }
  const Complex& operator[](std::size_t i) const { return data_[i]; }

  std::span<const Complex> entries() const { return {data_.data(), dim_}; }

  double norm() const {
    double acc = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) acc += std::norm(data_[i]);
    return std::sqrt(acc);
  }

  ComplexVector normalized() const {
    const double n = norm();
    if (n == 0.0) throw DomainError("cannot normalize the zero vector");
    ComplexVector out = *this;
    for (std::size_t i = 0; i < dim_; ++i) out.data_[i] /= n;
    return out;
  }

  ComplexVector& operator+=(const ComplexVector& o) {
    require_same_dim(o);
    for (std::size_t i = 0; i < dim_; ++i) data_[i] += o.data_[i];
    return *this;
  }
  ComplexVector& operator-=(const ComplexVector& o) {
    require_same_dim(o);
    for (std::size_t i = 0; i < dim_; ++i) data_[i] -= o.data_[i];
    return *this;
  }
  ComplexVector& operator*=(Complex a) {
    for (std::size_t i = 0; i < dim_; ++i) data_[i] *= a;
    return *this;
  }

  friend ComplexVector operator+(ComplexVector a, const ComplexVector& b) { return a += b; }
  friend ComplexVector operator-(ComplexVector a, const ComplexVector& b) { return a -= b; }
  friend ComplexVector operator*(Complex a, ComplexVector v) { return v *= a; }
  friend ComplexVector operator*(ComplexVector v, Complex a) { return v *= a; }
  friend ComplexVector operator-(ComplexVector v) { return v *= -1.0; }

 private:
  void require_same_dim(const ComplexVector& o) const {
    if (o.dim_ != dim_) throw DimensionError("vector dimension mismatch");
  }

  std::size_t dim_ = 0;
  std::array<Complex, kMaxDim> data_{};
};

class ComplexMatrix {
 public:
  ComplexMatrix() = default;

  ComplexMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {
    if (rows == 0 || cols == 0 || rows > kMaxDim || cols > kMaxDim) {
      throw DimensionError("matrix dimensions must be in [1, 6]");
    }
  }

  /// Row-major construction from nested lists.
  ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows)
      : ComplexMatrix(rows.size(), rows.begin()->size()) {
    std::size_t r = 0;
    for (const auto& row : rows) {
      if (row.size() != cols_) throw DimensionError("ragged matrix initializer");
      std::size_t c = 0;
      for (const auto& x : row) (*this)(r, c++) = x;
      ++r;
    }
  }

  static ComplexMatrix identity(std::size_t dim) {
    ComplexMatrix m(dim, dim);
    for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
  }

  static ComplexMatrix diagonal(std::initializer_list<double> d) {
    ComplexMatrix m(d.size(), d.size());
    std::size_t i = 0;
    for (double x : d) {
      m(i, i) = x;
      ++i;
    }
    return m;
  }

  /// |a><b|
  static ComplexMatrix outer(const ComplexVector& a, const ComplexVector& b) {
    ComplexMatrix m(a.dim(), b.dim());
    for (std::size_t r = 0; r < a.dim(); ++r)
      for (std::size_t c = 0; c < b.dim(); ++c) m(r, c) = a[r] * std::conj(b[c]);
    return m;
  }

  static ComplexMatrix from_columns(std::span<const ComplexVector> columns) {
    if (columns.empty()) throw DimensionError("no columns given");
    ComplexMatrix m(columns.front().dim(), columns.size());
    for (std::size_t c = 0; c < columns.size(); ++c) m.set_column(c, columns[c]);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  Complex& operator()(std::size_t r, std::size_t c) { return data_[r * kMaxDim + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const { return data_[r * kMaxDim + c]; }

  ComplexVector column(std::size_t c) const {
    ComplexVector v(rows_);
    for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
    return v;
  }

  void set_column(std::size_t c, const ComplexVector& v) {
    if (v.dim() != rows_ || c >= cols_) throw DimensionError("column does not fit matrix");
    for (std::size_t r = 0; r < rows_; ++r) (*this)(r, c) = v[r];
  }

  ComplexMatrix adjoint() const {
    ComplexMatrix m(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) m(c, r) = std::conj((*this)(r, c));
    return m;
  }

  Complex trace() const {
    require_square();
    Complex t = 0.0;
    for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
    return t;
  }

  double frobenius_norm() const {
    double acc = 0.0;
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) acc += std::norm((*this)(r, c));
    return std::sqrt(acc);
  }

  ComplexMatrix& operator+=(const ComplexMatrix& o) {
    require_same_shape(o);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) (*this)(r, c) += o(r, c);
    return *this;
  }
  ComplexMatrix& operator-=(const ComplexMatrix& o) {
    require_same_shape(o);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) (*this)(r, c) -= o(r, c);
    return *this;
  }
  ComplexMatrix& operator*=(Complex a) {
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) (*this)(r, c) *= a;
    return *this;
  }

  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
  friend ComplexMatrix operator*(Complex a, ComplexMatrix m) { return m *= a; }

  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols_ != b.rows_) throw DimensionError("matrix product shape mismatch");
    ComplexMatrix m(a.rows_, b.cols_);
    for (std::size_t r = 0; r < a.rows_; ++r)
      for (std::size_t c = 0; c < b.cols_; ++c) {
        Complex acc = 0.0;
        for (std::size_t k = 0; k < a.cols_; ++k) acc += a(r, k) * b(k, c);
        m(r, c) = acc;
      }
    return m;
  }

  friend ComplexVector operator*(const ComplexMatrix& a, const ComplexVector& v) {
    if (a.cols_ != v.dim()) throw DimensionError("matrix-vector shape mismatch");
    ComplexVector out(a.rows_);
    for (std::size_t r = 0; r < a.rows_; ++r) {
      Complex acc = 0.0;
      for (std::size_t k = 0; k < a.cols_; ++k) acc += a(r, k) * v[k];
      out[r] = acc;
    }
    return out;
  }

 private:
  void require_square() const {
    if (!is_square()) throw DimensionError("matrix is not square");
  }
  void require_same_shape(const ComplexMatrix& o) const {
    if (o.rows_ != rows_ || o.cols_ != cols_) throw DimensionError("matrix shape mismatch");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::array<Complex, kMaxDim * kMaxDim> data_{};
};

/// <a|b>, antilinear in the first argument.
inline Complex inner_product(const ComplexVector& a, const ComplexVector& b) {
  if (a.dim() != b.dim()) throw DimensionError("inner_product: dimension mismatch");
  Complex acc = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) acc += std::conj(a[i]) * b[i];
  return acc;
}

/// <v|m|v>
inline Complex expectation(const ComplexMatrix& m, const ComplexVector& v) {
  return inner_product(v, m * v);
}

inline ComplexVector kron(const ComplexVector& a, const ComplexVector& b) {
  ComplexVector out(a.dim() * b.dim());
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < b.dim(); ++j) out[i * b.dim() + j] = a[i] * b[j];
  return out;
}

/// Fidelity |<a|b>|^2 of two unit vectors.
inline double fidelity(const ComplexVector& a, const ComplexVector& b) {
  return std::norm(inner_product(a, b));
}

inline double hermiticity_residual(const ComplexMatrix& m) {
  return (m - m.adjoint()).frobenius_norm();
}

/// ||U^dagger U - I||_F
inline double unitarity_residual(const ComplexMatrix& u) {
  if (!u.is_square()) throw DimensionError("unitarity_residual: matrix is not square");
  return (u.adjoint() * u - ComplexMatrix::identity(u.rows())).frobenius_norm();
}

inline std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m) {
  if (!m.is_square()) throw DimensionError("hermitian_eigenvalues: matrix is not square");
  Eigen::MatrixXcd e(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) e(r, c) = m(r, c);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(e, Eigen::EigenvaluesOnly);
  const auto& ev = solver.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

/// Eigenvalue-floor positivity test, valid for any dimension.
inline bool is_positive_semidefinite_eig(const ComplexMatrix& m, double tol = kDefaultTol) {
  if (!m.is_square()) throw DimensionError("positivity test needs a square matrix");
  if (hermiticity_residual(m) > tol) throw DomainError("positivity test needs a Hermitian matrix");
  const auto ev = hermitian_eigenvalues(m);
  return std::all_of(ev.begin(), ev.end(), [tol](double x) { return x >= -tol; });
}

/// For a 2x2 Hermitian matrix the eigenvalues are both non-negative iff
/// Tr >= 0 and det >= 0. The determinant tolerance scales with the trace.
inline bool is_positive_semidefinite_2x2(const ComplexMatrix& m, double tol = kDefaultTol) {
  if (m.rows() != 2 || m.cols() != 2) throw DimensionError("expected a 2x2 matrix");
  if (hermiticity_residual(m) > tol) throw DomainError("positivity test needs a Hermitian matrix");
  const double tr = m.trace().real();
  const double det = (m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0)).real();
  const double scale = std::max(1.0, std::abs(tr));
  return tr >= -tol && det >= -tol * scale;
}

/// Dispatches 2x2 inputs to the trace/determinant criterion and everything
/// else to the eigenvalue floor.
inline bool is_positive_semidefinite(const ComplexMatrix& m, double tol = kDefaultTol) {
  if (m.rows() == 2 && m.cols() == 2) return is_positive_semidefinite_2x2(m, tol);
  return is_positive_semidefinite_eig(m, tol);
}

/// Extends orthonormal columns to a square unitary. The given columns come
/// first; the rest are Gram-Schmidt residuals of the canonical basis vectors
/// in ascending order, skipping any whose residual norm falls below `tol`.
inline ComplexMatrix complete_to_unitary(std::span<const ComplexVector> partial_columns,
                                         double tol = kDefaultTol) {
  if (partial_columns.empty()) throw DimensionError("complete_to_unitary: no columns given");
  const std::size_t dim = partial_columns.front().dim();
  if (partial_columns.size() > dim) throw DimensionError("complete_to_unitary: too many columns");
  for (std::size_t i = 0; i < partial_columns.size(); ++i) {
    if (partial_columns[i].dim() != dim) throw DimensionError("complete_to_unitary: ragged columns");
    for (std::size_t j = 0; j <= i; ++j) {
      const Complex g = inner_product(partial_columns[j], partial_columns[i]);
      const double expected = (i == j) ? 1.0 : 0.0;
      if (std::abs(g - expected) > tol) {
        throw DomainError("complete_to_unitary: input columns are not orthonormal");
      }
    }
  }

  std::vector<ComplexVector> basis(partial_columns.begin(), partial_columns.end());
  for (std::size_t k = 0; k < dim && basis.size() < dim; ++k) {
    ComplexVector v = ComplexVector::basis(dim, k);
    // Two passes of modified Gram-Schmidt keep the result orthogonal to
    // machine precision.
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& b : basis) v -= inner_product(b, v) * b;
    if (v.norm() < tol) continue;
    basis.push_back(v.normalized());
  }
  if (basis.size() != dim) throw DomainError("complete_to_unitary: completion failed");
  return ComplexMatrix::from_columns(basis);
}

}  // namespace sequd
