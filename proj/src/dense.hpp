/*
  Copyright 2026 The SolitonScope Authors

  Licensed under the Apache License, Version 2.0 (the "License");
  you may not use this file except in compliance with the License.
  You may obtain a copy of the License at

  http://www.apache.org/licenses/LICENSE-2.0

  Unless required by applicable law or agreed to in writing, software
  distributed under the License is distributed on an "AS IS" BASIS,
  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
  See the License for the specific language governing permissions and
  limitations under the License.
*/

#ifndef SOLITONSCOPE_DENSE_HPP
#define SOLITONSCOPE_DENSE_HPP

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "error.hpp"
#include "series.hpp"

namespace solitonscope {

inline double value_of(double x) { return x; }
inline double value_of(const Series& s) { return s.value(); }

inline double zero_like(double) { return 0.0; }
inline Series zero_like(const Series& s) { return s.constant(0.0); }

template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const T& fill)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix identity(std::size_t n, const T& zero, const T& one) {
    Matrix m(n, n, zero);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = one;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using Mat = Matrix<double>;
using Vec = std::vector<double>;

template <class T>
Matrix<T> multiply(const Matrix<T>& a, const Matrix<T>& b) {
  Matrix<T> out(a.rows(), b.cols(), zero_like(a(0, 0)));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k)
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += a(i, k) * b(k, j);
  return out;
}

template <class T>
Matrix<T> transpose(const Matrix<T>& a) {
  Matrix<T> out(a.cols(), a.rows(), zero_like(a(0, 0)));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(j, i) = a(i, j);
  return out;
}

/// Gauss-Jordan inverse with partial pivoting on the base-point values.
template <class T>
Matrix<T> inverse(Matrix<T> a) {
  const std::size_t n = a.rows();
  const T zero = zero_like(a(0, 0));
  Matrix<T> inv = Matrix<T>::identity(n, zero, zero + 1.0);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r) {
      if (std::fabs(value_of(a(r, col))) > std::fabs(value_of(a(pivot, col)))) pivot = r;
    }
    if (value_of(a(pivot, col)) == 0.0) {
      throw Error(ErrorKind::Numerical, "singular matrix");
    }
    if (pivot != col) {
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(a(pivot, j), a(col, j));
        std::swap(inv(pivot, j), inv(col, j));
      }
    }
    const T scale = 1.0 / a(col, col);
    for (std::size_t j = 0; j < n; ++j) {
      a(col, j) = a(col, j) * scale;
      inv(col, j) = inv(col, j) * scale;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col) continue;
      const T factor = a(r, col);
      for (std::size_t j = 0; j < n; ++j) {
        a(r, j) -= factor * a(col, j);
        inv(r, j) -= factor * inv(col, j);
      }
    }
  }
  return inv;
}

/// Determinant by cofactor expansion along the first row. Exact as a
/// polynomial in the entries, so it is safe on series-valued matrices whose
/// base values are singular.
template <class T>
T determinant(const Matrix<T>& a) {
  const std::size_t n = a.rows();
  if (n == 1) return a(0, 0);
  if (n == 2) return a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
  T det = zero_like(a(0, 0));
  for (std::size_t col = 0; col < n; ++col) {
    Matrix<T> minor(n - 1, n - 1, zero_like(a(0, 0)));
    for (std::size_t i = 1; i < n; ++i) {
      std::size_t jj = 0;
      for (std::size_t j = 0; j < n; ++j) {
        if (j == col) continue;
        minor(i - 1, jj++) = a(i, j);
      }
    }
    const T term = a(0, col) * determinant(minor);
    if (col % 2 == 0) {
      det += term;
    } else {
      det -= term;
    }
  }
  return det;
}

/// Lower-triangular L with a = L L^T. Throws Error(Numerical) when a pivot
/// falls below `rel_pivot` times the largest entry magnitude.
Mat cholesky(const Mat& a, double rel_pivot = 1e-12);

struct SymmetricEigen {
  Vec values;    // ascending
  Mat vectors;   // columns
  int sweeps = 0;
};

/// Cyclic Jacobi rotations on a symmetric matrix.
SymmetricEigen jacobi_eigen(Mat a, double tol = 1e-13, int max_sweeps = 50);

/// Eigenvalues of g^{-1} a for symmetric a and positive definite g, via
/// whitening L^{-1} a L^{-T} with g = L L^T. Ascending.
Vec generalized_eigenvalues(const Mat& a, const Mat& g);

double max_abs(const Mat& a);

}  // namespace solitonscope

#endif  // SOLITONSCOPE_DENSE_HPP
