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

#ifndef SOLITONSCOPE_TENSOR_HPP
#define SOLITONSCOPE_TENSOR_HPP

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dense.hpp"
#include "expr.hpp"
#include "jet.hpp"

namespace solitonscope::tensor {

/// Chart coordinate names u1..un.
std::vector<std::string> chart_variables(int n);

/// Values plus first and (optionally) second coordinate derivatives of the
/// metric components, each as a scalar of type T. With T = Series the
/// quantities are themselves local expansions ("lifted") around the point.
template <class T>
struct MetricLocal {
  int n = 0;
  Matrix<T> g;
  std::vector<Matrix<T>> dg;   // dg[k](i, j) = d_k g_ij
  std::vector<Matrix<T>> ddg;  // ddg[k * n + l](i, j) = d_k d_l g_ij; empty if not requested
};

/// Riemannian metric given by component expressions in u1..un.
class MetricField {
 public:
  /// `lower` lists g_ij for i >= j row by row: g11, g21, g22, g31, ...
  MetricField(int n, std::vector<expr::Expr> lower, int max_jet_order = expr::kDefaultMaxJetOrder);

  static MetricField flat(int n);

  int dim() const { return n_; }
  int max_jet_order() const { return max_order_; }
  const expr::Expr& component(int i, int j) const;

  /// Local data around p, lifted to series of order `lift`; `derivs` is 1 or 2.
  MetricLocal<Series> local(std::span<const double> p, int lift, int derivs) const;
  MetricLocal<double> local_values(std::span<const double> p, int derivs) const;

 private:
  int n_;
  int max_order_;
  std::vector<expr::Expr> lower_;
  std::shared_ptr<const std::vector<expr::CompiledExpr>> compiled_;
};

enum class HessianConvention { LeviCivita, Flat };

class ScalarField {
 public:
  ScalarField(expr::Expr f, int n, int max_jet_order = expr::kDefaultMaxJetOrder);
  const expr::Expr& expr() const { return expr_; }
  int dim() const { return n_; }
  Series local(std::span<const double> p, int order) const;

 private:
  expr::Expr expr_;
  int n_;
  int max_order_;
  expr::CompiledExpr compiled_;
};

class VectorField {
 public:
  VectorField(std::vector<expr::Expr> components, int n,
              int max_jet_order = expr::kDefaultMaxJetOrder);
  const std::vector<expr::Expr>& components() const { return exprs_; }
  int dim() const { return n_; }
  std::vector<Series> local(std::span<const double> p, int order) const;

 private:
  std::vector<expr::Expr> exprs_;
  int n_;
  int max_order_;
  std::vector<expr::CompiledExpr> compiled_;
};

// ---------------------------------------------------------------------------
// Pointwise results
// ---------------------------------------------------------------------------

struct CurvaturePoint {
  int n = 0;
  Vec point;
  Mat g, g_inv;
  std::vector<double> gamma;        // Γ^k_ij at [(k * n + i) * n + j]
  std::vector<double> riemann_up;   // R^l_ijk at [((l * n + i) * n + j) * n + k]
  std::vector<double> riemann;      // R_ijkl = g_km R^m_ijl
  Mat ricci;
  double scalar = 0.0;
  std::optional<Mat> schouten;      // n >= 3 only
  std::vector<double> sigma;        // sigma_1..sigma_n, n >= 3 only
  std::vector<double> schouten_eigs;

  double Gamma(int k, int i, int j) const { return gamma[(k * n + i) * n + j]; }
  double Rup(int l, int i, int j, int k) const { return riemann_up[((l * n + i) * n + j) * n + k]; }
  double Rm(int i, int j, int k, int l) const { return riemann[((i * n + j) * n + k) * n + l]; }
};

struct ScalarFieldData {
  double value = 0.0;
  Vec grad;   // contravariant
  Vec dfield; // covariant d_i f
  Mat hess;
  double laplacian = 0.0;
};

struct VectorFieldData {
  Vec value;
  Mat nabla;  // (∇v)^i_j
  Mat lie_g;  // (L_v g)_ij
};

/// Throws Error(Numerical) unless g is positive definite at p.
CurvaturePoint curvature_at(const MetricField& m, std::span<const double> p,
                            bool require_schouten = false);

/// sigma_k from a curvature point; Error(Config) when n = 2.
double sigma_k(const CurvaturePoint& c, int k);

ScalarFieldData scalar_field_at(const MetricField& m, const ScalarField& f,
                                std::span<const double> p,
                                HessianConvention convention = HessianConvention::LeviCivita);

VectorFieldData vector_field_at(const MetricField& m, const VectorField& v,
                                std::span<const double> p);

/// Elementary symmetric polynomials e_1..e_n of `values`.
std::vector<double> elementary_symmetric(const std::vector<double>& values);

/// Positive-definiteness check used by every pointwise operation.
void check_positive_definite(const Mat& g);

// ---------------------------------------------------------------------------
// Scalar-generic kernels
// ---------------------------------------------------------------------------

/// Γ^k_ij laid out as in CurvaturePoint.
template <class T>
std::vector<T> christoffel(const MetricLocal<T>& ml, const Matrix<T>& ginv) {
  const int n = ml.n;
  const T zero = zero_like(ml.g(0, 0));
  std::vector<T> gamma(static_cast<std::size_t>(n * n * n), zero);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        T acc = zero;
        for (int l = 0; l < n; ++l) {
          acc += ginv(k, l) * (ml.dg[i](j, l) + ml.dg[j](i, l) - ml.dg[l](i, j));
        }
        acc *= 0.5;
        gamma[(k * n + i) * n + j] = acc;
        gamma[(k * n + j) * n + i] = acc;
      }
    }
  }
  return gamma;
}

/// R^l_ijk = d_i Γ^l_jk - d_j Γ^l_ik + Γ^l_im Γ^m_jk - Γ^l_jm Γ^m_ik.
template <class T>
std::vector<T> riemann_up(const MetricLocal<T>& ml, const Matrix<T>& ginv,
                          const std::vector<T>& gamma) {
  const int n = ml.n;
  const T zero = zero_like(ml.g(0, 0));
  auto G = [&](int k, int i, int j) -> const T& { return gamma[(k * n + i) * n + j]; };
  // d_a g^{lm} = -g^{lp} d_a g_pq g^{qm}
  std::vector<Matrix<T>> dginv;
  for (int a = 0; a < n; ++a) {
    Matrix<T> d = multiply(multiply(ginv, ml.dg[a]), ginv);
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) d(r, c) = -d(r, c);
    dginv.push_back(std::move(d));
  }
  // dGamma[a][l][j][k] = d_a Γ^l_jk
  std::vector<T> dgamma(static_cast<std::size_t>(n * n * n * n), zero);
  for (int a = 0; a < n; ++a) {
    for (int l = 0; l < n; ++l) {
      for (int j = 0; j < n; ++j) {
        for (int k = 0; k < n; ++k) {
          T acc = zero;
          for (int m = 0; m < n; ++m) {
            const T first = ml.dg[j](k, m) + ml.dg[k](j, m) - ml.dg[m](j, k);
            const T second = ml.ddg[a * n + j](k, m) + ml.ddg[a * n + k](j, m) -
                             ml.ddg[a * n + m](j, k);
            acc += dginv[a](l, m) * first + ginv(l, m) * second;
          }
          acc *= 0.5;
          dgamma[((a * n + l) * n + j) * n + k] = acc;
        }
      }
    }
  }
  auto dG = [&](int a, int l, int j, int k) -> const T& {
    return dgamma[((a * n + l) * n + j) * n + k];
  };
  std::vector<T> r(static_cast<std::size_t>(n * n * n * n), zero);
  for (int l = 0; l < n; ++l) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        for (int k = 0; k < n; ++k) {
          T acc = dG(i, l, j, k) - dG(j, l, i, k);
          for (int m = 0; m < n; ++m) acc += G(l, i, m) * G(m, j, k) - G(l, j, m) * G(m, i, k);
          r[((l * n + i) * n + j) * n + k] = acc;
        }
      }
    }
  }
  return r;
}

/// Ric_jk = R^i_ijk.
template <class T>
Matrix<T> ricci(int n, const std::vector<T>& rup) {
  Matrix<T> ric(n, n, zero_like(rup[0]));
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i) ric(j, k) += rup[((i * n + i) * n + j) * n + k];
  return ric;
}

template <class T>
T trace_with(const Matrix<T>& ginv, const Matrix<T>& a) {
  T acc = zero_like(a(0, 0));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) acc += ginv(i, j) * a(i, j);
  return acc;
}

/// Scalar curvature from lifted or plain metric data (requires ddg).
template <class T>
T scalar_curvature(const MetricLocal<T>& ml) {
  const Matrix<T> ginv = inverse(ml.g);
  const auto gamma = christoffel(ml, ginv);
  const auto rup = riemann_up(ml, ginv, gamma);
  return trace_with(ginv, ricci(ml.n, rup));
}

/// Covariant Hessian d_i d_j f - Γ^k_ij d_k f (Flat drops the connection term).
template <class T>
Matrix<T> hessian(int n, const std::vector<T>& df, const Matrix<T>& ddf,
                  const std::vector<T>& gamma, HessianConvention convention) {
  Matrix<T> h = ddf;
  if (convention == HessianConvention::Flat) return h;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) h(i, j) -= gamma[(k * n + i) * n + j] * df[k];
  return h;
}

/// (L_v g)_ij = v^k d_k g_ij + g_kj d_i v^k + g_ik d_j v^k, with dv(k, i) = d_i v^k.
template <class T>
Matrix<T> lie_derivative(int n, const Matrix<T>& g, const std::vector<Matrix<T>>& dg,
                         const std::vector<T>& v, const Matrix<T>& dv) {
  Matrix<T> out(n, n, zero_like(g(0, 0)));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      T acc = zero_like(g(0, 0));
      for (int k = 0; k < n; ++k) {
        acc += v[k] * dg[k](i, j) + g(k, j) * dv(k, i) + g(i, k) * dv(k, j);
      }
      out(i, j) = acc;
    }
  }
  return out;
}

}  // namespace solitonscope::tensor

#endif  // SOLITONSCOPE_TENSOR_HPP
