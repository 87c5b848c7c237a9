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

#include "tensor.hpp"

#include "error.hpp"

namespace solitonscope::tensor {

namespace {

void check_order(int needed, int max_order, const char* what) {
  if (needed > max_order) {
    throw Error(ErrorKind::Config, std::string(what) + " needs jet order " +
                                       std::to_string(needed) + " but the maximum is " +
                                       std::to_string(max_order));
  }
}

Mat to_values(const Matrix<Series>& m) {
  Mat out(m.rows(), m.cols(), 0.0);
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = m(i, j).value();
  return out;
}

void check_point(std::span<const double> p, int n) {
  if (static_cast<int>(p.size()) != n) {
    throw Error(ErrorKind::Config, "point has " + std::to_string(p.size()) +
                                       " coordinates, expected " + std::to_string(n));
  }
}

}  // namespace

std::vector<std::string> chart_variables(int n) {
  std::vector<std::string> names;
  for (int i = 1; i <= n; ++i) names.push_back("u" + std::to_string(i));
  return names;
}

void check_positive_definite(const Mat& g) {
  for (std::size_t i = 0; i < g.rows(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (std::fabs(g(i, j) - g(j, i)) > 1e-12 * (1.0 + max_abs(g))) {
        throw Error(ErrorKind::Numerical, "metric is not symmetric");
      }
  cholesky(g, 1e-12);
}

MetricField::MetricField(int n, std::vector<expr::Expr> lower, int max_jet_order)
    : n_(n), max_order_(max_jet_order), lower_(std::move(lower)) {
  if (n < 1) throw Error(ErrorKind::Config, "metric dimension must be positive");
  if (static_cast<int>(lower_.size()) != n * (n + 1) / 2) {
    throw Error(ErrorKind::Config, "metric needs " + std::to_string(n * (n + 1) / 2) +
                                       " lower-triangular components, got " +
                                       std::to_string(lower_.size()));
  }
  auto compiled = std::make_shared<std::vector<expr::CompiledExpr>>();
  const auto vars = chart_variables(n);
  for (const auto& e : lower_) compiled->emplace_back(e, vars);
  compiled_ = std::move(compiled);
}

MetricField MetricField::flat(int n) {
  std::vector<expr::Expr> lower;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= i; ++j) lower.push_back(expr::Expr::number(i == j ? 1.0 : 0.0));
  return MetricField(n, std::move(lower));
}

const expr::Expr& MetricField::component(int i, int j) const {
  if (i < j) std::swap(i, j);
  return lower_[i * (i + 1) / 2 + j];
}

MetricLocal<Series> MetricField::local(std::span<const double> p, int lift, int derivs) const {
  check_point(p, n_);
  check_order(lift + derivs, max_order_, "metric expansion");
  const auto& layout = MonomialLayout::get(n_, lift + derivs);
  const Series zero(MonomialLayout::get(n_, lift), 0.0);
  MetricLocal<Series> ml;
  ml.n = n_;
  ml.g = Matrix<Series>(n_, n_, zero);
  if (derivs >= 1) ml.dg.assign(n_, Matrix<Series>(n_, n_, zero));
  if (derivs >= 2) ml.ddg.assign(n_ * n_, Matrix<Series>(n_, n_, zero));
  for (int i = 0; i < n_; ++i) {
    for (int j = 0; j <= i; ++j) {
      const Series s = (*compiled_)[i * (i + 1) / 2 + j].eval(layout, p);
      ml.g(i, j) = ml.g(j, i) = s.truncated(lift);
      if (derivs < 1) continue;
      for (int k = 0; k < n_; ++k) {
        const Series dk = s.derivative(k);
        ml.dg[k](i, j) = ml.dg[k](j, i) = dk.truncated(lift);
        if (derivs < 2) continue;
        for (int l = 0; l < n_; ++l) {
          const Series dkl = dk.derivative(l).truncated(lift);
          ml.ddg[k * n_ + l](i, j) = ml.ddg[k * n_ + l](j, i) = dkl;
        }
      }
    }
  }
  return ml;
}

MetricLocal<double> MetricField::local_values(std::span<const double> p, int derivs) const {
  const auto ml = local(p, 0, derivs);
  MetricLocal<double> out;
  out.n = n_;
  out.g = to_values(ml.g);
  for (const auto& m : ml.dg) out.dg.push_back(to_values(m));
  for (const auto& m : ml.ddg) out.ddg.push_back(to_values(m));
  return out;
}

ScalarField::ScalarField(expr::Expr f, int n, int max_jet_order)
    : expr_(std::move(f)), n_(n), max_order_(max_jet_order),
      compiled_(expr_, chart_variables(n)) {}

Series ScalarField::local(std::span<const double> p, int order) const {
  check_point(p, n_);
  check_order(order, max_order_, "scalar field expansion");
  return compiled_.eval(MonomialLayout::get(n_, order), p);
}

VectorField::VectorField(std::vector<expr::Expr> components, int n, int max_jet_order)
    : exprs_(std::move(components)), n_(n), max_order_(max_jet_order) {
  if (static_cast<int>(exprs_.size()) != n) {
    throw Error(ErrorKind::Config, "vector field has " + std::to_string(exprs_.size()) +
                                       " components, expected " + std::to_string(n));
  }
  const auto vars = chart_variables(n);
  for (const auto& e : exprs_) compiled_.emplace_back(e, vars);
}

std::vector<Series> VectorField::local(std::span<const double> p, int order) const {
  check_point(p, n_);
  check_order(order, max_order_, "vector field expansion");
  std::vector<Series> out;
  for (const auto& c : compiled_) out.push_back(c.eval(MonomialLayout::get(n_, order), p));
  return out;
}

std::vector<double> elementary_symmetric(const std::vector<double>& values) {
  // e[k] accumulates the k-th polynomial; standard product expansion.
  std::vector<double> e(values.size() + 1, 0.0);
  e[0] = 1.0;
  for (double x : values) {
    for (std::size_t k = values.size(); k >= 1; --k) e[k] += x * e[k - 1];
  }
  return {e.begin() + 1, e.end()};
}

CurvaturePoint curvature_at(const MetricField& m, std::span<const double> p,
                            bool require_schouten) {
  const int n = m.dim();
  if (require_schouten && n < 3) {
    throw Error(ErrorKind::Config, "Schouten tensor is undefined for n = 2");
  }
  const auto ml = m.local_values(p, 2);
  check_positive_definite(ml.g);

  CurvaturePoint c;
  c.n = n;
  c.point.assign(p.begin(), p.end());
  c.g = ml.g;
  c.g_inv = inverse(ml.g);
  c.gamma = christoffel(ml, c.g_inv);
  c.riemann_up = riemann_up(ml, c.g_inv, c.gamma);
  c.riemann.assign(c.riemann_up.size(), 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          double acc = 0.0;
          for (int q = 0; q < n; ++q) acc += ml.g(k, q) * c.Rup(q, i, j, l);
          c.riemann[((i * n + j) * n + k) * n + l] = acc;
        }
  c.ricci = ricci(n, c.riemann_up);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) c.ricci(i, j) = c.ricci(j, i) = 0.5 * (c.ricci(i, j) + c.ricci(j, i));
  c.scalar = trace_with(c.g_inv, c.ricci);

  if (n >= 3) {
    Mat a(n, n, 0.0);
    const double shift = c.scalar / (2.0 * (n - 1));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) a(i, j) = (c.ricci(i, j) - shift * c.g(i, j)) / (n - 2);
    c.schouten_eigs = generalized_eigenvalues(a, c.g);
    c.sigma = elementary_symmetric(c.schouten_eigs);
    c.schouten = std::move(a);
  }
  return c;
}

double sigma_k(const CurvaturePoint& c, int k) {
  if (c.n < 3) throw Error(ErrorKind::Config, "sigma_k needs the Schouten tensor, undefined for n = 2");
  if (k < 1 || k > c.n) {
    throw Error(ErrorKind::Config, "sigma_k index " + std::to_string(k) + " outside [1, " +
                                       std::to_string(c.n) + "]");
  }
  return c.sigma[k - 1];
}

ScalarFieldData scalar_field_at(const MetricField& m, const ScalarField& f,
                                std::span<const double> p, HessianConvention convention) {
  const int n = m.dim();
  const auto ml = m.local_values(p, 1);
  check_positive_definite(ml.g);
  const Mat ginv = inverse(ml.g);
  const auto gamma = christoffel(ml, ginv);
  const Series fs = f.local(p, 2);

  ScalarFieldData out;
  out.value = fs.value();
  out.dfield.resize(n);
  Mat ddf(n, n, 0.0);
  std::vector<int> alpha(n, 0);
  for (int i = 0; i < n; ++i) {
    out.dfield[i] = fs.gradient(i);
    for (int j = 0; j < n; ++j) {
      std::fill(alpha.begin(), alpha.end(), 0);
      alpha[i] += 1;
      alpha[j] += 1;
      ddf(i, j) = fs.partial(alpha);
    }
  }
  out.hess = hessian(n, out.dfield, ddf, gamma, convention);
  out.grad.assign(n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out.grad[i] += ginv(i, j) * out.dfield[j];
  out.laplacian = trace_with(ginv, out.hess);
  return out;
}

VectorFieldData vector_field_at(const MetricField& m, const VectorField& v,
                                std::span<const double> p) {
  const int n = m.dim();
  if (v.dim() != n) throw Error(ErrorKind::Config, "vector field dimension differs from metric");
  const auto ml = m.local_values(p, 1);
  check_positive_definite(ml.g);
  const Mat ginv = inverse(ml.g);
  const auto gamma = christoffel(ml, ginv);
  const auto vs = v.local(p, 1);

  VectorFieldData out;
  Mat dv(n, n, 0.0);
  for (int i = 0; i < n; ++i) {
    out.value.push_back(vs[i].value());
    for (int k = 0; k < n; ++k) dv(i, k) = vs[i].gradient(k);
  }
  out.nabla = Mat(n, n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double acc = dv(i, j);
      for (int k = 0; k < n; ++k) acc += gamma[(i * n + j) * n + k] * out.value[k];
      out.nabla(i, j) = acc;
    }
  out.lie_g = lie_derivative(n, ml.g, ml.dg, out.value, dv);
  return out;
}

}  // namespace solitonscope::tensor
