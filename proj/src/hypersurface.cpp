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

#include "hypersurface.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "error.hpp"

namespace solitonscope::hypersurface {

namespace {

Mat values(const Matrix<Series>& m) {
  Mat out(m.rows(), m.cols(), 0.0);
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = m(i, j).value();
  return out;
}

Vec values(const std::vector<Series>& v) {
  Vec out;
  for (const auto& s : v) out.push_back(s.value());
  return out;
}

}  // namespace

Immersion::Immersion(int n, std::vector<expr::Expr> components, std::vector<Interval> domain,
                     std::optional<expr::Expr> exclude, int max_jet_order)
    : n_(n),
      max_order_(max_jet_order),
      components_(std::move(components)),
      domain_(std::move(domain)),
      exclude_(std::move(exclude)) {
  if (n < 1) throw Error(ErrorKind::Config, "immersion dimension must be positive");
  if (static_cast<int>(components_.size()) != n + 1) {
    throw Error(ErrorKind::Config, "immersion needs " + std::to_string(n + 1) +
                                       " components, got " + std::to_string(components_.size()));
  }
  if (!domain_.empty() && static_cast<int>(domain_.size()) != n) {
    throw Error(ErrorKind::Config, "domain needs one interval per chart variable");
  }
  const auto vars = tensor::chart_variables(n);
  for (const auto& c : components_) compiled_.emplace_back(c, vars);
  if (exclude_) exclude_compiled_.emplace(*exclude_, vars);

  // g_ij = sum_a d_i F^a d_j F^a
  std::vector<std::vector<expr::Expr>> partials(n);
  for (int i = 0; i < n; ++i)
    for (const auto& c : components_) partials[i].push_back(expr::differentiate(c, vars[i]));
  std::vector<expr::Expr> lower;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j <= i; ++j) {
      expr::Expr sum = expr::Expr::number(0.0);
      for (int a = 0; a <= n; ++a) sum = sum + partials[i][a] * partials[j][a];
      lower.push_back(sum);
    }
  }
  induced_ = std::make_shared<tensor::MetricField>(n, std::move(lower), max_jet_order);

  expr::Expr sq = expr::Expr::number(0.0);
  for (const auto& c : components_) sq = sq + expr::pow(c, expr::Expr::number(2.0));
  half_norm_sq_ = expr::Expr::number(0.5) * sq;
}

bool Immersion::admissible(std::span<const double> u) const {
  if (static_cast<int>(u.size()) != n_) return false;
  for (std::size_t i = 0; i < domain_.size(); ++i) {
    const double slack = 1e-12 * (1.0 + std::fabs(domain_[i].max - domain_[i].min));
    if (u[i] < domain_[i].min - slack || u[i] > domain_[i].max + slack) return false;
  }
  if (exclude_compiled_ && exclude_compiled_->value(u) <= 0.0) return false;
  return true;
}

void Immersion::require_admissible(std::span<const double> u) const {
  if (static_cast<int>(u.size()) != n_) {
    throw Error(ErrorKind::Config, "chart point has wrong dimension");
  }
  if (!admissible(u)) throw Error(ErrorKind::Domain, "point outside the chart domain or excluded");
}

std::vector<Series> Immersion::local(std::span<const double> u, int order) const {
  if (order > max_order_) {
    throw Error(ErrorKind::Config, "immersion expansion needs jet order " + std::to_string(order) +
                                       " but the maximum is " + std::to_string(max_order_));
  }
  const auto& layout = MonomialLayout::get(n_, order);
  std::vector<Series> out;
  for (const auto& c : compiled_) out.push_back(c.eval(layout, u));
  return out;
}

FrameSeries frame_series(const Immersion& s, std::span<const double> u, int lift) {
  s.require_admissible(u);
  const int n = s.dim();
  const int m = n + 1;
  const auto f = s.local(u, lift + 2);
  const Series zero(MonomialLayout::get(n, lift), 0.0);

  FrameSeries fr;
  fr.n = n;
  std::vector<std::vector<std::vector<Series>>> second(
      n, std::vector<std::vector<Series>>(n, std::vector<Series>(m, zero)));
  fr.tangents.assign(n, std::vector<Series>(m, zero));
  for (int a = 0; a < m; ++a) {
    fr.position.push_back(f[a].truncated(lift));
    for (int i = 0; i < n; ++i) {
      const Series di = f[a].derivative(i);
      fr.tangents[i][a] = di.truncated(lift);
      for (int j = 0; j < n; ++j) second[i][j][a] = di.derivative(j).truncated(lift);
    }
  }

  fr.g = Matrix<Series>(n, n, zero);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int a = 0; a < m; ++a) fr.g(i, j) += fr.tangents[i][a] * fr.tangents[j][a];

  // Generalized cross product: cofactors of the first row of
  // det[e_0..e_n; T_1; ...; T_n].
  std::vector<Series> cross;
  for (int a = 0; a < m; ++a) {
    Matrix<Series> minor(n, n, zero);
    for (int i = 0; i < n; ++i) {
      int col = 0;
      for (int b = 0; b < m; ++b) {
        if (b == a) continue;
        minor(i, col++) = fr.tangents[i][b];
      }
    }
    Series d = determinant(minor);
    cross.push_back(a % 2 == 0 ? d : -d);
  }
  double cross_norm = 0.0;
  for (const auto& c : cross) cross_norm += c.value() * c.value();
  cross_norm = std::sqrt(cross_norm);
  double tangent_product = 1.0;
  for (int i = 0; i < n; ++i) tangent_product *= std::sqrt(fr.g(i, i).value());
  if (!(cross_norm >= 1e-10 * tangent_product) || cross_norm == 0.0) {
    throw Error(ErrorKind::Numerical, "immersion differential is rank deficient");
  }
  Series norm_sq = zero;
  for (const auto& c : cross) norm_sq += c * c;
  const Series inv_norm = 1.0 / sqrt(norm_sq);
  for (const auto& c : cross) fr.normal.push_back(c * inv_norm);

  fr.h = Matrix<Series>(n, n, zero);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int a = 0; a < m; ++a) fr.h(i, j) += second[i][j][a] * fr.normal[a];

  fr.support = zero;
  for (int a = 0; a < m; ++a) fr.support += fr.normal[a] * fr.position[a];

  std::vector<Series> cov(n, zero);
  for (int j = 0; j < n; ++j)
    for (int a = 0; a < m; ++a) cov[j] += fr.position[a] * fr.tangents[j][a];
  const Matrix<Series> ginv = inverse(fr.g);
  fr.vt_chart.assign(n, zero);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) fr.vt_chart[i] += ginv(i, j) * cov[j];
  return fr;
}

ExtrinsicFrame frame_at(const Immersion& s, std::span<const double> u) {
  const FrameSeries fs = frame_series(s, u, 0);
  const int n = s.dim();
  const int m = n + 1;

  ExtrinsicFrame fr;
  fr.n = n;
  fr.u.assign(u.begin(), u.end());
  fr.position = values(fs.position);
  for (const auto& t : fs.tangents) fr.tangents.push_back(values(t));
  fr.g = values(fs.g);
  tensor::check_positive_definite(fr.g);
  fr.g_inv = inverse(fr.g);
  fr.normal = values(fs.normal);
  fr.h = values(fs.h);
  fr.shape = multiply(fr.g_inv, fr.h);
  fr.kappa = generalized_eigenvalues(fr.h, fr.g);
  fr.alpha = std::accumulate(fr.kappa.begin(), fr.kappa.end(), 0.0) / n;
  fr.lambda = fs.support.value();
  fr.vt_chart = values(fs.vt_chart);
  fr.vt_ambient.assign(m, 0.0);
  fr.vperp.assign(m, 0.0);
  for (int a = 0; a < m; ++a) {
    fr.vperp[a] = fr.lambda * fr.normal[a];
    fr.vt_ambient[a] = fr.position[a] - fr.vperp[a];
  }
  return fr;
}

CompatibilityResidual compatibility_at(const Immersion& s, std::span<const double> u) {
  const int n = s.dim();
  const FrameSeries fs = frame_series(s, u, 1);
  const auto curv = tensor::curvature_at(s.induced_metric(), u);
  const Mat h = values(fs.h);

  double max_r = 0.0, max_h = max_abs(h);
  for (double r : curv.riemann) max_r = std::max(max_r, std::fabs(r));
  const double scale = 1.0 + std::max(max_r, max_h * max_h);

  CompatibilityResidual out;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          const double rhs = h(i, k) * h(j, l) - h(i, l) * h(j, k);
          out.gauss = std::max(out.gauss, std::fabs(curv.Rm(i, j, k, l) - rhs));
        }
  out.gauss /= scale;

  // (∇̄_i h)_jk = d_i h_jk - Γ^m_ij h_mk - Γ^m_ik h_jm
  auto nabla_h = [&](int i, int j, int k) {
    double acc = fs.h(j, k).gradient(i);
    for (int m = 0; m < n; ++m) acc -= curv.Gamma(m, i, j) * h(m, k) + curv.Gamma(m, i, k) * h(j, m);
    return acc;
  };
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        out.codazzi = std::max(out.codazzi, std::fabs(nabla_h(i, j, k) - nabla_h(j, i, k)));
      }
  out.codazzi /= scale;
  return out;
}

LiePair lie_position_at(const Immersion& s, std::span<const double> u) {
  const int n = s.dim();
  const FrameSeries fs = frame_series(s, u, 1);
  const Mat g = values(fs.g);
  std::vector<Mat> dg(n, Mat(n, n, 0.0));
  Mat dv(n, n, 0.0);
  Vec v(n, 0.0);
  for (int k = 0; k < n; ++k) {
    v[k] = fs.vt_chart[k].value();
    for (int i = 0; i < n; ++i) {
      dv(k, i) = fs.vt_chart[k].gradient(i);
      for (int j = 0; j < n; ++j) dg[k](i, j) = fs.g(i, j).gradient(k);
    }
  }
  LiePair out;
  out.coordinate = tensor::lie_derivative(n, g, dg, v, dv);
  out.via_shape = Mat(n, n, 0.0);
  const double lambda = fs.support.value();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out.via_shape(i, j) = 2.0 * g(i, j) + 2.0 * lambda * fs.h(i, j).value();
  return out;
}

Vec potential_gradient_at(const Immersion& s, std::span<const double> u) {
  s.require_admissible(u);
  const tensor::ScalarField f(s.half_norm_squared(), s.dim(), s.max_jet_order());
  return tensor::scalar_field_at(s.induced_metric(), f, u).grad;
}

}  // namespace solitonscope::hypersurface
