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

// Shared helpers for the unit and acceptance suites.

#ifndef SOLITONSCOPE_TEST_SUPPORT_HPP
#define SOLITONSCOPE_TEST_SUPPORT_HPP

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "dense.hpp"
#include "hypersurface.hpp"
#include "tensor.hpp"

namespace solitonscope::testing {

inline double rel_diff(double a, double b, double floor = 1.0) {
  return std::fabs(a - b) / std::max({std::fabs(a), std::fabs(b), floor});
}

inline double max_abs_diff(const Mat& a, const Mat& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m = std::max(m, std::fabs(a(i, j) - b(i, j)));
  return m;
}

/// Regular grid over the immersion's domain boxes, admissible points only.
inline std::vector<Vec> grid_points(const hypersurface::Immersion& s, int per_axis) {
  std::vector<Vec> out;
  const int n = s.dim();
  std::vector<int> idx(n, 0);
  for (;;) {
    Vec p(n);
    for (int i = 0; i < n; ++i) {
      const auto& iv = s.domain()[i];
      p[i] = iv.min + (iv.max - iv.min) * idx[i] / (per_axis - 1);
    }
    if (s.admissible(p)) out.push_back(p);
    int d = 0;
    while (d < n && ++idx[d] == per_axis) idx[d++] = 0;
    if (d == n) break;
  }
  return out;
}

/// Random positive definite metric 0.5 I + A^T A with smooth random entries.
inline tensor::MetricField random_metric(std::mt19937& rng, int n) {
  using expr::Expr;
  std::uniform_real_distribution<double> c(-0.6, 0.6);
  auto u = [](int i) { return Expr::variable("u" + std::to_string(i + 1)); };
  std::vector<std::vector<Expr>> a(n, std::vector<Expr>(n));
  for (int k = 0; k < n; ++k) {
    for (int i = 0; i < n; ++i) {
      Expr e = Expr::number(k == i ? 1.0 : c(rng));
      e = e + Expr::number(c(rng)) * u(i);
      e = e + Expr::number(c(rng)) * expr::apply(expr::Func::Sin, u((i + 1) % n));
      e = e + Expr::number(c(rng)) * expr::pow(u((i + k) % n), Expr::number(2));
      a[k][i] = e;
    }
  }
  std::vector<Expr> lower;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j <= i; ++j) {
      Expr sum = Expr::number(i == j ? 0.5 : 0.0);
      for (int k = 0; k < n; ++k) sum = sum + a[k][i] * a[k][j];
      lower.push_back(sum);
    }
  }
  return tensor::MetricField(n, std::move(lower));
}

inline tensor::MetricField metric_from(int n, std::initializer_list<const char*> lower) {
  std::vector<expr::Expr> parsed;
  for (const char* t : lower) parsed.push_back(expr::parse(t));
  return tensor::MetricField(n, std::move(parsed));
}

}  // namespace solitonscope::testing

#endif
