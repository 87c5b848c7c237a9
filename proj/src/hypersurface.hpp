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

#ifndef SOLITONSCOPE_HYPERSURFACE_HPP
#define SOLITONSCOPE_HYPERSURFACE_HPP

#include <memory>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "dense.hpp"
#include "expr.hpp"
#include "tensor.hpp"

namespace solitonscope::hypersurface {

struct Interval {
  double min = 0.0;
  double max = 1.0;
  int samples = 2;
};

/// F: U ⊂ R^n -> R^{n+1}, components in chart variables u1..un.
class Immersion {
 public:
  Immersion(int n, std::vector<expr::Expr> components, std::vector<Interval> domain = {},
            std::optional<expr::Expr> exclude = std::nullopt,
            int max_jet_order = expr::kDefaultMaxJetOrder);

  int dim() const { return n_; }
  int ambient_dim() const { return n_ + 1; }
  int max_jet_order() const { return max_order_; }
  const std::vector<expr::Expr>& components() const { return components_; }
  const std::vector<Interval>& domain() const { return domain_; }
  const std::optional<expr::Expr>& exclude() const { return exclude_; }

  /// Inside the domain boxes (when given) and not excluded.
  bool admissible(std::span<const double> u) const;
  /// Throws Error(Domain) when `u` is not admissible.
  void require_admissible(std::span<const double> u) const;

  std::vector<Series> local(std::span<const double> u, int order) const;

  /// Metric pulled back from R^{n+1}, components as symbolic expressions.
  const tensor::MetricField& induced_metric() const { return *induced_; }

  /// ½|F|² as an expression.
  const expr::Expr& half_norm_squared() const { return half_norm_sq_; }

 private:
  int n_;
  int max_order_;
  std::vector<expr::Expr> components_;
  std::vector<Interval> domain_;
  std::optional<expr::Expr> exclude_;
  std::vector<expr::CompiledExpr> compiled_;
  std::optional<expr::CompiledExpr> exclude_compiled_;
  std::shared_ptr<const tensor::MetricField> induced_;
  expr::Expr half_norm_sq_;
};

/// Extrinsic quantities lifted to local series of a given order.
struct FrameSeries {
  int n = 0;
  std::vector<Series> position;               // F^a
  std::vector<std::vector<Series>> tangents;  // tangents[i][a] = d_i F^a
  Matrix<Series> g;
  std::vector<Series> normal;
  Matrix<Series> h;
  Series support;                 // λ = <N, F>
  std::vector<Series> vt_chart;   // chart components of V^T
};

struct ExtrinsicFrame {
  int n = 0;
  Vec u;
  Vec position;
  std::vector<Vec> tangents;
  Mat g, g_inv;
  Vec normal;
  Mat h;
  Mat shape;          // A^i_j = g^ik h_kj
  Vec kappa;          // ascending
  double alpha = 0.0; // mean curvature
  double lambda = 0.0;
  Vec vt_ambient;
  Vec vt_chart;
  Vec vperp;          // λ N
};

struct CompatibilityResidual {
  double gauss = 0.0;
  double codazzi = 0.0;
};

struct LiePair {
  Mat coordinate;  // L_{V^T} g from the chart formula
  Mat via_shape;   // 2g + 2λh
};

FrameSeries frame_series(const Immersion& s, std::span<const double> u, int lift);

ExtrinsicFrame frame_at(const Immersion& s, std::span<const double> u);

CompatibilityResidual compatibility_at(const Immersion& s, std::span<const double> u);

LiePair lie_position_at(const Immersion& s, std::span<const double> u);

/// Chart gradient of ½|F|² with respect to the induced metric.
Vec potential_gradient_at(const Immersion& s, std::span<const double> u);

}  // namespace solitonscope::hypersurface

#endif  // SOLITONSCOPE_HYPERSURFACE_HPP
