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

#ifndef SOLITONSCOPE_SERIES_HPP
#define SOLITONSCOPE_SERIES_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "expr.hpp"

namespace solitonscope {

/// Monomials x^a of total degree <= order in `nvars` variables, enumerated by
/// degree and then lexicographically descending within a degree. The layout
/// of a lower order is a prefix of every higher-order layout with the same
/// variable count, so truncation is a resize.
class MonomialLayout {
 public:
  struct Product {
    std::uint32_t lhs, rhs, out;
  };
  struct DerivativeTerm {
    std::uint32_t src, dst;
    double factor;
  };

  static const MonomialLayout& get(int nvars, int order);

  int nvars() const { return nvars_; }
  int order() const { return order_; }
  std::size_t size() const { return degree_.size(); }
  int degree(std::size_t idx) const { return degree_[idx]; }
  std::span<const int> exponents(std::size_t idx) const {
    return {exps_.data() + idx * nvars_, static_cast<std::size_t>(nvars_)};
  }
  /// Product of a_i! for monomial `idx`.
  double factorial(std::size_t idx) const { return factorial_[idx]; }
  /// Number of monomials of degree <= d.
  std::size_t prefix(int d) const { return prefix_[d]; }
  std::size_t index_of(std::span<const int> exponents) const;

  const std::vector<Product>& products() const { return products_; }
  const std::vector<DerivativeTerm>& derivative_terms(int var) const {
    return derivative_[var];
  }

 private:
  MonomialLayout(int nvars, int order);

  int nvars_;
  int order_;
  std::vector<int> exps_;
  std::vector<int> degree_;
  std::vector<double> factorial_;
  std::vector<std::size_t> prefix_;
  std::vector<Product> products_;
  std::vector<std::vector<DerivativeTerm>> derivative_;
};

/// Truncated multivariate Taylor polynomial around a base point. Coefficients
/// are the normalized Taylor coefficients d^a f / a!; `partial` returns raw
/// derivative values.
class Series {
 public:
  Series() = default;
  Series(const MonomialLayout& layout, double constant);

  static Series variable(const MonomialLayout& layout, int var, double value);

  const MonomialLayout& layout() const { return *layout_; }
  int order() const { return layout_->order(); }
  double value() const { return coeffs_[0]; }
  double coeff(std::size_t idx) const { return coeffs_[idx]; }
  double& coeff(std::size_t idx) { return coeffs_[idx]; }
  const std::vector<double>& coeffs() const { return coeffs_; }

  double partial(std::span<const int> exponents) const;
  /// First partial d/dx_var at the base point.
  double gradient(int var) const;

  /// d/dx_var as a series of one order less.
  Series derivative(int var) const;
  Series truncated(int order) const;

  /// Series of the same layout with only the constant term.
  Series constant(double v) const { return Series(*layout_, v); }

  Series& operator+=(const Series& o);
  Series& operator-=(const Series& o);
  Series& operator*=(const Series& o);
  Series& operator*=(double s);
  Series& operator+=(double s) {
    coeffs_[0] += s;
    return *this;
  }

 private:
  void check_same(const Series& o) const;

  const MonomialLayout* layout_ = nullptr;
  std::vector<double> coeffs_;
};

Series operator+(Series a, const Series& b);
Series operator-(Series a, const Series& b);
Series operator*(const Series& a, const Series& b);
Series operator/(const Series& a, const Series& b);
Series operator-(Series a);
Series operator*(Series a, double s);
Series operator*(double s, Series a);
Series operator+(Series a, double s);
Series operator+(double s, Series a);
Series operator-(Series a, double s);
Series operator-(double s, const Series& a);
Series operator/(Series a, double s);
Series operator/(double s, const Series& a);

/// Univariate Taylor coefficients f^(m)(a)/m!, m = 0..order. Throws
/// Error(Domain) where f or its derivatives are undefined at a.
std::vector<double> taylor_coefficients(expr::Func f, double a, int order);

/// g(x) for the univariate expansion `coeffs` of g around x.value().
Series compose(const Series& x, std::span<const double> coeffs);

Series apply(expr::Func f, const Series& x);
Series reciprocal(const Series& x);
Series sqrt(const Series& x);
Series ipow(const Series& x, long long exponent);
Series pow(const Series& x, double exponent);

}  // namespace solitonscope

#endif  // SOLITONSCOPE_SERIES_HPP
