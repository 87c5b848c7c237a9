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

#include "series.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>

#include "error.hpp"

namespace solitonscope {

namespace {

void enumerate_degree(int nvars, int degree, int var, std::vector<int>& current,
                      std::vector<std::vector<int>>& out) {
  if (var == nvars - 1) {
    current[var] = degree;
    out.push_back(current);
    return;
  }
  for (int e = degree; e >= 0; --e) {
    current[var] = e;
    enumerate_degree(nvars, degree - e, var + 1, current, out);
  }
  current[var] = 0;
}

double factorial_of(int k) {
  double f = 1.0;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

// Generalized binomial coefficient C(p, m).
double binomial(double p, int m) {
  double c = 1.0;
  for (int i = 0; i < m; ++i) c *= (p - i) / (i + 1);
  return c;
}

// Univariate truncated division a / b.
std::vector<double> divide(const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<double> q(a.size(), 0.0);
  for (std::size_t m = 0; m < a.size(); ++m) {
    double acc = a[m];
    for (std::size_t j = 1; j <= m && j < b.size(); ++j) acc -= b[j] * q[m - j];
    q[m] = acc / b[0];
  }
  return q;
}

Error domain(const std::string& what) { return Error(ErrorKind::Domain, what); }

}  // namespace

MonomialLayout::MonomialLayout(int nvars, int order) : nvars_(nvars), order_(order) {
  std::vector<std::vector<int>> monomials;
  std::vector<int> current(static_cast<std::size_t>(std::max(nvars, 1)), 0);
  for (int d = 0; d <= order; ++d) {
    if (nvars == 0) {
      if (d == 0) monomials.emplace_back();
    } else {
      enumerate_degree(nvars, d, 0, current, monomials);
    }
    prefix_.push_back(monomials.size());
  }
  std::map<std::vector<int>, std::size_t> index;
  for (std::size_t i = 0; i < monomials.size(); ++i) {
    int deg = 0;
    double fact = 1.0;
    for (int e : monomials[i]) {
      exps_.push_back(e);
      deg += e;
      fact *= factorial_of(e);
    }
    degree_.push_back(deg);
    factorial_.push_back(fact);
    index[monomials[i]] = i;
  }
  for (std::size_t i = 0; i < monomials.size(); ++i) {
    for (std::size_t j = 0; j < monomials.size(); ++j) {
      if (degree_[i] + degree_[j] > order) continue;
      std::vector<int> sum(monomials[i]);
      for (int v = 0; v < nvars; ++v) sum[v] += monomials[j][v];
      products_.push_back({static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j),
                           static_cast<std::uint32_t>(index.at(sum))});
    }
  }
  derivative_.resize(nvars);
  for (int v = 0; v < nvars; ++v) {
    for (std::size_t i = 0; i < monomials.size(); ++i) {
      if (monomials[i][v] == 0) continue;
      std::vector<int> lowered(monomials[i]);
      lowered[v] -= 1;
      derivative_[v].push_back({static_cast<std::uint32_t>(i),
                                static_cast<std::uint32_t>(index.at(lowered)),
                                static_cast<double>(monomials[i][v])});
    }
  }
}

const MonomialLayout& MonomialLayout::get(int nvars, int order) {
  static std::mutex mutex;
  static std::map<std::pair<int, int>, std::unique_ptr<MonomialLayout>> cache;
  if (nvars < 0 || order < 0) throw std::invalid_argument("negative layout size");
  std::lock_guard lock(mutex);
  auto& slot = cache[{nvars, order}];
  if (!slot) slot.reset(new MonomialLayout(nvars, order));
  return *slot;
}

std::size_t MonomialLayout::index_of(std::span<const int> exponents) const {
  if (static_cast<int>(exponents.size()) != nvars_) {
    throw std::invalid_argument("multi-index has wrong length");
  }
  int deg = 0;
  for (int e : exponents) {
    if (e < 0) throw std::invalid_argument("negative exponent in multi-index");
    deg += e;
  }
  if (deg > order_) throw std::out_of_range("multi-index exceeds series order");
  const std::size_t begin = deg == 0 ? 0 : prefix_[deg - 1];
  for (std::size_t i = begin; i < prefix_[deg]; ++i) {
    auto ex = this->exponents(i);
    if (std::equal(ex.begin(), ex.end(), exponents.begin())) return i;
  }
  throw std::logic_error("monomial missing from layout");
}

Series::Series(const MonomialLayout& layout, double constant)
    : layout_(&layout), coeffs_(layout.size(), 0.0) {
  coeffs_[0] = constant;
}

Series Series::variable(const MonomialLayout& layout, int var, double value) {
  Series s(layout, value);
  if (layout.order() >= 1) s.coeffs_[1 + var] = 1.0;
  return s;
}

double Series::partial(std::span<const int> exponents) const {
  const std::size_t idx = layout_->index_of(exponents);
  return coeffs_[idx] * layout_->factorial(idx);
}

double Series::gradient(int var) const {
  if (order() < 1) throw std::logic_error("gradient of an order-0 series");
  return coeffs_[1 + var];
}

Series Series::derivative(int var) const {
  if (order() < 1) throw std::logic_error("derivative of an order-0 series");
  Series out(MonomialLayout::get(layout_->nvars(), order() - 1), 0.0);
  for (const auto& t : layout_->derivative_terms(var)) {
    out.coeffs_[t.dst] += t.factor * coeffs_[t.src];
  }
  return out;
}

Series Series::truncated(int order) const {
  if (order > this->order()) throw std::logic_error("cannot raise series order");
  Series out(MonomialLayout::get(layout_->nvars(), order), 0.0);
  std::copy_n(coeffs_.begin(), out.coeffs_.size(), out.coeffs_.begin());
  return out;
}

void Series::check_same(const Series& o) const {
  if (layout_ != o.layout_) throw std::logic_error("series layouts differ");
}

Series& Series::operator+=(const Series& o) {
  check_same(o);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  return *this;
}

Series& Series::operator-=(const Series& o) {
  check_same(o);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
  return *this;
}

Series& Series::operator*=(const Series& o) {
  *this = *this * o;
  return *this;
}

Series& Series::operator*=(double s) {
  for (double& c : coeffs_) c *= s;
  return *this;
}

Series operator+(Series a, const Series& b) { return a += b; }
Series operator-(Series a, const Series& b) { return a -= b; }

Series operator*(const Series& a, const Series& b) {
  if (&a.layout() != &b.layout()) throw std::logic_error("series layouts differ");
  Series out(a.layout(), 0.0);
  if (a.layout().size() == 1) {
    out.coeff(0) = a.value() * b.value();
    return out;
  }
  for (const auto& p : a.layout().products()) {
    out.coeff(p.out) += a.coeff(p.lhs) * b.coeff(p.rhs);
  }
  return out;
}

Series operator/(const Series& a, const Series& b) { return a * reciprocal(b); }

Series operator-(Series a) { return a *= -1.0; }
Series operator*(Series a, double s) { return a *= s; }
Series operator*(double s, Series a) { return a *= s; }
Series operator+(Series a, double s) { return a += s; }
Series operator+(double s, Series a) { return a += s; }
Series operator-(Series a, double s) { return a += -s; }
Series operator-(double s, const Series& a) { return -a + s; }
Series operator/(Series a, double s) { return a *= 1.0 / s; }
Series operator/(double s, const Series& a) { return reciprocal(a) * s; }

std::vector<double> taylor_coefficients(expr::Func f, double a, int order) {
  using expr::Func;
  const int n = order + 1;
  std::vector<double> c(n, 0.0);
  switch (f) {
    case Func::Sin:
    case Func::Cos: {
      const double cycle[4] = {std::sin(a), std::cos(a), -std::sin(a), -std::cos(a)};
      const int shift = f == Func::Sin ? 0 : 1;
      for (int m = 0; m < n; ++m) c[m] = cycle[(m + shift) % 4] / factorial_of(m);
      return c;
    }
    case Func::Sinh:
    case Func::Cosh: {
      const double sh = std::sinh(a), ch = std::cosh(a);
      for (int m = 0; m < n; ++m) {
        const bool even = m % 2 == 0;
        c[m] = ((f == Func::Sinh) == even ? sh : ch) / factorial_of(m);
      }
      return c;
    }
    case Func::Exp: {
      const double e = std::exp(a);
      for (int m = 0; m < n; ++m) c[m] = e / factorial_of(m);
      return c;
    }
    case Func::Log: {
      if (!(a > 0.0)) throw domain("log of non-positive value");
      c[0] = std::log(a);
      for (int m = 1; m < n; ++m) c[m] = (m % 2 == 1 ? 1.0 : -1.0) / (m * std::pow(a, m));
      return c;
    }
    case Func::Sqrt: {
      if (a < 0.0 || (a == 0.0 && order > 0)) throw domain("sqrt of non-positive value");
      for (int m = 0; m < n; ++m) c[m] = binomial(0.5, m) * std::pow(a, 0.5 - m);
      if (a == 0.0) c[0] = 0.0;
      return c;
    }
    case Func::Abs: {
      if (a == 0.0 && order > 0) throw domain("abs is not differentiable at 0");
      c[0] = std::fabs(a);
      if (order > 0) c[1] = a > 0 ? 1.0 : -1.0;
      return c;
    }
    case Func::Tan:
    case Func::Tanh: {
      const bool hyp = f == Func::Tanh;
      auto num = taylor_coefficients(hyp ? Func::Sinh : Func::Sin, a, order);
      auto den = taylor_coefficients(hyp ? Func::Cosh : Func::Cos, a, order);
      if (den[0] == 0.0) throw domain("tan is undefined at this point");
      return divide(num, den);
    }
    case Func::Atan: {
      c[0] = std::atan(a);
      if (order == 0) return c;
      // d/dt atan(a + t) = 1 / (1 + (a + t)^2)
      std::vector<double> one(order, 0.0);
      one[0] = 1.0;
      const std::vector<double> den = {1.0 + a * a, 2.0 * a, 1.0};
      auto d = divide(one, den);
      for (int m = 1; m < n; ++m) c[m] = d[m - 1] / m;
      return c;
    }
  }
  return c;
}

Series compose(const Series& x, std::span<const double> coeffs) {
  const int order = x.order();
  Series delta = x;
  delta.coeff(0) = 0.0;
  Series out(x.layout(), coeffs[order]);
  for (int m = order - 1; m >= 0; --m) {
    out = out * delta;
    out.coeff(0) += coeffs[m];
  }
  return out;
}

Series apply(expr::Func f, const Series& x) {
  const auto c = taylor_coefficients(f, x.value(), x.order());
  return compose(x, c);
}

Series reciprocal(const Series& x) {
  const double a = x.value();
  if (a == 0.0) throw domain("division by zero");
  std::vector<double> c(x.order() + 1);
  double p = 1.0 / a;
  for (int m = 0; m <= x.order(); ++m) {
    c[m] = (m % 2 == 0 ? p : -p);
    p /= a;
  }
  return compose(x, c);
}

Series sqrt(const Series& x) { return apply(expr::Func::Sqrt, x); }

Series ipow(const Series& x, long long exponent) {
  if (exponent < 0) return reciprocal(ipow(x, -exponent));
  Series result(x.layout(), 1.0);
  Series base = x;
  while (exponent > 0) {
    if (exponent & 1) result = result * base;
    exponent >>= 1;
    if (exponent > 0) base = base * base;
  }
  return result;
}

Series pow(const Series& x, double exponent) {
  if (std::nearbyint(exponent) == exponent && std::fabs(exponent) < 1e9) {
    return ipow(x, static_cast<long long>(exponent));
  }
  const double a = x.value();
  if (a < 0.0 || (a == 0.0 && (x.order() > 0 || exponent < 0))) {
    throw domain("non-integer power of non-positive base");
  }
  std::vector<double> c(x.order() + 1);
  for (int m = 0; m <= x.order(); ++m) c[m] = binomial(exponent, m) * std::pow(a, exponent - m);
  if (a == 0.0) c[0] = 0.0;
  return compose(x, c);
}

}  // namespace solitonscope
