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

#include <cmath>
#include <random>

#include "doctest.h"
#include "error.hpp"
#include "tensor.hpp"
#include "test_support.hpp"

using namespace solitonscope;
using namespace solitonscope::tensor;
using solitonscope::testing::metric_from;
using solitonscope::testing::random_metric;

namespace {

MetricField round_s3() { return metric_from(3, {"1", "0", "sin(u1)^2", "0", "0", "sin(u1)^2*sin(u2)^2"}); }

// Scalar curvature from central differences of Γ: an oracle that only uses
// first-derivative metric data at displaced points.
double scalar_curvature_by_differences(const MetricField& m, const Vec& p, double h) {
  const int n = m.dim();
  auto gamma_at = [&](const Vec& q) {
    const auto ml = m.local_values(q, 1);
    return christoffel(ml, inverse(ml.g));
  };
  std::vector<std::vector<double>> dgamma(n);
  for (int a = 0; a < n; ++a) {
    Vec qp = p, qm = p;
    qp[a] += h;
    qm[a] -= h;
    const auto gp = gamma_at(qp), gm = gamma_at(qm);
    for (std::size_t i = 0; i < gp.size(); ++i) dgamma[a].push_back((gp[i] - gm[i]) / (2 * h));
  }
  const auto ml = m.local_values(p, 1);
  const Mat ginv = inverse(ml.g);
  const auto G = christoffel(ml, ginv);
  auto g3 = [&](int k, int i, int j) { return G[(k * n + i) * n + j]; };
  double r = 0.0;
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      double ric = 0.0;
      for (int i = 0; i < n; ++i) {
        ric += dgamma[i][(i * n + j) * n + k] - dgamma[j][(i * n + i) * n + k];
        for (int q = 0; q < n; ++q) ric += g3(i, i, q) * g3(q, j, k) - g3(i, j, q) * g3(q, i, k);
      }
      r += ginv(j, k) * ric;
    }
  return r;
}

}  // namespace

TEST_CASE("flat metric has vanishing curvature") {
  const auto m = MetricField::flat(3);
  const Vec p = {0.3, -1.2, 2.0};
  const auto c = curvature_at(m, p);
  for (double v : c.gamma) CHECK(v == 0.0);
  for (double v : c.riemann) CHECK(v == 0.0);
  CHECK(c.scalar == 0.0);
  REQUIRE(c.sigma.size() == 3);
  for (double s : c.sigma) CHECK(s == 0.0);
}

TEST_CASE("round three-sphere") {
  const auto m = round_s3();
  const Vec p = {0.9, 1.1, 0.4};
  const auto c = curvature_at(m, p);
  CHECK(c.scalar == doctest::Approx(6.0).epsilon(1e-12));
  REQUIRE(c.schouten);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK(std::fabs((*c.schouten)(i, j) - 0.5 * c.g(i, j)) < 1e-12);
  CHECK(sigma_k(c, 1) == doctest::Approx(1.5).epsilon(1e-12));
  CHECK(sigma_k(c, 2) == doctest::Approx(0.75).epsilon(1e-12));
  CHECK(sigma_k(c, 3) == doctest::Approx(0.125).epsilon(1e-12));
  CHECK(scalar_curvature_by_differences(m, p, 1e-5) == doctest::Approx(6.0).epsilon(1e-7));
}

TEST_CASE("hyperbolic half-plane") {
  const auto m = metric_from(2, {"1/u2^2", "0", "1/u2^2"});
  const Vec p = {0.0, 1.0};
  const auto c = curvature_at(m, p);
  CHECK(c.scalar == doctest::Approx(-2.0).epsilon(1e-12));
  CHECK_FALSE(c.schouten);
  CHECK(c.sigma.empty());
  CHECK_THROWS_AS(sigma_k(c, 1), Error);
  CHECK_THROWS_AS(curvature_at(m, p, true), Error);
}

TEST_CASE("polar chart of the plane is flat although Γ is not zero") {
  const auto m = metric_from(2, {"1", "0", "u1^2"});
  std::mt19937 rng(1);
  std::uniform_real_distribution<double> r(0.3, 3.0), th(-3.0, 3.0);
  for (int i = 0; i < 20; ++i) {
    const Vec p = {r(rng), th(rng)};
    const auto c = curvature_at(m, p);
    double gmax = 0.0, rmax = 0.0;
    for (double v : c.gamma) gmax = std::max(gmax, std::fabs(v));
    for (double v : c.riemann) rmax = std::max(rmax, std::fabs(v));
    CHECK(gmax > 0.1);
    CHECK(rmax <= 1e-9);
    CHECK(std::fabs(c.scalar) <= 1e-9);
  }
}

TEST_CASE("curvature symmetries on random metrics") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> coord(-0.5, 0.5);
  for (int trial = 0; trial < 10; ++trial) {
    const auto m = random_metric(rng, 3);
    const Vec p = {coord(rng), coord(rng), coord(rng)};
    const auto c = curvature_at(m, p);
    double mag = 0.0;
    for (double v : c.riemann) mag = std::max(mag, std::fabs(v));
    const double tol = 1e-10 * std::max(mag, 1.0);
    const int n = 3;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
          CHECK(std::fabs(c.Gamma(k, i, j) - c.Gamma(k, j, i)) <= 1e-12);
          for (int l = 0; l < n; ++l) {
            CHECK(std::fabs(c.Rm(i, j, k, l) + c.Rm(j, i, k, l)) <= tol);
            CHECK(std::fabs(c.Rm(i, j, k, l) + c.Rm(i, j, l, k)) <= tol);
            CHECK(std::fabs(c.Rm(i, j, k, l) - c.Rm(k, l, i, j)) <= tol);
            CHECK(std::fabs(c.Rm(i, j, k, l) + c.Rm(j, k, i, l) + c.Rm(k, i, j, l)) <= tol);
          }
        }
    // σ_1 = R / (2(n-1)) and σ_n = det(g^{-1} A)
    const double scale = std::max(std::fabs(c.scalar), 1e-3);
    CHECK(std::fabs(c.sigma[0] - c.scalar / 4.0) <= 1e-10 * scale);
    const double det_ga = determinant(multiply(c.g_inv, *c.schouten));
    CHECK(std::fabs(c.sigma[2] - det_ga) <= 1e-10 * std::max(std::fabs(det_ga), 1e-6));
    CHECK(scalar_curvature_by_differences(m, p, 1e-5) ==
          doctest::Approx(c.scalar).epsilon(1e-6).scale(1.0));
  }
}

TEST_CASE("indefinite or singular metrics are rejected") {
  const auto m = metric_from(2, {"1", "0", "-1"});
  const Vec p = {0.1, 0.2};
  try {
    curvature_at(m, p);
    FAIL("expected numerical error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Numerical);
  }
  const auto degenerate = metric_from(2, {"1", "0", "u1^2"});
  const Vec origin = {0.0, 0.5};
  CHECK_THROWS_AS(curvature_at(degenerate, origin), Error);
}

TEST_CASE("scalar field data") {
  const auto flat = MetricField::flat(3);
  const Vec p = {0.4, -0.3, 1.1};
  const auto q = scalar_field_at(flat, ScalarField(expr::parse("0.5*(u1^2+u2^2+u3^2)"), 3), p);
  for (int i = 0; i < 3; ++i) {
    CHECK(q.grad[i] == doctest::Approx(p[i]));
    for (int j = 0; j < 3; ++j) CHECK(q.hess(i, j) == doctest::Approx(i == j ? 1.0 : 0.0));
  }
  CHECK(q.laplacian == doctest::Approx(3.0));

  const auto lin = scalar_field_at(MetricField::flat(2), ScalarField(expr::parse("u1"), 2), Vec{0.2, 0.3});
  CHECK(lin.laplacian == 0.0);
  CHECK(max_abs(lin.hess) == 0.0);
}

TEST_CASE("warped cosh cylinder: Hess sinh t = sinh t g") {
  const auto m = metric_from(3, {"1", "0", "cosh(u1)^2", "0", "0", "cosh(u1)^2*sin(u2)^2"});
  const ScalarField f(expr::parse("sinh(u1)"), 3);
  for (const Vec& p : {Vec{0.3, 1.0, 0.5}, Vec{-0.8, 0.6, 2.0}, Vec{1.2, 2.2, -1.0}}) {
    const auto d = scalar_field_at(m, f, p);
    const auto c = curvature_at(m, p);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        CHECK(std::fabs(d.hess(i, j) - std::sinh(p[0]) * c.g(i, j)) <= 1e-12 * (1 + std::fabs(c.g(i, j))));
    double trace = 0.0;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) trace += c.g_inv(i, j) * d.hess(i, j);
    CHECK(std::fabs(d.laplacian - trace) <= 1e-12);
  }
}

TEST_CASE("vector field data") {
  const auto flat = MetricField::flat(2);
  const Vec p = {0.7, -0.4};
  auto field = [](std::initializer_list<const char*> c) {
    std::vector<expr::Expr> v;
    for (const char* t : c) v.push_back(expr::parse(t));
    return VectorField(std::move(v), 2);
  };
  const auto pos = vector_field_at(flat, field({"u1", "u2"}), p);
  CHECK(testing::max_abs_diff(pos.nabla, Mat::identity(2, 0.0, 1.0)) == 0.0);
  CHECK(testing::max_abs_diff(pos.lie_g, Mat::identity(2, 0.0, 2.0)) == 0.0);
  const auto rot = vector_field_at(flat, field({"-u2", "u1"}), p);
  CHECK(max_abs(rot.lie_g) == 0.0);
  const auto twice = vector_field_at(flat, field({"2*u1", "2*u2"}), p);
  CHECK(testing::max_abs_diff(twice.nabla, Mat::identity(2, 0.0, 2.0)) == 0.0);
  CHECK_THROWS_AS(field({"u1"}), Error);
}

TEST_CASE("Lie derivative identities on random metrics") {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> coord(-0.5, 0.5);
  for (int trial = 0; trial < 8; ++trial) {
    const auto m = random_metric(rng, 3);
    const Vec p = {coord(rng), coord(rng), coord(rng)};
    // L_v g against g ∇v + (g ∇v)^T
    const VectorField v({expr::parse("u2*u3"), expr::parse("sin(u1)"), expr::parse("u1^2 - u3")}, 3);
    const auto d = vector_field_at(m, v, p);
    const auto c = curvature_at(m, p);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        double expected = 0.0;
        for (int k = 0; k < 3; ++k) expected += c.g(i, k) * d.nabla(k, j) + c.g(j, k) * d.nabla(k, i);
        CHECK(std::fabs(d.lie_g(i, j) - expected) <= 1e-12 * (1 + std::fabs(expected)));
        CHECK(std::fabs(d.lie_g(i, j) - d.lie_g(j, i)) <= 1e-12);
      }
  }
}

TEST_CASE("gradient fields: L_grad f g = 2 Hess f") {
  // Flat polar chart: grad f = (d_1 f, d_2 f / u1^2) is expressible.
  const auto m = metric_from(2, {"1", "0", "u1^2"});
  const ScalarField f(expr::parse("u1^2*cos(u2) + u1"), 2);
  const VectorField grad({expr::parse("2*u1*cos(u2) + 1"), expr::parse("-u1^2*sin(u2)/u1^2")}, 2);
  for (const Vec& p : {Vec{0.5, 0.3}, Vec{1.7, -2.0}}) {
    const auto s = scalar_field_at(m, f, p);
    const auto v = vector_field_at(m, grad, p);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) CHECK(std::fabs(v.lie_g(i, j) - 2 * s.hess(i, j)) <= 1e-10);
  }
}

TEST_CASE("elementary symmetric polynomials") {
  const auto e = elementary_symmetric({1.0, 2.0, 3.0});
  CHECK(e == std::vector<double>{6.0, 11.0, 6.0});
}
