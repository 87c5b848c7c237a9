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
#include <numbers>

#include "classifier.hpp"
#include "doctest.h"
#include "test_support.hpp"

using namespace solitonscope;
using namespace solitonscope::classifier;
using soliton::Immersion;
using soliton::Interval;

namespace {

constexpr double kPi = std::numbers::pi;

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "(%.17g)", v);
  return buf;
}

Immersion build(int n, const std::vector<std::string>& comps, std::vector<Interval> dom) {
  std::vector<expr::Expr> c;
  for (const auto& t : comps) c.push_back(expr::parse(t));
  return Immersion(n, std::move(c), std::move(dom));
}

std::vector<std::string> sphere_comps(double r, double cx, double cy, double cz) {
  return {num(cx) + "+" + num(r) + "*sin(u1)*cos(u2)", num(cy) + "+" + num(r) + "*sin(u1)*sin(u2)",
          num(cz) + "+" + num(r) + "*cos(u1)"};
}

const std::vector<Interval> kSphereDomain = {{0.2, kPi - 0.2, 20}, {0.0, 2 * kPi, 10}};

std::vector<std::string> rotate(const std::vector<std::string>& c, const Mat& r) {
  std::vector<std::string> out;
  for (std::size_t a = 0; a < c.size(); ++a) {
    std::string e = "0";
    for (std::size_t b = 0; b < c.size(); ++b) e += "+" + num(r(a, b)) + "*(" + c[b] + ")";
    out.push_back(e);
  }
  return out;
}

Mat rotation() {
  // Rz(0.7) * Rx(-1.1)
  const double a = 0.7, b = -1.1;
  Mat rz(3, 3, 0.0), rx(3, 3, 0.0);
  rz(0, 0) = std::cos(a); rz(0, 1) = -std::sin(a); rz(1, 0) = std::sin(a); rz(1, 1) = std::cos(a); rz(2, 2) = 1;
  rx(0, 0) = 1; rx(1, 1) = std::cos(b); rx(1, 2) = -std::sin(b); rx(2, 1) = std::sin(b); rx(2, 2) = std::cos(b);
  return multiply(rz, rx);
}

Vec apply(const Mat& r, const Vec& v) {
  Vec out(v.size(), 0.0);
  for (std::size_t a = 0; a < v.size(); ++a)
    for (std::size_t b = 0; b < v.size(); ++b) out[a] += r(a, b) * v[b];
  return out;
}

Verdict run(const Immersion& s) {
  return classify(s, soliton::regular_grid(s.domain(), [&](const Vec& p) { return s.admissible(p); }));
}

const std::vector<std::string> kTorus = {"(3 + cos(u1))*cos(u2)", "(3 + cos(u1))*sin(u2)", "sin(u1)"};
const std::vector<Interval> kTorusDomain = {{0.0, 2 * kPi, 8}, {0.0, 2 * kPi, 8}};

Sample synthetic(double lambda, double alpha, double kmin, double kmax) {
  Sample s;
  s.u = {0, 0};
  s.position = {1, 0, 0};
  s.normal = {0, 0, 1};
  s.lambda = lambda;
  s.alpha = alpha;
  s.kappa_min = kmin;
  s.kappa_max = kmax;
  return s;
}

}  // namespace

TEST_CASE("sphere with center (1,0,0) and radius 2") {
  const auto v = run(build(2, sphere_comps(2, 1, 0, 0), kSphereDomain));
  REQUIRE(v.tag == Tag::Hypersphere);
  CHECK(v.diag.samples == 200);
  CHECK(std::fabs(v.radius - 2.0) <= 1e-6);
  CHECK(std::fabs(v.center[0] - 1.0) <= 1e-6);
  CHECK(std::fabs(v.center[1]) <= 1e-6);
  CHECK(std::fabs(v.center[2]) <= 1e-6);
  CHECK(v.diag.center_stddev <= 1e-9);
}

TEST_CASE("plane x3 = 5") {
  const auto v = run(build(2, {"u1", "u2", "5"}, {{-2, 2, 6}, {-2, 2, 6}}));
  REQUIRE(v.tag == Tag::Hyperplane);
  CHECK(std::fabs(std::fabs(v.normal[2]) - 1.0) <= 1e-8);
  CHECK(std::fabs(v.normal[0]) <= 1e-8);
  CHECK(std::fabs(std::fabs(v.offset) - 5.0) <= 1e-8);
  CHECK(v.offset * v.normal[2] == doctest::Approx(5.0));
}

TEST_CASE("circular cone and plane through the origin") {
  const auto v = run(build(2, {"u1*cos(u2)", "u1*sin(u2)", "2*u1"}, {{0.5, 2.0, 8}, {0.0, 2 * kPi, 8}}));
  CHECK(v.tag == Tag::Cone);
  CHECK(v.diag.notes.empty());
  const auto p = run(build(2, {"u1", "u2", "0"}, {{-1, 1, 5}, {-1, 1, 5}}));
  CHECK(p.tag == Tag::Cone);
  REQUIRE(p.diag.notes.size() == 1);
  CHECK(p.diag.notes[0].find("plane through origin") != std::string::npos);
}

TEST_CASE("torus and a non-umbilic graph are rejected at the soliton step") {
  const auto t = run(build(2, kTorus, kTorusDomain));
  CHECK(t.tag == Tag::NotSoliton);
  CHECK(t.reason.find("conformal residual") == 0);
  CHECK(t.center.empty());
  const auto g = run(build(2, {"u1", "u2", "0.4*u1^2 - 0.3*u1*u2 + 0.1*u2^3 + 1"}, {{-1, 1, 6}, {-1, 1, 6}}));
  CHECK(g.tag == Tag::NotSoliton);
  CHECK(g.reason.find("conformal residual") == 0);
}

TEST_CASE("rotations move parameters and keep tags") {
  const Mat r = rotation();
  const auto sphere = run(build(2, rotate(sphere_comps(2, 1, 0, 0), r), kSphereDomain));
  REQUIRE(sphere.tag == Tag::Hypersphere);
  const Vec c = apply(r, {1, 0, 0});
  for (int a = 0; a < 3; ++a) CHECK(std::fabs(sphere.center[a] - c[a]) <= 1e-6);
  CHECK(std::fabs(sphere.radius - 2.0) <= 1e-6);

  const auto plane = run(build(2, rotate({"u1", "u2", "5"}, r), {{-2, 2, 6}, {-2, 2, 6}}));
  REQUIRE(plane.tag == Tag::Hyperplane);
  const Vec nz = apply(r, {0, 0, 1});
  const double sign = plane.normal[0] * nz[0] + plane.normal[1] * nz[1] + plane.normal[2] * nz[2] < 0 ? -1 : 1;
  for (int a = 0; a < 3; ++a) CHECK(std::fabs(sign * plane.normal[a] - nz[a]) <= 1e-6);
  CHECK(std::fabs(sign * plane.offset - 5.0) <= 1e-6);

  CHECK(run(build(2, rotate({"u1*cos(u2)", "u1*sin(u2)", "2*u1"}, r), {{0.5, 2.0, 6}, {0.0, 6.0, 6}})).tag ==
        Tag::Cone);
  CHECK(run(build(2, rotate(kTorus, r), kTorusDomain)).tag == Tag::NotSoliton);
}

TEST_CASE("scaled sphere scales the radius") {
  for (double c : {0.25, 3.0, 10.0}) {
    const auto v = run(build(2, sphere_comps(2 * c, c, 0, 0), kSphereDomain));
    REQUIRE(v.tag == Tag::Hypersphere);
    CHECK(std::fabs(v.radius / (2 * c) - 1.0) <= 1e-6);
  }
}

TEST_CASE("hypersphere in E4") {
  const auto v = run(build(3,
                           {"0.5 + 1.5*sin(u1)*sin(u2)*cos(u3)", "1.5*sin(u1)*sin(u2)*sin(u3)",
                            "-1 + 1.5*sin(u1)*cos(u2)", "2 + 1.5*cos(u1)"},
                           {{0.3, 2.8, 5}, {0.3, 2.8, 5}, {0.0, 6.0, 5}}));
  REQUIRE(v.tag == Tag::Hypersphere);
  CHECK(std::fabs(v.radius - 1.5) <= 1e-6);
  const Vec c = {0.5, 0, -1, 2};
  for (int a = 0; a < 4; ++a) CHECK(std::fabs(v.center[a] - c[a]) <= 1e-6);
}

TEST_CASE("mixed support function is undetermined") {
  std::vector<Sample> s = {synthetic(1.0, -1.0, -1.0, -1.0), synthetic(0.0, 0.0, 0.0, 0.0),
                           synthetic(2.0, -0.5, -0.5, -0.5)};
  const auto v = decide(s, {});
  CHECK(v.tag == Tag::Undetermined);
  CHECK(v.reason.find("mixed") == 0);
  CHECK(v.diag.small_lambda == 1);
}

TEST_CASE("decision edge cases on synthetic samples") {
  // conformal residual small but curvatures disagree
  CHECK(decide({synthetic(1, 0.5, 0.0, 1.0)}, {}).tag == Tag::Undetermined);
  // varying mean curvature
  const auto v = decide({synthetic(1, -1.0, -1.0, -1.0), synthetic(1, -2.0, -2.0, -2.0)}, {});
  CHECK(v.tag == Tag::Undetermined);
  CHECK(v.reason.find("alpha") != std::string::npos);
  auto bad = synthetic(1, -1, -1, -1);
  bad.residual = 1.0;
  CHECK(decide({bad}, {}).tag == Tag::NotSoliton);
  CHECK_THROWS_AS(decide({}, {}), Error);
}

TEST_CASE("umbilicity statistics") {
  const auto sphere = build(2, sphere_comps(2, 0, 0, 0), kSphereDomain);
  const auto pts = [](const Immersion& s) {
    return soliton::regular_grid(s.domain(), [&](const Vec& p) { return s.admissible(p); });
  };
  CHECK(umbilicity_stats(sphere, pts(sphere)).max_spread <= 1e-10);
  const auto torus = build(2, kTorus, kTorusDomain);
  CHECK(umbilicity_stats(torus, pts(torus)).max_spread >= 0.5);
  const auto plane = build(2, {"u1", "u2", "5"}, {{-1, 1, 4}, {-1, 1, 4}});
  CHECK(umbilicity_stats(plane, pts(plane)).max_spread == 0.0);
}
