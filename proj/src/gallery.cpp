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

#include "gallery.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <numbers>

#include "error.hpp"

namespace solitonscope::gallery {

namespace {

using hypersurface::Interval;
using Params = std::map<std::string, double>;
using Builder = std::function<Instance(const Params&)>;

constexpr double kPi = std::numbers::pi;

struct Registered {
  Entry entry;
  Builder build;
};

std::string L(double v) { return literal(v); }

// "c + term", or just "term" when c is zero.
std::string offset(double c, const std::string& term) { return c == 0.0 ? term : L(c) + " + " + term; }

[[noreturn]] void violated(const std::string& id, const std::string& what) {
  throw Error(ErrorKind::Config, "gallery entry '" + id + "': parameter constraint violated: " + what);
}

int integer_param(const std::string& id, const Params& p, const std::string& name, int lo, int hi) {
  const double v = p.at(name);
  if (v != std::floor(v) || v < lo || v > hi) {
    violated(id, name + " must be an integer in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }
  return static_cast<int>(v);
}

Expected expect(std::string command, std::string outcome, std::vector<std::string> ids, std::string basis,
                std::string note = "") {
  return Expected{std::move(command), std::move(outcome), std::move(ids), std::move(basis), std::move(note)};
}

Instance immersion(const std::string& id, std::vector<std::string> comps, std::vector<Interval> domain) {
  Instance in;
  in.id = id;
  in.kind = Kind::Immersion;
  in.dimension = static_cast<int>(comps.size()) - 1;
  in.immersion = std::move(comps);
  in.domain = std::move(domain);
  return in;
}

Instance intrinsic(const std::string& id, int n, std::vector<std::string> metric, std::vector<Interval> domain) {
  Instance in;
  in.id = id;
  in.kind = Kind::Intrinsic;
  in.dimension = n;
  in.metric = std::move(metric);
  in.domain = std::move(domain);
  return in;
}

std::vector<std::string> diagonal_metric(const std::vector<std::string>& diag) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < diag.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) out.push_back("0");
    out.push_back(diag[i]);
  }
  return out;
}

std::string squared_norm(int n) {
  std::string s;
  for (int i = 1; i <= n; ++i) s += (i > 1 ? "+" : "") + std::string("u") + std::to_string(i) + "^2";
  return s;
}

const std::string kImm = "classify";
const std::vector<std::string> kUniversal = {"s3", "potential"};
const std::vector<std::string> kSolitonIdentities = {"s3", "potential", "ensays"};

std::vector<Registered> build_registry() {
  std::vector<Registered> r;

  r.push_back({{"hyperplane", Kind::Immersion, "plane x3 = d over a square chart", {{"d", 5.0, "any real"}},
                expect(kImm, "hyperplane", kSolitonIdentities, "closed-form", "d = 0 gives a plane through the origin, a cone")},
               [](const Params& p) {
                 const double d = p.at("d");
                 auto in = immersion("hyperplane", {"u1", "u2", L(d)}, {{-2, 2, 10}, {-2, 2, 10}});
                 in.expected = expect(kImm, d == 0.0 ? "cone" : "hyperplane", kSolitonIdentities, "closed-form");
                 return in;
               }});

  r.push_back({{"sphere", Kind::Immersion, "round sphere in a spherical chart without polar caps",
                {{"r", 2.0, "r > 0"}, {"cx", 0.0, "any real"}, {"cy", 0.0, "any real"}, {"cz", 0.0, "any real"}},
                expect(kImm, "hypersphere", kSolitonIdentities, "closed-form")},
               [](const Params& p) {
                 const double r = p.at("r");
                 if (!(r > 0)) violated("sphere", "r > 0");
                 auto in = immersion("sphere",
                                     {offset(p.at("cx"), L(r) + "*sin(u1)*cos(u2)"),
                                      offset(p.at("cy"), L(r) + "*sin(u1)*sin(u2)"),
                                      offset(p.at("cz"), L(r) + "*cos(u1)")},
                                     {{0.2, kPi - 0.2, 10}, {0.0, 2 * kPi, 10}});
                 in.expected = expect(kImm, "hypersphere", kSolitonIdentities, "closed-form");
                 return in;
               }});

  r.push_back({{"circular_cone", Kind::Immersion, "cone x3 = c sqrt(x1^2 + x2^2) away from the apex",
                {{"c", 2.0, "c > 0"}}, expect(kImm, "cone", kSolitonIdentities, "closed-form")},
               [](const Params& p) {
                 const double c = p.at("c");
                 if (!(c > 0)) violated("circular_cone", "c > 0");
                 auto in = immersion("circular_cone", {"u1*cos(u2)", "u1*sin(u2)", L(c) + "*u1"},
                                     {{0.5, 2.0, 10}, {0.0, 2 * kPi, 10}});
                 in.expected = expect(kImm, "cone", kSolitonIdentities, "closed-form");
                 return in;
               }});

  r.push_back({{"torus", Kind::Immersion, "torus of revolution with radii R > r",
                {{"R", 3.0, "R > r"}, {"r", 1.0, "r > 0"}}, expect(kImm, "not-soliton", kUniversal, "cross-check")},
               [](const Params& p) {
                 const double big = p.at("R"), small = p.at("r");
                 if (!(small > 0 && big > small)) violated("torus", "R > r > 0");
                 const std::string ring = "(" + L(big) + " + " + L(small) + "*cos(u1))";
                 auto in = immersion("torus", {ring + "*cos(u2)", ring + "*sin(u2)", L(small) + "*sin(u1)"},
                                     {{0.0, 2 * kPi, 10}, {0.0, 2 * kPi, 10}});
                 in.expected = expect(kImm, "not-soliton", kUniversal, "cross-check");
                 return in;
               }});

  r.push_back({{"catenoid", Kind::Immersion, "minimal catenoid with neck radius c", {{"c", 1.0, "c > 0"}},
                expect(kImm, "not-soliton", {"s3", "potential", "minimal_phi1"}, "closed-form")},
               [](const Params& p) {
                 const double c = p.at("c");
                 if (!(c > 0)) violated("catenoid", "c > 0");
                 const std::string rad = L(c) + "*cosh(u1/" + L(c) + ")";
                 auto in = immersion("catenoid", {rad + "*cos(u2)", rad + "*sin(u2)", "u1"},
                                     {{-1.5, 1.5, 10}, {0.0, 2 * kPi, 10}});
                 in.expected = expect(kImm, "not-soliton", {"s3", "potential", "minimal_phi1"}, "closed-form");
                 return in;
               }});

  r.push_back({{"helicoid", Kind::Immersion, "minimal helicoid with pitch c", {{"c", 1.0, "c != 0"}},
                expect(kImm, "not-soliton", {"s3", "potential", "minimal_phi1"}, "closed-form")},
               [](const Params& p) {
                 const double c = p.at("c");
                 if (c == 0.0) violated("helicoid", "c != 0");
                 auto in = immersion("helicoid", {"u1*cos(u2)", "u1*sin(u2)", L(c) + "*u2"},
                                     {{-2.0, 2.0, 10}, {-3.0, 3.0, 10}});
                 in.expected = expect(kImm, "not-soliton", {"s3", "potential", "minimal_phi1"}, "closed-form");
                 return in;
               }});

  r.push_back({{"graph", Kind::Immersion, "graph of z0 + a u1^2 + b u1 u2 + c u2^2 + d u1^3 + e u2^3",
                {{"a", 0.3, "any real"}, {"b", -0.2, "any real"}, {"c", 0.5, "any real"}, {"d", 0.1, "any real"},
                 {"e", 0.0, "any real"}, {"z0", 0.0, "any real"}},
                expect(kImm, "not-soliton", kUniversal, "cross-check", "all-zero coefficients give a plane")},
               [](const Params& p) {
                 const double a = p.at("a"), b = p.at("b"), c = p.at("c"), d = p.at("d"), e = p.at("e"),
                              z0 = p.at("z0");
                 const std::string z = L(z0) + " + " + L(a) + "*u1^2 + " + L(b) + "*u1*u2 + " + L(c) + "*u2^2 + " +
                                       L(d) + "*u1^3 + " + L(e) + "*u2^3";
                 auto in = immersion("graph", {"u1", "u2", z}, {{-1, 1, 10}, {-1, 1, 10}});
                 const bool flat = a == 0 && b == 0 && c == 0 && d == 0 && e == 0;
                 const std::string tag = !flat ? "not-soliton" : (z0 == 0 ? "cone" : "hyperplane");
                 in.expected = expect(kImm, tag, flat ? kSolitonIdentities : kUniversal, "cross-check");
                 return in;
               }});

  r.push_back({{"hypersphere_e4", Kind::Immersion, "round 3-sphere in E^4 with center (c1, 0, 0, 0)",
                {{"r", 1.5, "r > 0"}, {"c1", 0.5, "any real"}},
                expect(kImm, "hypersphere", kSolitonIdentities, "closed-form")},
               [](const Params& p) {
                 const double r = p.at("r");
                 if (!(r > 0)) violated("hypersphere_e4", "r > 0");
                 const std::string R = L(r);
                 auto in = immersion("hypersphere_e4",
                                     {offset(p.at("c1"), R + "*sin(u1)*sin(u2)*cos(u3)"),
                                      R + "*sin(u1)*sin(u2)*sin(u3)", R + "*sin(u1)*cos(u2)", R + "*cos(u1)"},
                                     {{0.3, kPi - 0.3, 5}, {0.3, kPi - 0.3, 5}, {0.0, 2 * kPi, 5}});
                 in.expected = expect(kImm, "hypersphere", kSolitonIdentities, "closed-form");
                 return in;
               }});

  const Expected warped_expected =
      expect("verify", "soliton", {"f1"}, "closed-form", "Hess sinh(t) = sinh(t) g; rho(p) = R(p) - sinh(t) is reported");
  r.push_back({{"warped_cosh_cylinder", Kind::Intrinsic,
                "dt^2 + cosh(t)^2 g_sphere with potential sinh(t) as a gradient almost Yamabe soliton",
                {{"n", 3.0, "integer in [2, 5]"}}, warped_expected},
               [warped_expected](const Params& p) {
                 const int n = integer_param("warped_cosh_cylinder", p, "n", 2, 5);
                 std::vector<std::string> diag = {"1"};
                 std::string warp = "cosh(u1)^2";
                 for (int k = 2; k <= n; ++k) {
                   diag.push_back(warp);
                   warp += "*sin(u" + std::to_string(k) + ")^2";
                 }
                 const int samples = n == 2 ? 10 : (n == 3 ? 5 : 3);
                 std::vector<Interval> dom = {{-1.0, 1.0, samples}};
                 for (int k = 2; k < n; ++k) dom.push_back({0.4, kPi - 0.4, samples});
                 dom.push_back({0.0, 2 * kPi, samples});
                 auto in = intrinsic("warped_cosh_cylinder", n, diagonal_metric(diag), dom);
                 in.potential = "sinh(u1)";
                 in.flavor = "almost_yamabe";
                 in.expected = warped_expected;
                 return in;
               }});

  r.push_back({{"rn_log_potential", Kind::Intrinsic,
                "flat R^n with f = -m log(|u|^2 + beta) and h = -m / (|u|^2 + beta)",
                {{"m", 1.0, "m > 0"}, {"beta", 1.0, "beta > 0"}, {"n", 3.0, "integer in [2, 5]"}},
                expect("verify", "not-soliton", {}, "cross-check", "h Hess f keeps an anisotropic u_i u_j part")},
               [](const Params& p) {
                 const double m = p.at("m"), beta = p.at("beta");
                 if (!(m > 0)) violated("rn_log_potential", "m > 0");
                 if (!(beta > 0)) violated("rn_log_potential", "beta > 0");
                 const int n = integer_param("rn_log_potential", p, "n", 2, 5);
                 const std::string s = "(" + squared_norm(n) + " + " + L(beta) + ")";
                 std::vector<Interval> dom(n, Interval{-1.0, 1.0, n <= 3 ? 5 : 3});
                 auto in = intrinsic("rn_log_potential", n, diagonal_metric(std::vector<std::string>(n, "1")), dom);
                 in.potential = "-" + L(m) + "*log" + s;
                 in.h_function = "-" + L(m) + "/" + s;
                 in.flavor = "h_almost";
                 in.expected = expect("verify", "not-soliton", {}, "cross-check");
                 return in;
               }});

  const std::vector<std::string> hessian_metric = {
      "exp(u1)*(exp(u2) + 1)/(exp(u1) + exp(u2) + 1)^2", "-exp(u1 + u2)/(exp(u1) + exp(u2) + 1)^2",
      "exp(u2)*(exp(u1) + 1)/(exp(u1) + exp(u2) + 1)^2"};
  for (const bool flat : {true, false}) {
    const std::string id = flat ? "hessian_r2_flat" : "hessian_r2_levi_civita";
    const Expected ex = expect("verify", flat ? "soliton" : "not-soliton", {}, "cross-check",
                               flat ? "flat-connection Hessian equals g, phi = 1"
                                    : "Levi-Civita Hessian differs from a multiple of g");
    r.push_back({{id, Kind::Intrinsic,
                  std::string("Hessian metric of log(e^u1 + e^u2 + 1) on R^2, ") +
                      (flat ? "flat-connection" : "Levi-Civita") + " Hessian",
                  {}, ex},
                 [id, flat, ex, hessian_metric](const Params&) {
                   auto in = intrinsic(id, 2, hessian_metric, {{-1, 1, 10}, {-1, 1, 10}});
                   in.potential = "log(exp(u1) + exp(u2) + 1)";
                   in.flavor = "gradient_conformal";
                   in.hessian = flat ? tensor::HessianConvention::Flat : tensor::HessianConvention::LeviCivita;
                   in.expected = ex;
                   return in;
                 }});
  }

  r.push_back({{"polar_flat", Kind::Intrinsic, "flat plane in polar coordinates with the position field (u1, 0)",
                {}, expect("verify", "soliton", {"concurrent"}, "closed-form")},
               [](const Params&) {
                 auto in = intrinsic("polar_flat", 2, {"1", "0", "u1^2"}, {{0.3, 3.0, 10}, {-3.0, 3.0, 10}});
                 in.vector_field = {"u1", "0"};
                 in.expected = expect("verify", "soliton", {"concurrent"}, "closed-form");
                 return in;
               }});

  r.push_back({{"round_s3", Kind::Intrinsic, "round 3-sphere of radius r with constant potential as a k-Yamabe soliton",
                {{"r", 1.0, "r > 0"}, {"k", 1.0, "integer in [1, 3]"}},
                expect("verify", "soliton", {"f1"}, "closed-form", "rho = sigma_k = C(3,k) / (2 r^2)^k")},
               [](const Params& p) {
                 const double r = p.at("r");
                 if (!(r > 0)) violated("round_s3", "r > 0");
                 const int k = integer_param("round_s3", p, "k", 1, 3);
                 const std::string r2 = L(r * r);
                 auto in = intrinsic("round_s3", 3,
                                     diagonal_metric({r2, r2 + "*sin(u1)^2", r2 + "*sin(u1)^2*sin(u2)^2"}),
                                     {{0.4, kPi - 0.4, 5}, {0.4, kPi - 0.4, 5}, {0.0, 2 * kPi, 5}});
                 in.potential = "1";
                 in.flavor = "k_yamabe";
                 in.k = k;
                 in.expected = expect("verify", "soliton", {"f1"}, "closed-form");
                 return in;
               }});

  r.push_back({{"hyperbolic_half_plane", Kind::Intrinsic,
                "upper half-plane with the dilation field, a Killing field, as a Yamabe soliton with rho = -2", {},
                expect("verify", "soliton", {}, "closed-form")},
               [](const Params&) {
                 auto in = intrinsic("hyperbolic_half_plane", 2, {"1/u2^2", "0", "1/u2^2"},
                                     {{-1.0, 1.0, 10}, {0.5, 2.0, 10}});
                 in.vector_field = {"u1", "u2"};
                 in.flavor = "yamabe";
                 in.expected = expect("verify", "soliton", {}, "closed-form");
                 return in;
               }});

  r.push_back({{"flat_r3_quadratic", Kind::Intrinsic, "flat R^3 with potential a |u|^2", {{"a", 0.5, "any real"}},
                expect("verify", "soliton", {"f1"}, "closed-form")},
               [](const Params& p) {
                 auto in = intrinsic("flat_r3_quadratic", 3, diagonal_metric({"1", "1", "1"}),
                                     {{-1, 1, 5}, {-1, 1, 5}, {-1, 1, 5}});
                 in.potential = L(p.at("a")) + "*(" + squared_norm(3) + ")";
                 in.flavor = "gradient_conformal";
                 in.expected = expect("verify", "soliton", {"f1"}, "closed-form");
                 return in;
               }});
  return r;
}

const std::vector<Registered>& registry() {
  static const std::vector<Registered> r = build_registry();
  return r;
}

const Registered& lookup(const std::string& id) {
  for (const auto& r : registry())
    if (r.entry.id == id) return r;
  throw Error(ErrorKind::Config, "unknown gallery entry '" + id + "'");
}

}  // namespace

const char* to_string(Kind k) { return k == Kind::Immersion ? "immersion" : "intrinsic"; }

std::string literal(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  std::string s(buf, res.ptr);
  return v < 0 ? "(" + s + ")" : s;
}

const std::vector<Entry>& entries() {
  static const std::vector<Entry> e = [] {
    std::vector<Entry> out;
    for (const auto& r : registry()) out.push_back(r.entry);
    return out;
  }();
  return e;
}

const Entry& find(const std::string& id) { return lookup(id).entry; }

Instance instantiate(const std::string& id, const std::map<std::string, double>& params) {
  const auto& reg = lookup(id);
  Params bound;
  for (const auto& p : reg.entry.params) bound[p.name] = p.default_value;
  for (const auto& [name, value] : params) {
    if (!bound.count(name)) throw Error(ErrorKind::Config, "gallery entry '" + id + "' has no parameter '" + name + "'");
    if (!std::isfinite(value)) violated(id, name + " must be finite");
    bound[name] = value;
  }
  Instance in = reg.build(bound);
  in.params = bound;
  return in;
}

Reference parse_reference(const std::string& text) {
  std::string t = text;
  const std::string prefix = "gallery:";
  if (t.rfind(prefix, 0) == 0) t = t.substr(prefix.size());
  auto bad = [&](const std::string& why) -> Error {
    return Error(ErrorKind::Config, "malformed gallery reference '" + text + "': " + why);
  };
  auto trim = [](std::string s) {
    const auto a = s.find_first_not_of(" \t");
    const auto b = s.find_last_not_of(" \t");
    return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
  };
  Reference ref;
  const auto open = t.find('(');
  ref.id = trim(t.substr(0, open));
  if (ref.id.empty()) throw bad("missing entry id");
  for (char c : ref.id)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) throw bad("invalid character in id");
  if (open == std::string::npos) return ref;
  if (t.back() != ')') throw bad("missing ')'");
  const std::string body = t.substr(open + 1, t.size() - open - 2);
  std::size_t pos = 0;
  while (pos <= body.size() && !trim(body).empty()) {
    const auto comma = body.find(',', pos);
    const std::string item = trim(body.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos));
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw bad("expected name=value");
    const std::string name = trim(item.substr(0, eq));
    const std::string value = trim(item.substr(eq + 1));
    char* end = nullptr;
    const double v = std::strtod(value.c_str(), &end);
    if (name.empty() || value.empty() || *end != '\0') throw bad("invalid value for '" + name + "'");
    if (ref.params.count(name)) throw bad("duplicate parameter '" + name + "'");
    ref.params[name] = v;
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return ref;
}

}  // namespace solitonscope::gallery
