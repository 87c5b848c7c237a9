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

// Acceptance suite: one PASS/FAIL line per criterion; exit status 1 if any fails.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "classifier.hpp"
#include "config.hpp"
#include "driver.hpp"
#include "error.hpp"
#include "gallery.hpp"
#include "hypersurface.hpp"
#include "jet.hpp"
#include "soliton.hpp"
#include "tensor.hpp"
#include "test_support.hpp"

using namespace solitonscope;
using config::RunConfig;
using testing::rel_diff;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

std::string sci(double v) { return fmt("%.2e", v); }

// Gallery config with a grid of about 100 points.
RunConfig hundred_points(const std::string& id) {
  RunConfig cfg = config::load_config("gallery:" + id);
  const std::vector<int> per_axis = cfg.dimension == 2 ? std::vector<int>{10, 10} : std::vector<int>{5, 5, 4};
  for (std::size_t i = 0; i < cfg.domain.size(); ++i) cfg.domain[i].samples = per_axis.at(i);
  cfg.domain_overridden = true;
  return cfg;
}

std::vector<std::string> immersion_ids() {
  std::vector<std::string> ids;
  for (const auto& e : gallery::entries())
    if (e.kind == gallery::Kind::Immersion) ids.push_back(e.id);
  return ids;
}

double tensor_scale(const Mat& a, const Mat& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m = std::max({m, std::fabs(a(i, j)), std::fabs(b(i, j))});
  return m;
}

// ---------------------------------------------------------------------------

Outcome lie_identity() {
  double worst = 0.0;
  std::size_t surfaces = 0, points = 0;
  for (const auto& id : immersion_ids()) {
    const auto b = config::build(hundred_points(id));
    ++surfaces;
    for (const auto& p : b.points) {
      const auto lp = hypersurface::lie_position_at(*b.immersion, p);
      // floor of 1: on spheres V^T = 0 and both paths vanish identically
      const double scale = 1.0 + tensor_scale(lp.coordinate, lp.via_shape);
      worst = std::max(worst, testing::max_abs_diff(lp.coordinate, lp.via_shape) / scale);
      ++points;
    }
  }
  return {surfaces >= 6 && points >= 600 && worst <= 1e-8,
          std::to_string(surfaces) + " immersions, " + std::to_string(points) +
              " points, max relative difference " + sci(worst) + " (tol 1e-8)"};
}

Outcome trace_identity() {
  double worst = 0.0;
  std::size_t points = 0;
  bool torus_seen = false;
  for (const auto& id : immersion_ids()) {
    const auto b = config::build(hundred_points(id));
    const auto rep = soliton::check_conformal(*b.problem, b.points);
    for (const auto& p : rep.points) {
      const double lhs = p.phi, rhs = 1.0 + p.frame->lambda * p.frame->alpha;
      worst = std::max(worst, std::fabs(lhs - rhs) / std::max(1.0, std::fabs(rhs)));
      ++points;
    }
    torus_seen |= id == "torus" && !rep.soliton;
  }
  return {torus_seen && worst <= 1e-9,
          std::to_string(points) + " points incl. torus, max |phi - (1 + lambda alpha)| " + sci(worst) +
              " (tol 1e-9)"};
}

Outcome gauss_codazzi() {
  double gauss = 0.0, codazzi = 0.0;
  std::size_t points = 0;
  for (const auto& id : immersion_ids()) {
    const auto b = config::build(hundred_points(id));
    for (const auto& p : b.points) {
      const auto r = hypersurface::compatibility_at(*b.immersion, p);
      gauss = std::max(gauss, r.gauss);
      codazzi = std::max(codazzi, r.codazzi);
      ++points;
    }
  }
  return {gauss <= 1e-8 && codazzi <= 1e-8, std::to_string(points) + " points, Gauss " + sci(gauss) +
                                                ", Codazzi " + sci(codazzi) + " (tol 1e-8)"};
}

Outcome curvature_closed_forms() {
  const auto sphere = config::build(config::load_config("gallery:sphere(r=2)"));
  const Vec p{0.9, 0.4};
  const double r_sphere = tensor::curvature_at(sphere.immersion->induced_metric(), p).scalar;

  const auto s3 = config::build(config::load_config("gallery:round_s3"));
  double r_s3 = 0, s1 = 0, s2 = 0;
  double err = std::fabs(r_sphere - 0.5);
  for (const auto& q : {Vec{0.7, 0.9, 0.3}, Vec{1.2, 0.5, 2.0}}) {
    const auto c = tensor::curvature_at(s3.problem->metric(), q);
    r_s3 = c.scalar;
    s1 = tensor::sigma_k(c, 1);
    s2 = tensor::sigma_k(c, 2);
    err = std::max({err, std::fabs(r_s3 - 6), std::fabs(s1 - 1.5), std::fabs(s2 - 0.75)});
  }
  const auto hp = config::build(config::load_config("gallery:hyperbolic_half_plane"));
  double r_h = 0;
  for (const auto& q : {Vec{0.3, 0.8}, Vec{-0.5, 1.7}}) {
    r_h = tensor::curvature_at(hp.problem->metric(), q).scalar;
    err = std::max(err, std::fabs(r_h + 2));
  }
  return {err <= 1e-9, "S2(r=2) R=" + fmt("%.12f", r_sphere) + ", S3 R=" + fmt("%.12f", r_s3) + " sigma1=" +
                           fmt("%.12f", s1) + " sigma2=" + fmt("%.12f", s2) + ", H2 R=" + fmt("%.12f", r_h) +
                           ", max error " + sci(err) + " (tol 1e-9)"};
}

Outcome sigma_one() {
  std::mt19937 rng(20261016);
  std::uniform_real_distribution<double> coord(-0.8, 0.8);
  double worst = 0.0;
  int evaluated = 0;
  for (int m = 0; m < 10; ++m) {
    const auto metric = testing::random_metric(rng, 3);
    for (int k = 0; k < 50; ++k) {
      const Vec p{coord(rng), coord(rng), coord(rng)};
      const auto c = tensor::curvature_at(metric, p);
      worst = std::max(worst, rel_diff(tensor::sigma_k(c, 1), c.scalar / 4.0, 1e-300));
      ++evaluated;
    }
  }
  return {evaluated == 500 && worst <= 1e-10,
          "10 metrics x 50 points, max relative difference " + sci(worst) + " (tol 1e-10)"};
}

// Immersion with components R·F.
RunConfig rotated(const RunConfig& cfg, const Mat& rot) {
  RunConfig out = cfg;
  out.gallery.reset();
  out.expected.reset();
  out.immersion.clear();
  for (std::size_t a = 0; a < rot.rows(); ++a) {
    std::string e;
    for (std::size_t b = 0; b < rot.cols(); ++b) {
      if (b) e += " + ";
      e += gallery::literal(rot(a, b)) + "*(" + cfg.immersion[b] + ")";
    }
    out.immersion.push_back(e);
  }
  return out;
}

Mat rotation3() {
  // product of rotations about z (0.7 rad) and x (-1.1 rad)
  const double a = 0.7, b = -1.1;
  Mat rz(3, 3, 0.0), rx(3, 3, 0.0);
  rz(0, 0) = std::cos(a), rz(0, 1) = -std::sin(a), rz(1, 0) = std::sin(a), rz(1, 1) = std::cos(a), rz(2, 2) = 1;
  rx(0, 0) = 1, rx(1, 1) = std::cos(b), rx(1, 2) = -std::sin(b), rx(2, 1) = std::sin(b), rx(2, 2) = std::cos(b);
  Mat r(3, 3, 0.0);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) r(i, j) += rz(i, k) * rx(k, j);
  return r;
}

Vec apply(const Mat& r, const Vec& v) {
  Vec out(v.size(), 0.0);
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) out[i] += r(i, j) * v[j];
  return out;
}

double dist(const Vec& a, const Vec& b) {
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

classifier::Verdict classify(const RunConfig& cfg, std::size_t* count = nullptr) {
  const auto b = config::build(cfg);
  if (count) *count = b.points.size();
  return classifier::classify(*b.immersion, b.points, cfg.classify);
}

Outcome classification() {
  using classifier::Tag;
  bool ok = true;
  std::string d;

  auto sphere_cfg = config::load_config("gallery:sphere(r=2,cx=1)");
  sphere_cfg.domain[0].samples = 20;
  sphere_cfg.domain[1].samples = 10;
  sphere_cfg.domain_overridden = true;
  std::size_t n_sphere = 0;
  const auto sp = classify(sphere_cfg, &n_sphere);
  const double center_err = sp.tag == Tag::Hypersphere ? dist(sp.center, Vec{1, 0, 0}) : INFINITY;
  const double radius_err = sp.tag == Tag::Hypersphere ? std::fabs(sp.radius - 2) : INFINITY;
  ok &= n_sphere == 200 && center_err <= 1e-6 && radius_err <= 1e-6;
  d += "sphere " + std::string(classifier::to_string(sp.tag)) + " center err " + sci(center_err) + " radius err " +
       sci(radius_err);

  const auto plane_cfg = config::load_config("gallery:hyperplane(d=5)");
  const auto pl = classify(plane_cfg);
  double normal_err = INFINITY, offset_err = INFINITY;
  if (pl.tag == Tag::Hyperplane) {
    const double s = pl.normal[2] >= 0 ? 1.0 : -1.0;
    normal_err = dist(Vec{s * pl.normal[0], s * pl.normal[1], s * pl.normal[2]}, Vec{0, 0, 1});
    offset_err = std::fabs(std::fabs(pl.offset) - 5) + (s * pl.offset < 0 ? 10 : 0);
  }
  ok &= normal_err <= 1e-8 && offset_err <= 1e-8;
  d += "; plane " + std::string(classifier::to_string(pl.tag)) + " normal err " + sci(normal_err) +
       " offset err " + sci(offset_err);

  const auto cone_cfg = config::load_config("gallery:circular_cone(c=2)");
  const auto co = classify(cone_cfg);
  const auto torus_cfg = config::load_config("gallery:torus");
  const auto to = classify(torus_cfg);
  ok &= co.tag == Tag::Cone && to.tag == Tag::NotSoliton;
  d += "; cone " + std::string(classifier::to_string(co.tag)) + "; torus " + classifier::to_string(to.tag);

  const Mat rot = rotation3();
  const auto rsp = classify(rotated(sphere_cfg, rot));
  const auto rpl = classify(rotated(plane_cfg, rot));
  const auto rco = classify(rotated(cone_cfg, rot));
  const auto rto = classify(rotated(torus_cfg, rot));
  double rot_err = 0.0;
  bool tags = rsp.tag == sp.tag && rpl.tag == pl.tag && rco.tag == co.tag && rto.tag == to.tag;
  if (tags && sp.tag == Tag::Hypersphere) {
    rot_err = std::max({rot_err, dist(rsp.center, apply(rot, sp.center)), std::fabs(rsp.radius - sp.radius)});
  }
  if (tags && pl.tag == Tag::Hyperplane) {
    const Vec rn = apply(rot, pl.normal);
    const double s = (rn[0] * rpl.normal[0] + rn[1] * rpl.normal[1] + rn[2] * rpl.normal[2]) >= 0 ? 1.0 : -1.0;
    rot_err = std::max({rot_err, dist(Vec{s * rpl.normal[0], s * rpl.normal[1], s * rpl.normal[2]}, rn),
                        std::fabs(s * rpl.offset - pl.offset)});
  }
  ok &= tags && rot_err <= 1e-6;
  d += "; rotated tags " + std::string(tags ? "unchanged" : "CHANGED") + ", parameter err " + sci(rot_err) +
       " (tol 1e-6)";
  return {ok, d};
}

Outcome concurrent_phi() {
  const auto cfg = config::parse_config(R"J({"mode":"intrinsic","dimension":3,"metric":["1","0","1","0","0","1"],
    "vector_field":["u1","u2","u3"],
    "domain":[{"min":-2,"max":2,"samples":5},{"min":-2,"max":2,"samples":5},{"min":-2,"max":2,"samples":4}]})J");
  const auto b = config::build(cfg);
  const auto rep = soliton::check_conformal(*b.problem, b.points);
  double phi_err = 0;
  for (const auto& p : rep.points) phi_err = std::max(phi_err, std::fabs(p.phi - 1));
  const auto con = soliton::check_concurrent(b.problem->metric(), *b.problem->field(), b.points);
  return {rep.points.size() == 100 && phi_err <= 1e-10 && con.sup_defect <= 1e-12,
          "flat R3 position field, 100 points, max |phi - 1| " + sci(phi_err) + " (tol 1e-10), concurrent defect " +
              sci(con.sup_defect) + " (tol 1e-12)"};
}

Outcome minimal_phi() {
  bool ok = true;
  std::string d;
  for (const char* id : {"catenoid", "helicoid"}) {
    const auto b = config::build(hundred_points(id));
    soliton::IdentityReport rep;
    try {
      rep = soliton::check_minimal_phi1(*b.immersion, b.points);
    } catch (const Error& e) {
      return {false, std::string(id) + ": " + e.what()};
    }
    const double alpha = rep.extras.at("alpha_sup");
    ok &= b.points.size() == 100 && alpha <= 1e-9 && rep.sup_defect <= 1e-8;
    d += std::string(d.empty() ? "" : "; ") + id + " max |alpha| " + sci(alpha) + ", max |phi - 1| " +
         sci(rep.sup_defect);
  }
  return {ok, d + " (tol 1e-9, 1e-8)"};
}

Outcome f1_identity() {
  bool ok = true;
  std::string d;
  for (const char* id : {"flat_r3_quadratic", "warped_cosh_cylinder"}) {
    const auto b = config::build(config::load_config(std::string("gallery:") + id));
    auto grad = soliton::SolitonProblem::intrinsic(b.problem->metric(), soliton::Flavor::GradientConformal);
    grad.with_potential(*b.problem->potential());
    const auto pre = soliton::check_conformal(grad, b.points);
    const bool pre_ok = pre.sup_residual <= 1e-8 && pre.dropped.empty();
    double defect = INFINITY;
    if (pre_ok) defect = soliton::identity_f1(b.problem->metric(), *b.problem->potential(), b.points).sup_defect;
    ok &= pre_ok && defect <= 1e-6;
    d += std::string(d.empty() ? "" : "; ") + id + " precondition " + sci(pre.sup_residual) + " (tol 1e-8), defect " +
         sci(defect) + " (tol 1e-6)";
  }
  return {ok, d};
}

Outcome gradient_structure() {
  double worst = 0.0;
  std::size_t points = 0;
  for (const auto& id : immersion_ids()) {
    const auto b = config::build(hundred_points(id));
    for (const auto& p : b.points) {
      const auto f = hypersurface::frame_at(*b.immersion, p);
      const Vec g = hypersurface::potential_gradient_at(*b.immersion, p);
      for (std::size_t i = 0; i < g.size(); ++i) worst = std::max(worst, std::fabs(g[i] - f.vt_chart[i]));
      ++points;
    }
  }
  return {worst <= 1e-9, std::to_string(points) + " points, max |V^T - grad(|F|^2 / 2)| " + sci(worst) + " (tol 1e-9)"};
}

// Every expression string of every gallery instance, with its chart dimension and an interior point.
struct CorpusItem {
  std::string source;
  expr::Expr e;
  int n;
  Vec point;
};

std::vector<CorpusItem> expression_corpus() {
  std::vector<CorpusItem> items;
  for (const auto& entry : gallery::entries()) {
    const auto inst = gallery::instantiate(entry.id);
    Vec mid;
    for (const auto& iv : inst.domain) mid.push_back(iv.min + 0.37 * (iv.max - iv.min));
    std::vector<std::string> texts = inst.immersion;
    texts.insert(texts.end(), inst.metric.begin(), inst.metric.end());
    texts.insert(texts.end(), inst.vector_field.begin(), inst.vector_field.end());
    if (inst.potential) texts.push_back(*inst.potential);
    if (inst.h_function) texts.push_back(*inst.h_function);
    for (const auto& t : texts) items.push_back({entry.id + ": " + t, expr::parse(t), inst.dimension, mid});
  }
  return items;
}

bool is_polynomial(const expr::Expr& e) {
  const auto& n = e.node();
  switch (n.op) {
    case expr::Op::Number:
    case expr::Op::Variable: return true;
    case expr::Op::Neg: return is_polynomial(expr::Expr(n.lhs));
    case expr::Op::Add:
    case expr::Op::Sub:
    case expr::Op::Mul: return is_polynomial(expr::Expr(n.lhs)) && is_polynomial(expr::Expr(n.rhs));
    case expr::Op::Pow: {
      const expr::Expr ex(n.rhs);
      return is_polynomial(expr::Expr(n.lhs)) && ex.is_number() && ex.node().value >= 0 &&
             ex.node().value == std::floor(ex.node().value);
    }
    default: return false;
  }
}

expr::Jet jet_at(const CorpusItem& it, const Vec& p, int order) {
  expr::EvalContext ctx;
  const auto names = tensor::chart_variables(it.n);
  for (int i = 0; i < it.n; ++i) ctx.variables.emplace_back(names[i], p[i]);
  ctx.jet_order = order;
  ctx.max_order = std::max(order, expr::kDefaultMaxJetOrder);
  return expr::eval_jet(it.e, ctx);
}

Outcome jet_engine() {
  double fd_worst = 0.0, poly_worst = 0.0;
  std::size_t partials = 0, poly_partials = 0, exprs = 0;
  for (const auto& it : expression_corpus()) {
    ++exprs;
    const auto base = jet_at(it, it.point, 4);
    std::vector<expr::Jet> plus, minus;
    Vec step;
    for (int i = 0; i < it.n; ++i) {
      const double h = 1e-4 * std::max(1.0, std::fabs(it.point[i]));
      step.push_back(h);
      Vec a = it.point, b = it.point;
      a[i] += h;
      b[i] -= h;
      plus.push_back(jet_at(it, a, 3));
      minus.push_back(jet_at(it, b, 3));
    }
    const bool poly = is_polynomial(it.e);
    const auto names = tensor::chart_variables(it.n);
    for (const auto& [alpha, value] : base.entries()) {
      int total = 0;
      for (int a : alpha) total += a;
      if (total > 0) {
        const int i = static_cast<int>(std::find_if(alpha.begin(), alpha.end(), [](int a) { return a > 0; }) -
                                       alpha.begin());
        std::vector<int> lower = alpha;
        --lower[i];
        const double fd = (plus[i].partial(lower) - minus[i].partial(lower)) / (2 * step[i]);
        fd_worst = std::max(fd_worst, std::fabs(fd - value) / std::max(1.0, std::fabs(value)));
        ++partials;
      }
      if (poly) {
        expr::Expr d = it.e;
        for (int v = 0; v < it.n; ++v)
          for (int k = 0; k < alpha[v]; ++k) d = expr::differentiate(d, names[v]);
        std::map<std::string, double> at;
        for (int v = 0; v < it.n; ++v) at[names[v]] = it.point[v];
        const double exact = expr::evaluate(d, at);
        poly_worst = std::max(poly_worst, std::fabs(exact - value) / std::max(1.0, std::fabs(exact)));
        ++poly_partials;
      }
    }
  }
  return {fd_worst <= 1e-5 && poly_worst <= 1e-12 && poly_partials > 0,
          std::to_string(exprs) + " expressions, " + std::to_string(partials) +
              " partials up to order 4, max FD relative error " + sci(fd_worst) + " (tol 1e-5); " +
              std::to_string(poly_partials) + " polynomial partials, max error " + sci(poly_worst) + " (tol 1e-12)"};
}

Outcome determinism() {
  std::size_t runs = 0;
  for (const auto& e : gallery::entries()) {
    const auto cfg = config::load_config("gallery:" + e.id);
    for (auto cmd : {driver::parse_command(e.expected.command), driver::Command::Identities}) {
      driver::Options opt;
      opt.format = "json";
      const auto a = driver::run(cmd, cfg, opt).report;
      const auto b = driver::run(cmd, cfg, opt).report;
      opt.threads = 3;
      const auto c = driver::run(cmd, cfg, opt).report;
      if (a != b || a != c) return {false, e.id + " " + driver::to_string(cmd) + " reports differ"};
      ++runs;
    }
  }
  return {true, std::to_string(runs) + " gallery configs x commands, repeated and 3-thread reports byte-identical"};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> fn;
  };
  const std::vector<Criterion> criteria = {
      {1, "Lie derivative of V^T: two paths agree", lie_identity},
      {2, "trace identity phi = 1 + lambda alpha", trace_identity},
      {3, "Gauss and Codazzi equations", gauss_codazzi},
      {4, "curvature closed forms", curvature_closed_forms},
      {5, "sigma_1 = R / (2(n-1)) on random metrics", sigma_one},
      {6, "classification", classification},
      {7, "concurrent field gives phi = 1", concurrent_phi},
      {8, "minimal immersions give phi = 1", minimal_phi},
      {9, "f1 identity on conformal gradient solitons", f1_identity},
      {10, "V^T is the gradient of |F|^2 / 2", gradient_structure},
      {11, "jet engine against finite differences", jet_engine},
      {12, "deterministic JSON reports", determinism},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    Outcome o;
    try {
      o = c.fn();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    failed += !o.pass;
    std::printf("%s criterion %2d  %s: %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str());
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed ? 1 : 0;
}
