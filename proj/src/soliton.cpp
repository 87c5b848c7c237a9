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

#include "soliton.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace solitonscope::soliton {

namespace {

bool is_gradient_flavor(Flavor f) { return f == Flavor::KYamabe || f == Flavor::GradientConformal; }

Mat scaled(const Mat& a, double s) {
  Mat out = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) *= s;
  return out;
}

double trace_fit(const Mat& g, const Mat& t) {
  const Mat ginv = inverse(g);
  return tensor::trace_with(ginv, t) / static_cast<double>(g.rows());
}

/// sup |a g - t| / max |g|
double conformal_defect(const Mat& g, const Mat& t, double a) {
  double sup = 0.0;
  for (std::size_t i = 0; i < g.rows(); ++i)
    for (std::size_t j = 0; j < g.cols(); ++j) sup = std::max(sup, std::fabs(a * g(i, j) - t(i, j)));
  return sup / max_abs(g);
}

double mean(const std::vector<double>& v) {
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

struct Core {
  Mat g;
  Mat t;  // ½ L_v g or Hess f
  double phi = 0.0;
  std::optional<FrameSummary> frame;
  double scalar = 0.0;  // R or σ_k, when the flavor needs it
  double h = 1.0;
};

Core core_at(const SolitonProblem& prob, const Vec& u) {
  Core c;
  const bool gradient = is_gradient_flavor(prob.flavor());
  const MetricField& m = prob.metric();
  if (prob.is_immersion()) {
    const auto& s = prob.immersion();
    s.require_admissible(u);
    const auto fr = hypersurface::frame_at(s, u);
    c.g = fr.g;
    c.frame = FrameSummary{fr.lambda, fr.alpha, fr.kappa.front(), fr.kappa.back()};
    if (gradient) {
      c.t = tensor::scalar_field_at(m, *prob.potential(), u, prob.hessian()).hess;
    } else {
      c.t = scaled(hypersurface::lie_position_at(s, u).coordinate, 0.5);
    }
  } else {
    c.g = m.local_values(u, 0).g;
    tensor::check_positive_definite(c.g);
    if (!gradient && prob.field()) {
      c.t = scaled(tensor::vector_field_at(m, *prob.field(), u).lie_g, 0.5);
    } else {
      c.t = tensor::scalar_field_at(m, *prob.potential(), u, prob.hessian()).hess;
    }
  }
  c.phi = trace_fit(c.g, c.t);
  switch (prob.flavor()) {
    case Flavor::Yamabe:
    case Flavor::AlmostYamabe:
    case Flavor::HAlmost:
      c.scalar = tensor::curvature_at(m, u).scalar;
      break;
    case Flavor::KYamabe:
      c.scalar = tensor::sigma_k(tensor::curvature_at(m, u, true), prob.k());
      break;
    default:
      break;
  }
  if (prob.flavor() == Flavor::HAlmost) c.h = prob.h()->local(u, 0).value();
  return c;
}

std::vector<Core> cores(const SolitonProblem& prob, const std::vector<Vec>& points, const RunOptions& opt,
                        std::vector<Vec>& kept, std::vector<DroppedPoint>& dropped) {
  prob.validate();
  auto raw = evaluate_points<Core>(points, opt.threads, [&](const Vec& u) { return core_at(prob, u); },
                                   dropped);
  std::vector<Core> out;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (!raw[i]) continue;
    kept.push_back(points[i]);
    out.push_back(std::move(*raw[i]));
  }
  return out;
}

void finish(SolitonReport& r, const Tolerances& tol) {
  r.sup_residual = 0.0;
  for (const auto& p : r.points) r.sup_residual = std::max(r.sup_residual, p.residual);
  r.tolerance = tol.soliton;
  r.soliton = r.sup_residual <= tol.soliton;
}

void finish(IdentityReport& r, double tol) {
  r.sup_defect = r.defect.empty() ? 0.0 : *std::max_element(r.defect.begin(), r.defect.end());
  r.tolerance = tol;
  r.pass = r.applicable && r.sup_defect <= tol;
}

}  // namespace

const char* to_string(Flavor f) {
  switch (f) {
    case Flavor::Conformal: return "conformal";
    case Flavor::Yamabe: return "yamabe";
    case Flavor::AlmostYamabe: return "almost_yamabe";
    case Flavor::KYamabe: return "k_yamabe";
    case Flavor::HAlmost: return "h_almost";
    case Flavor::GradientConformal: return "gradient_conformal";
  }
  return "conformal";
}

Flavor parse_flavor(const std::string& name) {
  for (Flavor f : {Flavor::Conformal, Flavor::Yamabe, Flavor::AlmostYamabe, Flavor::KYamabe, Flavor::HAlmost,
                   Flavor::GradientConformal}) {
    if (name == to_string(f)) return f;
  }
  throw Error(ErrorKind::Config, "unknown soliton flavor '" + name + "'");
}

std::vector<Vec> regular_grid(const std::vector<Interval>& domain, const std::function<bool(const Vec&)>& keep) {
  std::vector<Vec> out;
  const std::size_t n = domain.size();
  if (n == 0) return out;
  std::vector<int> idx(n, 0);
  for (;;) {
    Vec p(n);
    for (std::size_t i = 0; i < n; ++i) {
      const auto& iv = domain[i];
      p[i] = iv.samples < 2 ? iv.min : iv.min + (iv.max - iv.min) * idx[i] / (iv.samples - 1);
    }
    if (!keep || keep(p)) out.push_back(std::move(p));
    std::size_t d = 0;
    while (d < n && ++idx[d] >= std::max(domain[d].samples, 1)) idx[d++] = 0;
    if (d == n) break;
  }
  return out;
}

// ---------------------------------------------------------------------------
// SolitonProblem
// ---------------------------------------------------------------------------

SolitonProblem SolitonProblem::on_immersion(Immersion s, Flavor flavor) {
  SolitonProblem p;
  p.flavor_ = flavor;
  p.potential_.emplace(s.half_norm_squared(), s.dim(), s.max_jet_order());
  p.immersion_.emplace(std::move(s));
  return p;
}

SolitonProblem SolitonProblem::intrinsic(MetricField m, Flavor flavor) {
  SolitonProblem p;
  p.flavor_ = flavor;
  p.metric_.emplace(std::move(m));
  return p;
}

SolitonProblem& SolitonProblem::with_potential(ScalarField f) {
  potential_.emplace(std::move(f));
  return *this;
}

SolitonProblem& SolitonProblem::with_field(VectorField v) {
  field_.emplace(std::move(v));
  return *this;
}

SolitonProblem& SolitonProblem::with_h(ScalarField h) {
  h_.emplace(std::move(h));
  return *this;
}

SolitonProblem& SolitonProblem::with_k(int k) {
  k_ = k;
  return *this;
}

SolitonProblem& SolitonProblem::with_hessian(HessianConvention c) {
  hessian_ = c;
  return *this;
}

const Immersion& SolitonProblem::immersion() const {
  if (!immersion_) throw Error(ErrorKind::Config, "problem has no immersion");
  return *immersion_;
}

const MetricField& SolitonProblem::metric() const {
  return immersion_ ? immersion_->induced_metric() : *metric_;
}

void SolitonProblem::validate() const {
  const int n = dim();
  auto check_dim = [&](int d, const char* what) {
    if (d != n) throw Error(ErrorKind::Config, std::string(what) + " dimension does not match the metric");
  };
  if (potential_) check_dim(potential_->dim(), "potential");
  if (field_) check_dim(field_->dim(), "vector_field");
  if (h_) check_dim(h_->dim(), "h_function");
  if (!immersion_ && !field_ && !potential_) {
    throw Error(ErrorKind::Config, "intrinsic problems need a vector_field or a potential");
  }
  if (is_gradient_flavor(flavor_) && !potential_) {
    throw Error(ErrorKind::Config, std::string("flavor ") + to_string(flavor_) + " needs a potential");
  }
  if (flavor_ == Flavor::KYamabe) {
    if (n < 3) throw Error(ErrorKind::Config, "k_yamabe needs dimension >= 3 (Schouten tensor)");
    if (k_ < 1 || k_ > n) throw Error(ErrorKind::Config, "k_yamabe needs 1 <= k <= dimension");
  }
  if (flavor_ == Flavor::HAlmost && !h_) throw Error(ErrorKind::Config, "h_almost needs an h_function");
}

// ---------------------------------------------------------------------------
// Soliton checks
// ---------------------------------------------------------------------------

SolitonReport check_conformal(const SolitonProblem& prob, const std::vector<Vec>& points,
                              const RunOptions& opt) {
  SolitonReport r;
  r.flavor = Flavor::Conformal;
  std::vector<Vec> kept;
  const auto cs = cores(prob, points, opt, kept, r.dropped);
  for (std::size_t i = 0; i < cs.size(); ++i) {
    const auto& c = cs[i];
    r.points.push_back({kept[i], c.phi, conformal_defect(c.g, c.t, c.phi), std::nullopt, c.frame});
  }
  finish(r, opt.tol);
  return r;
}

SolitonReport check_flavored(const SolitonProblem& prob, const std::vector<Vec>& points,
                             const RunOptions& opt) {
  const Flavor flavor = prob.flavor();
  if (flavor == Flavor::Conformal || flavor == Flavor::GradientConformal) {
    auto r = check_conformal(prob, points, opt);
    r.flavor = flavor;
    return r;
  }
  SolitonReport r;
  r.flavor = flavor;
  if (flavor == Flavor::KYamabe) r.k = prob.k();
  std::vector<Vec> kept;
  const auto cs = cores(prob, points, opt, kept, r.dropped);
  const double n = prob.dim();

  if (flavor == Flavor::HAlmost) {
    bool positive = false, negative = false;
    for (const auto& c : cs) {
      positive |= c.h > 0.0;
      negative |= c.h < 0.0;
      if (c.h == 0.0 || (positive && negative)) {
        throw Error(ErrorKind::Config, "h_function must be nonzero with one sign at every sample");
      }
    }
  }

  std::vector<double> rho_local;
  for (const auto& c : cs) {
    switch (flavor) {
      case Flavor::KYamabe: rho_local.push_back(c.scalar - c.phi / (2.0 * (n - 1.0))); break;
      case Flavor::HAlmost: rho_local.push_back(c.scalar - c.h * c.phi); break;
      default: rho_local.push_back(c.scalar - c.phi); break;
    }
  }

  if (flavor != Flavor::AlmostYamabe) r.rho = mean(rho_local);
  for (std::size_t i = 0; i < cs.size(); ++i) {
    const auto& c = cs[i];
    double residual = 0.0;
    switch (flavor) {
      case Flavor::AlmostYamabe: residual = conformal_defect(c.g, c.t, c.phi); break;
      case Flavor::Yamabe: residual = conformal_defect(c.g, c.t, c.scalar - *r.rho); break;
      case Flavor::KYamabe:
        residual = conformal_defect(c.g, c.t, 2.0 * (n - 1.0) * (c.scalar - *r.rho));
        break;
      case Flavor::HAlmost: residual = conformal_defect(c.g, scaled(c.t, c.h), c.scalar - *r.rho); break;
      default: break;
    }
    r.points.push_back({kept[i], c.phi, residual, rho_local[i], c.frame});
  }
  finish(r, opt.tol);
  return r;
}

// ---------------------------------------------------------------------------
// Identities
// ---------------------------------------------------------------------------

namespace {

struct Defect {
  double value = 0.0;
  std::map<std::string, double> extras;
};

template <class Fn>
IdentityReport run_identity(const char* id, bool universal, double tol, const std::vector<Vec>& points,
                            const RunOptions& opt, Fn&& fn) {
  IdentityReport r;
  r.id = id;
  r.universal = universal;
  const auto raw = evaluate_points<Defect>(points, opt.threads, fn, r.dropped);
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (!raw[i]) continue;
    r.points.push_back(points[i]);
    r.defect.push_back(raw[i]->value);
    for (const auto& [key, v] : raw[i]->extras) r.extras[key] = std::max(r.extras[key], v);
  }
  finish(r, tol);
  return r;
}

}  // namespace

IdentityReport check_concurrent(const MetricField& m, const VectorField& v, const std::vector<Vec>& points,
                                const RunOptions& opt) {
  return run_identity("concurrent", false, opt.tol.concurrent, points, opt, [&](const Vec& u) {
    const auto d = tensor::vector_field_at(m, v, u);
    double sup = 0.0;
    for (std::size_t i = 0; i < d.nabla.rows(); ++i)
      for (std::size_t j = 0; j < d.nabla.cols(); ++j)
        sup = std::max(sup, std::fabs(d.nabla(i, j) - (i == j ? 1.0 : 0.0)));
    return Defect{sup, {}};
  });
}

F1Terms f1_terms_at(const MetricField& m, const ScalarField& f, std::span<const double> p) {
  using tensor::HessianConvention;
  const int n = m.dim();
  const auto values = m.local_values(p, 1);
  tensor::check_positive_definite(values.g);

  // φ = Δf / n as an order-2 expansion around p.
  const auto ml2 = m.local(p, 2, 1);
  const Matrix<Series> ginv2 = inverse(ml2.g);
  const auto gamma2 = tensor::christoffel(ml2, ginv2);
  const Series fs = f.local(p, 4);
  std::vector<Series> df;
  Matrix<Series> ddf(n, n, ml2.g(0, 0));
  for (int i = 0; i < n; ++i) {
    const Series di = fs.derivative(i);
    df.push_back(di.truncated(2));
    for (int j = 0; j < n; ++j) ddf(i, j) = di.derivative(j).truncated(2);
  }
  const Series phi = tensor::trace_with(ginv2, tensor::hessian(n, df, ddf, gamma2, HessianConvention::LeviCivita)) /
                     static_cast<double>(n);

  const Mat ginv = inverse(values.g);
  const auto gamma = tensor::christoffel(values, ginv);
  F1Terms t;
  t.phi = phi.value();
  for (int i = 0; i < n; ++i) {
    const Series dphi_i = phi.derivative(i);
    for (int j = 0; j < n; ++j) {
      double hij = dphi_i.derivative(j).value();
      for (int k = 0; k < n; ++k) hij -= gamma[(k * n + i) * n + j] * phi.derivative(k).value();
      t.laplacian_phi += ginv(i, j) * hij;
    }
  }

  // R as an order-1 expansion gives ∇R.
  const Series r = tensor::scalar_curvature(m.local(p, 1, 2));
  t.scalar = r.value();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) t.grad_r_dot_grad_f += ginv(i, j) * r.derivative(i).value() * df[j].value();

  const double lhs = (n - 1) * t.laplacian_phi + 0.5 * t.grad_r_dot_grad_f + t.scalar * t.phi;
  t.defect = std::fabs(lhs) / (1.0 + std::fabs(t.scalar) * std::fabs(t.phi));
  return t;
}

IdentityReport identity_f1(const MetricField& m, const ScalarField& f, const std::vector<Vec>& points,
                           const RunOptions& opt) {
  auto pre = SolitonProblem::intrinsic(m, Flavor::GradientConformal).with_potential(f);
  const auto gate = check_conformal(pre, points, opt);
  if (!gate.soliton) {
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "f1 needs a conformal gradient soliton; Hess f - (Δf/n) g residual %.3e exceeds %.1e",
                  gate.sup_residual, gate.tolerance);
    throw Error(ErrorKind::NotApplicable, buf);
  }
  auto r = run_identity("f1", true, opt.tol.f1, points, opt, [&](const Vec& u) {
    return Defect{f1_terms_at(m, f, u).defect, {}};
  });
  r.extras["precondition_residual"] = gate.sup_residual;
  return r;
}

IdentityReport identity_ensays(const Immersion& s, const std::vector<Vec>& points, const RunOptions& opt) {
  return run_identity("ensays", false, opt.tol.ensays, points, opt, [&](const Vec& u) {
    s.require_admissible(u);
    const auto fr = hypersurface::frame_at(s, u);
    const Mat t = scaled(hypersurface::lie_position_at(s, u).coordinate, 0.5);
    const double phi = trace_fit(fr.g, t);
    Defect d;
    double sup = 0.0;
    for (int i = 0; i < fr.n; ++i)
      for (int j = 0; j < fr.n; ++j)
        sup = std::max(sup, std::fabs((phi - 1.0) * fr.g(i, j) - fr.lambda * fr.h(i, j)));
    d.value = sup / max_abs(fr.g);
    double e1 = 0.0;
    for (double k : fr.kappa) e1 = std::max(e1, std::fabs(fr.lambda * k - (phi - 1.0)));
    d.extras["e1_sup"] = e1;
    d.extras["e2_sup"] = std::fabs(phi - 1.0 - fr.lambda * fr.alpha);
    d.extras["conformal_sup"] = conformal_defect(fr.g, t, phi);
    return d;
  });
}

IdentityReport identity_s3(const Immersion& s, const std::vector<Vec>& points, const RunOptions& opt) {
  return run_identity("s3", true, opt.tol.s3, points, opt, [&](const Vec& u) {
    s.require_admissible(u);
    const auto lp = hypersurface::lie_position_at(s, u);
    double diff = 0.0;
    for (std::size_t i = 0; i < lp.coordinate.rows(); ++i)
      for (std::size_t j = 0; j < lp.coordinate.cols(); ++j)
        diff = std::max(diff, std::fabs(lp.coordinate(i, j) - lp.via_shape(i, j)));
    return Defect{diff / (1.0 + std::max(max_abs(lp.coordinate), max_abs(lp.via_shape))), {}};
  });
}

IdentityReport identity_potential(const Immersion& s, const std::vector<Vec>& points, const RunOptions& opt) {
  return run_identity("potential", true, opt.tol.potential, points, opt, [&](const Vec& u) {
    s.require_admissible(u);
    const auto fr = hypersurface::frame_at(s, u);
    const Vec grad = hypersurface::potential_gradient_at(s, u);
    double diff = 0.0, mag = 0.0;
    for (std::size_t i = 0; i < grad.size(); ++i) {
      diff = std::max(diff, std::fabs(grad[i] - fr.vt_chart[i]));
      mag = std::max(mag, std::fabs(fr.vt_chart[i]));
    }
    return Defect{diff / (1.0 + mag), {}};
  });
}

IdentityReport check_minimal_phi1(const Immersion& s, const std::vector<Vec>& points, const RunOptions& opt) {
  auto r = run_identity("minimal_phi1", true, opt.tol.minimal_phi1, points, opt, [&](const Vec& u) {
    s.require_admissible(u);
    const auto fr = hypersurface::frame_at(s, u);
    const double kmax = std::max(std::fabs(fr.kappa.front()), std::fabs(fr.kappa.back()));
    const double alpha_rel = std::fabs(fr.alpha) / (1.0 + kmax);
    const double phi = trace_fit(fr.g, scaled(hypersurface::lie_position_at(s, u).coordinate, 0.5));
    return Defect{std::fabs(phi - 1.0), {{"alpha_sup", std::fabs(fr.alpha)}, {"alpha_rel_sup", alpha_rel}}};
  });
  if (r.extras["alpha_rel_sup"] > opt.tol.minimal) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "immersion is not minimal: |alpha| / (1 + max|kappa|) reaches %.3e > %.1e",
                  r.extras["alpha_rel_sup"], opt.tol.minimal);
    throw Error(ErrorKind::NotApplicable, buf);
  }
  return r;
}

std::vector<IdentityReport> all_identities(const SolitonProblem& prob, const std::vector<Vec>& points,
                                           const RunOptions& opt) {
  prob.validate();
  std::vector<IdentityReport> out;
  auto attempt = [&](const char* id, auto&& fn) {
    try {
      out.push_back(fn());
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::NotApplicable) throw;
      IdentityReport r;
      r.id = id;
      r.applicable = false;
      r.note = e.what();
      out.push_back(std::move(r));
    }
  };
  if (prob.is_immersion()) {
    const auto& s = prob.immersion();
    attempt("s3", [&] { return identity_s3(s, points, opt); });
    attempt("potential", [&] { return identity_potential(s, points, opt); });
    attempt("ensays", [&] { return identity_ensays(s, points, opt); });
    attempt("minimal_phi1", [&] { return check_minimal_phi1(s, points, opt); });
  }
  if (prob.potential()) {
    attempt("f1", [&] { return identity_f1(prob.metric(), *prob.potential(), points, opt); });
  }
  if (prob.field()) {
    attempt("concurrent", [&] { return check_concurrent(prob.metric(), *prob.field(), points, opt); });
  }
  return out;
}

}  // namespace solitonscope::soliton
