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

#include "classifier.hpp"

#include <algorithm>
#include <cmath>

namespace solitonscope::classifier {

namespace {

double norm(const Vec& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

/// Mean of vectors and the root mean squared distance to it.
std::pair<Vec, double> mean_and_spread(const std::vector<Vec>& vs) {
  Vec m(vs.front().size(), 0.0);
  for (const auto& v : vs)
    for (std::size_t a = 0; a < v.size(); ++a) m[a] += v[a];
  for (double& x : m) x /= static_cast<double>(vs.size());
  double acc = 0.0;
  for (const auto& v : vs)
    for (std::size_t a = 0; a < v.size(); ++a) acc += (v[a] - m[a]) * (v[a] - m[a]);
  return {m, std::sqrt(acc / static_cast<double>(vs.size()))};
}

std::pair<double, double> mean_and_stddev(const std::vector<double>& xs) {
  double m = 0.0;
  for (double x : xs) m += x;
  m /= static_cast<double>(xs.size());
  double acc = 0.0;
  for (double x : xs) acc += (x - m) * (x - m);
  return {m, std::sqrt(acc / static_cast<double>(xs.size()))};
}

std::string sci(const char* label, double v, double tol) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "%s %.3e exceeds %.3e", label, v, tol);
  return buf;
}

}  // namespace

const char* to_string(Tag t) {
  switch (t) {
    case Tag::Hyperplane: return "hyperplane";
    case Tag::Cone: return "cone";
    case Tag::Hypersphere: return "hypersphere";
    case Tag::NotSoliton: return "not_soliton";
    case Tag::Undetermined: return "undetermined";
  }
  return "undetermined";
}

double umbilic_spread(const Sample& s) { return (s.kappa_max - s.kappa_min) / (1.0 + std::fabs(s.alpha)); }

Sample sample_at(const soliton::Immersion& s, const Vec& u) {
  s.require_admissible(u);
  const auto fr = hypersurface::frame_at(s, u);
  const auto lp = hypersurface::lie_position_at(s, u);
  Sample out;
  out.u = u;
  out.position = fr.position;
  out.normal = fr.normal;
  out.lambda = fr.lambda;
  out.alpha = fr.alpha;
  out.kappa_min = fr.kappa.front();
  out.kappa_max = fr.kappa.back();
  const Mat ginv = inverse(fr.g);
  const double phi = 0.5 * tensor::trace_with(ginv, lp.coordinate) / fr.n;
  double sup = 0.0;
  for (int i = 0; i < fr.n; ++i)
    for (int j = 0; j < fr.n; ++j) sup = std::max(sup, std::fabs(phi * fr.g(i, j) - 0.5 * lp.coordinate(i, j)));
  out.residual = sup / max_abs(fr.g);
  return out;
}

Verdict decide(const std::vector<Sample>& samples, const ClassifyConfig& cfg) {
  Verdict v;
  auto& d = v.diag;
  if (samples.empty()) throw Error(ErrorKind::Config, "classification needs at least one sample");
  d.samples = samples.size();
  d.min_abs_lambda = std::fabs(samples.front().lambda);
  std::vector<double> alphas;
  for (const auto& s : samples) {
    d.scale = std::max(d.scale, norm(s.position));
    d.soliton_residual = std::max(d.soliton_residual, s.residual);
    d.max_abs_lambda = std::max(d.max_abs_lambda, std::fabs(s.lambda));
    d.min_abs_lambda = std::min(d.min_abs_lambda, std::fabs(s.lambda));
    d.umbilic_spread = std::max(d.umbilic_spread, umbilic_spread(s));
    alphas.push_back(s.alpha);
  }
  std::tie(d.alpha_mean, d.alpha_stddev) = mean_and_stddev(alphas);
  const double scale = d.scale > 0.0 ? d.scale : 1.0;

  if (d.soliton_residual > cfg.tol_soliton) {
    v.tag = Tag::NotSoliton;
    v.reason = sci("conformal residual", d.soliton_residual, cfg.tol_soliton);
    return v;
  }

  const double lambda_tol = cfg.tol_lambda * scale;
  for (const auto& s : samples) d.small_lambda += std::fabs(s.lambda) <= lambda_tol;

  double max_alpha = 0.0, mean_abs_alpha = 0.0;
  for (double a : alphas) {
    max_alpha = std::max(max_alpha, std::fabs(a));
    mean_abs_alpha += std::fabs(a);
  }
  mean_abs_alpha /= static_cast<double>(alphas.size());

  if (d.small_lambda == samples.size()) {
    v.tag = Tag::Cone;
    v.reason = "support function vanishes at every sample";
    if (max_alpha * scale <= cfg.tol_alpha) d.notes.push_back("plane through origin (a conic hypersurface)");
    return v;
  }
  if (d.small_lambda > 0) {
    v.tag = Tag::Undetermined;
    char buf[160];
    std::snprintf(buf, sizeof buf, "mixed support function: %zu of %zu samples have |lambda| <= %.3e",
                  d.small_lambda, samples.size(), lambda_tol);
    v.reason = buf;
    return v;
  }
  if (d.umbilic_spread > cfg.tol_umbilic) {
    v.tag = Tag::Undetermined;
    v.reason = sci("umbilicity spread", d.umbilic_spread, cfg.tol_umbilic);
    return v;
  }

  if (mean_abs_alpha * scale <= cfg.tol_alpha) {
    const Vec& ref = samples.front().normal;
    std::vector<Vec> normals;
    std::vector<double> offsets;
    for (const auto& s : samples) {
      double dot = 0.0;
      for (std::size_t a = 0; a < ref.size(); ++a) dot += ref[a] * s.normal[a];
      const double sign = dot < 0.0 ? -1.0 : 1.0;
      Vec n = s.normal;
      for (double& x : n) x *= sign;
      normals.push_back(std::move(n));
      offsets.push_back(sign * s.lambda);
    }
    auto [mean_normal, spread] = mean_and_spread(normals);
    d.normal_stddev = spread;
    std::tie(v.offset, d.offset_stddev) = mean_and_stddev(offsets);
    const double len = norm(mean_normal);
    for (double& x : mean_normal) x /= len;
    v.normal = mean_normal;
    if (d.normal_stddev > cfg.tol_consistency || d.offset_stddev > cfg.tol_consistency * scale) {
      v.tag = Tag::Undetermined;
      v.reason = d.normal_stddev > cfg.tol_consistency
                     ? sci("normal spread", d.normal_stddev, cfg.tol_consistency)
                     : sci("offset spread", d.offset_stddev, cfg.tol_consistency * scale);
      return v;
    }
    v.tag = Tag::Hyperplane;
    v.reason = "totally umbilic with vanishing mean curvature";
    return v;
  }

  std::vector<Vec> centers;
  for (const auto& s : samples) {
    Vec c = s.position;
    for (std::size_t a = 0; a < c.size(); ++a) c[a] += s.normal[a] / s.alpha;
    centers.push_back(std::move(c));
  }
  auto [center, spread] = mean_and_spread(centers);
  d.center_stddev = spread;
  v.center = center;
  v.radius = 1.0 / mean_abs_alpha;
  std::vector<double> abs_alpha;
  for (double a : alphas) abs_alpha.push_back(std::fabs(a));
  const double alpha_rel = mean_and_stddev(abs_alpha).second / mean_abs_alpha;
  if (alpha_rel > cfg.tol_consistency) {
    v.tag = Tag::Undetermined;
    v.reason = sci("relative spread of |alpha|", alpha_rel, cfg.tol_consistency);
    return v;
  }
  if (d.center_stddev > cfg.tol_consistency * v.radius) {
    v.tag = Tag::Undetermined;
    v.reason = sci("center spread", d.center_stddev, cfg.tol_consistency * v.radius);
    return v;
  }
  v.tag = Tag::Hypersphere;
  v.reason = "totally umbilic with constant nonzero mean curvature";
  return v;
}

Verdict classify(const soliton::Immersion& s, const std::vector<Vec>& points, const ClassifyConfig& cfg) {
  std::vector<DroppedPoint> dropped;
  const auto raw = soliton::evaluate_points<Sample>(points, cfg.threads,
                                                    [&](const Vec& u) { return sample_at(s, u); }, dropped);
  std::vector<Sample> samples;
  for (const auto& r : raw)
    if (r) samples.push_back(*r);
  Verdict v = decide(samples, cfg);
  v.samples = std::move(samples);
  v.diag.dropped = dropped.size();
  v.dropped = std::move(dropped);
  return v;
}

UmbilicityStats umbilicity_stats(const soliton::Immersion& s, const std::vector<Vec>& points, int threads) {
  UmbilicityStats out;
  const auto raw = soliton::evaluate_points<double>(
      points, threads,
      [&](const Vec& u) {
        s.require_admissible(u);
        const auto fr = hypersurface::frame_at(s, u);
        return (fr.kappa.back() - fr.kappa.front()) / (1.0 + std::fabs(fr.alpha));
      },
      out.dropped);
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (!raw[i]) continue;
    out.points.push_back(points[i]);
    out.spread.push_back(*raw[i]);
    out.max_spread = std::max(out.max_spread, *raw[i]);
  }
  return out;
}

}  // namespace solitonscope::classifier
