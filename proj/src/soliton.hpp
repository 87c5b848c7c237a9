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

#ifndef SOLITONSCOPE_SOLITON_HPP
#define SOLITONSCOPE_SOLITON_HPP

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "error.hpp"
#include "hypersurface.hpp"
#include "parallel.hpp"
#include "tensor.hpp"

namespace solitonscope::soliton {

using hypersurface::Immersion;
using hypersurface::Interval;
using tensor::HessianConvention;
using tensor::MetricField;
using tensor::ScalarField;
using tensor::VectorField;

enum class Flavor { Conformal, Yamabe, AlmostYamabe, KYamabe, HAlmost, GradientConformal };

const char* to_string(Flavor f);
/// Accepts the snake_case names used in configs; throws Error(Config).
Flavor parse_flavor(const std::string& name);

struct Tolerances {
  double soliton = 1e-7;
  double minimal = 1e-8;
  double s3 = 1e-8;
  double potential = 1e-9;
  double ensays = 1e-7;
  double f1 = 1e-6;
  double concurrent = 1e-10;
  double minimal_phi1 = 1e-8;
};

struct RunOptions {
  Tolerances tol;
  int threads = 1;
};

/// Regular grid over the boxes, row-major with u1 varying fastest, keeping
/// only points accepted by `keep`.
std::vector<Vec> regular_grid(const std::vector<Interval>& domain,
                              const std::function<bool(const Vec&)>& keep = {});

struct DroppedPoint {
  Vec u;
  std::string reason;
};

/// Evaluates fn at every point in parallel. Domain and Numerical failures drop
/// the point; more than 20% dropped raises Error(Numerical).
template <class R, class Fn>
std::vector<std::optional<R>> evaluate_points(const std::vector<Vec>& points, int threads, Fn&& fn,
                                              std::vector<DroppedPoint>& dropped) {
  if (points.empty()) throw Error(ErrorKind::Config, "empty sample plan");
  std::vector<std::optional<R>> out(points.size());
  std::vector<std::string> reasons(points.size());
  parallel_for(points.size(), threads, [&](std::size_t i) {
    try {
      out[i] = fn(points[i]);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::Domain && e.kind() != ErrorKind::Numerical) throw;
      reasons[i] = std::string(solitonscope::to_string(e.kind())) + ": " + e.what();
    }
  });
  std::size_t count = 0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (out[i]) continue;
    dropped.push_back({points[i], reasons[i]});
    ++count;
  }
  if (5 * count > points.size()) {
    throw Error(ErrorKind::Numerical, std::to_string(count) + " of " + std::to_string(points.size()) +
                                          " sample points failed; first: " + dropped.front().reason);
  }
  return out;
}

/// Geometry plus soliton data to check. For immersions the field is V^T and the
/// default potential is half the squared norm of F.
class SolitonProblem {
 public:
  static SolitonProblem on_immersion(Immersion s, Flavor flavor);
  static SolitonProblem intrinsic(MetricField m, Flavor flavor);

  SolitonProblem& with_potential(ScalarField f);
  SolitonProblem& with_field(VectorField v);
  SolitonProblem& with_h(ScalarField h);
  SolitonProblem& with_k(int k);
  SolitonProblem& with_hessian(HessianConvention c);

  int dim() const { return metric().dim(); }
  Flavor flavor() const { return flavor_; }
  int k() const { return k_; }
  HessianConvention hessian() const { return hessian_; }
  bool is_immersion() const { return immersion_.has_value(); }
  const Immersion& immersion() const;
  const MetricField& metric() const;
  const std::optional<ScalarField>& potential() const { return potential_; }
  const std::optional<VectorField>& field() const { return field_; }
  const std::optional<ScalarField>& h() const { return h_; }

  /// Throws Error(Config) when flavor inputs are missing or inconsistent.
  void validate() const;

 private:
  SolitonProblem() = default;
  std::optional<Immersion> immersion_;
  std::optional<MetricField> metric_;
  Flavor flavor_ = Flavor::Conformal;
  int k_ = 1;
  HessianConvention hessian_ = HessianConvention::LeviCivita;
  std::optional<ScalarField> potential_;
  std::optional<VectorField> field_;
  std::optional<ScalarField> h_;
};

struct FrameSummary {
  double lambda = 0.0;
  double alpha = 0.0;
  double kappa_min = 0.0;
  double kappa_max = 0.0;
};

struct PointResult {
  Vec u;
  double phi = 0.0;
  double residual = 0.0;
  std::optional<double> rho_local;  // ρ(p) implied by the trace equation
  std::optional<FrameSummary> frame;
};

struct SolitonReport {
  Flavor flavor = Flavor::Conformal;
  int k = 0;
  std::vector<PointResult> points;
  std::vector<DroppedPoint> dropped;
  std::optional<double> rho;  // fitted constant
  double sup_residual = 0.0;
  double tolerance = 0.0;
  bool soliton = false;
};

/// Conformal check φg = T regardless of the problem's flavor.
SolitonReport check_conformal(const SolitonProblem& prob, const std::vector<Vec>& points,
                              const RunOptions& opt = {});

/// Check under the problem's own flavor.
SolitonReport check_flavored(const SolitonProblem& prob, const std::vector<Vec>& points,
                             const RunOptions& opt = {});

struct IdentityReport {
  std::string id;
  bool applicable = true;
  bool universal = false;  // must hold whenever applicable
  std::string note;
  std::vector<Vec> points;
  std::vector<double> defect;
  std::vector<DroppedPoint> dropped;
  std::map<std::string, double> extras;
  double sup_defect = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

IdentityReport check_concurrent(const MetricField& m, const VectorField& v,
                                const std::vector<Vec>& points, const RunOptions& opt = {});

/// Throws Error(NotApplicable) unless (m, f) is a conformal gradient soliton on the points.
IdentityReport identity_f1(const MetricField& m, const ScalarField& f,
                           const std::vector<Vec>& points, const RunOptions& opt = {});

IdentityReport identity_ensays(const Immersion& s, const std::vector<Vec>& points,
                               const RunOptions& opt = {});

IdentityReport identity_s3(const Immersion& s, const std::vector<Vec>& points,
                           const RunOptions& opt = {});

IdentityReport identity_potential(const Immersion& s, const std::vector<Vec>& points,
                                  const RunOptions& opt = {});

/// Throws Error(NotApplicable) unless |α| ≤ tol.minimal (1 + max|κ|) at every point.
IdentityReport check_minimal_phi1(const Immersion& s, const std::vector<Vec>& points,
                                  const RunOptions& opt = {});

/// Every identity that applies to the problem; inapplicable ones are listed
/// with applicable = false and the reason in `note`.
std::vector<IdentityReport> all_identities(const SolitonProblem& prob, const std::vector<Vec>& points,
                                           const RunOptions& opt = {});

/// Pointwise pieces of the f1 defect, exposed for testing.
struct F1Terms {
  double phi = 0.0;
  double laplacian_phi = 0.0;
  double scalar = 0.0;
  double grad_r_dot_grad_f = 0.0;
  double defect = 0.0;
};
F1Terms f1_terms_at(const MetricField& m, const ScalarField& f, std::span<const double> p);

}  // namespace solitonscope::soliton

#endif  // SOLITONSCOPE_SOLITON_HPP
