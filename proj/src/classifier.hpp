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

#ifndef SOLITONSCOPE_CLASSIFIER_HPP
#define SOLITONSCOPE_CLASSIFIER_HPP

#include <string>
#include <vector>

#include "soliton.hpp"

namespace solitonscope::classifier {

using soliton::DroppedPoint;

enum class Tag { Hyperplane, Cone, Hypersphere, NotSoliton, Undetermined };

const char* to_string(Tag t);

struct ClassifyConfig {
  double tol_soliton = 1e-7;
  double tol_lambda = 1e-7;
  double tol_alpha = 1e-8;
  double tol_umbilic = 1e-7;
  double tol_consistency = 1e-6;
  int threads = 1;
};

/// Per-sample quantities the decision uses.
struct Sample {
  Vec u;
  Vec position;
  Vec normal;
  double lambda = 0.0;
  double alpha = 0.0;
  double kappa_min = 0.0;
  double kappa_max = 0.0;
  double residual = 0.0;  // conformal residual
};

struct Diagnostics {
  std::size_t samples = 0;
  std::size_t dropped = 0;
  double scale = 0.0;  // max |F|
  double soliton_residual = 0.0;
  double max_abs_lambda = 0.0;
  double min_abs_lambda = 0.0;
  std::size_t small_lambda = 0;
  double umbilic_spread = 0.0;
  double alpha_mean = 0.0;
  double alpha_stddev = 0.0;
  double center_stddev = 0.0;
  double normal_stddev = 0.0;
  double offset_stddev = 0.0;
  std::vector<std::string> notes;
};

struct Verdict {
  Tag tag = Tag::Undetermined;
  Vec normal;      // Hyperplane
  double offset = 0.0;
  Vec center;      // Hypersphere
  double radius = 0.0;
  std::string reason;
  Diagnostics diag;
  std::vector<Sample> samples;
  std::vector<DroppedPoint> dropped;
};

/// Umbilicity spread (κ_max − κ_min) / (1 + |α|).
double umbilic_spread(const Sample& s);

Sample sample_at(const soliton::Immersion& s, const Vec& u);

/// Decision procedure on precomputed samples.
Verdict decide(const std::vector<Sample>& samples, const ClassifyConfig& cfg);

Verdict classify(const soliton::Immersion& s, const std::vector<Vec>& points, const ClassifyConfig& cfg = {});

struct UmbilicityStats {
  std::vector<Vec> points;
  std::vector<double> spread;
  double max_spread = 0.0;
  std::vector<DroppedPoint> dropped;
};

UmbilicityStats umbilicity_stats(const soliton::Immersion& s, const std::vector<Vec>& points, int threads = 1);

}  // namespace solitonscope::classifier

#endif  // SOLITONSCOPE_CLASSIFIER_HPP
