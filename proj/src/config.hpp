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

#ifndef SOLITONSCOPE_CONFIG_HPP
#define SOLITONSCOPE_CONFIG_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "classifier.hpp"
#include "gallery.hpp"
#include "json.hpp"
#include "soliton.hpp"

namespace solitonscope::config {

using Json = nlohmann::ordered_json;

struct SweepAxis {
  std::string name;
  double min = 0.0;
  double max = 0.0;
  int steps = 1;
};

struct Sampling {
  std::string kind = "grid";  // grid | random
  int count = 0;              // random only
};

struct Output {
  std::string format = "text";  // text | json | csv
  std::optional<std::string> path;
};

struct RunConfig {
  std::string mode;  // hypersurface | intrinsic
  int dimension = 0;
  std::vector<std::string> immersion;
  std::vector<std::string> metric;  // lower triangle, row by row
  std::optional<std::string> potential;
  std::vector<std::string> vector_field;
  std::optional<std::string> h_function;
  std::string flavor = "conformal";
  int k = 1;
  tensor::HessianConvention hessian = tensor::HessianConvention::LeviCivita;
  std::vector<hypersurface::Interval> domain;
  bool domain_overridden = false;  // gallery configs with an explicit domain
  std::optional<std::string> exclude;
  std::map<std::string, double> parameters;
  soliton::Tolerances tol;
  classifier::ClassifyConfig classify;  // tolerance fields only
  std::uint64_t seed = 0;
  Sampling sampling;
  Output output;
  std::vector<SweepAxis> sweep;
  std::optional<gallery::Reference> gallery;
  std::optional<gallery::Expected> expected;  // gallery entries only
};

inline constexpr std::size_t kMaxSamples = 1000000;
inline constexpr std::size_t kMaxSweepCells = 10000;

/// Parses and validates a JSON document; Error(Config) names the offending field.
RunConfig parse_config(const std::string& text);

/// Parses either JSON text or a gallery reference such as "gallery:sphere(r=2)".
RunConfig load_config(const std::string& text_or_reference);

/// Config equivalent to a gallery instance.
RunConfig from_instance(const gallery::Instance& in);

/// Normalized config with defaults filled; `output` is left out.
Json canonical(const RunConfig& cfg);

/// FNV-1a 64 of the canonical serialization, as 16 hex digits.
std::string config_hash(const RunConfig& cfg);

/// Same config with one parameter changed; gallery configs are re-instantiated.
RunConfig with_parameter(const RunConfig& cfg, const std::string& name, double value);

/// Runtime objects built from a config.
struct Built {
  std::optional<soliton::Immersion> immersion;
  std::optional<soliton::SolitonProblem> problem;
  std::vector<Vec> points;
  std::size_t excluded = 0;  // grid points rejected by the domain or exclusion predicate
};

Built build(const RunConfig& cfg, int max_jet_order = expr::kDefaultMaxJetOrder);

/// Deterministic JSON text: fixed key order, floats as %.16e, two-space indent.
std::string serialize(const Json& j);

}  // namespace solitonscope::config

#endif  // SOLITONSCOPE_CONFIG_HPP
