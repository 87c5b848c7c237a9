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

#ifndef SOLITONSCOPE_GALLERY_HPP
#define SOLITONSCOPE_GALLERY_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hypersurface.hpp"
#include "tensor.hpp"

namespace solitonscope::gallery {

enum class Kind { Immersion, Intrinsic };

const char* to_string(Kind k);

struct Param {
  std::string name;
  double default_value = 0.0;
  std::string constraint;  // human-readable
};

/// What an entry is expected to produce at its parameters.
struct Expected {
  std::string command;  // "classify" or "verify"
  std::string outcome;  // hyperplane | cone | hypersphere | soliton | not-soliton
  std::vector<std::string> identities;  // must be applicable and pass
  std::string basis;    // closed-form | cross-check | example
  std::string note;
};

struct Entry {
  std::string id;
  Kind kind;
  std::string summary;
  std::vector<Param> params;
  Expected expected;  // at default parameters
};

/// A fully bound problem, all expressions as text in u1..un.
struct Instance {
  std::string id;
  Kind kind = Kind::Immersion;
  int dimension = 2;
  std::map<std::string, double> params;
  std::vector<std::string> immersion;
  std::vector<std::string> metric;  // lower triangle, row by row
  std::optional<std::string> potential;
  std::vector<std::string> vector_field;
  std::optional<std::string> h_function;
  std::string flavor = "conformal";
  int k = 1;
  tensor::HessianConvention hessian = tensor::HessianConvention::LeviCivita;
  std::vector<hypersurface::Interval> domain;
  std::optional<std::string> exclude;
  Expected expected;
};

/// Registry in a fixed order.
const std::vector<Entry>& entries();

const Entry& find(const std::string& id);

/// Throws Error(Config) for unknown ids, unknown parameters or violated constraints.
Instance instantiate(const std::string& id, const std::map<std::string, double>& params = {});

struct Reference {
  std::string id;
  std::map<std::string, double> params;
};

/// Parses "sphere", "sphere(r=2, cx=1)" with an optional "gallery:" prefix.
Reference parse_reference(const std::string& text);

/// Compact numeric literal for embedding in expression text; negatives parenthesized.
std::string literal(double v);

}  // namespace solitonscope::gallery

#endif  // SOLITONSCOPE_GALLERY_HPP
