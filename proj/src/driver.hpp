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

#ifndef SOLITONSCOPE_DRIVER_HPP
#define SOLITONSCOPE_DRIVER_HPP

#include <optional>
#include <string>

#include "config.hpp"

namespace solitonscope::driver {

enum class Command { Verify, Identities, Classify, Sweep, Gallery };

/// Throws Error(Config) for unknown names.
Command parse_command(const std::string& name);
const char* to_string(Command c);

struct Options {
  std::optional<std::string> format;  // overrides the config's output.format
  int jet_order = expr::kDefaultMaxJetOrder;
  int threads = 1;
  std::optional<std::string> expect;  // soliton | not-soliton | hyperplane | cone | hypersphere
};

struct Outcome {
  int exit_code = 0;
  std::string format;
  std::string report;
  std::string summary;  // one line
  double elapsed_ms = 0.0;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitUnmet = 1;
inline constexpr int kExitInput = 2;
inline constexpr int kExitNumerical = 3;

int exit_code_for(ErrorKind kind);

/// Runs a command. `cfg` may be empty only for the gallery listing. Errors
/// propagate as Error; callers map them with exit_code_for.
Outcome run(Command command, const std::optional<config::RunConfig>& cfg, const Options& opt);

}  // namespace solitonscope::driver

#endif  // SOLITONSCOPE_DRIVER_HPP
