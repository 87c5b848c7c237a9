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

#ifndef SOLITONSCOPE_ERROR_HPP
#define SOLITONSCOPE_ERROR_HPP

#include <stdexcept>
#include <string>

namespace solitonscope {

enum class ErrorKind {
  Syntax,         // expression text does not match the grammar
  Unbound,        // variable referenced but not bound
  Domain,         // log/sqrt of non-positive, division by zero, abs jet at 0
  Numerical,      // singular or indefinite metric, rank-deficient immersion
  Config,         // schema violation, bad parameters
  NotApplicable,  // identity precondition not met
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& what, std::size_t offset)
      : Error(ErrorKind::Syntax, what + " at offset " + std::to_string(offset)),
        offset_(offset) {}

  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

}  // namespace solitonscope

#endif  // SOLITONSCOPE_ERROR_HPP
