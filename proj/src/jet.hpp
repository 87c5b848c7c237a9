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

#ifndef SOLITONSCOPE_JET_HPP
#define SOLITONSCOPE_JET_HPP

#include <initializer_list>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "expr.hpp"
#include "series.hpp"

namespace solitonscope::expr {

inline constexpr int kDefaultMaxJetOrder = 4;

struct EvalContext {
  /// Differentiation variables, in order, with their values.
  std::vector<std::pair<std::string, double>> variables;
  /// Bound names that are held fixed.
  std::map<std::string, double> constants;
  int jet_order = 2;
  int max_order = kDefaultMaxJetOrder;
};

/// Partial derivatives of an expression at a point, up to total order K.
class Jet {
 public:
  Jet(std::vector<std::string> vars, Series series);

  int order() const { return series_.order(); }
  const std::vector<std::string>& vars() const { return vars_; }
  double value() const { return series_.value(); }

  /// Raw partial derivative d^a f at the point (not divided by a!).
  double partial(std::span<const int> multi_index) const;
  double partial(std::initializer_list<int> multi_index) const {
    return partial(std::span<const int>(multi_index.begin(), multi_index.size()));
  }

  /// All (multi-index, partial) pairs, ordered by total degree.
  std::vector<std::pair<std::vector<int>, double>> entries() const;

  const Series& series() const { return series_; }

 private:
  std::vector<std::string> vars_;
  Series series_;
};

/// An expression resolved against an ordered variable list; evaluation walks
/// a flat post-order tape.
class CompiledExpr {
 public:
  CompiledExpr() = default;
  CompiledExpr(const Expr& e, std::vector<std::string> vars,
               const std::map<std::string, double>& constants = {});

  const Expr& source() const { return source_; }
  std::size_t arity() const { return vars_.size(); }

  /// Series of `layout` (nvars == arity) around `point`.
  Series eval(const MonomialLayout& layout, std::span<const double> point) const;
  double value(std::span<const double> point) const;

 private:
  struct Instr {
    Op op = Op::Number;
    Func func = Func::Sin;
    int slot = -1;
    double value = 0.0;    // literal, or constant exponent of Pow
    bool const_exponent = false;
    NodePtr node;
  };

  void emit(const NodePtr& n, const std::map<std::string, double>& constants);

  Expr source_;
  std::vector<std::string> vars_;
  std::vector<Instr> tape_;
};

Jet eval_jet(const Expr& e, const EvalContext& ctx);

/// Plain recursive double evaluation. Throws Error(Unbound) / Error(Domain).
double evaluate(const Expr& e, const std::map<std::string, double>& bindings);

}  // namespace solitonscope::expr

#endif  // SOLITONSCOPE_JET_HPP
