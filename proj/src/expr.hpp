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

#ifndef SOLITONSCOPE_EXPR_HPP
#define SOLITONSCOPE_EXPR_HPP

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace solitonscope::expr {

enum class Op { Number, Variable, Neg, Add, Sub, Mul, Div, Pow, Call };

enum class Func { Sin, Cos, Tan, Sinh, Cosh, Tanh, Exp, Log, Sqrt, Abs, Atan };

std::optional<Func> function_from_name(std::string_view name);
const char* function_name(Func f);

struct Node;
using NodePtr = std::shared_ptr<const Node>;

struct Node {
  Op op = Op::Number;
  double value = 0.0;  // Number
  std::string name;    // Variable
  Func func = Func::Sin;
  NodePtr lhs;  // operand of Neg/Call, left of binary ops
  NodePtr rhs;
};

/// Immutable expression tree. Copies share nodes.
class Expr {
 public:
  Expr();  // the literal 0
  explicit Expr(NodePtr root);

  static Expr number(double v);
  static Expr variable(std::string name);
  static Expr negate(const Expr& a);
  static Expr binary(Op op, const Expr& a, const Expr& b);
  static Expr call(Func f, const Expr& a);

  const Node& node() const { return *root_; }
  const NodePtr& ptr() const { return root_; }
  Op op() const { return root_->op; }

  bool is_number() const { return root_->op == Op::Number; }
  bool is_number(double v) const { return is_number() && root_->value == v; }

  /// Text in the expression grammar; parsing it reproduces this tree.
  std::string str() const;

 private:
  NodePtr root_;
};

/// Parses the expression grammar. Throws SyntaxError carrying a byte offset.
Expr parse(std::string_view text);

/// Variable names referenced by `e`, sorted lexicographically, no duplicates.
std::vector<std::string> free_vars(const Expr& e);

bool structurally_equal(const Expr& a, const Expr& b);

/// Replaces bound variables by number literals.
Expr substitute(const Expr& e, const std::map<std::string, double>& values);

/// Does `e` reference any of `names`?
bool depends_on(const Expr& e, const std::vector<std::string>& names);

// Folding builders: collapse literal arithmetic and additive/multiplicative
// identities. Used for generated expressions; the parser never folds.
Expr operator+(const Expr& a, const Expr& b);
Expr operator-(const Expr& a, const Expr& b);
Expr operator*(const Expr& a, const Expr& b);
Expr operator/(const Expr& a, const Expr& b);
Expr operator-(const Expr& a);
Expr pow(const Expr& a, const Expr& b);
Expr apply(Func f, const Expr& a);

/// Symbolic partial derivative with respect to `var`.
Expr differentiate(const Expr& e, const std::string& var);

}  // namespace solitonscope::expr

#endif  // SOLITONSCOPE_EXPR_HPP
