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

#include "expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <set>

#include "error.hpp"

namespace solitonscope::expr {

namespace {

constexpr struct {
  const char* name;
  Func func;
} kFunctions[] = {
    {"sin", Func::Sin},   {"cos", Func::Cos},   {"tan", Func::Tan},
    {"sinh", Func::Sinh}, {"cosh", Func::Cosh}, {"tanh", Func::Tanh},
    {"exp", Func::Exp},   {"log", Func::Log},   {"sqrt", Func::Sqrt},
    {"abs", Func::Abs},   {"atan", Func::Atan},
};

NodePtr make(Node n) { return std::make_shared<const Node>(std::move(n)); }

// Binding strength used by the printer. Atoms bind tightest.
int precedence(const Node& n) {
  switch (n.op) {
    case Op::Add:
    case Op::Sub:
      return 1;
    case Op::Mul:
    case Op::Div:
      return 2;
    case Op::Neg:
      return 3;
    case Op::Pow:
      return 4;
    case Op::Number:
      return n.value < 0 || std::signbit(n.value) ? 5 : 6;
    default:
      return 6;
  }
}

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  std::string s = buf;
  if (v < 0 || std::signbit(v)) return "(" + s + ")";
  return s;
}

void print(const Node& n, std::string& out);

void print_with_parens(const Node& n, bool parens, std::string& out) {
  if (parens) out += '(';
  print(n, out);
  if (parens) out += ')';
}

void print(const Node& n, std::string& out) {
  switch (n.op) {
    case Op::Number:
      out += format_number(n.value);
      return;
    case Op::Variable:
      out += n.name;
      return;
    case Op::Call:
      out += function_name(n.func);
      out += '(';
      print(*n.lhs, out);
      out += ')';
      return;
    case Op::Neg:
      out += '-';
      print_with_parens(*n.lhs, precedence(*n.lhs) < 3, out);
      return;
    case Op::Pow:
      // base must be an atom, exponent a unary
      print_with_parens(*n.lhs, precedence(*n.lhs) < 5, out);
      out += '^';
      print_with_parens(*n.rhs, precedence(*n.rhs) < 3, out);
      return;
    default: {
      const int p = precedence(n);
      const char sym = n.op == Op::Add   ? '+'
                       : n.op == Op::Sub ? '-'
                       : n.op == Op::Mul ? '*'
                                         : '/';
      print_with_parens(*n.lhs, precedence(*n.lhs) < p, out);
      out += sym;
      print_with_parens(*n.rhs, precedence(*n.rhs) <= p, out);
      return;
    }
  }
}

// ---------------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------------

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Expr run() {
    skip_space();
    if (pos_ == text_.size()) throw SyntaxError("empty expression", pos_);
    Expr e = parse_sum();
    skip_space();
    if (pos_ != text_.size()) {
      throw SyntaxError(std::string("unexpected '") + text_[pos_] + "'", pos_);
    }
    return e;
  }

 private:
  void skip_space() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Expr parse_sum() {
    Expr lhs = parse_product();
    for (;;) {
      if (accept('+')) {
        lhs = Expr::binary(Op::Add, lhs, parse_product());
      } else if (accept('-')) {
        lhs = Expr::binary(Op::Sub, lhs, parse_product());
      } else {
        return lhs;
      }
    }
  }

  Expr parse_product() {
    Expr lhs = parse_unary();
    for (;;) {
      if (accept('*')) {
        lhs = Expr::binary(Op::Mul, lhs, parse_unary());
      } else if (accept('/')) {
        lhs = Expr::binary(Op::Div, lhs, parse_unary());
      } else {
        return lhs;
      }
    }
  }

  // unary := "-" unary | power
  Expr parse_unary() {
    if (accept('-')) return Expr::negate(parse_unary());
    return parse_power();
  }

  // power := atom ("^" unary)?   -- right associative through unary
  Expr parse_power() {
    Expr base = parse_atom();
    if (accept('^')) return Expr::binary(Op::Pow, base, parse_unary());
    return base;
  }

  Expr parse_atom() {
    skip_space();
    if (pos_ == text_.size()) throw SyntaxError("unexpected end of input", pos_);
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Expr inner = parse_sum();
      if (!accept(')')) throw SyntaxError("expected ')'", pos_);
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
              text_[pos_] == '_')) {
        ++pos_;
      }
      std::string ident(text_.substr(start, pos_ - start));
      if (accept('(')) {
        auto f = function_from_name(ident);
        if (!f) throw SyntaxError("unknown function '" + ident + "'", start);
        Expr arg = parse_sum();
        if (!accept(')')) throw SyntaxError("expected ')'", pos_);
        return Expr::call(*f, arg);
      }
      return Expr::variable(std::move(ident));
    }
    throw SyntaxError(std::string("unexpected '") + c + "'", pos_);
  }

  Expr parse_number() {
    const std::size_t start = pos_;
    auto digits = [&] {
      std::size_t n = 0;
      while (pos_ < text_.size() &&
             std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        ++pos_;
        ++n;
      }
      return n;
    };
    std::size_t mantissa = digits();
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      mantissa += digits();
    }
    if (mantissa == 0) throw SyntaxError("malformed number", start);
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      ++pos_;
      if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) ++pos_;
      if (digits() == 0) throw SyntaxError("malformed exponent", start);
    }
    const std::string lexeme(text_.substr(start, pos_ - start));
    return Expr::number(std::strtod(lexeme.c_str(), nullptr));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

void collect_vars(const Node& n, std::set<std::string>& out) {
  if (n.op == Op::Variable) out.insert(n.name);
  if (n.lhs) collect_vars(*n.lhs, out);
  if (n.rhs) collect_vars(*n.rhs, out);
}

bool equal_nodes(const Node& a, const Node& b) {
  if (a.op != b.op) return false;
  switch (a.op) {
    case Op::Number:
      return a.value == b.value;
    case Op::Variable:
      return a.name == b.name;
    case Op::Call:
      return a.func == b.func && equal_nodes(*a.lhs, *b.lhs);
    case Op::Neg:
      return equal_nodes(*a.lhs, *b.lhs);
    default:
      return equal_nodes(*a.lhs, *b.lhs) && equal_nodes(*a.rhs, *b.rhs);
  }
}

}  // namespace

std::optional<Func> function_from_name(std::string_view name) {
  for (const auto& entry : kFunctions) {
    if (name == entry.name) return entry.func;
  }
  return std::nullopt;
}

const char* function_name(Func f) {
  for (const auto& entry : kFunctions) {
    if (entry.func == f) return entry.name;
  }
  return "?";
}

Expr::Expr() : root_(make(Node{})) {}

Expr::Expr(NodePtr root) : root_(std::move(root)) {}

Expr Expr::number(double v) {
  Node n;
  n.op = Op::Number;
  n.value = v;
  return Expr(make(std::move(n)));
}

Expr Expr::variable(std::string name) {
  Node n;
  n.op = Op::Variable;
  n.name = std::move(name);
  return Expr(make(std::move(n)));
}

Expr Expr::negate(const Expr& a) {
  Node n;
  n.op = Op::Neg;
  n.lhs = a.ptr();
  return Expr(make(std::move(n)));
}

Expr Expr::binary(Op op, const Expr& a, const Expr& b) {
  Node n;
  n.op = op;
  n.lhs = a.ptr();
  n.rhs = b.ptr();
  return Expr(make(std::move(n)));
}

Expr Expr::call(Func f, const Expr& a) {
  Node n;
  n.op = Op::Call;
  n.func = f;
  n.lhs = a.ptr();
  return Expr(make(std::move(n)));
}

std::string Expr::str() const {
  std::string out;
  print(*root_, out);
  return out;
}

Expr parse(std::string_view text) { return Parser(text).run(); }

std::vector<std::string> free_vars(const Expr& e) {
  std::set<std::string> names;
  collect_vars(e.node(), names);
  return {names.begin(), names.end()};
}

bool structurally_equal(const Expr& a, const Expr& b) {
  return equal_nodes(a.node(), b.node());
}

Expr substitute(const Expr& e, const std::map<std::string, double>& values) {
  const Node& n = e.node();
  switch (n.op) {
    case Op::Number:
      return e;
    case Op::Variable: {
      auto it = values.find(n.name);
      return it == values.end() ? e : Expr::number(it->second);
    }
    case Op::Neg:
      return Expr::negate(substitute(Expr(n.lhs), values));
    case Op::Call:
      return Expr::call(n.func, substitute(Expr(n.lhs), values));
    default:
      return Expr::binary(n.op, substitute(Expr(n.lhs), values),
                          substitute(Expr(n.rhs), values));
  }
}

bool depends_on(const Expr& e, const std::vector<std::string>& names) {
  for (const auto& v : free_vars(e)) {
    for (const auto& name : names) {
      if (v == name) return true;
    }
  }
  return false;
}

Expr operator+(const Expr& a, const Expr& b) {
  if (a.is_number() && b.is_number()) return Expr::number(a.node().value + b.node().value);
  if (a.is_number(0.0)) return b;
  if (b.is_number(0.0)) return a;
  return Expr::binary(Op::Add, a, b);
}

Expr operator-(const Expr& a, const Expr& b) {
  if (a.is_number() && b.is_number()) return Expr::number(a.node().value - b.node().value);
  if (b.is_number(0.0)) return a;
  if (a.is_number(0.0)) return -b;
  return Expr::binary(Op::Sub, a, b);
}

Expr operator*(const Expr& a, const Expr& b) {
  if (a.is_number() && b.is_number()) return Expr::number(a.node().value * b.node().value);
  if (a.is_number(0.0) || b.is_number(0.0)) return Expr::number(0.0);
  if (a.is_number(1.0)) return b;
  if (b.is_number(1.0)) return a;
  return Expr::binary(Op::Mul, a, b);
}

Expr operator/(const Expr& a, const Expr& b) {
  if (b.is_number(1.0)) return a;
  if (a.is_number(0.0) && !b.is_number(0.0)) return Expr::number(0.0);
  return Expr::binary(Op::Div, a, b);
}

Expr operator-(const Expr& a) {
  if (a.is_number()) return Expr::number(-a.node().value);
  if (a.op() == Op::Neg) return Expr(a.node().lhs);
  return Expr::negate(a);
}

Expr pow(const Expr& a, const Expr& b) {
  if (b.is_number(1.0)) return a;
  if (b.is_number(0.0)) return Expr::number(1.0);
  return Expr::binary(Op::Pow, a, b);
}

Expr apply(Func f, const Expr& a) { return Expr::call(f, a); }

Expr differentiate(const Expr& e, const std::string& var) {
  const Node& n = e.node();
  const Expr one = Expr::number(1.0);
  switch (n.op) {
    case Op::Number:
      return Expr::number(0.0);
    case Op::Variable:
      return Expr::number(n.name == var ? 1.0 : 0.0);
    case Op::Neg:
      return -differentiate(Expr(n.lhs), var);
    case Op::Add:
      return differentiate(Expr(n.lhs), var) + differentiate(Expr(n.rhs), var);
    case Op::Sub:
      return differentiate(Expr(n.lhs), var) - differentiate(Expr(n.rhs), var);
    case Op::Mul: {
      const Expr a(n.lhs), b(n.rhs);
      return differentiate(a, var) * b + a * differentiate(b, var);
    }
    case Op::Div: {
      const Expr a(n.lhs), b(n.rhs);
      return (differentiate(a, var) * b - a * differentiate(b, var)) / pow(b, Expr::number(2.0));
    }
    case Op::Pow: {
      const Expr a(n.lhs), b(n.rhs);
      const Expr da = differentiate(a, var);
      if (!depends_on(b, {var})) {
        return b * pow(a, b - one) * da;
      }
      const Expr db = differentiate(b, var);
      return e * (db * apply(Func::Log, a) + b * da / a);
    }
    case Op::Call: {
      const Expr a(n.lhs);
      const Expr da = differentiate(a, var);
      if (da.is_number(0.0)) return da;
      Expr outer;
      switch (n.func) {
        case Func::Sin: outer = apply(Func::Cos, a); break;
        case Func::Cos: outer = -apply(Func::Sin, a); break;
        case Func::Tan: outer = one + pow(e, Expr::number(2.0)); break;
        case Func::Sinh: outer = apply(Func::Cosh, a); break;
        case Func::Cosh: outer = apply(Func::Sinh, a); break;
        case Func::Tanh: outer = one - pow(e, Expr::number(2.0)); break;
        case Func::Exp: outer = e; break;
        case Func::Log: outer = one / a; break;
        case Func::Sqrt: outer = one / (Expr::number(2.0) * e); break;
        case Func::Abs: outer = a / e; break;
        case Func::Atan: outer = one / (one + pow(a, Expr::number(2.0))); break;
      }
      return outer * da;
    }
  }
  return Expr::number(0.0);
}

}  // namespace solitonscope::expr
