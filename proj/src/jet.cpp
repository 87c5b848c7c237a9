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

#include "jet.hpp"

#include <cmath>

#include "error.hpp"

namespace solitonscope::expr {

Jet::Jet(std::vector<std::string> vars, Series series)
    : vars_(std::move(vars)), series_(std::move(series)) {}

double Jet::partial(std::span<const int> multi_index) const {
  return series_.partial(multi_index);
}

std::vector<std::pair<std::vector<int>, double>> Jet::entries() const {
  std::vector<std::pair<std::vector<int>, double>> out;
  const auto& layout = series_.layout();
  for (std::size_t i = 0; i < layout.size(); ++i) {
    auto ex = layout.exponents(i);
    out.emplace_back(std::vector<int>(ex.begin(), ex.end()),
                     series_.coeff(i) * layout.factorial(i));
  }
  return out;
}

CompiledExpr::CompiledExpr(const Expr& e, std::vector<std::string> vars,
                           const std::map<std::string, double>& constants)
    : source_(e), vars_(std::move(vars)) {
  emit(e.ptr(), constants);
}

void CompiledExpr::emit(const NodePtr& n, const std::map<std::string, double>& constants) {
  Instr ins;
  ins.op = n->op;
  ins.node = n;
  switch (n->op) {
    case Op::Number:
      ins.value = n->value;
      break;
    case Op::Variable: {
      for (std::size_t i = 0; i < vars_.size(); ++i) {
        if (vars_[i] == n->name) ins.slot = static_cast<int>(i);
      }
      if (ins.slot < 0) {
        auto it = constants.find(n->name);
        if (it == constants.end()) {
          throw Error(ErrorKind::Unbound, "unbound variable '" + n->name +
                                              "' in '" + source_.str() + "'");
        }
        ins.op = Op::Number;
        ins.value = it->second;
      }
      break;
    }
    case Op::Neg:
    case Op::Call:
      emit(n->lhs, constants);
      ins.func = n->func;
      break;
    case Op::Pow:
      emit(n->lhs, constants);
      if (!depends_on(Expr(n->rhs), vars_)) {
        ins.const_exponent = true;
        std::map<std::string, double> bound = constants;
        ins.value = evaluate(Expr(n->rhs), bound);
      } else {
        emit(n->rhs, constants);
      }
      break;
    default:
      emit(n->lhs, constants);
      emit(n->rhs, constants);
      break;
  }
  tape_.push_back(std::move(ins));
}

Series CompiledExpr::eval(const MonomialLayout& layout, std::span<const double> point) const {
  if (static_cast<std::size_t>(layout.nvars()) != vars_.size() || point.size() != vars_.size()) {
    throw std::invalid_argument("point dimension does not match compiled variables");
  }
  std::vector<Series> stack;
  stack.reserve(tape_.size());
  for (const Instr& ins : tape_) {
    try {
      switch (ins.op) {
        case Op::Number:
          stack.emplace_back(layout, ins.value);
          break;
        case Op::Variable:
          stack.push_back(Series::variable(layout, ins.slot, point[ins.slot]));
          break;
        case Op::Neg:
          stack.back() = -std::move(stack.back());
          break;
        case Op::Call:
          stack.back() = apply(ins.func, stack.back());
          break;
        case Op::Pow:
          if (ins.const_exponent) {
            stack.back() = pow(stack.back(), ins.value);
          } else {
            Series exponent = std::move(stack.back());
            stack.pop_back();
            Series& base = stack.back();
            if (!(base.value() > 0.0)) {
              throw Error(ErrorKind::Domain, "variable exponent requires a positive base");
            }
            base = apply(Func::Exp, exponent * apply(Func::Log, base));
          }
          break;
        default: {
          Series rhs = std::move(stack.back());
          stack.pop_back();
          Series& lhs = stack.back();
          switch (ins.op) {
            case Op::Add: lhs += rhs; break;
            case Op::Sub: lhs -= rhs; break;
            case Op::Mul: lhs = lhs * rhs; break;
            default: lhs = lhs / rhs; break;
          }
        }
      }
    } catch (const Error& err) {
      if (err.kind() != ErrorKind::Domain) throw;
      throw Error(ErrorKind::Domain,
                  std::string(err.what()) + " in '" + Expr(ins.node).str() + "'");
    }
  }
  return std::move(stack.back());
}

double CompiledExpr::value(std::span<const double> point) const {
  return eval(MonomialLayout::get(static_cast<int>(vars_.size()), 0), point).value();
}

Jet eval_jet(const Expr& e, const EvalContext& ctx) {
  if (ctx.jet_order < 0 || ctx.jet_order > ctx.max_order) {
    throw Error(ErrorKind::Config, "jet order " + std::to_string(ctx.jet_order) +
                                       " outside [0, " + std::to_string(ctx.max_order) + "]");
  }
  std::vector<std::string> names;
  std::vector<double> point;
  for (const auto& [name, value] : ctx.variables) {
    names.push_back(name);
    point.push_back(value);
  }
  CompiledExpr compiled(e, names, ctx.constants);
  const auto& layout = MonomialLayout::get(static_cast<int>(names.size()), ctx.jet_order);
  return Jet(std::move(names), compiled.eval(layout, point));
}

double evaluate(const Expr& e, const std::map<std::string, double>& bindings) {
  const Node& n = e.node();
  auto sub = [&](const NodePtr& p) { return evaluate(Expr(p), bindings); };
  auto fail = [&](const char* what) {
    return Error(ErrorKind::Domain, std::string(what) + " in '" + e.str() + "'");
  };
  switch (n.op) {
    case Op::Number:
      return n.value;
    case Op::Variable: {
      auto it = bindings.find(n.name);
      if (it == bindings.end()) {
        throw Error(ErrorKind::Unbound, "unbound variable '" + n.name + "'");
      }
      return it->second;
    }
    case Op::Neg:
      return -sub(n.lhs);
    case Op::Add:
      return sub(n.lhs) + sub(n.rhs);
    case Op::Sub:
      return sub(n.lhs) - sub(n.rhs);
    case Op::Mul:
      return sub(n.lhs) * sub(n.rhs);
    case Op::Div: {
      const double d = sub(n.rhs);
      if (d == 0.0) throw fail("division by zero");
      return sub(n.lhs) / d;
    }
    case Op::Pow: {
      const double b = sub(n.lhs), x = sub(n.rhs);
      if (b < 0.0 && std::nearbyint(x) != x) throw fail("non-integer power of negative base");
      if (b == 0.0 && x < 0.0) throw fail("division by zero");
      return std::pow(b, x);
    }
    case Op::Call: {
      const double a = sub(n.lhs);
      switch (n.func) {
        case Func::Sin: return std::sin(a);
        case Func::Cos: return std::cos(a);
        case Func::Tan: return std::tan(a);
        case Func::Sinh: return std::sinh(a);
        case Func::Cosh: return std::cosh(a);
        case Func::Tanh: return std::tanh(a);
        case Func::Exp: return std::exp(a);
        case Func::Log:
          if (!(a > 0.0)) throw fail("log of non-positive value");
          return std::log(a);
        case Func::Sqrt:
          if (a < 0.0) throw fail("sqrt of negative value");
          return std::sqrt(a);
        case Func::Abs: return std::fabs(a);
        case Func::Atan: return std::atan(a);
      }
    }
  }
  return 0.0;
}

}  // namespace solitonscope::expr
