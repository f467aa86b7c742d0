// Copyright 2026 The rivetlite Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cctype>
#include <charconv>
#include <cmath>
#include <map>
#include <memory>
#include <numbers>
#include <set>
#include <string>
#include <string_view>
#include <system_error>

#include "rivetlite/error.hpp"

namespace rivetlite {

/// Parameter name to angle in radians.
using ParameterBinding = std::map<std::string, double>;

namespace detail {

struct ExprNode {
  enum class Op { Const, Symbol, Add, Mul, Neg };
  Op op = Op::Const;
  double value = 0.0;
  std::string name;
  std::shared_ptr<const ExprNode> lhs;
  std::shared_ptr<const ExprNode> rhs;
};

using NodePtr = std::shared_ptr<const ExprNode>;

inline std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

}  // namespace detail

/// A gate angle: either a plain number or a deferred arithmetic expression
/// over named symbols (sums, products, negation), evaluated at bind time.
/// Immutable; copies share the expression tree.
class Angle {
public:
  Angle() = default;
  Angle(double v) : value_(v) {}  // NOLINT(google-explicit-constructor)

  static Angle symbol(std::string name) {
    if (name.empty()) throw InputError("empty parameter name");
    auto node = std::make_shared<detail::ExprNode>();
    node->op = detail::ExprNode::Op::Symbol;
    node->name = std::move(name);
    return Angle(std::move(node));
  }

  [[nodiscard]] bool is_symbolic() const noexcept { return expr_ != nullptr; }

  /// Numeric value; throws if the angle still depends on symbols.
  [[nodiscard]] double value() const {
    if (expr_) throw InputError("angle '" + to_string() + "' is unbound");
    return value_;
  }

  /// Name of the symbol when the angle is exactly one bare symbol.
  [[nodiscard]] const std::string* as_symbol() const noexcept {
    if (expr_ && expr_->op == detail::ExprNode::Op::Symbol) return &expr_->name;
    return nullptr;
  }

  [[nodiscard]] double evaluate(const ParameterBinding& b) const {
    if (!expr_) return value_;
    return eval(*expr_, b);
  }

  /// Substitutes every symbol present in `b`, folding constants. Symbols
  /// absent from `b` are kept.
  [[nodiscard]] Angle substitute(const ParameterBinding& b) const {
    if (!expr_) return *this;
    return subst(expr_, b);
  }

  void collect_symbols(std::set<std::string>& out) const {
    if (expr_) collect(*expr_, out);
  }

  [[nodiscard]] std::string to_string() const {
    if (!expr_) return detail::format_double(value_);
    return print(*expr_, 0);
  }

  /// Parses `+ - * /`, parentheses, numbers, `pi` and identifiers.
  /// Division is only allowed by a constant.
  static Angle parse(std::string_view text);

  friend Angle operator+(const Angle& a, const Angle& b) {
    if (!a.expr_ && !b.expr_) return Angle(a.value_ + b.value_);
    if (!a.expr_ && a.value_ == 0.0) return b;
    if (!b.expr_ && b.value_ == 0.0) return a;
    return binary(detail::ExprNode::Op::Add, a, b);
  }
  friend Angle operator*(const Angle& a, const Angle& b) {
    if (!a.expr_ && !b.expr_) return Angle(a.value_ * b.value_);
    if (!a.expr_ && a.value_ == 1.0) return b;
    if (!b.expr_ && b.value_ == 1.0) return a;
    if ((!a.expr_ && a.value_ == 0.0) || (!b.expr_ && b.value_ == 0.0)) return Angle(0.0);
    return binary(detail::ExprNode::Op::Mul, a, b);
  }
  friend Angle operator-(const Angle& a) {
    if (!a.expr_) return Angle(-a.value_);
    if (a.expr_->op == detail::ExprNode::Op::Neg) return Angle(a.expr_->lhs);
    auto node = std::make_shared<detail::ExprNode>();
    node->op = detail::ExprNode::Op::Neg;
    node->lhs = a.expr_;
    return Angle(std::move(node));
  }
  friend Angle operator-(const Angle& a, const Angle& b) { return a + (-b); }

  /// Structural equality (numbers compare exactly).
  friend bool operator==(const Angle& a, const Angle& b) {
    if (!a.expr_ || !b.expr_) return !a.expr_ && !b.expr_ && a.value_ == b.value_;
    return same(*a.expr_, *b.expr_);
  }

private:
  using Op = detail::ExprNode::Op;

  explicit Angle(detail::NodePtr e) {
    if (e->op == Op::Const) {
      value_ = e->value;
    } else {
      expr_ = std::move(e);
    }
  }

  static detail::NodePtr as_node(const Angle& a) {
    if (a.expr_) return a.expr_;
    auto node = std::make_shared<detail::ExprNode>();
    node->value = a.value_;
    return node;
  }

  static Angle binary(Op op, const Angle& a, const Angle& b) {
    auto node = std::make_shared<detail::ExprNode>();
    node->op = op;
    node->lhs = as_node(a);
    node->rhs = as_node(b);
    return Angle(std::move(node));
  }

  static double eval(const detail::ExprNode& n, const ParameterBinding& b) {
    switch (n.op) {
      case Op::Const: return n.value;
      case Op::Symbol: {
        auto it = b.find(n.name);
        if (it == b.end()) throw InputError("missing value for parameter '" + n.name + "'");
        return it->second;
      }
      case Op::Add: return eval(*n.lhs, b) + eval(*n.rhs, b);
      case Op::Mul: return eval(*n.lhs, b) * eval(*n.rhs, b);
      case Op::Neg: return -eval(*n.lhs, b);
    }
    return 0.0;
  }

  static Angle subst(const detail::NodePtr& n, const ParameterBinding& b) {
    switch (n->op) {
      case Op::Const: return Angle(n->value);
      case Op::Symbol: {
        auto it = b.find(n->name);
        return it == b.end() ? Angle(n) : Angle(it->second);
      }
      case Op::Add: return subst(n->lhs, b) + subst(n->rhs, b);
      case Op::Mul: return subst(n->lhs, b) * subst(n->rhs, b);
      case Op::Neg: return -subst(n->lhs, b);
    }
    return Angle();
  }

  static void collect(const detail::ExprNode& n, std::set<std::string>& out) {
    if (n.op == Op::Symbol) out.insert(n.name);
    if (n.lhs) collect(*n.lhs, out);
    if (n.rhs) collect(*n.rhs, out);
  }

  static bool same(const detail::ExprNode& a, const detail::ExprNode& b) {
    if (&a == &b) return true;
    if (a.op != b.op) return false;
    switch (a.op) {
      case Op::Const: return a.value == b.value;
      case Op::Symbol: return a.name == b.name;
      case Op::Neg: return same(*a.lhs, *b.lhs);
      default: return same(*a.lhs, *b.lhs) && same(*a.rhs, *b.rhs);
    }
  }

  static int precedence(const detail::ExprNode& n) {
    switch (n.op) {
      case Op::Add: return 1;
      case Op::Mul: return 2;
      case Op::Neg: return 3;
      case Op::Const: return n.value < 0 ? 3 : 4;
      default: return 4;
    }
  }

  static std::string print(const detail::ExprNode& n, int min_prec) {
    std::string s;
    switch (n.op) {
      case Op::Const: s = detail::format_double(n.value); break;
      case Op::Symbol: s = n.name; break;
      case Op::Neg: s = "-" + print(*n.lhs, 3); break;
      case Op::Mul: s = print(*n.lhs, 2) + "*" + print(*n.rhs, 3); break;
      case Op::Add:
        if (n.rhs->op == Op::Neg) {
          s = print(*n.lhs, 1) + " - " + print(*n.rhs->lhs, 2);
        } else {
          s = print(*n.lhs, 1) + " + " + print(*n.rhs, 2);
        }
        break;
    }
    return precedence(n) < min_prec ? "(" + s + ")" : s;
  }

  double value_ = 0.0;
  detail::NodePtr expr_;
};

namespace detail {

class AngleParser {
public:
  explicit AngleParser(std::string_view text) : text_(text) {}

  Angle parse() {
    Angle a = parse_sum();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return a;
  }

private:
  Angle parse_sum() {
    Angle acc = parse_product();
    for (;;) {
      skip_ws();
      if (eat('+')) {
        acc = acc + parse_product();
      } else if (eat('-')) {
        acc = acc - parse_product();
      } else {
        return acc;
      }
    }
  }

  Angle parse_product() {
    Angle acc = parse_unary();
    for (;;) {
      skip_ws();
      if (eat('*')) {
        acc = acc * parse_unary();
      } else if (eat('/')) {
        Angle d = parse_unary();
        if (d.is_symbolic()) fail("division by a symbolic expression");
        if (d.value() == 0.0) fail("division by zero");
        acc = acc * Angle(1.0 / d.value());
      } else {
        return acc;
      }
    }
  }

  Angle parse_unary() {
    skip_ws();
    if (eat('-')) return -parse_unary();
    if (eat('+')) return parse_unary();
    return parse_atom();
  }

  Angle parse_atom() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of expression");
    const char c = text_[pos_];
    if (eat('(')) {
      Angle a = parse_sum();
      skip_ws();
      if (!eat(')')) fail("expected ')'");
      return a;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      double v = 0.0;
      auto [ptr, ec] = std::from_chars(text_.data() + pos_, text_.data() + text_.size(), v);
      if (ec != std::errc()) fail("bad number");
      pos_ = static_cast<std::size_t>(ptr - text_.data());
      return Angle(v);
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
        ++pos_;
      }
      std::string name(text_.substr(start, pos_ - start));
      if (name == "pi") return Angle(std::numbers::pi);
      return Angle::symbol(std::move(name));
    }
    fail(std::string("unexpected character '") + c + "'");
    return {};
  }

  bool eat(char c) {
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  [[noreturn]] void fail(const std::string& why) const {
    throw InputError("cannot parse angle '" + std::string(text_) + "': " + why);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline Angle Angle::parse(std::string_view text) { return detail::AngleParser(text).parse(); }

}  // namespace rivetlite
