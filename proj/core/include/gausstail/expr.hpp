#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace gausstail {

/// Immutable expression tree over polar variables (r, phi, theta1, ...).
///
/// Arithmetic nodes evaluate to reals; comparison and logical nodes evaluate
/// to 1.0 (true) or 0.0 (false), so the same type carries both the profile
/// expressions of a set description and its membership predicate.
/// Copies share the underlying nodes.
class Expr {
 public:
  enum class Op {
    Const, Var,
    Neg, Add, Sub, Mul, Div, Pow,
    Log, Exp, Sin, Cos, Asin,
    Lt, Le, Gt, Ge, And, Or, Not,
  };

  /// Variable slots: 0 = r, 1 = phi, 2 + i = theta_(i+1).
  static constexpr int kR = 0;
  static constexpr int kPhi = 1;

  Expr() : Expr(constant(0.0)) {}

  static Expr constant(double v);
  static Expr variable(int slot);
  static Expr r() { return variable(kR); }
  static Expr phi() { return variable(kPhi); }
  /// theta_j, j >= 1
  static Expr theta(int j) { return variable(kPhi + j); }
  static Expr make(Op op, std::vector<Expr> args);

  double eval(std::span<const double> vars) const;
  double eval_r(double r) const {
    const double v[1] = {r};
    return eval(v);
  }

  Op op() const noexcept;
  double value() const noexcept;
  int slot() const noexcept;
  const std::vector<Expr>& args() const noexcept;

  /// Highest variable slot referenced, -1 for a closed expression.
  int max_slot() const;
  std::optional<double> constant_value() const;

  friend bool operator==(const Expr& a, const Expr& b);

 private:
  struct Node;
  explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

std::string_view op_name(Expr::Op op);
/// Throws ParseError on an unknown name.
Expr::Op op_from_name(std::string_view name);
/// Number of arguments an operator takes, -1 for variadic (and/or, at least one).
int op_arity(Expr::Op op);

/// Copy of e with every occurrence of variable `slot` replaced.
Expr substitute(const Expr& e, int slot, const Expr& replacement);

std::string slot_name(int slot);
/// Throws ParseError on an unknown name.
int slot_from_name(std::string_view name);

Expr operator+(const Expr& a, const Expr& b);
Expr operator-(const Expr& a, const Expr& b);
Expr operator*(const Expr& a, const Expr& b);
Expr operator/(const Expr& a, const Expr& b);
Expr operator-(const Expr& a);

namespace ex {
Expr pow(const Expr& a, const Expr& b);
Expr log(const Expr& a);
Expr exp(const Expr& a);
Expr sin(const Expr& a);
Expr cos(const Expr& a);
Expr asin(const Expr& a);
Expr lt(const Expr& a, const Expr& b);
Expr le(const Expr& a, const Expr& b);
Expr gt(const Expr& a, const Expr& b);
Expr ge(const Expr& a, const Expr& b);
Expr all(std::vector<Expr> terms);
Expr any(std::vector<Expr> terms);
Expr negate(const Expr& a);
inline Expr c(double v) { return Expr::constant(v); }
}  // namespace ex

}  // namespace gausstail
