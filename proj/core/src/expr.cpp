#include "gausstail/expr.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstdint>

#include "gausstail/errors.hpp"

namespace gausstail {

struct Expr::Node {
  Op op = Op::Const;
  double value = 0.0;
  int slot = -1;
  std::vector<Expr> args;
};

namespace {

struct OpInfo {
  Expr::Op op;
  std::string_view name;
  int arity;
};

constexpr std::array<OpInfo, 20> kOps = {{
    {Expr::Op::Const, "const", 0}, {Expr::Op::Var, "var", 0},   {Expr::Op::Neg, "neg", 1},
    {Expr::Op::Add, "+", 2},       {Expr::Op::Sub, "-", 2},     {Expr::Op::Mul, "*", 2},
    {Expr::Op::Div, "/", 2},       {Expr::Op::Pow, "pow", 2},   {Expr::Op::Log, "log", 1},
    {Expr::Op::Exp, "exp", 1},     {Expr::Op::Sin, "sin", 1},   {Expr::Op::Cos, "cos", 1},
    {Expr::Op::Asin, "asin", 1},   {Expr::Op::Lt, "<", 2},      {Expr::Op::Le, "<=", 2},
    {Expr::Op::Gt, ">", 2},        {Expr::Op::Ge, ">=", 2},     {Expr::Op::And, "and", -1},
    {Expr::Op::Or, "or", -1},      {Expr::Op::Not, "not", 1},
}};

const OpInfo& info(Expr::Op op) {
  for (const auto& i : kOps) {
    if (i.op == op) return i;
  }
  throw UsageError("unknown expression operator");
}

}  // namespace

std::string_view op_name(Expr::Op op) { return info(op).name; }
int op_arity(Expr::Op op) { return info(op).arity; }

Expr::Op op_from_name(std::string_view name) {
  for (const auto& i : kOps) {
    if (i.name == name && i.op != Expr::Op::Const && i.op != Expr::Op::Var) return i.op;
  }
  throw ParseError("unknown expression operator '" + std::string(name) + "'");
}

std::string slot_name(int slot) {
  if (slot == Expr::kR) return "r";
  if (slot == Expr::kPhi) return "phi";
  return "theta" + std::to_string(slot - Expr::kPhi);
}

int slot_from_name(std::string_view name) {
  if (name == "r") return Expr::kR;
  if (name == "phi") return Expr::kPhi;
  if (name.starts_with("theta") && name.size() > 5) {
    int j = 0;
    auto [ptr, ec] = std::from_chars(name.data() + 5, name.data() + name.size(), j);
    if (ec == std::errc() && ptr == name.data() + name.size() && j >= 1) return Expr::kPhi + j;
  }
  throw ParseError("unknown variable '" + std::string(name) + "'");
}

Expr Expr::constant(double v) {
  auto n = std::make_shared<Node>();
  n->op = Op::Const;
  n->value = v;
  return Expr(std::move(n));
}

Expr Expr::variable(int slot) {
  if (slot < 0) throw UsageError("negative variable slot");
  auto n = std::make_shared<Node>();
  n->op = Op::Var;
  n->slot = slot;
  return Expr(std::move(n));
}

Expr Expr::make(Op op, std::vector<Expr> args) {
  if (op == Op::Const || op == Op::Var) throw UsageError("use Expr::constant / Expr::variable for leaves");
  const int arity = op_arity(op);
  if (arity >= 0 && static_cast<int>(args.size()) != arity) {
    throw ParseError("operator '" + std::string(op_name(op)) + "' expects " + std::to_string(arity) + " arguments");
  }
  if (arity < 0 && args.empty()) throw ParseError("operator '" + std::string(op_name(op)) + "' needs arguments");
  auto n = std::make_shared<Node>();
  n->op = op;
  n->args = std::move(args);
  return Expr(std::move(n));
}

Expr::Op Expr::op() const noexcept { return node_->op; }
double Expr::value() const noexcept { return node_->value; }
int Expr::slot() const noexcept { return node_->slot; }
const std::vector<Expr>& Expr::args() const noexcept { return node_->args; }

double Expr::eval(std::span<const double> vars) const {
  const Node& n = *node_;
  auto arg = [&](std::size_t i) { return n.args[i].eval(vars); };
  switch (n.op) {
    case Op::Const: return n.value;
    case Op::Var:
      if (n.slot >= static_cast<int>(vars.size())) {
        throw UsageError("expression references unbound variable " + slot_name(n.slot));
      }
      return vars[n.slot];
    case Op::Neg: return -arg(0);
    case Op::Add: return arg(0) + arg(1);
    case Op::Sub: return arg(0) - arg(1);
    case Op::Mul: return arg(0) * arg(1);
    case Op::Div: return arg(0) / arg(1);
    case Op::Pow: return std::pow(arg(0), arg(1));
    case Op::Log: return std::log(arg(0));
    case Op::Exp: return std::exp(arg(0));
    case Op::Sin: return std::sin(arg(0));
    case Op::Cos: return std::cos(arg(0));
    case Op::Asin: return std::asin(std::clamp(arg(0), -1.0, 1.0));
    case Op::Lt: return arg(0) < arg(1) ? 1.0 : 0.0;
    case Op::Le: return arg(0) <= arg(1) ? 1.0 : 0.0;
    case Op::Gt: return arg(0) > arg(1) ? 1.0 : 0.0;
    case Op::Ge: return arg(0) >= arg(1) ? 1.0 : 0.0;
    case Op::And:
      for (const Expr& e : n.args) {
        if (e.eval(vars) == 0.0) return 0.0;
      }
      return 1.0;
    case Op::Or:
      for (const Expr& e : n.args) {
        if (e.eval(vars) != 0.0) return 1.0;
      }
      return 0.0;
    case Op::Not: return arg(0) == 0.0 ? 1.0 : 0.0;
  }
  return 0.0;
}

int Expr::max_slot() const {
  if (node_->op == Op::Var) return node_->slot;
  int m = -1;
  for (const Expr& e : node_->args) m = std::max(m, e.max_slot());
  return m;
}

std::optional<double> Expr::constant_value() const {
  if (max_slot() >= 0) return std::nullopt;
  return eval(std::span<const double>{});
}

bool operator==(const Expr& a, const Expr& b) {
  if (a.node_ == b.node_) return true;
  const Expr::Node& x = *a.node_;
  const Expr::Node& y = *b.node_;
  if (x.op != y.op || x.slot != y.slot || x.args.size() != y.args.size()) return false;
  if (x.op == Expr::Op::Const && std::bit_cast<std::uint64_t>(x.value) != std::bit_cast<std::uint64_t>(y.value)) {
    return false;
  }
  for (std::size_t i = 0; i < x.args.size(); ++i) {
    if (!(x.args[i] == y.args[i])) return false;
  }
  return true;
}

Expr substitute(const Expr& e, int slot, const Expr& replacement) {
  if (e.op() == Expr::Op::Var) return e.slot() == slot ? replacement : e;
  if (e.op() == Expr::Op::Const) return e;
  std::vector<Expr> args;
  args.reserve(e.args().size());
  for (const Expr& a : e.args()) args.push_back(substitute(a, slot, replacement));
  return Expr::make(e.op(), std::move(args));
}

Expr operator+(const Expr& a, const Expr& b) { return Expr::make(Expr::Op::Add, {a, b}); }
Expr operator-(const Expr& a, const Expr& b) { return Expr::make(Expr::Op::Sub, {a, b}); }
Expr operator*(const Expr& a, const Expr& b) { return Expr::make(Expr::Op::Mul, {a, b}); }
Expr operator/(const Expr& a, const Expr& b) { return Expr::make(Expr::Op::Div, {a, b}); }
Expr operator-(const Expr& a) { return Expr::make(Expr::Op::Neg, {a}); }

namespace ex {
Expr pow(const Expr& a, const Expr& b) { return Expr::make(Expr::Op::Pow, {a, b}); }
Expr log(const Expr& a) { return Expr::make(Expr::Op::Log, {a}); }
Expr exp(const Expr& a) { return Expr::make(Expr::Op::Exp, {a}); }
Expr sin(const Expr& a) { return Expr::make(Expr::Op::Sin, {a}); }
Expr cos(const Expr& a) { return Expr::make(Expr::Op::Cos, {a}); }
Expr asin(const Expr& a) { return Expr::make(Expr::Op::Asin, {a}); }
Expr lt(const Expr& a, const Expr& b) { return Expr::make(Expr::Op::Lt, {a, b}); }
Expr le(const Expr& a, const Expr& b) { return Expr::make(Expr::Op::Le, {a, b}); }
Expr gt(const Expr& a, const Expr& b) { return Expr::make(Expr::Op::Gt, {a, b}); }
Expr ge(const Expr& a, const Expr& b) { return Expr::make(Expr::Op::Ge, {a, b}); }
Expr all(std::vector<Expr> terms) {
  if (terms.size() == 1) return terms.front();
  return Expr::make(Expr::Op::And, std::move(terms));
}
Expr any(std::vector<Expr> terms) {
  if (terms.empty()) return Expr::constant(0.0);
  if (terms.size() == 1) return terms.front();
  return Expr::make(Expr::Op::Or, std::move(terms));
}
Expr negate(const Expr& a) { return Expr::make(Expr::Op::Not, {a}); }
}  // namespace ex

}  // namespace gausstail
