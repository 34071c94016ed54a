#pragma once

// Expressions for user-supplied generating functions W+(x).
//
// Grammar (whitespace-insensitive, '-' may also be written as U+2212):
//
//   expr   := term (("+" | "-") term)*
//   term   := unary (("*" | "/") unary)*
//   unary  := "-" unary | power
//   power  := atom ("^" exponent)?          exponent binds right-to-left
//   atom   := number | "x" | "i" | ident "(" expr ")" | "(" expr ")"
//   ident  := exp | sin | cos | sinh | cosh | tanh | sqrt
//
// The exponent must be a constant (no `x`); it is folded to a complex literal
// at parse time. Precedence is ^ > unary minus > * / > + -, so -x^2 == -(x^2).

#include <complex>
#include <memory>
#include <string>
#include <string_view>

#include "qes/errors.hpp"
#include "qes/jet.hpp"

namespace qes {

enum class NodeKind { Literal, Variable, ImagUnit, Neg, Add, Sub, Mul, Div, Pow, Call };
enum class Func { Exp, Sin, Cos, Sinh, Cosh, Tanh, Sqrt };

std::string_view func_name(Func f);

struct Node;
using NodePtr = std::shared_ptr<const Node>;

struct Node {
  NodeKind kind;
  cplx value{};  // Literal payload, or the exponent of a Pow node
  Func func = Func::Exp;
  NodePtr lhs;
  NodePtr rhs;
};

/// Immutable expression tree. Copies share structure.
class Expr {
 public:
  static Expr parse(std::string_view source);

  static Expr literal(cplx c);
  static Expr variable();
  static Expr imag_unit();
  static Expr neg(const Expr& e);
  static Expr binary(NodeKind op, const Expr& lhs, const Expr& rhs);
  static Expr power(const Expr& base, cplx exponent);
  static Expr call(Func f, const Expr& arg);

  template <int N>
  Jet<N> eval(double x) const;

  /// Value, first and second derivative at x. Throws EvalError on a division
  /// by a modulus below 1e-300 or a non-finite result.
  Jet2 eval_jet(double x) const { return eval<2>(x); }

  /// Fully parenthesized source text that parses back to an equivalent tree.
  std::string to_string() const;
  /// Compact structural form, e.g. Add(Mul(2,x),Mul(i,Pow(x,2))).
  std::string to_sexpr() const;

  bool depends_on_x() const;
  const Node& root() const { return *root_; }

 private:
  explicit Expr(NodePtr root) : root_(std::move(root)) {}
  NodePtr root_;
};

Jet2 eval_jet(const Expr& e, double x);

extern template Jet<0> Expr::eval<0>(double) const;
extern template Jet<2> Expr::eval<2>(double) const;
extern template Jet<4> Expr::eval<4>(double) const;

}  // namespace qes
