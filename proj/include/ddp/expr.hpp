#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ddp/rational.hpp"
#include "ddp/value.hpp"

namespace ddp {

/**
 * Immutable expression tree in one variable x.
 *
 * Grammar (loosest to tightest binding):
 *
 *   expr    := term (('+' | '-') term)*
 *   term    := power (('*' | '/') power)*
 *   power   := unary ('^' exponent)*
 *   unary   := '-' unary | primary
 *   primary := number | 'x' | '(' expr ')'
 *            | 'abs' '(' expr ')' | 'sqrt' '(' expr ')'
 *            | 'pow' '(' expr ',' rational ')'
 *   exponent := ['-'] number | '(' ['-'] number ['/' number] ')'
 *
 * Unary minus binds tighter than '^', so "-x^2" is (-x)^2. Exponents are
 * always rational literals.
 */
class Expr {
 public:
  enum class Kind { Var, Literal, Add, Sub, Mul, Div, Neg, Abs, Sqrt, Pow };

  static Expr var();
  static Expr literal(Rational value);
  static Expr binary(Kind kind, Expr lhs, Expr rhs);
  static Expr unary(Kind kind, Expr arg);
  static Expr power(Expr base, Rational exponent);

  Kind kind() const { return node_->kind; }
  /// Literal value, or the exponent of a Pow node.
  const Rational& number() const { return node_->number; }
  const Expr& lhs() const { return node_->children.at(0); }
  const Expr& rhs() const { return node_->children.at(1); }
  const Expr& arg() const { return node_->children.at(0); }

  friend bool operator==(const Expr& a, const Expr& b);

 private:
  struct Node {
    Kind kind;
    Rational number;
    std::vector<Expr> children;
  };
  explicit Expr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

/// Throws ParseError carrying the byte offset of the offending token.
Expr parse_expression(std::string_view text);

/// Fully parenthesized rendering that parses back to an identical tree.
std::string to_string(const Expr& e);

/**
 * Evaluates e at x.
 *
 * With an exact x the tree is first evaluated in rational arithmetic; if any
 * node leaves Q at this point (an irrational root) the whole tree is
 * re-evaluated in decimal at `digits` precision. A decimal x always gives a
 * decimal result.
 *
 * Errors: DivisionByZero, std::domain_error for an even root of a negative
 * value.
 */
Value evaluate(const Expr& e, const Value& x, int digits = kDefaultDecimalDigits);

/// Exact-only evaluation; nullopt if some node is irrational at x.
std::optional<Rational> evaluate_exact(const Expr& e, const Rational& x);

/// Coefficients c0, c1, ... when e is a polynomial with rational coefficients
/// (no abs, sqrt or fractional powers), trailing zeros trimmed.
std::optional<std::vector<Rational>> polynomial_coefficients(const Expr& e);

}  // namespace ddp
