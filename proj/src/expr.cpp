#include "ddp/expr.hpp"

#include <cctype>
#include <functional>
#include <stdexcept>

namespace ddp {

Expr Expr::var() { return Expr(std::make_shared<const Node>(Node{Kind::Var, Rational(), {}})); }

Expr Expr::literal(Rational value) {
  return Expr(std::make_shared<const Node>(Node{Kind::Literal, std::move(value), {}}));
}

Expr Expr::binary(Kind kind, Expr lhs, Expr rhs) {
  if (kind != Kind::Add && kind != Kind::Sub && kind != Kind::Mul && kind != Kind::Div)
    throw std::invalid_argument("not a binary operator");
  return Expr(std::make_shared<const Node>(Node{kind, Rational(), {std::move(lhs), std::move(rhs)}}));
}

Expr Expr::unary(Kind kind, Expr arg) {
  if (kind != Kind::Neg && kind != Kind::Abs && kind != Kind::Sqrt)
    throw std::invalid_argument("not a unary operator");
  return Expr(std::make_shared<const Node>(Node{kind, Rational(), {std::move(arg)}}));
}

Expr Expr::power(Expr base, Rational exponent) {
  return Expr(std::make_shared<const Node>(Node{Kind::Pow, std::move(exponent), {std::move(base)}}));
}

bool operator==(const Expr& a, const Expr& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind() || a.number() != b.number()) return false;
  const auto& ca = a.node_->children;
  const auto& cb = b.node_->children;
  if (ca.size() != cb.size()) return false;
  for (std::size_t i = 0; i < ca.size(); ++i)
    if (!(ca[i] == cb[i])) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Parser

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Expr parse() {
    skip_ws();
    if (pos_ == text_.size()) fail("empty expression");
    Expr e = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { fail_at(what, pos_); }
  [[noreturn]] void fail_at(const std::string& what, std::size_t at) const {
    throw ParseError("syntax error at offset " + std::to_string(at) + ": " + what, at);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  Expr expr() {
    Expr lhs = term();
    for (;;) {
      if (accept('+'))
        lhs = Expr::binary(Expr::Kind::Add, lhs, term());
      else if (accept('-'))
        lhs = Expr::binary(Expr::Kind::Sub, lhs, term());
      else
        return lhs;
    }
  }

  Expr term() {
    Expr lhs = power();
    for (;;) {
      if (accept('*'))
        lhs = Expr::binary(Expr::Kind::Mul, lhs, power());
      else if (accept('/'))
        lhs = Expr::binary(Expr::Kind::Div, lhs, power());
      else
        return lhs;
    }
  }

  Expr power() {
    Expr base = unary();
    while (accept('^')) base = Expr::power(base, exponent());
    return base;
  }

  Expr unary() {
    if (accept('-')) return Expr::unary(Expr::Kind::Neg, unary());
    return primary();
  }

  Rational number() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.'))
      ++pos_;
    if (start == pos_) fail("expected a number");
    try {
      return Rational::parse(text_.substr(start, pos_ - start));
    } catch (const ParseError&) {
      fail_at("malformed number", start);
    }
  }

  Rational signed_number() {
    bool neg = accept('-');
    Rational r = number();
    return neg ? -r : r;
  }

  Rational rational_literal() {
    Rational r = signed_number();
    if (accept('/')) {
      std::size_t at = pos_;
      Rational d = number();
      if (d.is_zero()) fail_at("zero denominator in exponent", at);
      r /= d;
    }
    return r;
  }

  Rational exponent() {
    char c = peek();
    if (c == '(') {
      ++pos_;
      if (!is_number_start(peek())) fail("exponent must be a rational literal");
      Rational r = rational_literal();
      expect(')');
      return r;
    }
    if (!is_number_start(c)) {
      if (c == '\0') fail("expected an exponent");
      if (std::isalpha(static_cast<unsigned char>(c))) fail("exponent must be a rational literal");
      fail("unexpected '" + std::string(1, c) + "' in exponent");
    }
    return signed_number();
  }

  static bool is_number_start(char c) {
    return c == '-' || c == '.' || std::isdigit(static_cast<unsigned char>(c));
  }

  Expr primary() {
    char c = peek();
    if (c == '\0') fail("unexpected end of input");
    if (c == '(') {
      ++pos_;
      Expr e = expr();
      expect(')');
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return Expr::literal(number());
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isalnum(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      std::string_view name = text_.substr(start, pos_ - start);
      if (name == "x") return Expr::var();
      if (name == "abs" || name == "sqrt") {
        expect('(');
        Expr arg = expr();
        expect(')');
        return Expr::unary(name == "abs" ? Expr::Kind::Abs : Expr::Kind::Sqrt, arg);
      }
      if (name == "pow") {
        expect('(');
        Expr base = expr();
        expect(',');
        if (!is_number_start(peek())) fail("exponent must be a rational literal");
        Rational e = rational_literal();
        expect(')');
        return Expr::power(base, e);
      }
      fail_at("unknown identifier '" + std::string(name) + "'", start);
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Expr parse_expression(std::string_view text) { return Parser(text).parse(); }

// ---------------------------------------------------------------------------
// Printer

namespace {

// Literals produced by the parser always have terminating decimal expansions.
std::string literal_text(const Rational& r) {
  Integer d = r.den();
  unsigned long twos = mpz_remove(d.get_mpz_t(), d.get_mpz_t(), Integer(2).get_mpz_t());
  unsigned long fives = mpz_remove(d.get_mpz_t(), d.get_mpz_t(), Integer(5).get_mpz_t());
  if (d != 1 || r.sign() < 0) return "(" + r.str() + ")";
  unsigned long places = std::max(twos, fives);
  if (places == 0) return r.num().get_str();
  Integer scaled = whole_part(r * pow10(static_cast<long>(places)));
  std::string s = scaled.get_str();
  if (s.size() <= places) s.insert(0, places - s.size() + 1, '0');
  s.insert(s.size() - places, ".");
  return s;
}

std::string exponent_text(const Rational& e) { return "(" + e.str() + ")"; }

}  // namespace

std::string to_string(const Expr& e) {
  using K = Expr::Kind;
  switch (e.kind()) {
    case K::Var: return "x";
    case K::Literal: return literal_text(e.number());
    case K::Add: return "(" + to_string(e.lhs()) + " + " + to_string(e.rhs()) + ")";
    case K::Sub: return "(" + to_string(e.lhs()) + " - " + to_string(e.rhs()) + ")";
    case K::Mul: return "(" + to_string(e.lhs()) + " * " + to_string(e.rhs()) + ")";
    case K::Div: return "(" + to_string(e.lhs()) + " / " + to_string(e.rhs()) + ")";
    // "-a^q" would reparse as (-a)^q, so a power operand gets its own parentheses.
    case K::Neg:
      return e.arg().kind() == K::Pow ? "(-(" + to_string(e.arg()) + "))" : "(-" + to_string(e.arg()) + ")";
    case K::Abs: return "abs(" + to_string(e.arg()) + ")";
    case K::Sqrt: return "sqrt(" + to_string(e.arg()) + ")";
    case K::Pow: return to_string(e.arg()) + "^" + exponent_text(e.number());
  }
  return {};
}

// ---------------------------------------------------------------------------
// Evaluation

namespace {

struct Inexact {};

void check_root_domain(int sign, const Integer& q) {
  if (sign < 0 && mpz_even_p(q.get_mpz_t())) throw std::domain_error("even root of negative value");
}

long checked_long(const Integer& z, const char* what) {
  if (!z.fits_slong_p()) throw std::domain_error(std::string(what) + " out of range");
  return z.get_si();
}

Rational exact_pow(const Rational& base, const Rational& exponent) {
  check_root_domain(base.sign(), exponent.den());
  if (base.is_zero() && exponent.sign() < 0) throw DivisionByZero("zero raised to a negative power");
  unsigned long q = static_cast<unsigned long>(checked_long(exponent.den(), "root index"));
  Rational rooted;
  if (!exact_root(base, q, rooted)) throw Inexact{};
  return pow(rooted, checked_long(exponent.num(), "exponent"));
}

Rational eval_exact(const Expr& e, const Rational& x) {
  using K = Expr::Kind;
  switch (e.kind()) {
    case K::Var: return x;
    case K::Literal: return e.number();
    case K::Add: return eval_exact(e.lhs(), x) + eval_exact(e.rhs(), x);
    case K::Sub: return eval_exact(e.lhs(), x) - eval_exact(e.rhs(), x);
    case K::Mul: return eval_exact(e.lhs(), x) * eval_exact(e.rhs(), x);
    case K::Div: return eval_exact(e.lhs(), x) / eval_exact(e.rhs(), x);
    case K::Neg: return -eval_exact(e.arg(), x);
    case K::Abs: return abs(eval_exact(e.arg(), x));
    case K::Sqrt: return exact_pow(eval_exact(e.arg(), x), Rational(1, 2));
    case K::Pow: return exact_pow(eval_exact(e.arg(), x), e.number());
  }
  throw std::logic_error("bad expression node");
}

HighPrecDecimal decimal_pow(const HighPrecDecimal& base, const Rational& exponent) {
  check_root_domain(base.sign(), exponent.den());
  if (base.is_zero() && exponent.sign() < 0) throw DivisionByZero("zero raised to a negative power");
  unsigned long q = static_cast<unsigned long>(checked_long(exponent.den(), "root index"));
  HighPrecDecimal rooted = q == 1 ? base : base.root(q);
  return rooted.pow(checked_long(exponent.num(), "exponent"));
}

HighPrecDecimal eval_decimal(const Expr& e, const HighPrecDecimal& x) {
  using K = Expr::Kind;
  switch (e.kind()) {
    case K::Var: return x;
    case K::Literal: return HighPrecDecimal(e.number(), x.digits());
    case K::Add: return eval_decimal(e.lhs(), x) + eval_decimal(e.rhs(), x);
    case K::Sub: return eval_decimal(e.lhs(), x) - eval_decimal(e.rhs(), x);
    case K::Mul: return eval_decimal(e.lhs(), x) * eval_decimal(e.rhs(), x);
    case K::Div: return eval_decimal(e.lhs(), x) / eval_decimal(e.rhs(), x);
    case K::Neg: return -eval_decimal(e.arg(), x);
    case K::Abs: return eval_decimal(e.arg(), x).abs();
    case K::Sqrt: return decimal_pow(eval_decimal(e.arg(), x), Rational(1, 2));
    case K::Pow: return decimal_pow(eval_decimal(e.arg(), x), e.number());
  }
  throw std::logic_error("bad expression node");
}

}  // namespace

std::optional<Rational> evaluate_exact(const Expr& e, const Rational& x) {
  try {
    return eval_exact(e, x);
  } catch (const Inexact&) {
    return std::nullopt;
  }
}

Value evaluate(const Expr& e, const Value& x, int digits) {
  if (x.is_exact()) {
    if (auto r = evaluate_exact(e, x.exact())) return *r;
  }
  return eval_decimal(e, x.to_decimal(digits));
}

// ---------------------------------------------------------------------------
// Polynomial view

namespace {

using Poly = std::vector<Rational>;
constexpr std::size_t kMaxDegree = 64;

void trim(Poly& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

Poly add(const Poly& a, const Poly& b, int sign) {
  Poly out(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (i < a.size()) out[i] += a[i];
    if (i < b.size()) out[i] += sign > 0 ? b[i] : -b[i];
  }
  trim(out);
  return out;
}

std::optional<Poly> mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return Poly{};
  if (a.size() + b.size() - 1 > kMaxDegree + 1) return std::nullopt;
  Poly out(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  trim(out);
  return out;
}

std::optional<Poly> poly_of(const Expr& e) {
  using K = Expr::Kind;
  switch (e.kind()) {
    case K::Var: return Poly{Rational(0), Rational(1)};
    case K::Literal: {
      Poly p{e.number()};
      trim(p);
      return p;
    }
    case K::Add:
    case K::Sub: {
      auto a = poly_of(e.lhs());
      auto b = poly_of(e.rhs());
      if (!a || !b) return std::nullopt;
      return add(*a, *b, e.kind() == K::Add ? 1 : -1);
    }
    case K::Mul: {
      auto a = poly_of(e.lhs());
      auto b = poly_of(e.rhs());
      if (!a || !b) return std::nullopt;
      return mul(*a, *b);
    }
    case K::Div: {
      auto a = poly_of(e.lhs());
      auto b = poly_of(e.rhs());
      if (!a || !b || b->size() != 1) return std::nullopt;
      for (auto& c : *a) c /= (*b)[0];
      return a;
    }
    case K::Neg: {
      auto a = poly_of(e.arg());
      if (!a) return std::nullopt;
      for (auto& c : *a) c = -c;
      return a;
    }
    case K::Pow: {
      const Rational& ex = e.number();
      if (!ex.is_integer() || ex.sign() < 0 || ex > Rational(static_cast<long>(kMaxDegree)))
        return std::nullopt;
      auto base = poly_of(e.arg());
      if (!base) return std::nullopt;
      Poly out{Rational(1)};
      for (long i = 0; i < ex.num().get_si(); ++i) {
        auto next = mul(out, *base);
        if (!next) return std::nullopt;
        out = std::move(*next);
      }
      return out;
    }
    case K::Abs:
    case K::Sqrt: return std::nullopt;
  }
  return std::nullopt;
}

}  // namespace

std::optional<std::vector<Rational>> polynomial_coefficients(const Expr& e) { return poly_of(e); }

}  // namespace ddp
