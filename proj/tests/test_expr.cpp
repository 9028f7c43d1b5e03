#include <doctest.h>

#include "ddp/expr.hpp"
#include "generators.hpp"
#include "oracles.hpp"

using ddp::Expr;
using ddp::Rational;
using K = Expr::Kind;

namespace {

ddp::ParseError parse_failure(const char* text) {
  try {
    ddp::parse_expression(text);
  } catch (const ddp::ParseError& e) {
    return e;
  }
  FAIL("expected a parse error for " << text);
  return ddp::ParseError("", 0);
}

}  // namespace

TEST_CASE("precedence of + and * with ^") {
  Expr e = ddp::parse_expression("x^2 + 3*x");
  Expr expected = Expr::binary(K::Add, Expr::power(Expr::var(), 2),
                               Expr::binary(K::Mul, Expr::literal(3), Expr::var()));
  CHECK(e == expected);
}

TEST_CASE("function call then power") {
  CHECK(ddp::parse_expression("abs(x)^(1/2)") == Expr::power(Expr::unary(K::Abs, Expr::var()), Rational(1, 2)));
  CHECK(ddp::parse_expression("pow(x, 3/2)") == Expr::power(Expr::var(), Rational(3, 2)));
  CHECK(ddp::parse_expression("sqrt(x)") == Expr::unary(K::Sqrt, Expr::var()));
}

TEST_CASE("malformed token reports its offset") {
  auto e = parse_failure("x^^2");
  CHECK(e.offset() == 2);
  CHECK(std::string(e.what()).find("offset 2") != std::string::npos);
  CHECK(parse_failure("x^x").offset() == 2);
  CHECK(std::string(parse_failure("x^x").what()).find("rational literal") != std::string::npos);
  CHECK(parse_failure("").offset() == 0);
  CHECK(parse_failure("(x+1").offset() == 4);
  CHECK(parse_failure("x $ 2").offset() == 2);
  CHECK(parse_failure("sin(x)").offset() == 0);
}

TEST_CASE("left associativity and unary minus binding") {
  CHECK(ddp::parse_expression("x - 1 - 2") ==
        Expr::binary(K::Sub, Expr::binary(K::Sub, Expr::var(), Expr::literal(1)), Expr::literal(2)));
  CHECK(ddp::parse_expression("8 / x / 2") ==
        Expr::binary(K::Div, Expr::binary(K::Div, Expr::literal(8), Expr::var()), Expr::literal(2)));
  // Unary minus binds tighter than the power operator.
  CHECK(ddp::parse_expression("-x^2") == Expr::power(Expr::unary(K::Neg, Expr::var()), 2));
  CHECK(ddp::parse_expression("x^2^3") == Expr::power(Expr::power(Expr::var(), 2), 3));
  CHECK(ddp::parse_expression("0.25*x") == Expr::binary(K::Mul, Expr::literal(Rational(1, 4)), Expr::var()));
}

TEST_CASE("evaluation examples") {
  CHECK(ddp::evaluate(ddp::parse_expression("x^2+3*x"), Rational(1, 2)) == ddp::Value(Rational(7, 4)));
  auto half = ddp::evaluate(ddp::parse_expression("abs(x)^(1/2)"), Rational(1, 4));
  REQUIRE(half.is_exact());
  CHECK(half.exact() == Rational(1, 2));
  auto irr = ddp::evaluate(ddp::parse_expression("sqrt(x) + x"), Rational(2), 30);
  CHECK_FALSE(irr.is_exact());
  CHECK(irr.decimal_if()->str(15) == "3.41421356237310");
  CHECK_THROWS_AS(ddp::evaluate(ddp::parse_expression("1/x"), Rational(0)), ddp::DivisionByZero);
  CHECK_THROWS_AS(ddp::evaluate(ddp::parse_expression("sqrt(x)"), Rational(-1)), std::domain_error);
  CHECK_THROWS_AS(ddp::evaluate(ddp::parse_expression("x^(1/2)"), Rational(-2)), std::domain_error);
  auto cube = ddp::evaluate(ddp::parse_expression("x^(1/3)"), Rational(-27, 8));
  REQUIRE(cube.is_exact());
  CHECK(cube.exact() == Rational(-3, 2));
}

TEST_CASE("polynomial coefficients") {
  auto c = ddp::polynomial_coefficients(ddp::parse_expression("(x+1)^2 - x/2"));
  REQUIRE(c);
  CHECK(*c == std::vector<Rational>{1, Rational(3, 2), 1});
  CHECK_FALSE(ddp::polynomial_coefficients(ddp::parse_expression("abs(x)")));
  CHECK_FALSE(ddp::polynomial_coefficients(ddp::parse_expression("x^(1/2)")));
  CHECK_FALSE(ddp::polynomial_coefficients(ddp::parse_expression("1/x")));
}

TEST_CASE("property: pretty-print reparses to an identical tree") {
  auto r = gen::rng(21);
  for (int i = 0; i < 1500; ++i) {
    Expr e = gen::expression(r, 5);
    std::string text = ddp::to_string(e);
    CAPTURE(text);
    Expr back = ddp::parse_expression(text);
    CHECK(back == e);
    CHECK(ddp::to_string(back) == text);
  }
}

TEST_CASE("property: exact polynomial evaluation matches an independent Horner oracle") {
  auto r = gen::rng(22);
  for (int i = 0; i < 300; ++i) {
    std::vector<long> coeffs;
    std::string text = "0";
    for (int d = 0; d <= 4; ++d) {
      long c = gen::integer(r, -9, 9);
      coeffs.push_back(c);
      text += " + (" + std::to_string(c) + ")*x^" + std::to_string(d);
    }
    Rational x = gen::rational(r, 50, 50);
    auto v = ddp::evaluate(ddp::parse_expression(text), x);
    REQUIRE(v.is_exact());
    CHECK(oracle::same(v.exact(), oracle::poly(coeffs, oracle::to_brat(x))));
  }
}
