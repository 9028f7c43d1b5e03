#include <doctest.h>

#include "ddp/identity.hpp"
#include "generators.hpp"
#include "oracles.hpp"

using ddp::FunctionOracle;
using ddp::Rational;
using ddp::Value;

TEST_CASE("double difference examples") {
  auto sq = FunctionOracle::expression("x^2");
  CHECK(ddp::double_difference(sq, 1, 2) == Value(4));
  auto lin = FunctionOracle::expression("5*x");
  CHECK(ddp::double_difference(lin, Rational(3, 7), Rational(-11, 5)) == Value(0));
  auto quad = FunctionOracle::expression("x^2+3*x");
  CHECK(ddp::double_difference(quad, Rational(1, 2), Rational(1, 2)) == Value(Rational(1, 2)));
  auto shifted = FunctionOracle::expression("x^2 + 7");
  auto dv = ddp::dd_value(shifted, 1, 2);
  CHECK(dv.F == Value(-3));
  CHECK(dv.G == Value(4));
}

TEST_CASE("shifted_h examples") {
  CHECK(ddp::shifted_h(FunctionOracle::expression("x^2+7"), 2) == Value(4));
  CHECK(ddp::shifted_h(FunctionOracle::expression("x^2"), 0) == Value(0));
  CHECK(ddp::shifted_h(FunctionOracle::expression("x^2+3*x"), 1) == Value(4));
}

TEST_CASE("telescope examples") {
  auto sq = FunctionOracle::expression("x^2");
  CHECK(ddp::telescope_eval(sq, Rational(1, 3), 3) == Value(Rational(1, 9)));
  CHECK(ddp::telescope_eval(sq, Rational(1, 2), 1) == Value(Rational(1, 4)));
  CHECK(ddp::telescope_eval(FunctionOracle::expression("5*x"), Rational(2, 9), 17) == Value(Rational(10, 9)));
  CHECK_THROWS_AS(ddp::telescope_eval(sq, Rational(1, 2), 0), std::invalid_argument);
}

TEST_CASE("chain_eval examples") {
  auto sq = ddp::chain_eval(FunctionOracle::expression("x^2"), 3, 7);
  CHECK(sq.value == Value(Rational(9, 49)));
  CHECK_FALSE(sq.g_terms_all_zero);

  auto id = ddp::chain_eval(FunctionOracle::expression("x"), 3, 7);
  CHECK(id.value == Value(Rational(3, 7)));
  CHECK(id.g_terms_all_zero);

  auto quad = ddp::chain_eval(FunctionOracle::expression("x^2+3*x"), 2, 5);
  CHECK(quad.value == Value(Rational(34, 25)));
  // Per-step values are the true h(p_i / n): h(2/5), h(1/5), h(0).
  REQUIRE(quad.h_at_chain.size() == 3);
  CHECK(quad.h_at_chain[1] == Value(Rational(1, 25) + Rational(3, 5)));
  CHECK(quad.h_at_chain[2] == Value(0));

  CHECK_THROWS_AS(ddp::chain_eval(FunctionOracle::expression("x"), 1, 2), std::domain_error);
  CHECK_THROWS_AS(ddp::chain_eval(FunctionOracle::expression("x"), 2, 8), std::invalid_argument);
}

TEST_CASE("chain_eval in decimal mode") {
  auto g = FunctionOracle::expression("abs(x)^(1/2)");
  auto ce = ddp::chain_eval(g, 1, 3, 50);
  CHECK_FALSE(ce.value.is_exact());
  CHECK(ddp::identity_holds(ce.value, ddp::shifted_h(g, Rational(1, 3), 50), 50));
  // A visibly wrong value is rejected.
  CHECK_FALSE(ddp::identity_holds(ce.value + Value(ddp::pow10(-30)), ddp::shifted_h(g, Rational(1, 3), 50), 50));
}

TEST_CASE("property: closed form and back-substitution agree, both equal h(p/n)") {
  auto r = gen::rng(51);
  const char* family[] = {"x^2", "x^3 - x", "2*x^4 - x^2/3 + 1", "abs(x - 1/3)"};
  for (int i = 0; i < 120; ++i) {
    auto [p, n] = oracle::random_fraction(r, 300);
    auto g = FunctionOracle::expression(family[i % 4]);
    auto back = ddp::chain_eval(g, p, n);
    auto closed = ddp::chain_eval_closed_form(g, p, n);
    CHECK(back.value == closed);
    CHECK(back.value == ddp::shifted_h(g, Rational(p, n)));
  }
}

TEST_CASE("property: boundary vanishing of G") {
  auto r = gen::rng(52);
  auto g = FunctionOracle::expression("x^3 - 2*x + 5");
  for (int i = 0; i < 300; ++i) {
    Rational x = gen::rational(r, 20, 20);
    CHECK(ddp::dd_value(g, x, 0).G == Value(0));
    CHECK(ddp::dd_value(g, 0, x).G == Value(0));
  }
}

TEST_CASE("property: additive collapse on span points") {
  auto add = ddp::HamelAdditive::parse("basis=1,sqrt2,sqrt3;slopes=1/2,5,-3");
  auto g = FunctionOracle::composite("0", add);
  auto r = gen::rng(53);
  for (int i = 0; i < 200; ++i) {
    ddp::SpanPoint p{{gen::rational(r), gen::rational(r), gen::rational(r)}};
    ddp::SpanPoint q{{gen::rational(r), gen::rational(r), gen::rational(r)}};
    Value dd = g.evaluate(p + q) - g.evaluate(p) - g.evaluate(q);
    // The expression part is exactly zero, so the result is exact as well.
    REQUIRE(dd.is_exact());
    CHECK(dd.is_zero());
  }
}

TEST_CASE("property: telescoping identity against a Boost rational oracle for h") {
  auto r = gen::rng(54);
  std::vector<long> coeffs = {3, -1, 0, 2};  // 3 - x + 2x^3
  auto g = FunctionOracle::expression("3 - x + 2*x^3");
  for (int i = 0; i < 200; ++i) {
    Rational x(gen::integer(r, -60, 60), gen::integer(r, 1, 60));
    long k = gen::integer(r, 1, 30);
    auto v = ddp::telescope_eval(g, x, k);
    REQUIRE(v.is_exact());
    auto bx = oracle::to_brat(x);
    CHECK(oracle::same(v.exact(), oracle::poly(coeffs, bx) - oracle::poly(coeffs, 0)));
  }
}
