#include <doctest.h>

#include "ddp/euclid_chain.hpp"
#include "generators.hpp"
#include "oracles.hpp"

using ddp::ChainStep;
using ddp::Integer;
using ddp::Rational;

namespace {

std::vector<ChainStep> steps(std::initializer_list<std::pair<long, long>> s) {
  std::vector<ChainStep> out;
  for (auto [m, r] : s) out.push_back({Integer(m), Integer(r)});
  return out;
}

}  // namespace

TEST_CASE("chain examples") {
  auto c37 = ddp::compute_chain(3, 7);
  CHECK(c37.steps() == steps({{2, 1}, {7, 0}}));
  CHECK(ddp::alternating_weight(c37) == Rational(3, 7));
  CHECK(ddp::geometric_weight(c37) == Rational(3, 2));

  auto c15 = ddp::compute_chain(1, 5);
  CHECK(c15.steps() == steps({{5, 0}}));
  CHECK(ddp::alternating_weight(c15) == Rational(1, 5));
  CHECK(ddp::geometric_weight(c15) == Rational(1));

  auto c25 = ddp::compute_chain(2, 5);
  CHECK(c25.steps() == steps({{2, 1}, {5, 0}}));
  CHECK(ddp::alternating_weight(c25) == Rational(2, 5));
  CHECK(ddp::geometric_weight(c25) == Rational(3, 2));

  CHECK(c37.remainder(0) == 3);
  CHECK(c37.remainder(2) == 0);
}

TEST_CASE("chain preconditions") {
  CHECK_THROWS_AS(ddp::compute_chain(1, 2), std::domain_error);
  CHECK_THROWS_AS(ddp::compute_chain(3, 5), std::domain_error);
  CHECK_THROWS_AS(ddp::compute_chain(0, 5), std::domain_error);
  CHECK_THROWS_AS(ddp::compute_chain(2, 6), std::invalid_argument);
  CHECK_THROWS_AS(ddp::compute_chain(-1, 5), std::domain_error);
}

TEST_CASE("the chain differs from the gcd recurrence") {
  // 5/13: gcd-style would divide 13 by 5 then 5 by 3; here n stays 13.
  auto c = ddp::compute_chain(5, 13);
  CHECK(c.steps() == steps({{2, 3}, {4, 1}, {13, 0}}));
}

TEST_CASE("property: chain agrees with an int64 oracle and satisfies its invariants") {
  auto r = gen::rng(41);
  for (int i = 0; i < 3000; ++i) {
    auto [p, n] = oracle::random_fraction(r, 200000);
    auto c = ddp::compute_chain(p, n);
    auto ref = oracle::chain(p, n);
    REQUIRE(c.length() == ref.size());
    for (std::size_t k = 0; k < ref.size(); ++k) {
      CHECK(c.steps()[k].m == ref[k].first);
      CHECK(c.steps()[k].remainder == ref[k].second);
    }
    CHECK(ddp::chain_violation(c).empty());
    CHECK(c.length() <= static_cast<std::size_t>(p));
    CHECK(oracle::same(ddp::alternating_weight(c), oracle::alternating(ref)));
    CHECK(oracle::same(ddp::geometric_weight(c), oracle::geometric(ref)));
    CHECK(ddp::alternating_weight(c) == Rational(p, n));
    Rational m0(c.steps()[0].m);
    CHECK(ddp::alternating_weight(c) <= Rational(1) / m0);
    CHECK(ddp::geometric_weight(c) <= m0 / (m0 - 1));
  }
}

TEST_CASE("chain_violation detects corrupted chains") {
  CHECK_FALSE(ddp::chain_violation(ddp::EuclidChain(3, 7, steps({{2, 1}, {6, 1}}))).empty());
  CHECK_FALSE(ddp::chain_violation(ddp::EuclidChain(3, 7, steps({{2, 1}}))).empty());
  CHECK_FALSE(ddp::chain_violation(ddp::EuclidChain(3, 7, steps({{3, 0}}))).empty());
}
