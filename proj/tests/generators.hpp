// Seeded random generators for property tests.
#pragma once

#include <random>
#include <string>

#include "ddp/expr.hpp"
#include "ddp/rational.hpp"

namespace gen {

inline std::mt19937_64 rng(std::uint64_t seed) { return std::mt19937_64(seed); }

inline long integer(std::mt19937_64& r, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(r); }

inline ddp::Rational rational(std::mt19937_64& r, long max_num = 1000, long max_den = 1000) {
  return ddp::Rational(integer(r, -max_num, max_num), integer(r, 1, max_den));
}

/// Multi-limb values so that GMP paths beyond a single word are exercised.
inline ddp::Rational big_rational(std::mt19937_64& r) {
  ddp::Integer n = 1, d = 1;
  for (int i = 0; i < 3; ++i) {
    n = n * ddp::Integer(std::to_string(integer(r, 1, 1L << 40))) + integer(r, 0, 99);
    d = d * ddp::Integer(std::to_string(integer(r, 1, 1L << 40))) + 1;
  }
  if (integer(r, 0, 1)) n = -n;
  return ddp::Rational(n, d);
}

/// Random expression tree; pow exponents are rational literals.
inline ddp::Expr expression(std::mt19937_64& r, int depth) {
  using K = ddp::Expr::Kind;
  if (depth <= 0 || integer(r, 0, 3) == 0) {
    if (integer(r, 0, 1)) return ddp::Expr::var();
    // Source text can only spell terminating decimals, so denominators are 2^a 5^b.
    static const long dens[] = {1, 2, 4, 5, 8, 10, 20, 25};
    return ddp::Expr::literal(ddp::Rational(integer(r, 0, 50), dens[integer(r, 0, 7)]));
  }
  switch (integer(r, 0, 7)) {
    case 0: return ddp::Expr::binary(K::Add, expression(r, depth - 1), expression(r, depth - 1));
    case 1: return ddp::Expr::binary(K::Sub, expression(r, depth - 1), expression(r, depth - 1));
    case 2: return ddp::Expr::binary(K::Mul, expression(r, depth - 1), expression(r, depth - 1));
    case 3: return ddp::Expr::binary(K::Div, expression(r, depth - 1), expression(r, depth - 1));
    case 4: return ddp::Expr::unary(K::Neg, expression(r, depth - 1));
    case 5: return ddp::Expr::unary(K::Abs, expression(r, depth - 1));
    case 6: return ddp::Expr::unary(K::Sqrt, expression(r, depth - 1));
    default:
      return ddp::Expr::power(expression(r, depth - 1), ddp::Rational(integer(r, -5, 5), integer(r, 1, 4)));
  }
}

}  // namespace gen
