#pragma once

#include <string>
#include <variant>

#include "ddp/decimal.hpp"
#include "ddp/rational.hpp"

namespace ddp {

/**
 * A number that is either exact (Rational) or approximate (HighPrecDecimal).
 *
 * Binary operations stay exact while both operands are exact; as soon as one
 * side is a decimal the other is promoted at the decimal's precision.
 */
class Value {
 public:
  Value() : v_(Rational()) {}
  Value(Rational r) : v_(std::move(r)) {}        // NOLINT(implicit)
  Value(HighPrecDecimal d) : v_(std::move(d)) {}  // NOLINT(implicit)
  Value(long n) : v_(Rational(n)) {}              // NOLINT(implicit)

  bool is_exact() const noexcept { return std::holds_alternative<Rational>(v_); }
  const Rational& exact() const { return std::get<Rational>(v_); }
  const HighPrecDecimal* decimal_if() const { return std::get_if<HighPrecDecimal>(&v_); }

  /// Decimal view at the given precision (exact values are converted).
  HighPrecDecimal to_decimal(int digits) const;
  /// Precision of the decimal alternative, 0 for exact values.
  int digits() const;

  int sign() const;
  bool is_zero() const { return sign() == 0; }
  double to_double() const;

  Value abs() const;
  Value operator-() const;

  friend Value operator+(const Value& a, const Value& b);
  friend Value operator-(const Value& a, const Value& b);
  friend Value operator*(const Value& a, const Value& b);
  friend Value operator/(const Value& a, const Value& b);
  Value& operator+=(const Value& b) { return *this = *this + b; }
  Value& operator-=(const Value& b) { return *this = *this - b; }

  /// Exact equality when both are exact, value equality of the promoted
  /// decimals otherwise.
  friend bool operator==(const Value& a, const Value& b);
  friend std::partial_ordering operator<=>(const Value& a, const Value& b);

  /// "p/q" for exact values, the decimal rendering otherwise.
  std::string str() const;

 private:
  std::variant<Rational, HighPrecDecimal> v_;
};

Value max(const Value& a, const Value& b);

/// |a - b| <= tol, exact when everything is exact.
bool approx_equal(const Value& a, const Value& b, const Value& tol);

/// 10^-(digits - 10), the agreement tolerance used for decimal identity checks.
Rational decimal_tolerance(int digits);

}  // namespace ddp
