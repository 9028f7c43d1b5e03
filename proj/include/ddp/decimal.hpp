#pragma once

#include <compare>
#include <string>

#include <mpfr.h>

#include "ddp/rational.hpp"

namespace ddp {

/**
 * Binary floating value carrying a nominal decimal precision.
 *
 * The working mantissa holds `digits + kGuardDigits` decimal digits, so a
 * value produced by a short chain of operations is still good to `digits`
 * significant digits when rendered.
 */
class HighPrecDecimal {
 public:
  static constexpr int kGuardDigits = 10;

  explicit HighPrecDecimal(int digits = kDefaultDecimalDigits);
  HighPrecDecimal(const Rational& r, int digits);
  HighPrecDecimal(const Surd& s, int digits);
  HighPrecDecimal(double d, int digits);

  HighPrecDecimal(const HighPrecDecimal& other);
  HighPrecDecimal(HighPrecDecimal&& other) noexcept;
  HighPrecDecimal& operator=(const HighPrecDecimal& other);
  HighPrecDecimal& operator=(HighPrecDecimal&& other) noexcept;
  ~HighPrecDecimal();

  int digits() const noexcept { return digits_; }

  friend HighPrecDecimal operator+(const HighPrecDecimal& a, const HighPrecDecimal& b);
  friend HighPrecDecimal operator-(const HighPrecDecimal& a, const HighPrecDecimal& b);
  friend HighPrecDecimal operator*(const HighPrecDecimal& a, const HighPrecDecimal& b);
  friend HighPrecDecimal operator/(const HighPrecDecimal& a, const HighPrecDecimal& b);
  HighPrecDecimal operator-() const;

  friend bool operator==(const HighPrecDecimal& a, const HighPrecDecimal& b);
  friend std::partial_ordering operator<=>(const HighPrecDecimal& a, const HighPrecDecimal& b);

  int sign() const { return mpfr_sgn(v_); }
  bool is_zero() const { return mpfr_zero_p(v_) != 0; }

  HighPrecDecimal abs() const;
  /// Real q-th root; negative input only for odd q.
  HighPrecDecimal root(unsigned long q) const;
  HighPrecDecimal pow(long e) const;
  HighPrecDecimal pow(double e) const;
  Integer floor() const;

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  /// Same layout as to_decimal(Rational, digits); defaults to digits().
  std::string str(int digits = 0) const;

  mpfr_srcptr raw() const { return v_; }

 private:
  static mpfr_prec_t bits_for(int digits);
  mpfr_t v_;
  int digits_;
};

}  // namespace ddp
