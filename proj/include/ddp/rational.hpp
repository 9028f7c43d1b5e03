#pragma once

#include <compare>
#include <cstdlib>
#include <functional>
#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace ddp {

/// Arbitrary-precision integer used for numerators, denominators and chain
/// entries.
using Integer = mpz_class;

/// Raised on any attempt to divide by an exact zero.
class DivisionByZero : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Raised when a textual number cannot be parsed.
class ParseError : public std::invalid_argument {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : std::invalid_argument(what), offset_(offset) {}
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

/**
 * Exact fraction with a GMP numerator and denominator.
 *
 * The representation is canonical at all times: the denominator is positive
 * and gcd(|num|, den) == 1, so two Rationals are equal iff their fields are
 * equal. Zero is 0/1.
 */
class Rational {
 public:
  Rational() : num_(0), den_(1) {}
  Rational(long n) : num_(n), den_(1) {}  // NOLINT(implicit)
  explicit Rational(const Integer& n) : num_(n), den_(1) {}
  Rational(const Integer& n, const Integer& d);
  Rational(long n, long d) : Rational(Integer(n), Integer(d)) {}

  /// Accepts "p", "-p", "p/q", and finite decimals such as "-0.125" or "1e-3".
  static Rational parse(std::string_view text);

  const Integer& num() const noexcept { return num_; }
  const Integer& den() const noexcept { return den_; }

  bool is_zero() const noexcept { return num_ == 0; }
  bool is_integer() const noexcept { return den_ == 1; }
  int sign() const noexcept { return sgn(num_); }

  Rational operator-() const;
  Rational& operator+=(const Rational& rhs);
  Rational& operator-=(const Rational& rhs);
  Rational& operator*=(const Rational& rhs);
  Rational& operator/=(const Rational& rhs);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const Rational& a,
                                          const Rational& b);

  /// "p/q" with the denominator always present ("4/1").
  std::string str() const;
  double to_double() const;

 private:
  struct Canonical {};
  Rational(Integer n, Integer d, Canonical) : num_(std::move(n)), den_(std::move(d)) {}
  void normalize();

  Integer num_;
  Integer den_;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

Rational abs(const Rational& r);

/// Mathematical floor; the whole-number part [r] for r >= 0, and e.g.
/// floor(-7/3) == -3 for negative input.
Integer whole_part(const Rational& r);

/// r^e for an integer exponent; 0^e with e < 0 raises DivisionByZero.
Rational pow(const Rational& r, long e);

/// Exact q-th root when r is a perfect q-th power, otherwise false.
/// Negative r is only accepted for odd q.
bool exact_root(const Rational& r, unsigned long q, Rational& out);

/// Integer power of ten as a Rational (negative exponents allowed).
Rational pow10(long e);

/// A real number of the form sqrt(radicand) for a square-free radicand >= 1.
/// radicand == 1 denotes the constant 1.
struct Surd {
  unsigned long radicand = 1;

  static Surd parse(std::string_view text);  // "1", "sqrt2", "sqrt(2)"
  std::string str() const;
  friend bool operator==(const Surd&, const Surd&) = default;
};

bool is_square_free(unsigned long n);

/**
 * Correctly rounded decimal rendering with `digits` significant digits
 * (round half away from zero). Trailing zeros are kept; zero renders as "0.0".
 * digits must be at least 15.
 */
std::string to_decimal(const Rational& a, int digits);
std::string to_decimal(const Surd& s, int digits);

inline constexpr int kMinDecimalDigits = 15;
inline constexpr int kDefaultDecimalDigits = 50;

}  // namespace ddp

template <>
struct std::hash<ddp::Rational> {
  std::size_t operator()(const ddp::Rational& r) const noexcept {
    // Values are canonical, so hashing the limbs of num and den is consistent with ==.
    auto mix = [](std::size_t h, const ddp::Integer& z) {
      const mpz_srcptr p = z.get_mpz_t();
      for (int i = 0, n = std::abs(p->_mp_size); i < n; ++i) h = (h ^ p->_mp_d[i]) * 0x100000001b3ULL;
      return h ^ static_cast<std::size_t>(p->_mp_size < 0);
    };
    return mix(mix(0xcbf29ce484222325ULL, r.num()), r.den());
  }
};
