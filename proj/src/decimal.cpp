#include "ddp/decimal.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <stdexcept>

namespace ddp {

mpfr_prec_t HighPrecDecimal::bits_for(int digits) {
  return static_cast<mpfr_prec_t>(std::ceil((digits + kGuardDigits) * 3.3219280948873623)) + 8;
}

HighPrecDecimal::HighPrecDecimal(int digits) : digits_(digits) {
  if (digits < kMinDecimalDigits)
    throw std::invalid_argument("decimal precision must be at least 15 digits");
  mpfr_init2(v_, bits_for(digits));
  mpfr_set_zero(v_, 1);
}

HighPrecDecimal::HighPrecDecimal(const Rational& r, int digits) : HighPrecDecimal(digits) {
  mpq_t q;
  mpq_init(q);
  mpq_set_num(q, r.num().get_mpz_t());
  mpq_set_den(q, r.den().get_mpz_t());
  mpfr_set_q(v_, q, MPFR_RNDN);
  mpq_clear(q);
}

HighPrecDecimal::HighPrecDecimal(const Surd& s, int digits) : HighPrecDecimal(digits) {
  mpfr_sqrt_ui(v_, s.radicand, MPFR_RNDN);
}

HighPrecDecimal::HighPrecDecimal(double d, int digits) : HighPrecDecimal(digits) {
  mpfr_set_d(v_, d, MPFR_RNDN);
}

HighPrecDecimal::HighPrecDecimal(const HighPrecDecimal& other) : digits_(other.digits_) {
  mpfr_init2(v_, mpfr_get_prec(other.v_));
  mpfr_set(v_, other.v_, MPFR_RNDN);
}

HighPrecDecimal::HighPrecDecimal(HighPrecDecimal&& other) noexcept : digits_(other.digits_) {
  mpfr_init2(v_, mpfr_get_prec(other.v_));
  mpfr_swap(v_, other.v_);
}

HighPrecDecimal& HighPrecDecimal::operator=(const HighPrecDecimal& other) {
  if (this != &other) {
    mpfr_set_prec(v_, mpfr_get_prec(other.v_));
    mpfr_set(v_, other.v_, MPFR_RNDN);
    digits_ = other.digits_;
  }
  return *this;
}

HighPrecDecimal& HighPrecDecimal::operator=(HighPrecDecimal&& other) noexcept {
  if (this != &other) {
    mpfr_swap(v_, other.v_);
    std::swap(digits_, other.digits_);
  }
  return *this;
}

HighPrecDecimal::~HighPrecDecimal() { mpfr_clear(v_); }

namespace {

template <typename Op>
HighPrecDecimal binary(const HighPrecDecimal& a, const HighPrecDecimal& b, Op op) {
  HighPrecDecimal out(std::max(a.digits(), b.digits()));
  op(const_cast<mpfr_ptr>(out.raw()), a.raw(), b.raw());
  return out;
}

}  // namespace

HighPrecDecimal operator+(const HighPrecDecimal& a, const HighPrecDecimal& b) {
  return binary(a, b, [](mpfr_ptr r, mpfr_srcptr x, mpfr_srcptr y) { mpfr_add(r, x, y, MPFR_RNDN); });
}

HighPrecDecimal operator-(const HighPrecDecimal& a, const HighPrecDecimal& b) {
  return binary(a, b, [](mpfr_ptr r, mpfr_srcptr x, mpfr_srcptr y) { mpfr_sub(r, x, y, MPFR_RNDN); });
}

HighPrecDecimal operator*(const HighPrecDecimal& a, const HighPrecDecimal& b) {
  return binary(a, b, [](mpfr_ptr r, mpfr_srcptr x, mpfr_srcptr y) { mpfr_mul(r, x, y, MPFR_RNDN); });
}

HighPrecDecimal operator/(const HighPrecDecimal& a, const HighPrecDecimal& b) {
  if (b.is_zero()) throw DivisionByZero("division by zero");
  return binary(a, b, [](mpfr_ptr r, mpfr_srcptr x, mpfr_srcptr y) { mpfr_div(r, x, y, MPFR_RNDN); });
}

HighPrecDecimal HighPrecDecimal::operator-() const {
  HighPrecDecimal out(*this);
  mpfr_neg(out.v_, v_, MPFR_RNDN);
  return out;
}

bool operator==(const HighPrecDecimal& a, const HighPrecDecimal& b) {
  return mpfr_equal_p(a.v_, b.v_) != 0;
}

std::partial_ordering operator<=>(const HighPrecDecimal& a, const HighPrecDecimal& b) {
  if (mpfr_unordered_p(a.v_, b.v_)) return std::partial_ordering::unordered;
  int c = mpfr_cmp(a.v_, b.v_);
  if (c < 0) return std::partial_ordering::less;
  if (c > 0) return std::partial_ordering::greater;
  return std::partial_ordering::equivalent;
}

HighPrecDecimal HighPrecDecimal::abs() const {
  HighPrecDecimal out(*this);
  mpfr_abs(out.v_, v_, MPFR_RNDN);
  return out;
}

HighPrecDecimal HighPrecDecimal::root(unsigned long q) const {
  if (q == 0) throw std::invalid_argument("zeroth root");
  if (sign() < 0 && q % 2 == 0) throw std::domain_error("even root of negative value");
  HighPrecDecimal out(digits_);
  mpfr_rootn_ui(out.v_, v_, q, MPFR_RNDN);
  return out;
}

HighPrecDecimal HighPrecDecimal::pow(long e) const {
  if (e < 0 && is_zero()) throw DivisionByZero("zero raised to a negative power");
  HighPrecDecimal out(digits_);
  mpfr_pow_si(out.v_, v_, e, MPFR_RNDN);
  return out;
}

HighPrecDecimal HighPrecDecimal::pow(double e) const {
  HighPrecDecimal out(digits_);
  HighPrecDecimal ex(e, digits_);
  mpfr_pow(out.v_, v_, ex.v_, MPFR_RNDN);
  return out;
}

Integer HighPrecDecimal::floor() const {
  Integer z;
  mpfr_get_z(z.get_mpz_t(), v_, MPFR_RNDD);
  return z;
}

std::string HighPrecDecimal::str(int digits) const {
  if (digits <= 0) digits = digits_;
  if (is_zero()) return "0.0";
  mpfr_exp_t exp = 0;
  std::unique_ptr<char, void (*)(char*)> s(
      mpfr_get_str(nullptr, &exp, 10, static_cast<std::size_t>(digits), v_, MPFR_RNDN),
      mpfr_free_str);
  std::string mant(s.get());
  bool negative = !mant.empty() && mant[0] == '-';
  if (negative) mant.erase(0, 1);
  // mpfr: value = 0.mant * 10^exp, so the leading digit has exponent exp-1.
  long e = static_cast<long>(exp) - 1;
  std::string out = negative ? "-" : "";
  long n = static_cast<long>(mant.size());
  if (e >= 0) {
    if (e + 1 < n) {
      out += mant.substr(0, static_cast<std::size_t>(e + 1)) + "." +
             mant.substr(static_cast<std::size_t>(e + 1));
    } else {
      out += mant;
      out.append(static_cast<std::size_t>(e + 1 - n), '0');
      out += ".0";
    }
  } else {
    out += "0.";
    out.append(static_cast<std::size_t>(-e - 1), '0');
    out += mant;
  }
  return out;
}

}  // namespace ddp
