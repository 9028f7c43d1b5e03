#include "ddp/rational.hpp"

#include <cctype>
#include <ostream>

namespace ddp {

Rational::Rational(const Integer& n, const Integer& d) : num_(n), den_(d) {
  normalize();
}

void Rational::normalize() {
  if (den_ == 0) throw DivisionByZero("rational with zero denominator");
  if (num_ == 0) {
    den_ = 1;
    return;
  }
  if (den_ < 0) {
    num_ = -num_;
    den_ = -den_;
  }
  Integer g;
  mpz_gcd(g.get_mpz_t(), num_.get_mpz_t(), den_.get_mpz_t());
  if (g != 1) {
    mpz_divexact(num_.get_mpz_t(), num_.get_mpz_t(), g.get_mpz_t());
    mpz_divexact(den_.get_mpz_t(), den_.get_mpz_t(), g.get_mpz_t());
  }
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

Integer integer_from(std::string_view digits) {
  return Integer(std::string(digits), 10);
}

}  // namespace

Rational Rational::parse(std::string_view text) {
  if (text.empty()) throw ParseError("empty number", 0);
  std::size_t pos = 0;
  bool negative = false;
  if (text[0] == '-' || text[0] == '+') {
    negative = text[0] == '-';
    pos = 1;
  }
  std::string_view body = text.substr(pos);

  if (auto slash = body.find('/'); slash != std::string_view::npos) {
    auto p = body.substr(0, slash);
    auto q = body.substr(slash + 1);
    if (!all_digits(p)) throw ParseError("bad numerator in '" + std::string(text) + "'", pos);
    if (!all_digits(q))
      throw ParseError("bad denominator in '" + std::string(text) + "'", pos + slash + 1);
    Integer n = integer_from(p);
    Integer d = integer_from(q);
    if (d == 0) throw DivisionByZero("zero denominator in '" + std::string(text) + "'");
    return Rational(negative ? Integer(-n) : n, d);
  }

  // decimal: digits [. digits] [e [+-] digits]
  std::size_t exp_at = body.find_first_of("eE");
  std::string_view mantissa = body.substr(0, exp_at);
  long exponent = 0;
  if (exp_at != std::string_view::npos) {
    std::string_view e = body.substr(exp_at + 1);
    bool eneg = false;
    if (!e.empty() && (e[0] == '-' || e[0] == '+')) {
      eneg = e[0] == '-';
      e.remove_prefix(1);
    }
    if (!all_digits(e) || e.size() > 9)
      throw ParseError("bad exponent in '" + std::string(text) + "'", pos + exp_at + 1);
    exponent = std::stol(std::string(e));
    if (eneg) exponent = -exponent;
  }
  std::size_t dot = mantissa.find('.');
  std::string_view ip = mantissa.substr(0, dot);
  std::string_view fp = dot == std::string_view::npos ? std::string_view{} : mantissa.substr(dot + 1);
  if ((ip.empty() && fp.empty()) || (!ip.empty() && !all_digits(ip)) ||
      (!fp.empty() && !all_digits(fp)) || (dot != std::string_view::npos && ip.empty() && fp.empty()))
    throw ParseError("malformed number '" + std::string(text) + "'", pos);
  Integer n = integer_from(std::string(ip.empty() ? "0" : ip) + std::string(fp));
  Rational r = Rational(n) * pow10(exponent - static_cast<long>(fp.size()));
  return negative ? -r : r;
}

Rational Rational::operator-() const { return Rational(-num_, den_, Canonical{}); }

Rational& Rational::operator+=(const Rational& rhs) {
  if (den_ == rhs.den_) {
    num_ += rhs.num_;
  } else {
    num_ = num_ * rhs.den_ + rhs.num_ * den_;
    den_ *= rhs.den_;
  }
  normalize();
  return *this;
}

Rational& Rational::operator-=(const Rational& rhs) {
  if (den_ == rhs.den_) {
    num_ -= rhs.num_;
  } else {
    num_ = num_ * rhs.den_ - rhs.num_ * den_;
    den_ *= rhs.den_;
  }
  normalize();
  return *this;
}

Rational& Rational::operator*=(const Rational& rhs) {
  num_ *= rhs.num_;
  den_ *= rhs.den_;
  normalize();
  return *this;
}

Rational& Rational::operator/=(const Rational& rhs) {
  if (rhs.num_ == 0) throw DivisionByZero("division by zero");
  Integer n = num_ * rhs.den_;
  Integer d = den_ * rhs.num_;
  num_ = std::move(n);
  den_ = std::move(d);
  normalize();
  return *this;
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  int c = a.den_ == b.den_ ? cmp(a.num_, b.num_) : cmp(a.num_ * b.den_, b.num_ * a.den_);
  if (c < 0) return std::strong_ordering::less;
  if (c > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::string Rational::str() const { return num_.get_str() + "/" + den_.get_str(); }

double Rational::to_double() const {
  mpq_t q;
  mpq_init(q);
  mpq_set_num(q, num_.get_mpz_t());
  mpq_set_den(q, den_.get_mpz_t());
  double d = mpq_get_d(q);
  mpq_clear(q);
  return d;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

Integer whole_part(const Rational& r) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), r.num().get_mpz_t(), r.den().get_mpz_t());
  return q;
}

Rational pow(const Rational& r, long e) {
  if (e == 0) return Rational(1);
  if (e < 0) {
    if (r.is_zero()) throw DivisionByZero("zero raised to a negative power");
    return Rational(1) / pow(r, -e);
  }
  Integer n, d;
  mpz_pow_ui(n.get_mpz_t(), r.num().get_mpz_t(), static_cast<unsigned long>(e));
  mpz_pow_ui(d.get_mpz_t(), r.den().get_mpz_t(), static_cast<unsigned long>(e));
  return Rational(n, d);
}

bool exact_root(const Rational& r, unsigned long q, Rational& out) {
  if (q == 0) throw std::invalid_argument("zeroth root");
  if (q == 1) {
    out = r;
    return true;
  }
  if (r.sign() < 0 && q % 2 == 0) return false;
  Integer an = r.num() < 0 ? Integer(-r.num()) : r.num();
  Integer rn, rd;
  if (mpz_root(rn.get_mpz_t(), an.get_mpz_t(), q) == 0) return false;
  if (mpz_root(rd.get_mpz_t(), r.den().get_mpz_t(), q) == 0) return false;
  out = Rational(r.sign() < 0 ? Integer(-rn) : rn, rd);
  return true;
}

Rational pow10(long e) {
  Integer p;
  mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(e < 0 ? -e : e));
  return e < 0 ? Rational(Integer(1), p) : Rational(p);
}

bool is_square_free(unsigned long n) {
  if (n == 0) return false;
  for (unsigned long f = 2; f * f <= n; ++f)
    if (n % (f * f) == 0) return false;
  return true;
}

Surd Surd::parse(std::string_view text) {
  std::string_view body = text;
  if (body == "1") return Surd{1};
  if (body.substr(0, 4) != "sqrt")
    throw ParseError("unsupported constant '" + std::string(text) + "'", 0);
  body.remove_prefix(4);
  if (body.size() >= 2 && body.front() == '(' && body.back() == ')')
    body = body.substr(1, body.size() - 2);
  if (!all_digits(body) || body.size() > 12)
    throw ParseError("unsupported constant '" + std::string(text) + "'", 4);
  unsigned long k = std::stoul(std::string(body));
  if (!is_square_free(k))
    throw std::domain_error("sqrt(" + std::to_string(k) + ") is not a square-free radicand");
  return Surd{k};
}

std::string Surd::str() const {
  return radicand == 1 ? std::string("1") : "sqrt" + std::to_string(radicand);
}

namespace {

// floor(log10 |x|) for x != 0.
long decimal_exponent(const Rational& ax) {
  long e = static_cast<long>(mpz_sizeinbase(ax.num().get_mpz_t(), 10)) -
           static_cast<long>(mpz_sizeinbase(ax.den().get_mpz_t(), 10));
  while (pow10(e) > ax) --e;
  while (pow10(e + 1) <= ax) ++e;
  return e;
}

Integer round_half_up(const Rational& x) {
  // x >= 0
  return whole_part(x + Rational(1, 2));
}

// round(sqrt(x)) for x >= 0.
Integer round_sqrt(const Rational& x) {
  Integer fl = whole_part(x);
  Integer s;
  mpz_sqrt(s.get_mpz_t(), fl.get_mpz_t());
  Rational half_up = Rational(s) + Rational(1, 2);
  if (x >= half_up * half_up) s += 1;
  return s;
}

std::string format_digits(const std::string& digits, long e, bool negative) {
  std::string out = negative ? "-" : "";
  long n = static_cast<long>(digits.size());
  if (e >= 0) {
    if (e + 1 < n) {
      out += digits.substr(0, static_cast<std::size_t>(e + 1));
      out += '.';
      out += digits.substr(static_cast<std::size_t>(e + 1));
    } else {
      out += digits;
      out.append(static_cast<std::size_t>(e + 1 - n), '0');
      out += ".0";
    }
  } else {
    out += "0.";
    out.append(static_cast<std::size_t>(-e - 1), '0');
    out += digits;
  }
  return out;
}

void check_digits(int digits) {
  if (digits < kMinDecimalDigits)
    throw std::invalid_argument("decimal precision must be at least 15 digits");
}

}  // namespace

std::string to_decimal(const Rational& a, int digits) {
  check_digits(digits);
  if (a.is_zero()) return "0.0";
  Rational ax = abs(a);
  long e = decimal_exponent(ax);
  Integer n = round_half_up(ax * pow10(digits - 1 - e));
  if (n == whole_part(pow10(digits))) {
    ++e;
    n = round_half_up(ax * pow10(digits - 1 - e));
  }
  return format_digits(n.get_str(), e, a.sign() < 0);
}

std::string to_decimal(const Surd& s, int digits) {
  check_digits(digits);
  Rational k(static_cast<long>(s.radicand));
  // 10^(2e) <= k < 10^(2e+2)
  long e = decimal_exponent(k) / 2;
  auto scaled = [&](long ex) { return k * pow10(2 * (digits - 1 - ex)); };
  Integer n = round_sqrt(scaled(e));
  if (n == whole_part(pow10(digits))) {
    ++e;
    n = round_sqrt(scaled(e));
  }
  return format_digits(n.get_str(), e, false);
}

}  // namespace ddp
