#include "ddp/value.hpp"

#include <algorithm>

namespace ddp {

HighPrecDecimal Value::to_decimal(int digits) const {
  if (const auto* d = decimal_if()) return *d;
  return HighPrecDecimal(exact(), digits);
}

int Value::digits() const {
  if (const auto* d = decimal_if()) return d->digits();
  return 0;
}

int Value::sign() const {
  if (const auto* d = decimal_if()) return d->sign();
  return exact().sign();
}

double Value::to_double() const {
  if (const auto* d = decimal_if()) return d->to_double();
  return exact().to_double();
}

Value Value::abs() const {
  if (const auto* d = decimal_if()) return d->abs();
  return ddp::abs(exact());
}

Value Value::operator-() const {
  if (const auto* d = decimal_if()) return -*d;
  return -exact();
}

namespace {

int common_digits(const Value& a, const Value& b) {
  return std::max({a.digits(), b.digits(), kMinDecimalDigits});
}

template <typename ExactOp, typename DecOp>
Value combine(const Value& a, const Value& b, ExactOp exact_op, DecOp dec_op) {
  if (a.is_exact() && b.is_exact()) return exact_op(a.exact(), b.exact());
  int d = common_digits(a, b);
  return dec_op(a.to_decimal(d), b.to_decimal(d));
}

}  // namespace

Value operator+(const Value& a, const Value& b) {
  return combine(a, b, [](auto& x, auto& y) { return Value(x + y); },
                 [](auto x, auto y) { return Value(x + y); });
}

Value operator-(const Value& a, const Value& b) {
  return combine(a, b, [](auto& x, auto& y) { return Value(x - y); },
                 [](auto x, auto y) { return Value(x - y); });
}

Value operator*(const Value& a, const Value& b) {
  return combine(a, b, [](auto& x, auto& y) { return Value(x * y); },
                 [](auto x, auto y) { return Value(x * y); });
}

Value operator/(const Value& a, const Value& b) {
  return combine(a, b, [](auto& x, auto& y) { return Value(x / y); },
                 [](auto x, auto y) { return Value(x / y); });
}

bool operator==(const Value& a, const Value& b) {
  if (a.is_exact() && b.is_exact()) return a.exact() == b.exact();
  int d = common_digits(a, b);
  return a.to_decimal(d) == b.to_decimal(d);
}

std::partial_ordering operator<=>(const Value& a, const Value& b) {
  if (a.is_exact() && b.is_exact()) return a.exact() <=> b.exact();
  int d = common_digits(a, b);
  return a.to_decimal(d) <=> b.to_decimal(d);
}

std::string Value::str() const {
  if (const auto* d = decimal_if()) return d->str();
  return exact().str();
}

Value max(const Value& a, const Value& b) { return a < b ? b : a; }

bool approx_equal(const Value& a, const Value& b, const Value& tol) {
  return (a - b).abs() <= tol;
}

Rational decimal_tolerance(int digits) { return pow10(-(digits - 10)); }

}  // namespace ddp
