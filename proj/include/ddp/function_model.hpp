#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "ddp/expr.hpp"
#include "ddp/value.hpp"

namespace ddp {

/// Raised when a point lies outside an oracle's domain.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

struct Sample {
  Rational x;
  Value value;
};

/// Sorted samples of a univariate function on [-M, M].
class SampleTable {
 public:
  SampleTable() = default;
  /// Input may be unsorted; duplicate points must carry equal values.
  explicit SampleTable(std::vector<Sample> entries, std::optional<Rational> bound = std::nullopt);

  const std::vector<Sample>& entries() const noexcept { return entries_; }
  const Rational& bound() const noexcept { return bound_; }
  std::size_t size() const noexcept { return entries_.size(); }

  /// Exact recall of a stored point, nullptr when absent.
  const Value* find(const Rational& x) const;
  /// Replaces the value at a stored point (used to build fixtures).
  void set(const Rational& x, Value v);

 private:
  std::vector<Sample> entries_;
  Rational bound_{1};
};

/// Parses the two-column "x,g" CSV format; errors name the offending line.
SampleTable load_samples(std::istream& in);
SampleTable load_samples_file(const std::string& path);
void write_samples_csv(std::ostream& out, const SampleTable& table, std::string_view value_column);

/**
 * Q-linear map on the rational span of {1, sqrt(d1), ..., sqrt(dm)}.
 *
 * The radicands are distinct square-free integers, so the basis is linearly
 * independent over Q and A(sum q_i b_i) = sum q_i s_i is well defined.
 */
class HamelAdditive {
 public:
  HamelAdditive(std::vector<Surd> basis, std::vector<Rational> slopes);
  /// Inline form "basis=1,sqrt2;slopes=0,5".
  static HamelAdditive parse(std::string_view spec);

  const std::vector<Surd>& basis() const noexcept { return basis_; }
  const std::vector<Rational>& slopes() const noexcept { return slopes_; }
  std::size_t size() const noexcept { return basis_.size(); }

  std::string str() const;

 private:
  std::vector<Surd> basis_;
  std::vector<Rational> slopes_;
};

/// Rational coordinates of a point of the span of a HamelAdditive basis.
struct SpanPoint {
  std::vector<Rational> coords;

  SpanPoint operator+(const SpanPoint& other) const;
  /// True iff every irrational coordinate is zero.
  bool is_rational() const;
};

/// sum q_i s_i, exact.
Rational apply_additive(const HamelAdditive& a, const SpanPoint& p);
/// sum q_i b_i as a decimal (exact when the point is rational).
Value span_value(const HamelAdditive& a, const SpanPoint& p, int digits);

enum class Interpolation { None, Linear };

/**
 * A univariate function g: an expression, a sample table, or an expression
 * plus a Hamel-slice additive part.
 */
class FunctionOracle {
 public:
  struct Expression {
    Expr expr;
    std::string text;
  };
  struct Table {
    SampleTable table;
    Interpolation policy = Interpolation::None;
  };
  struct Composite {
    Expression part;
    HamelAdditive additive;
  };

  static FunctionOracle expression(std::string_view text);
  static FunctionOracle expression(Expr e);
  static FunctionOracle table(SampleTable t, Interpolation policy = Interpolation::None);
  static FunctionOracle composite(std::string_view text, HamelAdditive additive);

  Value evaluate(const Rational& x, int digits = kDefaultDecimalDigits) const;
  /// Span-point evaluation; only composite oracles (or rational points) qualify.
  Value evaluate(const SpanPoint& p, int digits = kDefaultDecimalDigits) const;

  /// Expression that determines the double difference, when one exists.
  /// For composites the additive part is dropped since it has no effect on it.
  const Expression* expression_part() const;
  const HamelAdditive* additive_part() const;
  const SampleTable* table_part() const;
  bool is_approximate_table() const;

  std::string describe() const;

 private:
  using Variant = std::variant<Expression, Table, Composite>;
  explicit FunctionOracle(Variant v) : v_(std::move(v)) {}
  Variant v_;
};

}  // namespace ddp
