#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ddp/function_model.hpp"
#include "ddp/modulus.hpp"

namespace ddp {

/// sum q_i sqrt(d_i), e.g. "sqrt2-1" or "3/2*sqrt5+1/3".
struct SurdSum {
  std::vector<std::pair<Rational, Surd>> terms;

  static SurdSum parse(std::string_view text);
  HighPrecDecimal value(int digits) const;
  std::string str() const;
};

/**
 * g = f + A on a rational grid.
 *
 * f(r) = g(r) - c r with c = g(1) - g(0), so f(0) = f(1) = g(0). On Q the
 * additive part is the linear rule A(r) = c r; off Q it is only exhibited at
 * individual points through extend_f.
 */
struct Decomposition {
  Value slope;
  SampleTable f_table;
  std::string source;
  std::shared_ptr<const FunctionOracle> g;
  Grid grid;
  std::optional<ModulusProfile> F_profile;
  std::optional<ModulusProfile> f_profile;
  std::vector<BoundReport> certificates;

  bool all_certificates_hold() const;
  /// f at a grid point; DomainError when off-grid.
  const Value& f_at(const Rational& r) const;
};

struct DecomposeOptions {
  std::vector<Rational> ladder = dyadic_ladder(2, 10);
  Rational slack = kDefaultSlack;
  int digits = kDefaultDecimalDigits;
  /// Replaces the empirical F profile used for the certificates.
  std::optional<ModulusProfile> F_override;
};

Decomposition decompose_on_rationals(std::shared_ptr<const FunctionOracle> g, const Grid& grid,
                                     const DecomposeOptions& options = {});

struct AdditivityReport {
  bool holds = true;
  std::size_t checked = 0;
  std::vector<std::pair<Rational, Rational>> failures;
};

/// A(x+y) = A(x) + A(y) for A = g - f at each on-grid pair.
AdditivityReport verify_additivity(const Decomposition& d, const std::vector<std::pair<Rational, Rational>>& pairs);

struct ExtensionStep {
  Rational approximant;
  HighPrecDecimal value;
  Value error_bound;
};

struct ExtensionResult {
  std::string target;
  HighPrecDecimal value;
  Value error_bound;
  std::size_t convergent_count = 0;
  Rational approximant;
  Rational delta;
  std::string omega_kind;
  std::vector<ExtensionStep> history;  // every approximant tried, coarse to fine
};

/**
 * f at an irrational point as the limit of f on decimal truncations y_d.
 *
 * |f(t) - f(y_d)| <= 3 omega(F; delta; [-M,M]^2) whenever |t - y_d| <= delta,
 * so the loop stops at the first truncation whose certified bound is within
 * `tolerance`. omega bounds come from `F_modulus`: analytic entries directly,
 * empirical entries with the slack factor and only at deltas no finer than
 * their grid step.
 */
ExtensionResult extend_f(const Decomposition& d, const SurdSum& target, const Rational& tolerance,
                         const ModulusProfile& F_modulus, int digits = kDefaultDecimalDigits,
                         const Rational& slack = kDefaultSlack);

/// A(t) = g(t) - f(t) at an extended point next to the on-Q rule c t.
struct AdditiveExhibit {
  std::string target;
  HighPrecDecimal g_value;
  HighPrecDecimal A_value;
  HighPrecDecimal rule_value;  // c t
  HighPrecDecimal deviation;   // A(t) - c t
  Value error_bound;           // inherited from the extension of f
};

/// Composite oracles are evaluated exactly on their span (the target must
/// lie in it); expressions are evaluated at the decimal value of t.
AdditiveExhibit exhibit_additive(const Decomposition& d, const SurdSum& target, const ExtensionResult& extension,
                                 int digits = kDefaultDecimalDigits);

/// Analytic profile of the double difference over [-M,M]^2 when one exists.
std::optional<ModulusProfile> analytic_F_profile(const FunctionOracle& g, const Rational& M,
                                                 const std::vector<Rational>& ladder,
                                                 int digits = kDefaultDecimalDigits);

/// 10^-j for j = first..last.
std::vector<Rational> decimal_ladder(int first, int last);

struct LargeDeltaCheck {
  Rational delta;
  double omega = 0;
  double two_sup = 0;
  double bound = 0;  // large_delta_K * delta^alpha
  bool holds = false;
};

struct HolderFit {
  bool constant = false;
  bool clamped = false;
  double alpha_hat = 0;
  double K_hat = 0;
  Rational delta_min, delta_max;
  double residual = 0;
  double fit_slack = 0;
  double f_sup = 0;
  double large_delta_K = 0;
  std::size_t points = 0;
  std::vector<LargeDeltaCheck> large_delta;
};

/**
 * Least-squares fit of log omega = log K + alpha log delta over profile
 * entries with 0 < delta < 1/2 and omega > 0; alpha is clamped to (0, 1].
 * The large-delta constant 2^(1+alpha) sup|f| is checked against entries
 * with 1/2 <= delta <= 2M.
 */
HolderFit holder_fit(const ModulusProfile& f_profile, const Value& f_sup, const Rational& M);

nlohmann::json to_json(const Decomposition& d);
nlohmann::json to_json(const ExtensionResult& e);
nlohmann::json to_json(const HolderFit& h);
nlohmann::json to_json(const AdditivityReport& a);
nlohmann::json to_json(const AdditiveExhibit& a);

}  // namespace ddp
