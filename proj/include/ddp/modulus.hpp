#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "ddp/function_model.hpp"
#include "ddp/value.hpp"

namespace ddp {

/// Rational lattice lo + j*step on [lo, hi] (dimension 1) or [lo, hi]^2.
class Grid {
 public:
  Grid(Rational lo, Rational hi, Rational step, int dimension);
  /// [-M, M] or [-M, M]^2; M >= 1.
  static Grid symmetric(const Rational& M, const Rational& step, int dimension = 1);

  const Rational& lo() const noexcept { return lo_; }
  const Rational& hi() const noexcept { return hi_; }
  const Rational& step() const noexcept { return step_; }
  int dimension() const noexcept { return dimension_; }

  /// Points along one axis, increasing.
  std::vector<Rational> axis() const;
  std::size_t axis_size() const;
  bool contains(const Rational& x) const;
  bool on_lattice(const Rational& x) const;
  Grid with_dimension(int dimension) const { return Grid(lo_, hi_, step_, dimension); }
  /// delta^2 <= diam^2, the admissible range for a modulus query.
  bool within_diameter(const Rational& delta) const;

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  Rational lo_, hi_, step_;
  int dimension_;
};

/// Values of a bivariate function on a two-dimensional grid, row-major in x.
struct BivariateTable {
  Grid grid;
  std::vector<Value> values;

  const Value& at(std::size_t i, std::size_t j) const { return values[i * grid.axis_size() + j]; }
};

/// g at every grid point (dimension 1).
SampleTable sample_on_grid(const FunctionOracle& g, const Grid& grid, int digits = kDefaultDecimalDigits);

/// F(x,y) = g(x+y) - g(x) - g(y) on the grid; g is sampled on [2 lo, 2 hi].
BivariateTable double_difference_table(const FunctionOracle& g, const Grid& grid,
                                       int digits = kDefaultDecimalDigits);

/**
 * Sup |f(x) - f(y)| over grid pairs with |x - y| <= delta.
 *
 * Every grid point must be stored in `samples`. The result is a lower bound
 * for the true modulus on the continuum. Grid points are rational, so this
 * is also the rational-point modulus; `rationals_only` exists to say so.
 */
Value empirical_modulus(const SampleTable& samples, const Rational& delta, const Grid& grid,
                        bool rationals_only = true);

/// Two-dimensional version with Euclidean distance, compared exactly as
/// |dx|^2 + |dy|^2 <= delta^2.
Value empirical_modulus(const BivariateTable& table, const Rational& delta);

/// Closed-form moduli for the test families.
struct AbsPowerFamily {  // |x|^alpha on [-M, M], 0 < alpha <= 1
  Rational alpha;
  Rational M;
};
struct LinearFamily {  // c x on any interval
  Rational slope;
};
struct QuadraticFamily {  // a x^2 + b x on [lo, hi]
  Rational a, b, lo, hi;
};
struct BilinearFamily {  // c x y on [lo, hi]^2 with lo = 0 or lo = -hi
  Rational c, lo, hi;
};
using AnalyticFamily = std::variant<AbsPowerFamily, LinearFamily, QuadraticFamily, BilinearFamily>;

std::string family_name(const AnalyticFamily& family);

/**
 * Exact modulus of continuity of a family member.
 *
 *   |x|^a on [-M,M]:     min(delta, M)^a
 *   c x:                 |c| delta
 *   a x^2 + b x [lo,hi]: largest range over the windows of length delta
 *                        touching either endpoint (the function is convex or
 *                        concave, so one of those windows is extremal)
 *   c x y on [lo,L]^2:   |c| (sqrt(2) L delta - delta^2 / 2), for
 *                        delta <= L / sqrt(2); steepest ascent from the corner
 *                        (L, L) along the diagonal.
 *
 * Throws std::domain_error outside the documented delta range.
 */
Value analytic_modulus(const AnalyticFamily& family, const Rational& delta, int digits = kDefaultDecimalDigits);

/// Analytic family of F(x,y) = g(x+y) - g(x) - g(y) on [-M,M]^2 when g is a
/// polynomial of degree <= 2 (F = 2 a x y); nullopt otherwise.
std::optional<AnalyticFamily> double_difference_family(const FunctionOracle& g, const Rational& M);

enum class OmegaKind { Empirical, Analytic };
std::string to_string(OmegaKind kind);

struct ProfileEntry {
  Rational delta;
  Value omega;
  OmegaKind kind = OmegaKind::Empirical;
};

/// delta -> omega over a ladder; the first entry is always (0, 0).
class ModulusProfile {
 public:
  ModulusProfile(std::string source, Grid grid, std::vector<ProfileEntry> entries);

  const std::string& source() const noexcept { return source_; }
  const Grid& grid() const noexcept { return grid_; }
  const std::vector<ProfileEntry>& entries() const noexcept { return entries_; }

  const ProfileEntry* find(const Rational& delta) const;
  /// Smallest entry with delta_e >= delta (a valid upper bound of omega at
  /// delta by monotonicity), nullptr if none.
  const ProfileEntry* ceiling(const Rational& delta) const;
  bool all_analytic() const;

 private:
  std::string source_;
  Grid grid_;
  std::vector<ProfileEntry> entries_;
};

/// 2^-j for j = first..last.
std::vector<Rational> dyadic_ladder(int first = 2, int last = 10);

ModulusProfile empirical_profile(const SampleTable& samples, const Grid& grid, const std::vector<Rational>& ladder,
                                 std::string source);
ModulusProfile empirical_profile(const BivariateTable& table, const std::vector<Rational>& ladder,
                                 std::string source);
ModulusProfile analytic_profile(const AnalyticFamily& family, const Grid& grid, const std::vector<Rational>& ladder,
                                std::string source, int digits = kDefaultDecimalDigits);

/// Report ids on the wire are "lemma_313", "dd_32" and "f_321".
enum class BoundId { ChainLemma, GridModulus, DecompositionModulus };
std::string to_string(BoundId id);

struct AuxCheck {
  std::string name;
  Value lhs;
  Value rhs;
  bool holds = false;
};

/**
 * One checked inequality lhs <= slack_factor * rhs.
 *
 * slack = slack_factor * rhs - lhs and holds = (slack >= -tolerance). The
 * tolerance is zero for exact comparisons and 10^-(digits-10) otherwise.
 * Auxiliary checks record intermediate inequalities of the same derivation.
 */
struct BoundReport {
  BoundId id;
  Value lhs;
  Value rhs;
  Value slack;
  Value tolerance;
  Rational slack_factor{1};
  bool holds = false;
  nlohmann::json metadata = nlohmann::json::object();
  std::vector<AuxCheck> auxiliary;

  bool all_hold() const;
};

BoundReport make_report(BoundId id, Value lhs, Value rhs, const Rational& slack_factor, int digits);

inline const Rational kDefaultSlack{105, 100};

struct OmegaBound {
  Value value;
  std::string kind;  // "analytic", "empirical", ...
};

/// omega(G; p/n; [0,1]^2) by brute force on the grid of step 1/n, which
/// contains every point the chain argument touches.
OmegaBound unit_square_omega(const FunctionOracle& g, const Integer& p, const Integer& n,
                             int digits = kDefaultDecimalDigits);
/// Same quantity from the closed form when g is a polynomial of degree <= 2.
std::optional<OmegaBound> unit_square_omega_analytic(const FunctionOracle& g, const Integer& p, const Integer& n,
                                                     int digits = kDefaultDecimalDigits);

/// |h(p/n)| <= 2 p |h(1)| / n + 2 omega_G, plus the sharper intermediate
/// form and the two coefficient inequalities as auxiliary checks.
BoundReport lemma_bound_check(const FunctionOracle& g, const Integer& p, const Integer& n,
                              const OmegaBound& omega_G, int digits = kDefaultDecimalDigits);

/// Precomputed samples for the lemma-level inequality on one grid.
class DDBoundContext {
 public:
  DDBoundContext(const FunctionOracle& g, const Grid& grid, int digits = kDefaultDecimalDigits);

  const Grid& grid() const { return grid_; }
  const SampleTable& g_samples() const { return g_samples_; }
  const BivariateTable& F_table() const { return F_; }
  const Value& h1() const { return h1_; }
  const std::optional<AnalyticFamily>& F_family() const { return family_; }
  int digits() const { return digits_; }

 private:
  Grid grid_;
  int digits_;
  SampleTable g_samples_;
  BivariateTable F_;
  Value h1_;
  std::optional<AnalyticFamily> family_;
};

/**
 * omega_Q(g; delta; [-M,M]) <= 2 delta |g(1) - g(0)| + 3 omega(F; delta; [-M,M]^2).
 *
 * The left side is the grid modulus of g. The F term is analytic when g is a
 * polynomial of degree <= 2 and otherwise the grid modulus of F, in which case
 * the slack factor applies. `omega_F_override` replaces the F term.
 */
BoundReport dd_bound_check(const DDBoundContext& ctx, const Rational& delta,
                           const std::optional<OmegaBound>& omega_F_override = std::nullopt,
                           const Rational& slack = kDefaultSlack);
BoundReport dd_bound_check(const FunctionOracle& g, const Rational& delta, const Rational& M, const Grid& grid,
                           const Rational& slack = kDefaultSlack, int digits = kDefaultDecimalDigits);

/// omega(f; delta; [-M,M]) <= 3 omega(F; delta; [-M,M]^2). When both profiles
/// are empirical the F grid must be at least as fine and the slack applies.
BoundReport f_bound_check(const ModulusProfile& F_profile, const ModulusProfile& f_profile, const Rational& delta,
                          const Rational& slack = kDefaultSlack, int digits = kDefaultDecimalDigits);

}  // namespace ddp
