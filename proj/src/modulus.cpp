#include "ddp/modulus.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ddp/euclid_chain.hpp"
#include "ddp/identity.hpp"
#include "ddp/json_io.hpp"

namespace ddp {

// ---------------------------------------------------------------------------
// Grid

Grid::Grid(Rational lo, Rational hi, Rational step, int dimension)
    : lo_(std::move(lo)), hi_(std::move(hi)), step_(std::move(step)), dimension_(dimension) {
  if (dimension_ != 1 && dimension_ != 2) throw std::invalid_argument("grid dimension must be 1 or 2");
  if (!(hi_ > lo_)) throw std::invalid_argument("grid needs lo < hi");
  if (step_.sign() <= 0) throw std::invalid_argument("grid step must be positive");
  if (!((hi_ - lo_) / step_).is_integer())
    throw std::invalid_argument("grid step " + step_.str() + " does not divide the interval length");
}

Grid Grid::symmetric(const Rational& M, const Rational& step, int dimension) {
  if (M < Rational(1)) throw std::invalid_argument("M must be >= 1");
  return Grid(-M, M, step, dimension);
}

std::size_t Grid::axis_size() const { return ((hi_ - lo_) / step_).num().get_ui() + 1; }

std::vector<Rational> Grid::axis() const {
  std::vector<Rational> out;
  std::size_t n = axis_size();
  out.reserve(n);
  for (std::size_t j = 0; j < n; ++j) out.push_back(lo_ + step_ * Rational(static_cast<long>(j)));
  return out;
}

bool Grid::contains(const Rational& x) const { return x >= lo_ && x <= hi_; }

bool Grid::on_lattice(const Rational& x) const { return contains(x) && ((x - lo_) / step_).is_integer(); }

bool Grid::within_diameter(const Rational& delta) const {
  Rational len = hi_ - lo_;
  if (dimension_ == 1) return delta <= len;
  return delta * delta <= Rational(2) * len * len;
}

// ---------------------------------------------------------------------------
// Sampling

SampleTable sample_on_grid(const FunctionOracle& g, const Grid& grid, int digits) {
  std::vector<Sample> entries;
  for (const auto& x : grid.axis()) entries.push_back({x, g.evaluate(x, digits)});
  return SampleTable(std::move(entries));
}

BivariateTable double_difference_table(const FunctionOracle& g, const Grid& grid, int digits) {
  Grid grid2 = grid.with_dimension(2);
  const auto xs = grid2.axis();
  const std::size_t n = xs.size();
  MemoOracle memo(g, digits);
  BivariateTable t{grid2, {}};
  t.values.reserve(n * n);
  std::vector<Value> gx;
  gx.reserve(n);
  for (const auto& x : xs) gx.push_back(memo(x));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) t.values.push_back(memo(xs[i] + xs[j]) - gx[i] - gx[j]);
  return t;
}

// ---------------------------------------------------------------------------
// Empirical modulus

namespace {

// Exact sup of |v_i - v_j| over the pairs produced by `each`. A double pass
// finds the approximate maximum; only pairs within a wide margin of it are
// compared exactly.
template <typename EachPair>
Value sup_abs_diff(const std::vector<Value>& vals, EachPair&& each) {
  std::vector<double> approx;
  approx.reserve(vals.size());
  double maxabs = 0;
  bool all_exact = true;
  for (const auto& v : vals) {
    approx.push_back(v.to_double());
    maxabs = std::max(maxabs, std::fabs(approx.back()));
    all_exact = all_exact && v.is_exact();
  }
  double best = 0;
  each([&](std::size_t i, std::size_t j) { best = std::max(best, std::fabs(approx[i] - approx[j])); });
  if (best == 0 && all_exact &&
      std::all_of(vals.begin(), vals.end(), [&](const Value& v) { return v == vals.front(); }))
    return Value(Rational());
  const double threshold = best - 1e-9 * (1.0 + maxabs);
  Value out = Rational();
  each([&](std::size_t i, std::size_t j) {
    if (std::fabs(approx[i] - approx[j]) < threshold) return;
    Value d = (vals[i] - vals[j]).abs();
    if (d > out) out = std::move(d);
  });
  return out;
}

}  // namespace

Value empirical_modulus(const SampleTable& samples, const Rational& delta, const Grid& grid, bool rationals_only) {
  (void)rationals_only;  // grid points are rational: omega and omega_Q coincide here
  if (grid.dimension() != 1) throw std::invalid_argument("one-dimensional modulus needs a 1-D grid");
  if (delta.sign() <= 0 || !grid.within_diameter(delta))
    throw std::domain_error("delta " + delta.str() + " outside (0, diam]");
  const auto xs = grid.axis();
  if (xs.empty()) throw std::domain_error("empty pair set");
  std::vector<Value> vals;
  vals.reserve(xs.size());
  for (const auto& x : xs) {
    const Value* v = samples.find(x);
    if (!v) throw DomainError("grid point " + x.str() + " missing from samples");
    vals.push_back(*v);
  }
  const std::size_t w = whole_part(delta / grid.step()).get_ui();
  const std::size_t n = vals.size();
  return sup_abs_diff(vals, [&](auto&& fn) {
    for (std::size_t d = 1; d <= w && d < n; ++d)
      for (std::size_t i = 0; i + d < n; ++i) fn(i, i + d);
  });
}

Value empirical_modulus(const BivariateTable& table, const Rational& delta) {
  const Grid& grid = table.grid;
  if (grid.dimension() != 2) throw std::invalid_argument("bivariate modulus needs a 2-D grid");
  if (delta.sign() <= 0 || !grid.within_diameter(delta))
    throw std::domain_error("delta " + delta.str() + " outside (0, diam]");
  const std::size_t n = grid.axis_size();
  if (table.values.size() != n * n) throw std::invalid_argument("bivariate table does not match grid");

  // lattice offsets (a, b) with a^2 + b^2 <= (delta/step)^2, one of each +/- pair
  Rational radius = delta / grid.step();
  const long r = whole_part(radius).get_si();
  const Integer r2n = radius.num() * radius.num();
  const Integer r2d = radius.den() * radius.den();
  std::vector<std::pair<long, long>> offsets;
  for (long a = 0; a <= r; ++a)
    for (long b = -r; b <= r; ++b) {
      if (a == 0 && b <= 0) continue;
      if (Integer(a * a + b * b) * r2d <= r2n) offsets.emplace_back(a, b);
    }
  const long ln = static_cast<long>(n);
  return sup_abs_diff(table.values, [&](auto&& fn) {
    for (const auto& [a, b] : offsets) {
      for (long i = 0; i + a < ln; ++i) {
        const long jlo = std::max(0L, -b);
        const long jhi = std::min(ln, ln - b);
        for (long j = jlo; j < jhi; ++j)
          fn(static_cast<std::size_t>(i * ln + j), static_cast<std::size_t>((i + a) * ln + (j + b)));
      }
    }
  });
}

// ---------------------------------------------------------------------------
// Analytic modulus

std::string family_name(const AnalyticFamily& family) {
  return std::visit(
      [](const auto& f) -> std::string {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, AbsPowerFamily>)
          return "|x|^(" + f.alpha.str() + ") on [-" + f.M.str() + "," + f.M.str() + "]";
        else if constexpr (std::is_same_v<T, LinearFamily>)
          return "linear slope " + f.slope.str();
        else if constexpr (std::is_same_v<T, QuadraticFamily>)
          return "(" + f.a.str() + ")x^2 + (" + f.b.str() + ")x on [" + f.lo.str() + "," + f.hi.str() + "]";
        else
          return "(" + f.c.str() + ")xy on [" + f.lo.str() + "," + f.hi.str() + "]^2";
      },
      family);
}

namespace {

Value rational_power(const Rational& base, const Rational& exponent, int digits) {
  Expr e = Expr::power(Expr::var(), exponent);
  return evaluate(e, Value(base), digits);
}

Value quadratic_range(const QuadraticFamily& q, const Rational& lo, const Rational& hi) {
  auto phi = [&](const Rational& x) { return q.a * x * x + q.b * x; };
  Rational mx = std::max(phi(lo), phi(hi));
  Rational mn = std::min(phi(lo), phi(hi));
  if (!q.a.is_zero()) {
    Rational vertex = -q.b / (Rational(2) * q.a);
    if (vertex > lo && vertex < hi) {
      mx = std::max(mx, phi(vertex));
      mn = std::min(mn, phi(vertex));
    }
  }
  return mx - mn;
}

}  // namespace

Value analytic_modulus(const AnalyticFamily& family, const Rational& delta, int digits) {
  if (delta.sign() < 0) throw std::domain_error("negative delta");
  return std::visit(
      [&](const auto& f) -> Value {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, AbsPowerFamily>) {
          if (f.alpha.sign() <= 0 || f.alpha > Rational(1))
            throw std::domain_error("|x|^alpha family needs 0 < alpha <= 1");
          if (delta > Rational(2) * f.M) throw std::domain_error("delta exceeds the diameter");
          return rational_power(std::min(delta, f.M), f.alpha, digits);
        } else if constexpr (std::is_same_v<T, LinearFamily>) {
          return abs(f.slope) * delta;
        } else if constexpr (std::is_same_v<T, QuadraticFamily>) {
          Rational len = f.hi - f.lo;
          Rational w = std::min(delta, len);
          return max(quadratic_range(f, f.lo, f.lo + w), quadratic_range(f, f.hi - w, f.hi));
        } else {
          if (!(f.lo.is_zero() || f.lo == -f.hi) || f.hi.sign() <= 0)
            throw std::domain_error("bilinear family needs [0,L]^2 or [-L,L]^2");
          if (Rational(2) * delta * delta > f.hi * f.hi)
            throw std::domain_error("bilinear closed form needs delta <= L/sqrt(2)");
          if (f.c.is_zero() || delta.is_zero()) return Rational();
          HighPrecDecimal root2(Surd{2}, digits);
          HighPrecDecimal lin = root2 * HighPrecDecimal(f.hi * delta, digits);
          HighPrecDecimal quad(delta * delta / Rational(2), digits);
          return HighPrecDecimal(abs(f.c), digits) * (lin - quad);
        }
      },
      family);
}

std::optional<AnalyticFamily> double_difference_family(const FunctionOracle& g, const Rational& M) {
  const auto* part = g.expression_part();
  if (!part) return std::nullopt;
  auto poly = polynomial_coefficients(part->expr);
  if (!poly || poly->size() > 3) return std::nullopt;
  Rational a = poly->size() == 3 ? (*poly)[2] : Rational();
  return BilinearFamily{Rational(2) * a, -M, M};
}

std::string to_string(OmegaKind kind) { return kind == OmegaKind::Analytic ? "analytic" : "empirical"; }

// ---------------------------------------------------------------------------
// Profiles

ModulusProfile::ModulusProfile(std::string source, Grid grid, std::vector<ProfileEntry> entries)
    : source_(std::move(source)), grid_(std::move(grid)), entries_(std::move(entries)) {
  if (entries_.empty() || !entries_.front().delta.is_zero())
    entries_.insert(entries_.begin(), ProfileEntry{Rational(), Value(), OmegaKind::Analytic});
  if (!entries_.front().omega.is_zero()) throw std::invalid_argument("profile must have omega(0) = 0");
  for (std::size_t i = 1; i < entries_.size(); ++i) {
    if (!(entries_[i].delta > entries_[i - 1].delta))
      throw std::invalid_argument("profile deltas must be strictly increasing");
    if (entries_[i].omega < entries_[i - 1].omega)
      throw std::invalid_argument("profile omega must be nondecreasing in delta");
  }
}

const ProfileEntry* ModulusProfile::find(const Rational& delta) const {
  for (const auto& e : entries_)
    if (e.delta == delta) return &e;
  return nullptr;
}

const ProfileEntry* ModulusProfile::ceiling(const Rational& delta) const {
  for (const auto& e : entries_)
    if (e.delta >= delta) return &e;
  return nullptr;
}

bool ModulusProfile::all_analytic() const {
  return std::all_of(entries_.begin() + 1, entries_.end(),
                     [](const ProfileEntry& e) { return e.kind == OmegaKind::Analytic; });
}

std::vector<Rational> dyadic_ladder(int first, int last) {
  std::vector<Rational> out;
  for (int j = first; j <= last; ++j) out.push_back(Rational(Integer(1), Integer(1) << j));
  return out;
}

namespace {

std::vector<Rational> sorted_positive(std::vector<Rational> ladder) {
  std::sort(ladder.begin(), ladder.end());
  ladder.erase(std::unique(ladder.begin(), ladder.end()), ladder.end());
  ladder.erase(std::remove_if(ladder.begin(), ladder.end(), [](const Rational& d) { return d.sign() <= 0; }),
               ladder.end());
  return ladder;
}

}  // namespace

ModulusProfile empirical_profile(const SampleTable& samples, const Grid& grid, const std::vector<Rational>& ladder,
                                 std::string source) {
  std::vector<ProfileEntry> entries;
  for (const auto& d : sorted_positive(ladder))
    entries.push_back({d, empirical_modulus(samples, d, grid), OmegaKind::Empirical});
  return ModulusProfile(std::move(source), grid, std::move(entries));
}

ModulusProfile empirical_profile(const BivariateTable& table, const std::vector<Rational>& ladder,
                                 std::string source) {
  std::vector<ProfileEntry> entries;
  for (const auto& d : sorted_positive(ladder))
    entries.push_back({d, empirical_modulus(table, d), OmegaKind::Empirical});
  return ModulusProfile(std::move(source), table.grid, std::move(entries));
}

ModulusProfile analytic_profile(const AnalyticFamily& family, const Grid& grid, const std::vector<Rational>& ladder,
                                std::string source, int digits) {
  std::vector<ProfileEntry> entries;
  for (const auto& d : sorted_positive(ladder))
    entries.push_back({d, analytic_modulus(family, d, digits), OmegaKind::Analytic});
  return ModulusProfile(std::move(source), grid, std::move(entries));
}

// ---------------------------------------------------------------------------
// Bound reports

std::string to_string(BoundId id) {
  switch (id) {
    case BoundId::ChainLemma: return "lemma_313";
    case BoundId::GridModulus: return "dd_32";
    case BoundId::DecompositionModulus: return "f_321";
  }
  return "unknown";
}

bool BoundReport::all_hold() const {
  return holds && std::all_of(auxiliary.begin(), auxiliary.end(), [](const AuxCheck& a) { return a.holds; });
}

namespace {

Value tolerance_for(const Value& a, const Value& b, int digits) {
  if (a.is_exact() && b.is_exact()) return Rational();
  return decimal_tolerance(digits);
}

AuxCheck aux(std::string name, Value lhs, Value rhs, int digits) {
  Value tol = tolerance_for(lhs, rhs, digits);
  bool ok = rhs - lhs >= -tol;
  return AuxCheck{std::move(name), std::move(lhs), std::move(rhs), ok};
}

}  // namespace

BoundReport make_report(BoundId id, Value lhs, Value rhs, const Rational& slack_factor, int digits) {
  BoundReport r{id, std::move(lhs), std::move(rhs), {}, {}, slack_factor, false, nlohmann::json::object(), {}};
  r.slack = Value(slack_factor) * r.rhs - r.lhs;
  r.tolerance = tolerance_for(r.lhs, r.rhs, digits);
  r.holds = r.slack >= -r.tolerance;
  return r;
}

OmegaBound unit_square_omega(const FunctionOracle& g, const Integer& p, const Integer& n, int digits) {
  Grid square(Rational(0), Rational(1), Rational(Integer(1), n), 2);
  BivariateTable F = double_difference_table(g, square, digits);
  return OmegaBound{empirical_modulus(F, Rational(p, n)), "empirical(step 1/" + n.get_str() + ")"};
}

std::optional<OmegaBound> unit_square_omega_analytic(const FunctionOracle& g, const Integer& p, const Integer& n,
                                                     int digits) {
  auto fam = double_difference_family(g, Rational(1));
  if (!fam) return std::nullopt;
  auto& bil = std::get<BilinearFamily>(*fam);
  bil.lo = Rational();
  return OmegaBound{analytic_modulus(*fam, Rational(p, n), digits), "analytic(" + family_name(*fam) + ")"};
}

BoundReport lemma_bound_check(const FunctionOracle& g, const Integer& p, const Integer& n, const OmegaBound& omega_G,
                              int digits) {
  EuclidChain chain = compute_chain(p, n);
  MemoOracle memo(g, digits);
  Value h_pn = memo(Rational(p, n)) - memo(Rational());
  Value h1 = memo(Rational(1)) - memo(Rational());
  Value lhs = h_pn.abs();
  Value two = Rational(2);
  Value rhs = two * Value(Rational(p, n)) * h1.abs() + two * omega_G.value;
  BoundReport r = make_report(BoundId::ChainLemma, lhs, rhs, Rational(1), digits);

  const Integer& m0 = chain.steps().front().m;
  Rational alt = alternating_weight(chain);
  Rational geo = geometric_weight(chain);
  Rational ratio(m0, m0 - 1);
  r.auxiliary.push_back(aux("bound_3_11", lhs, Value(alt) * h1.abs() + Value(geo) * omega_G.value, digits));
  r.auxiliary.push_back(
      aux("bound_3_12", lhs, h1.abs() / Value(Rational(m0)) + Value(ratio) * omega_G.value, digits));
  r.auxiliary.push_back(aux("alternating_le_inv_m0", alt, Rational(Integer(1), m0), digits));
  r.auxiliary.push_back(aux("geometric_le_m0_ratio", geo, ratio, digits));

  r.metadata = {{"fraction", Rational(p, n).str()},
                {"m0", m0.get_str()},
                {"chain_length", chain.length()},
                {"omega_G", to_json(omega_G.value)},
                {"omega_G_kind", omega_G.kind},
                {"h1", to_json(h1)}};
  return r;
}

DDBoundContext::DDBoundContext(const FunctionOracle& g, const Grid& grid, int digits)
    : grid_(grid.with_dimension(1)), digits_(digits), F_{grid_.with_dimension(2), {}} {
  Grid wide(Rational(2) * grid_.lo(), Rational(2) * grid_.hi(), grid_.step(), 1);
  g_samples_ = sample_on_grid(g, wide, digits);
  const auto xs = grid_.axis();
  const std::size_t n = xs.size();
  const std::size_t offset = whole_part((grid_.lo() - wide.lo()) / grid_.step()).get_ui();
  F_.values.reserve(n * n);
  const auto& ws = g_samples_.entries();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      F_.values.push_back(ws[i + j].value - ws[offset + i].value - ws[offset + j].value);
  h1_ = g.evaluate(Rational(1), digits) - g.evaluate(Rational(), digits);
  Rational M = std::max(abs(grid_.lo()), abs(grid_.hi()));
  family_ = double_difference_family(g, M);
}

BoundReport dd_bound_check(const DDBoundContext& ctx, const Rational& delta,
                           const std::optional<OmegaBound>& omega_F_override, const Rational& slack) {
  if (delta.sign() <= 0 || delta >= Rational(1, 2)) throw std::domain_error("delta must lie in (0, 1/2)");
  Value lhs = empirical_modulus(ctx.g_samples(), delta, ctx.grid());
  OmegaBound omega_F;
  Rational factor(1);
  if (omega_F_override) {
    omega_F = *omega_F_override;
  } else if (ctx.F_family()) {
    omega_F = {analytic_modulus(*ctx.F_family(), delta, ctx.digits()), "analytic(" + family_name(*ctx.F_family()) + ")"};
  } else {
    omega_F = {empirical_modulus(ctx.F_table(), delta), "empirical"};
    factor = slack;
  }
  Value rhs = Value(Rational(2) * delta) * ctx.h1().abs() + Value(Rational(3)) * omega_F.value;
  BoundReport r = make_report(BoundId::GridModulus, lhs, rhs, factor, ctx.digits());
  r.metadata = {{"delta", delta.str()},
                {"M", ctx.grid().hi().str()},
                {"grid_1d", to_json(ctx.grid())},
                {"grid_2d", to_json(ctx.F_table().grid)},
                {"omega_F", to_json(omega_F.value)},
                {"omega_F_kind", omega_F.kind},
                {"lhs_kind", "empirical"}};
  return r;
}

BoundReport dd_bound_check(const FunctionOracle& g, const Rational& delta, const Rational& M, const Grid& grid,
                           const Rational& slack, int digits) {
  Grid g1(-M, M, grid.step(), 1);
  DDBoundContext ctx(g, g1, digits);
  return dd_bound_check(ctx, delta, std::nullopt, slack);
}

BoundReport f_bound_check(const ModulusProfile& F_profile, const ModulusProfile& f_profile, const Rational& delta,
                          const Rational& slack, int digits) {
  const ProfileEntry* fe = f_profile.find(delta);
  const ProfileEntry* Fe = F_profile.find(delta);
  if (!fe) throw std::invalid_argument("delta " + delta.str() + " missing from the f profile");
  if (!Fe) throw std::invalid_argument("delta " + delta.str() + " missing from the F profile");
  if (F_profile.grid().hi() != f_profile.grid().hi() || F_profile.grid().lo() != f_profile.grid().lo())
    throw std::invalid_argument("profiles do not share the same M");
  Rational factor(1);
  if (fe->kind == OmegaKind::Empirical && Fe->kind == OmegaKind::Empirical) {
    if (F_profile.grid().step() > f_profile.grid().step())
      throw std::invalid_argument("F grid must be at least as fine as the f grid");
    factor = slack;
  }
  BoundReport r = make_report(BoundId::DecompositionModulus, fe->omega, Value(Rational(3)) * Fe->omega, factor, digits);
  r.metadata = {{"delta", delta.str()},
                {"M", f_profile.grid().hi().str()},
                {"f_source", f_profile.source()},
                {"F_source", F_profile.source()},
                {"f_kind", to_string(fe->kind)},
                {"F_kind", to_string(Fe->kind)},
                {"grid_f", to_json(f_profile.grid())},
                {"grid_F", to_json(F_profile.grid())}};
  return r;
}

}  // namespace ddp
