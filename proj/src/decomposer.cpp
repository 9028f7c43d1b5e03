#include "ddp/decomposer.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <stdexcept>

#include "ddp/json_io.hpp"

namespace ddp {

using nlohmann::json;

// ---------------------------------------------------------------------------
// SurdSum

SurdSum SurdSum::parse(std::string_view text) {
  SurdSum out;
  std::size_t pos = 0;
  auto fail = [&](const std::string& what) -> void {
    throw ParseError("bad real target '" + std::string(text) + "' at offset " + std::to_string(pos) + ": " + what,
                     pos);
  };
  while (pos < text.size()) {
    Rational sign(1);
    if (text[pos] == '+' || text[pos] == '-') {
      if (text[pos] == '-') sign = Rational(-1);
      ++pos;
    } else if (!out.terms.empty()) {
      fail("expected '+' or '-'");
    }
    std::size_t end = pos;
    while (end < text.size() && text[end] != '+' && text[end] != '-') ++end;
    std::string_view term = text.substr(pos, end - pos);
    if (term.empty()) fail("empty term");
    Rational coef(1);
    Surd surd{1};
    auto star = term.find('*');
    std::string_view surd_part = term;
    if (star != std::string_view::npos) {
      coef = Rational::parse(term.substr(0, star));
      surd_part = term.substr(star + 1);
    }
    if (surd_part.substr(0, 4) == "sqrt") {
      surd = Surd::parse(surd_part);
    } else if (star == std::string_view::npos) {
      coef = Rational::parse(surd_part);
    } else {
      fail("expected sqrtN after '*'");
    }
    out.terms.emplace_back(sign * coef, surd);
    pos = end;
  }
  if (out.terms.empty()) fail("empty target");
  return out;
}

HighPrecDecimal SurdSum::value(int digits) const {
  HighPrecDecimal sum(digits);
  for (const auto& [q, s] : terms) sum = sum + HighPrecDecimal(q, digits) * HighPrecDecimal(s, digits);
  return sum;
}

std::string SurdSum::str() const {
  std::string out;
  for (const auto& [q, s] : terms) {
    if (!out.empty()) out += q.sign() < 0 ? "-" : "+";
    else if (q.sign() < 0) out += "-";
    Rational a = abs(q);
    if (s.radicand == 1) {
      out += a.str();
    } else {
      if (a != Rational(1)) out += a.str() + "*";
      out += s.str();
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Decomposition

bool Decomposition::all_certificates_hold() const {
  return std::all_of(certificates.begin(), certificates.end(), [](const BoundReport& r) { return r.all_hold(); });
}

const Value& Decomposition::f_at(const Rational& r) const {
  const Value* v = f_table.find(r);
  if (!v) throw DomainError("point " + r.str() + " is not on the decomposition grid");
  return *v;
}

Decomposition decompose_on_rationals(std::shared_ptr<const FunctionOracle> g, const Grid& grid,
                                     const DecomposeOptions& options) {
  if (!g) throw std::invalid_argument("null oracle");
  Grid g1 = grid.with_dimension(1);
  const int digits = options.digits;
  Value c = g->evaluate(Rational(1), digits) - g->evaluate(Rational(), digits);

  // f(r) = u(r) = g(r) - c r on [-M, M]; g itself is needed on [-2M, 2M] for F.
  DDBoundContext ctx(*g, g1, digits);
  std::vector<Sample> f_entries;
  for (const auto& x : g1.axis()) {
    const Value* gx = ctx.g_samples().find(x);
    f_entries.push_back({x, *gx - c * Value(x)});
  }
  SampleTable f_table(std::move(f_entries));

  std::vector<Rational> ladder;
  for (const auto& d : options.ladder)
    if (d.sign() > 0 && d < Rational(1, 2)) ladder.push_back(d);

  ModulusProfile F_profile = options.F_override
                                 ? *options.F_override
                                 : empirical_profile(ctx.F_table(), ladder, "F = Dg on [-M,M]^2");
  ModulusProfile f_profile = empirical_profile(f_table, g1, ladder, "f = g - c x on [-M,M]");

  Decomposition d{c, std::move(f_table), g->describe(), g, g1, F_profile, f_profile, {}};
  for (const auto& delta : ladder) d.certificates.push_back(f_bound_check(F_profile, f_profile, delta, options.slack, digits));
  return d;
}

AdditivityReport verify_additivity(const Decomposition& d, const std::vector<std::pair<Rational, Rational>>& pairs) {
  AdditivityReport rep;
  auto A = [&](const Rational& r) { return d.g->evaluate(r) - d.f_at(r); };
  for (const auto& [x, y] : pairs) {
    Rational s = x + y;
    if (!d.grid.on_lattice(x) || !d.grid.on_lattice(y) || !d.grid.on_lattice(s))
      throw DomainError("additivity triple (" + x.str() + ", " + y.str() + ") leaves the grid");
    Value lhs = A(s);
    Value rhs = A(x) + A(y);
    bool ok = lhs.is_exact() && rhs.is_exact() ? lhs == rhs
                                               : approx_equal(lhs, rhs, Value(decimal_tolerance(kDefaultDecimalDigits)));
    ++rep.checked;
    if (!ok) {
      rep.holds = false;
      rep.failures.emplace_back(x, y);
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Extension to irrational points

std::vector<Rational> decimal_ladder(int first, int last) {
  std::vector<Rational> out;
  for (int j = first; j <= last; ++j) out.push_back(pow10(-j));
  return out;
}

std::optional<ModulusProfile> analytic_F_profile(const FunctionOracle& g, const Rational& M,
                                                 const std::vector<Rational>& ladder, int digits) {
  auto fam = double_difference_family(g, M);
  if (!fam) return std::nullopt;
  return analytic_profile(*fam, Grid::symmetric(M, M, 2), ladder, "analytic " + family_name(*fam), digits);
}

namespace {

// Certified omega bound at delta taken from the finest usable profile entry at or above delta.
std::optional<std::pair<Value, std::string>> omega_bound(const ModulusProfile& prof, const Rational& delta,
                                                         const Rational& slack) {
  const ProfileEntry* best = nullptr;
  for (const auto& e : prof.entries()) {
    if (e.delta < delta || e.delta.is_zero()) continue;
    bool usable = e.kind == OmegaKind::Analytic || e.delta >= prof.grid().step();
    if (usable && (!best || e.delta < best->delta)) best = &e;
  }
  if (!best) return std::nullopt;
  if (best->kind == OmegaKind::Analytic) return std::make_pair(best->omega, std::string("analytic"));
  return std::make_pair(Value(slack) * best->omega, "empirical x " + slack.str());
}

}  // namespace

ExtensionResult extend_f(const Decomposition& d, const SurdSum& target, const Rational& tolerance,
                         const ModulusProfile& F_modulus, int digits, const Rational& slack) {
  const Rational M = d.grid.hi();
  HighPrecDecimal t = target.value(digits + 10);
  HighPrecDecimal Md(M, digits);
  if (!(t.abs() < Md)) throw DomainError("target " + target.str() + " is outside (-M, M)");

  std::optional<Value> best_bound;
  ExtensionResult result{target.str(), HighPrecDecimal(digits), Value(), 0, Rational(), Rational(), "", {}};
  const int max_places = digits - 5;
  for (int places = 1; places <= max_places; ++places) {
    Rational delta = pow10(-places);
    auto bound = omega_bound(F_modulus, delta, slack);
    if (!bound) continue;
    Value err = Value(Rational(3)) * bound->first;
    if (!best_bound || err < *best_bound) best_bound = err;

    // truncate toward zero: |t - y| < 10^-places
    HighPrecDecimal scaled = t.abs() * HighPrecDecimal(pow10(places), digits + 10);
    Rational y = Rational(scaled.floor()) * delta;
    if (t.sign() < 0) y = -y;
    Value v = d.g->evaluate(y, digits) - d.slope * Value(y);
    result.history.push_back({y, v.to_decimal(digits), err});
    ++result.convergent_count;
    if (err <= Value(tolerance)) {
      result.value = v.to_decimal(digits);
      result.error_bound = err;
      result.approximant = y;
      result.delta = delta;
      result.omega_kind = bound->second;
      return result;
    }
  }
  throw std::runtime_error("tolerance " + tolerance.str() + " unreachable on the available profile; smallest certified bound " +
                           (best_bound ? best_bound->str() : std::string("none")));
}

AdditiveExhibit exhibit_additive(const Decomposition& d, const SurdSum& target, const ExtensionResult& extension,
                                 int digits) {
  Value g_value;
  if (const auto* add = d.g->additive_part()) {
    SpanPoint p{std::vector<Rational>(add->size())};
    for (const auto& [q, s] : target.terms) {
      auto it = std::find(add->basis().begin(), add->basis().end(), s);
      if (it == add->basis().end())
        throw DomainError("target " + target.str() + " is not in the span of " + add->str());
      p.coords[static_cast<std::size_t>(it - add->basis().begin())] += q;
    }
    g_value = d.g->evaluate(p, digits);
  } else if (const auto* e = d.g->expression_part()) {
    g_value = evaluate(e->expr, Value(target.value(digits)), digits);
  } else {
    throw DomainError("table oracles cannot be evaluated at " + target.str());
  }
  HighPrecDecimal g = g_value.to_decimal(digits);
  HighPrecDecimal A = g - extension.value;
  HighPrecDecimal rule = d.slope.to_decimal(digits) * target.value(digits);
  return AdditiveExhibit{target.str(), g, A, rule, A - rule, extension.error_bound};
}

// ---------------------------------------------------------------------------
// Hoelder fit

HolderFit holder_fit(const ModulusProfile& f_profile, const Value& f_sup, const Rational& M) {
  HolderFit fit;
  fit.f_sup = f_sup.abs().to_double();
  std::vector<double> lx, ly;
  bool any_small = false;
  for (const auto& e : f_profile.entries()) {
    if (e.delta.is_zero() || !(e.delta < Rational(1, 2))) continue;
    any_small = true;
    if (e.omega.sign() <= 0) continue;
    if (lx.empty()) fit.delta_min = e.delta;
    fit.delta_max = e.delta;
    lx.push_back(std::log(e.delta.to_double()));
    ly.push_back(std::log(e.omega.to_double()));
  }
  if (any_small && lx.empty()) {
    fit.constant = true;
    return fit;
  }
  if (lx.size() < 4) throw std::invalid_argument("holder_fit needs at least 4 entries with omega > 0 in (0, 1/2)");

  const double n = static_cast<double>(lx.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sx += lx[i];
    sy += ly[i];
    sxx += lx[i] * lx[i];
    sxy += lx[i] * ly[i];
  }
  double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  double intercept = (sy - slope * sx) / n;
  fit.points = lx.size();
  fit.alpha_hat = slope;
  if (fit.alpha_hat > 1.0) {
    // A linear modulus fits to 1 up to rounding; that is not worth a warning.
    fit.clamped = fit.alpha_hat > 1.0 + 1e-9;
    fit.alpha_hat = 1.0;
  } else if (fit.alpha_hat <= 0.0) {
    fit.alpha_hat = std::numeric_limits<double>::min();
    fit.clamped = true;
  }
  fit.K_hat = std::exp(intercept);
  double ss = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    double r = ly[i] - (intercept + fit.alpha_hat * lx[i]);
    ss += r * r;
    fit.fit_slack = std::max(fit.fit_slack, std::exp(ly[i]) / (fit.K_hat * std::exp(fit.alpha_hat * lx[i])) - 1.0);
  }
  fit.residual = std::sqrt(ss / n);

  fit.large_delta_K = std::pow(2.0, 1.0 + fit.alpha_hat) * fit.f_sup;
  for (const auto& e : f_profile.entries()) {
    if (e.delta < Rational(1, 2) || e.delta > Rational(2) * M) continue;
    LargeDeltaCheck c;
    c.delta = e.delta;
    c.omega = e.omega.to_double();
    c.two_sup = 2.0 * fit.f_sup;
    c.bound = fit.large_delta_K * std::pow(e.delta.to_double(), fit.alpha_hat);
    // relative epsilon for the double comparison of recorded suprema
    const double eps = 1e-12 * (1.0 + c.bound);
    c.holds = c.omega <= c.two_sup + eps && c.two_sup <= c.bound + eps;
    fit.large_delta.push_back(c);
  }
  return fit;
}

// ---------------------------------------------------------------------------
// JSON

json to_json(const Decomposition& d) {
  json table = json::array();
  for (const auto& s : d.f_table.entries()) table.push_back({s.x.str(), to_json(s.value)});
  json certs = json::array();
  for (const auto& r : d.certificates) certs.push_back(to_json(r));
  json out{{"source", d.source},
           {"slope", to_json(d.slope)},
           {"additive_rule", "A(r) = slope * r on Q"},
           {"grid", to_json(d.grid)},
           {"f_table", table},
           {"certificates", certs},
           {"all_hold", d.all_certificates_hold()}};
  if (d.F_profile) out["F_profile"] = to_json(*d.F_profile);
  if (d.f_profile) out["f_profile"] = to_json(*d.f_profile);
  return out;
}

json to_json(const ExtensionResult& e) {
  return json{{"target", e.target},
              {"value", to_json(Value(e.value))},
              {"error_bound", to_json(e.error_bound)},
              {"convergent_count", e.convergent_count},
              {"approximant", e.approximant.str()},
              {"delta", e.delta.str()},
              {"omega_kind", e.omega_kind}};
}

json to_json(const HolderFit& h) {
  json large = json::array();
  for (const auto& c : h.large_delta)
    large.push_back({{"delta", c.delta.str()}, {"omega", c.omega}, {"two_sup", c.two_sup}, {"bound", c.bound},
                     {"holds", c.holds}});
  json out{{"constant", h.constant}, {"f_sup", h.f_sup}};
  if (h.constant) return out;
  out.update(json{{"alpha_hat", h.alpha_hat},
                  {"K_hat", h.K_hat},
                  {"delta_range", {h.delta_min.str(), h.delta_max.str()}},
                  {"residual", h.residual},
                  {"fit_slack", h.fit_slack},
                  {"clamped", h.clamped},
                  {"points", h.points},
                  {"large_delta_K", h.large_delta_K},
                  {"large_delta_checks", large}});
  return out;
}

json to_json(const AdditivityReport& a) {
  json fails = json::array();
  for (const auto& [x, y] : a.failures) fails.push_back({x.str(), y.str()});
  return json{{"holds", a.holds}, {"checked", a.checked}, {"failures", fails}};
}

json to_json(const AdditiveExhibit& a) {
  return json{{"target", a.target},
              {"g", to_json(Value(a.g_value))},
              {"A", to_json(Value(a.A_value))},
              {"rule_c_t", to_json(Value(a.rule_value))},
              {"deviation", to_json(Value(a.deviation))},
              {"error_bound", to_json(a.error_bound)}};
}

}  // namespace ddp
