// ddp: command-line front end for chains, identities, decompositions, bound
// suites and Hoelder fits. Exit status: 0 when every check of the run holds,
// 1 when a check fails, 2 on bad input or evaluation errors.

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ddp/decomposer.hpp"
#include "ddp/euclid_chain.hpp"
#include "ddp/identity.hpp"
#include "ddp/json_io.hpp"
#include "ddp/modulus.hpp"

namespace {

using nlohmann::json;
using ddp::FunctionOracle;
using ddp::Grid;
using ddp::Rational;
using ddp::Value;

constexpr int kExitFailedCheck = 1;
constexpr int kExitError = 2;

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Raw settings as typed on the command line or read from a config file.
struct RunConfig {
  std::string subcommand;
  std::string expr, csv, hamel;
  std::string M = "1";
  std::string step = "1/64";
  std::vector<std::string> ladder;  // empty: 2^-j for j = 2..10
  int precision = ddp::kDefaultDecimalDigits;
  std::string slack = "1.05";
  std::string format;  // empty until main picks the subcommand default
  std::string out;
  std::string config_path;

  std::string frac;
  std::string suite = "all";
  long max_n = 16;
  std::string profile_override;
  std::string extend;
  std::string tolerance = "1e-6";
  std::string f_csv;
};

json to_json(const RunConfig& c) {
  json j{{"subcommand", c.subcommand}, {"precision", c.precision}, {"format", c.format}};
  if (c.subcommand == "chain") {
    j["fraction"] = c.frac;
    return j;
  }
  json source = json::object();
  if (!c.expr.empty()) source["expr"] = c.expr;
  if (!c.csv.empty()) source["csv"] = c.csv;
  if (!c.hamel.empty()) source["hamel"] = c.hamel;
  j["source"] = source;
  if (c.subcommand == "identity") {
    j["fraction"] = c.frac;
    return j;
  }
  j["M"] = c.M;
  j["step"] = c.step;
  json ladder = json::array();
  if (c.ladder.empty())
    for (const auto& d : ddp::dyadic_ladder(2, 10)) ladder.push_back(d.str());
  else
    ladder = c.ladder;
  j["ladder"] = ladder;
  j["slack"] = c.slack;
  if (!c.out.empty()) j["out"] = c.out;
  if (!c.profile_override.empty()) j["profile_override"] = c.profile_override;
  if (c.subcommand == "verify") {
    j["suite"] = c.suite;
    j["max_n"] = c.max_n;
  }
  if (c.subcommand == "decompose" && !c.extend.empty()) {
    j["extend"] = c.extend;
    j["tolerance"] = c.tolerance;
  }
  return j;
}

// Config-file keys share the flag names; a flag given on the command line wins.
class ConfigBindings {
 public:
  template <typename T>
  CLI::Option* add(CLI::App* app, const std::string& name, T& target, const std::string& help) {
    CLI::Option* opt = app->add_option("--" + name, target, help);
    setters_[app].push_back({name, opt, [&target](const json& v) { assign(target, v); }});
    return opt;
  }

  void apply(const CLI::App* app, const json& config) const {
    auto it = setters_.find(app);
    if (it == setters_.end()) return;
    for (const auto& [key, val] : config.items()) {
      bool known = false;
      for (const auto& s : it->second) {
        if (s.name != key) continue;
        known = true;
        if (s.option->count() == 0) s.set(val);
      }
      if (!known && key != "subcommand") throw UsageError("unknown config key '" + key + "'");
    }
  }

 private:
  static void assign(std::string& t, const json& v) { t = v.is_string() ? v.get<std::string>() : v.dump(); }
  static void assign(int& t, const json& v) { t = v.get<int>(); }
  static void assign(long& t, const json& v) { t = v.get<long>(); }
  static void assign(std::vector<std::string>& t, const json& v) {
    t.clear();
    if (v.is_array())
      for (const auto& e : v) t.push_back(e.is_string() ? e.get<std::string>() : e.dump());
    else
      t.push_back(v.get<std::string>());
  }

  struct Setter {
    std::string name;
    CLI::Option* option;
    std::function<void(const json&)> set;
  };
  std::map<const CLI::App*, std::vector<Setter>> setters_;
};

Rational parse_rational(const std::string& text, const std::string& what) {
  try {
    return Rational::parse(text);
  } catch (const ddp::ParseError& e) {
    throw UsageError("bad " + what + " '" + text + "': " + e.what());
  }
}

// Parsed and validated view of a RunConfig.
struct Resolved {
  Rational M, step, slack;
  std::vector<Rational> ladder;
  int digits = ddp::kDefaultDecimalDigits;
};

Resolved resolve(const RunConfig& c) {
  Resolved r;
  r.digits = c.precision;
  if (r.digits < ddp::kMinDecimalDigits)
    throw UsageError("precision must be at least " + std::to_string(ddp::kMinDecimalDigits));
  r.M = parse_rational(c.M, "M");
  r.step = parse_rational(c.step, "step");
  r.slack = parse_rational(c.slack, "slack");
  if (r.slack < Rational(1)) throw UsageError("slack factor must be >= 1");
  if (c.ladder.empty()) {
    r.ladder = ddp::dyadic_ladder(2, 10);
  } else {
    for (const auto& d : c.ladder) r.ladder.push_back(parse_rational(d, "ladder entry"));
  }
  for (const auto& d : r.ladder)
    if (d.sign() <= 0 || d >= Rational(1, 2)) throw UsageError("ladder entry " + d.str() + " is not in (0, 1/2)");
  return r;
}

// Parser errors are reported with a caret under the offending byte.
UsageError with_position(const std::string& text, const ddp::ParseError& e) {
  return UsageError(std::string(e.what()) + "\n  " + text + "\n  " + std::string(e.offset(), ' ') + "^");
}

std::shared_ptr<const FunctionOracle> make_oracle(const RunConfig& c) {
  if (c.expr.empty() == c.csv.empty()) throw UsageError("give exactly one of --expr or --csv");
  if (!c.csv.empty()) {
    if (!c.hamel.empty()) throw UsageError("--hamel needs an expression part given with --expr");
    return std::make_shared<const FunctionOracle>(FunctionOracle::table(ddp::load_samples_file(c.csv)));
  }
  std::optional<ddp::HamelAdditive> additive;
  if (!c.hamel.empty()) additive = ddp::HamelAdditive::parse(c.hamel);
  try {
    if (additive) return std::make_shared<const FunctionOracle>(FunctionOracle::composite(c.expr, *additive));
    return std::make_shared<const FunctionOracle>(FunctionOracle::expression(c.expr));
  } catch (const ddp::ParseError& e) {
    throw with_position(c.expr, e);
  }
}

std::optional<ddp::ModulusProfile> load_override(const RunConfig& c) {
  if (c.profile_override.empty()) return std::nullopt;
  std::ifstream in(c.profile_override);
  if (!in) throw std::runtime_error("cannot open profile override " + c.profile_override);
  return ddp::profile_from_json(json::parse(in));
}


void emit(const RunConfig& c, const std::string& text) {
  if (c.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(c.out);
  if (!out) throw std::runtime_error("cannot write " + c.out);
  out << text;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

std::pair<ddp::Integer, ddp::Integer> parse_fraction(const std::string& text) {
  // Parsed by hand so that a non-reduced input such as 4/6 reaches the chain's own check.
  auto slash = text.find('/');
  if (slash == std::string::npos || slash == 0 || slash + 1 == text.size())
    throw UsageError("expected a fraction p/n, got '" + text + "'");
  auto digits_only = [](const std::string& s) { return s.find_first_not_of("0123456789") == std::string::npos; };
  std::string p = text.substr(0, slash), n = text.substr(slash + 1);
  if (!digits_only(p) || !digits_only(n)) throw UsageError("expected positive integers in '" + text + "'");
  return {ddp::Integer(p), ddp::Integer(n)};
}

json chain_json(const ddp::EuclidChain& chain) {
  json j = ddp::to_json(chain);
  j["alternating_weight"] = ddp::alternating_weight(chain).str();
  j["geometric_weight"] = ddp::geometric_weight(chain).str();
  return j;
}

int cmd_chain(const RunConfig& c) {
  auto [p, n] = parse_fraction(c.frac);
  auto chain = ddp::compute_chain(p, n);
  const std::string& fmt = c.format;
  std::ostringstream os;
  if (fmt == "json") {
    os << dump({{"config", to_json(c)}, {"chain", chain_json(chain)}});
  } else if (fmt == "csv") {
    os << "i,m,p\n";
    for (std::size_t i = 0; i < chain.length(); ++i)
      os << i << "," << chain.steps()[i].m.get_str() << "," << chain.steps()[i].remainder.get_str() << "\n";
  } else {
    os << "chain " << p.get_str() << "/" << n.get_str() << " (k = " << chain.length() << ")\n";
    os << "steps (m_i, p_i+1):";
    for (const auto& s : chain.steps()) os << " (" << s.m.get_str() << "," << s.remainder.get_str() << ")";
    os << "\nalternating_weight " << ddp::alternating_weight(chain).str() << "\n";
    os << "geometric_weight " << ddp::geometric_weight(chain).str() << "\n";
  }
  emit(c, os.str());
  return ddp::chain_violation(chain).empty() ? 0 : kExitFailedCheck;
}

int cmd_identity(const RunConfig& c) {
  auto g = make_oracle(c);
  auto [p, n] = parse_fraction(c.frac);
  const int digits = resolve(c).digits;
  auto chain = ddp::compute_chain(p, n);
  Value lhs = ddp::shifted_h(*g, Rational(p, n), digits);
  auto ev = ddp::chain_eval(*g, p, n, digits);
  Value closed = ddp::chain_eval_closed_form(*g, p, n, digits);
  bool exact = lhs.is_exact() && ev.value.is_exact();
  bool equal = ddp::identity_holds(lhs, ev.value, digits);
  bool closed_equal = ddp::identity_holds(closed, ev.value, digits);
  json j{{"config", to_json(c)},
         {"fraction", p.get_str() + "/" + n.get_str()},
         {"lhs", ddp::to_json(lhs)},
         {"rhs", ddp::to_json(ev.value)},
         {"closed_form", ddp::to_json(closed)},
         {"equal", equal},
         {"closed_form_equal", closed_equal},
         {"mode", exact ? "exact" : "decimal"},
         {"tolerance", exact ? json("0/1") : ddp::to_json(Value(ddp::decimal_tolerance(digits)))},
         {"g_term_count", ev.g_term_count},
         {"g_terms_all_zero", ev.g_terms_all_zero},
         {"chain", chain_json(chain)}};
  emit(c, dump(j));
  return equal && closed_equal ? 0 : kExitFailedCheck;
}

// Additivity of A = g - f over pairs of a coarse sub-lattice with x + y on the grid.
ddp::AdditivityReport additivity_sweep(const ddp::Decomposition& d) {
  auto axis = d.grid.axis();
  std::size_t stride = std::max<std::size_t>(1, axis.size() / 24);
  std::vector<std::pair<Rational, Rational>> pairs;
  for (std::size_t i = 0; i < axis.size(); i += stride)
    for (std::size_t j = i; j < axis.size(); j += stride)
      if (d.grid.contains(axis[i] + axis[j])) pairs.emplace_back(axis[i], axis[j]);
  return ddp::verify_additivity(d, pairs);
}

std::string sibling_csv_path(const std::string& json_path) {
  auto dot = json_path.rfind('.');
  auto slash = json_path.rfind('/');
  std::string stem = (dot != std::string::npos && (slash == std::string::npos || dot > slash)) ? json_path.substr(0, dot)
                                                                                             : json_path;
  return stem + ".f.csv";
}

int cmd_decompose(const RunConfig& c) {
  auto g = make_oracle(c);
  Resolved r = resolve(c);
  Grid grid = Grid::symmetric(r.M, r.step);
  ddp::DecomposeOptions opt;
  opt.ladder = r.ladder;
  opt.slack = r.slack;
  opt.digits = r.digits;
  opt.F_override = load_override(c);
  auto d = ddp::decompose_on_rationals(g, grid, opt);
  auto additivity = additivity_sweep(d);

  json j{{"config", to_json(c)}, {"decomposition", ddp::to_json(d)}, {"additivity", ddp::to_json(additivity)}};
  bool ok = d.all_certificates_hold() && additivity.holds;
  std::optional<std::string> extension_note;
  if (!c.extend.empty()) {
    auto target = ddp::SurdSum::parse(c.extend);
    auto analytic = ddp::analytic_F_profile(*g, r.M, ddp::decimal_ladder(1, r.digits - 10), r.digits);
    const ddp::ModulusProfile& F = analytic ? *analytic : *d.F_profile;
    try {
      auto ext = ddp::extend_f(d, target, parse_rational(c.tolerance, "tolerance"), F, r.digits, r.slack);
      j["extension"] = ddp::to_json(ext);
      std::string note = "f(" + target.str() + ") = " + ext.value.str(20) + " +/- " + ext.error_bound.str();
      if (c.csv.empty())
        j["exhibit"] = ddp::to_json(ddp::exhibit_additive(d, target, ext, r.digits));
      else
        note += " (table sources cannot exhibit A off the grid)";
      extension_note = note;
    } catch (const std::runtime_error& e) {
      j["extension"] = {{"target", target.str()}, {"error", e.what()}};
      extension_note = std::string("extension failed: ") + e.what();
      ok = false;
    }
  }
  j["all_hold"] = ok;

  std::size_t failed = 0;
  for (const auto& cert : d.certificates) failed += cert.all_hold() ? 0 : 1;
  bool f_zero = true;
  for (const auto& s : d.f_table.entries()) f_zero = f_zero && s.value.is_zero();

  std::ostringstream csv;
  ddp::write_samples_csv(csv, d.f_table, "f");
  const std::string& fmt = c.format;
  if (fmt == "csv") {
    emit(c, csv.str());
  } else {
    emit(c, dump(j));
    if (!c.out.empty()) {
      std::string csv_path = c.f_csv.empty() ? sibling_csv_path(c.out) : c.f_csv;
      std::ofstream f(csv_path);
      if (!f) throw std::runtime_error("cannot write " + csv_path);
      f << csv.str();
    }
  }
  // The summary goes to stdout only when the report itself went to a file.
  std::ostream& info = c.out.empty() ? std::cerr : std::cout;
  info << "slope c = " << d.slope.str() << "\n";
  info << "certificates: " << d.certificates.size() - failed << "/" << d.certificates.size() << " hold\n";
  info << "additivity: " << additivity.checked << " triples, " << additivity.failures.size() << " failures\n";
  if (f_zero) info << "f is identically zero on the grid\n";
  if (extension_note) info << *extension_note << "\n";
  return ok ? 0 : kExitFailedCheck;
}

int cmd_verify(const RunConfig& c) {
  if (c.suite != "lemma" && c.suite != "theorem" && c.suite != "all")
    throw UsageError("suite must be lemma, theorem or all");
  auto g = make_oracle(c);
  Resolved r = resolve(c);
  auto override_profile = load_override(c);
  json reports = json::array();
  std::size_t total = 0, failed = 0;
  bool g_terms_zero = true;
  auto record = [&](const std::string& suite, const ddp::BoundReport& rep, json extra) {
    json jr = ddp::to_json(rep);
    jr["suite"] = suite;
    for (auto& [k, v] : extra.items()) jr[k] = v;
    reports.push_back(std::move(jr));
    ++total;
    if (!rep.all_hold()) ++failed;
  };

  if (c.suite != "theorem") {
    if (c.max_n < 3) throw UsageError("max-n must be at least 3");
    for (long n = 3; n <= c.max_n; ++n)
      for (long p = 1; 2 * p < n; ++p) {
        if (std::gcd(p, n) != 1) continue;
        auto omega = ddp::unit_square_omega_analytic(*g, p, n, r.digits);
        if (!omega) omega = ddp::unit_square_omega(*g, p, n, r.digits);
        auto ev = ddp::chain_eval(*g, p, n, r.digits);
        g_terms_zero = g_terms_zero && ev.g_terms_all_zero;
        record("lemma", ddp::lemma_bound_check(*g, p, n, *omega, r.digits),
               {{"fraction", std::to_string(p) + "/" + std::to_string(n)}, {"g_terms_all_zero", ev.g_terms_all_zero}});
      }
  }
  if (c.suite != "lemma") {
    Grid grid = Grid::symmetric(r.M, r.step);
    ddp::DDBoundContext ctx(*g, grid, r.digits);
    for (const auto& delta : r.ladder) {
      std::optional<ddp::OmegaBound> F_term;
      if (override_profile) {
        const auto* e = override_profile->ceiling(delta);
        if (!e) throw UsageError("profile override has no entry at or above delta " + delta.str());
        F_term = ddp::OmegaBound{e->omega, "override"};
      }
      record("theorem", ddp::dd_bound_check(ctx, delta, F_term, r.slack), {{"delta", delta.str()}});
    }
    ddp::DecomposeOptions opt;
    opt.ladder = r.ladder;
    opt.slack = r.slack;
    opt.digits = r.digits;
    opt.F_override = override_profile;
    auto d = ddp::decompose_on_rationals(g, grid, opt);
    for (const auto& cert : d.certificates) record("theorem", cert, json::object());
  }

  json summary{{"reports", total}, {"failures", failed}, {"all_hold", failed == 0}};
  if (c.suite != "theorem") summary["g_terms_all_zero"] = g_terms_zero;
  const std::string& fmt = c.format;
  if (fmt == "csv") {
    std::ostringstream os;
    os << "suite,bound,parameter,lhs,rhs,slack,holds\n";
    for (const auto& jr : reports) {
      std::string param = jr.contains("fraction") ? jr["fraction"].get<std::string>()
                                                  : jr["metadata"].value("delta", std::string());
      auto num = [](const json& v) { return v.is_string() ? v.get<std::string>() : v.at("decimal").get<std::string>(); };
      os << jr["suite"].get<std::string>() << "," << jr["id"].get<std::string>() << "," << param << ","
         << num(jr["lhs"]) << "," << num(jr["rhs"]) << "," << num(jr["slack"]) << ","
         << (jr["holds"].get<bool>() ? "true" : "false") << "\n";
    }
    emit(c, os.str());
  } else {
    emit(c, dump({{"config", to_json(c)}, {"reports", reports}, {"summary", summary}}));
  }
  std::cerr << total - failed << "/" << total << " bound reports hold\n";
  return failed == 0 ? 0 : kExitFailedCheck;
}

int cmd_holder(const RunConfig& c) {
  auto f = make_oracle(c);
  Resolved r = resolve(c);
  Grid grid = Grid::symmetric(r.M, r.step);
  auto samples = ddp::sample_on_grid(*f, grid, r.digits);
  // The fit uses the ladder; the large-delta constant is checked at 1/2, 1 and 2M.
  std::vector<Rational> ladder = r.ladder;
  for (const Rational& big : {Rational(1, 2), Rational(1), Rational(2) * r.M})
    if (std::find(ladder.begin(), ladder.end(), big) == ladder.end()) ladder.push_back(big);
  std::sort(ladder.begin(), ladder.end());
  auto profile = ddp::empirical_profile(samples, grid, ladder, f->describe());
  Value sup;
  for (const auto& s : samples.entries())
    if (s.value.abs() > sup) sup = s.value.abs();
  auto fit = ddp::holder_fit(profile, sup, r.M);

  bool ok = true;
  for (const auto& check : fit.large_delta) ok = ok && check.holds;
  const std::string& fmt = c.format;
  if (fmt == "csv") {
    std::ostringstream os;
    os << "delta,omega\n";
    for (const auto& e : profile.entries()) os << e.delta.str() << "," << e.omega.str() << "\n";
    emit(c, os.str());
  } else {
    emit(c, dump({{"config", to_json(c)}, {"fit", ddp::to_json(fit)}, {"profile", ddp::to_json(profile)}}));
  }
  if (fit.constant) std::cerr << "note: f is constant on the grid; no exponent is fitted\n";
  if (fit.clamped) std::cerr << "warning: alpha_hat was clamped to (0, 1]\n";
  return ok ? 0 : kExitFailedCheck;
}

void add_common(CLI::App* sub, RunConfig& c, ConfigBindings& b, bool grid_options) {
  b.add(sub, "precision", c.precision, "Decimal digits for irrational values (env DDP_PRECISION)");
  b.add(sub, "format", c.format, "Output format")->check(CLI::IsMember({"text", "json", "csv"}));
  b.add(sub, "out", c.out, "Write the report to this path instead of stdout");
  sub->add_option("--config", c.config_path, "JSON file with the same keys as the flags");
  if (!grid_options) return;
  b.add(sub, "M", c.M, "Half-width of the domain [-M, M]");
  b.add(sub, "step", c.step, "Grid step, must divide M");
  b.add(sub, "ladder", c.ladder, "Comma-separated deltas in (0, 1/2)")->delimiter(',');
  b.add(sub, "slack", c.slack, "Slack factor for empirical moduli");
}

void add_source(CLI::App* sub, RunConfig& c, ConfigBindings& b) {
  b.add(sub, "expr", c.expr, "Expression in x");
  b.add(sub, "csv", c.csv, "CSV file with header x,g");
  b.add(sub, "hamel", c.hamel, "Additive part, e.g. basis=1,sqrt2;slopes=0,5");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Double-difference decomposition toolkit"};
  app.require_subcommand(1);
  RunConfig c;
  if (const char* env = std::getenv("DDP_PRECISION")) {
    try {
      c.precision = std::stoi(env);
    } catch (const std::exception&) {
      std::cerr << "error: DDP_PRECISION must be an integer\n";
      return kExitError;
    }
  }
  ConfigBindings b;

  auto* chain = app.add_subcommand("chain", "Euclidean chain of a reduced fraction in (0, 1/2)");
  chain->add_option("fraction", c.frac, "p/n")->required();
  add_common(chain, c, b, false);

  auto* identity = app.add_subcommand("identity", "Check h(p/n) against the chain reconstruction");
  add_source(identity, c, b);
  b.add(identity, "frac", c.frac, "p/n")->required();
  add_common(identity, c, b, false);

  auto* decompose = app.add_subcommand("decompose", "Split g into f + A on a rational grid");
  add_source(decompose, c, b);
  add_common(decompose, c, b, true);
  b.add(decompose, "profile-override", c.profile_override, "JSON modulus profile replacing the F profile");
  b.add(decompose, "extend", c.extend, "Extend f to a surd sum such as sqrt2-1");
  b.add(decompose, "tolerance", c.tolerance, "Target error bound for --extend");
  b.add(decompose, "f-csv", c.f_csv, "Path of the f CSV (default: next to --out)");

  auto* verify = app.add_subcommand("verify", "Run the lemma and theorem bound suites");
  add_source(verify, c, b);
  add_common(verify, c, b, true);
  b.add(verify, "suite", c.suite, "lemma, theorem or all")->check(CLI::IsMember({"lemma", "theorem", "all"}));
  b.add(verify, "max-n", c.max_n, "Largest denominator for the lemma suite");
  b.add(verify, "profile-override", c.profile_override, "JSON modulus profile replacing the F term");

  auto* holder = app.add_subcommand("holder", "Fit a Hoelder exponent to the grid modulus of f");
  add_source(holder, c, b);
  add_common(holder, c, b, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kExitError;
  }

  try {
    CLI::App* sub = app.get_subcommands().front();
    c.subcommand = sub->get_name();
    if (!c.config_path.empty()) {
      std::ifstream in(c.config_path);
      if (!in) throw UsageError("cannot open config " + c.config_path);
      b.apply(sub, json::parse(in));
    }
    if (c.format.empty()) c.format = c.subcommand == "chain" ? "text" : "json";
    if (c.format == "text" && c.subcommand != "chain") throw UsageError("text output is only available for chain");
    if (c.subcommand == "chain") return cmd_chain(c);
    if (c.subcommand == "identity") return cmd_identity(c);
    if (c.subcommand == "decompose") return cmd_decompose(c);
    if (c.subcommand == "verify") return cmd_verify(c);
    return cmd_holder(c);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
}
