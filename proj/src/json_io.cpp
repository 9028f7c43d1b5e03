#include "ddp/json_io.hpp"

#include "ddp/modulus.hpp"

namespace ddp {

using nlohmann::json;

json to_json(const Value& v) {
  if (const auto* d = v.decimal_if()) return json{{"decimal", d->str()}, {"digits", d->digits()}};
  return v.exact().str();
}

Value value_from_json(const json& j) {
  if (j.is_string()) return Rational::parse(j.get<std::string>());
  if (j.is_object() && j.contains("decimal")) {
    int digits = j.value("digits", kDefaultDecimalDigits);
    return HighPrecDecimal(Rational::parse(j.at("decimal").get<std::string>()), digits);
  }
  throw std::invalid_argument("expected a \"p/q\" string or a decimal object");
}

json to_json(const Grid& g) {
  return json{{"lo", g.lo().str()}, {"hi", g.hi().str()}, {"step", g.step().str()}, {"dimension", g.dimension()}};
}

Grid grid_from_json(const json& j) {
  return Grid(Rational::parse(j.at("lo").get<std::string>()), Rational::parse(j.at("hi").get<std::string>()),
              Rational::parse(j.at("step").get<std::string>()), j.at("dimension").get<int>());
}

json to_json(const ModulusProfile& p) {
  json entries = json::array();
  for (const auto& e : p.entries())
    entries.push_back({{"delta", e.delta.str()}, {"omega", to_json(e.omega)}, {"kind", to_string(e.kind)}});
  return json{{"source", p.source()}, {"grid", to_json(p.grid())}, {"entries", entries}};
}

ModulusProfile profile_from_json(const json& j) {
  std::vector<ProfileEntry> entries;
  for (const auto& e : j.at("entries")) {
    std::string kind = e.value("kind", "empirical");
    if (kind != "empirical" && kind != "analytic") throw std::invalid_argument("unknown omega kind '" + kind + "'");
    entries.push_back({Rational::parse(e.at("delta").get<std::string>()), value_from_json(e.at("omega")),
                       kind == "analytic" ? OmegaKind::Analytic : OmegaKind::Empirical});
  }
  return ModulusProfile(j.value("source", "override"), grid_from_json(j.at("grid")), std::move(entries));
}

json to_json(const BoundReport& r) {
  json aux = json::array();
  for (const auto& a : r.auxiliary)
    aux.push_back({{"name", a.name}, {"lhs", to_json(a.lhs)}, {"rhs", to_json(a.rhs)}, {"holds", a.holds}});
  return json{{"inequality", to_string(r.id)},
              {"lhs", to_json(r.lhs)},
              {"rhs", to_json(r.rhs)},
              {"slack", to_json(r.slack)},
              {"slack_factor", r.slack_factor.str()},
              {"tolerance", to_json(r.tolerance)},
              {"holds", r.holds},
              {"auxiliary", aux},
              {"metadata", r.metadata}};
}

json to_json(const EuclidChain& c) {
  json steps = json::array();
  for (const auto& s : c.steps()) steps.push_back({s.m.get_str(), s.remainder.get_str()});
  return json{{"p", c.p().get_str()}, {"n", c.n().get_str()}, {"steps", steps}, {"length", c.length()}};
}

}  // namespace ddp
