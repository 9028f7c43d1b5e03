// Python bindings. Rationals go in as str, int or fractions.Fraction and come
// back as Fraction; decimals come back as decimal.Decimal. Structured reports
// are returned as the same dictionaries the CLI writes as JSON.

#include <algorithm>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ddp/decomposer.hpp"
#include "ddp/euclid_chain.hpp"
#include "ddp/identity.hpp"
#include "ddp/json_io.hpp"
#include "ddp/modulus.hpp"

namespace py = pybind11;
using nlohmann::json;
using ddp::FunctionOracle;
using ddp::Rational;
using ddp::Value;

namespace {

Rational to_rational(const py::handle& obj) { return Rational::parse(py::str(obj).cast<std::string>()); }

ddp::Integer to_integer(const py::handle& obj) { return ddp::Integer(py::str(obj).cast<std::string>()); }

py::object fraction(const Rational& r) {
  return py::module_::import("fractions").attr("Fraction")(r.str());
}

py::object to_py(const Value& v) {
  if (v.is_exact()) return fraction(v.exact());
  return py::module_::import("decimal").attr("Decimal")(v.decimal_if()->str());
}

py::object to_py(const json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

std::shared_ptr<const FunctionOracle> oracle(const std::string& expr, const std::optional<std::string>& hamel) {
  if (hamel) return std::make_shared<const FunctionOracle>(FunctionOracle::composite(expr, ddp::HamelAdditive::parse(*hamel)));
  return std::make_shared<const FunctionOracle>(FunctionOracle::expression(expr));
}

std::vector<Rational> ladder_of(const std::optional<std::vector<py::object>>& ladder) {
  if (!ladder) return ddp::dyadic_ladder(2, 10);
  std::vector<Rational> out;
  for (const auto& d : *ladder) out.push_back(to_rational(d));
  return out;
}

py::dict chain(const py::object& p, const py::object& n) {
  auto c = ddp::compute_chain(to_integer(p), to_integer(n));
  py::list steps;
  for (const auto& s : c.steps()) steps.append(py::make_tuple(py::int_(py::str(s.m.get_str())), py::int_(py::str(s.remainder.get_str()))));
  py::dict d;
  d["steps"] = steps;
  d["alternating_weight"] = fraction(ddp::alternating_weight(c));
  d["geometric_weight"] = fraction(ddp::geometric_weight(c));
  return d;
}

py::dict chain_identity(const std::string& expr, const py::object& p, const py::object& n,
                        const std::optional<std::string>& hamel, int digits) {
  auto g = oracle(expr, hamel);
  ddp::Integer pi = to_integer(p), ni = to_integer(n);
  Value lhs = ddp::shifted_h(*g, Rational(pi, ni), digits);
  auto ev = ddp::chain_eval(*g, pi, ni, digits);
  py::dict d;
  d["lhs"] = to_py(lhs);
  d["rhs"] = to_py(ev.value);
  d["equal"] = ddp::identity_holds(lhs, ev.value, digits);
  d["mode"] = lhs.is_exact() && ev.value.is_exact() ? "exact" : "decimal";
  d["g_terms_all_zero"] = ev.g_terms_all_zero;
  d["g_term_count"] = ev.g_term_count;
  return d;
}

py::dict decompose(const std::string& expr, const std::optional<std::string>& hamel, const py::object& M,
                   const py::object& step, const std::optional<std::vector<py::object>>& ladder, const py::object& slack,
                   int digits, const std::optional<std::string>& extend, const py::object& tolerance) {
  auto g = oracle(expr, hamel);
  Rational Mr = to_rational(M);
  ddp::DecomposeOptions opt;
  opt.ladder = ladder_of(ladder);
  opt.slack = to_rational(slack);
  opt.digits = digits;
  auto d = ddp::decompose_on_rationals(g, ddp::Grid::symmetric(Mr, to_rational(step)), opt);
  json j = ddp::to_json(d);
  if (extend) {
    auto target = ddp::SurdSum::parse(*extend);
    auto analytic = ddp::analytic_F_profile(*g, Mr, ddp::decimal_ladder(1, digits - 10), digits);
    auto ext = ddp::extend_f(d, target, to_rational(tolerance), analytic ? *analytic : *d.F_profile, digits, opt.slack);
    j["extension"] = ddp::to_json(ext);
    j["exhibit"] = ddp::to_json(ddp::exhibit_additive(d, target, ext, digits));
  }
  return to_py(j);
}

py::dict holder(const std::string& expr, const py::object& M, const py::object& step,
                const std::optional<std::vector<py::object>>& ladder, int digits) {
  auto f = FunctionOracle::expression(expr);
  Rational Mr = to_rational(M);
  ddp::Grid grid = ddp::Grid::symmetric(Mr, to_rational(step));
  auto samples = ddp::sample_on_grid(f, grid, digits);
  auto deltas = ladder_of(ladder);
  for (const Rational& big : {Rational(1, 2), Rational(1), Rational(2) * Mr})
    if (std::find(deltas.begin(), deltas.end(), big) == deltas.end()) deltas.push_back(big);
  std::sort(deltas.begin(), deltas.end());
  Value sup;
  for (const auto& s : samples.entries())
    if (s.value.abs() > sup) sup = s.value.abs();
  auto fit = ddp::holder_fit(ddp::empirical_profile(samples, grid, deltas, f.describe()), sup, Mr);
  return to_py(ddp::to_json(fit));
}

py::dict lemma_bound(const std::string& expr, const py::object& p, const py::object& n, int digits) {
  auto g = FunctionOracle::expression(expr);
  ddp::Integer pi = to_integer(p), ni = to_integer(n);
  auto omega = ddp::unit_square_omega_analytic(g, pi, ni, digits);
  if (!omega) omega = ddp::unit_square_omega(g, pi, ni, digits);
  return to_py(ddp::to_json(ddp::lemma_bound_check(g, pi, ni, *omega, digits)));
}

}  // namespace

PYBIND11_MODULE(ddpkit, m) {
  m.doc() = "Double-difference decomposition toolkit";
  py::register_exception<ddp::ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<ddp::DivisionByZero>(m, "DivisionByZero", PyExc_ZeroDivisionError);

  constexpr int kDigits = ddp::kDefaultDecimalDigits;
  m.attr("DEFAULT_DIGITS") = kDigits;

  m.def("chain", &chain, py::arg("p"), py::arg("n"),
        "Chain steps (m_i, p_i+1) of the reduced fraction p/n in (0, 1/2) with both weights.");
  m.def("evaluate", [](const std::string& expr, const py::object& x, int digits) {
    return to_py(FunctionOracle::expression(expr).evaluate(to_rational(x), digits));
  }, py::arg("expr"), py::arg("x"), py::arg("digits") = kDigits);
  m.def("double_difference", [](const std::string& expr, const py::object& x, const py::object& y, int digits) {
    return to_py(ddp::double_difference(FunctionOracle::expression(expr), to_rational(x), to_rational(y), digits));
  }, py::arg("expr"), py::arg("x"), py::arg("y"), py::arg("digits") = kDigits);
  m.def("telescope", [](const std::string& expr, const py::object& x, long k, int digits) {
    return to_py(ddp::telescope_eval(FunctionOracle::expression(expr), to_rational(x), k, digits));
  }, py::arg("expr"), py::arg("x"), py::arg("k"), py::arg("digits") = kDigits);
  m.def("chain_identity", &chain_identity, py::arg("expr"), py::arg("p"), py::arg("n"), py::arg("hamel") = py::none(),
        py::arg("digits") = kDigits, "h(p/n) against its chain reconstruction.");
  m.def("decompose", &decompose, py::arg("expr"), py::arg("hamel") = py::none(), py::arg("M") = 1,
        py::arg("step") = "1/64", py::arg("ladder") = py::none(), py::arg("slack") = "105/100",
        py::arg("digits") = kDigits, py::arg("extend") = py::none(), py::arg("tolerance") = "1/1000000",
        "Decomposition report; with extend, f and A at a surd sum such as 'sqrt2-1'.");
  m.def("holder_fit", &holder, py::arg("expr"), py::arg("M") = 1, py::arg("step") = "1/64",
        py::arg("ladder") = py::none(), py::arg("digits") = kDigits);
  m.def("lemma_bound", &lemma_bound, py::arg("expr"), py::arg("p"), py::arg("n"), py::arg("digits") = kDigits);
}
