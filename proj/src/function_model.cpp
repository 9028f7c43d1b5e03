#include "ddp/function_model.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

namespace ddp {

namespace {

Rational ceil_at_least_one(const Rational& r) {
  Integer c = -whole_part(-r);
  Rational out(c);
  return out < Rational(1) ? Rational(1) : out;
}

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

}  // namespace

SampleTable::SampleTable(std::vector<Sample> entries, std::optional<Rational> bound)
    : entries_(std::move(entries)) {
  std::stable_sort(entries_.begin(), entries_.end(),
                   [](const Sample& a, const Sample& b) { return a.x < b.x; });
  std::vector<Sample> unique;
  unique.reserve(entries_.size());
  for (auto& s : entries_) {
    if (!unique.empty() && unique.back().x == s.x) {
      if (!(unique.back().value == s.value))
        throw std::invalid_argument("conflicting values at x = " + s.x.str());
      continue;
    }
    unique.push_back(std::move(s));
  }
  entries_ = std::move(unique);

  Rational max_abs;
  for (const auto& s : entries_) max_abs = std::max(max_abs, abs(s.x));
  if (bound) {
    if (*bound < Rational(1)) throw std::invalid_argument("table bound M must be >= 1");
    if (max_abs > *bound) throw std::invalid_argument("table point outside [-M, M]");
    bound_ = *bound;
  } else {
    bound_ = ceil_at_least_one(max_abs);
  }
}

const Value* SampleTable::find(const Rational& x) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), x,
                             [](const Sample& s, const Rational& v) { return s.x < v; });
  if (it == entries_.end() || it->x != x) return nullptr;
  return &it->value;
}

void SampleTable::set(const Rational& x, Value v) {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), x,
                             [](const Sample& s, const Rational& r) { return s.x < r; });
  if (it == entries_.end() || it->x != x) throw DomainError("no stored point " + x.str());
  it->value = std::move(v);
}

SampleTable load_samples(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line)) throw std::invalid_argument("line 1: missing header \"x,g\"");
  ++line_no;
  {
    std::string h = trim(line);
    h.erase(std::remove(h.begin(), h.end(), ' '), h.end());
    if (h != "x,g") throw std::invalid_argument("line 1: expected header \"x,g\"");
  }
  std::map<Rational, std::pair<Value, std::size_t>> seen;
  while (std::getline(in, line)) {
    ++line_no;
    std::string row = trim(line);
    if (row.empty()) continue;
    auto comma = row.find(',');
    if (comma == std::string::npos || row.find(',', comma + 1) != std::string::npos)
      throw std::invalid_argument("line " + std::to_string(line_no) + ": expected two columns");
    Rational x, g;
    try {
      x = Rational::parse(trim(row.substr(0, comma)));
      g = Rational::parse(trim(row.substr(comma + 1)));
    } catch (const std::exception& e) {
      throw std::invalid_argument("line " + std::to_string(line_no) + ": " + e.what());
    }
    auto [it, inserted] = seen.try_emplace(x, Value(g), line_no);
    if (!inserted && !(it->second.first == Value(g)))
      throw std::invalid_argument("line " + std::to_string(line_no) + ": duplicate x = " + x.str() +
                                  " conflicts with line " + std::to_string(it->second.second));
  }
  std::vector<Sample> entries;
  entries.reserve(seen.size());
  for (auto& [x, v] : seen) entries.push_back({x, v.first});
  return SampleTable(std::move(entries));
}

SampleTable load_samples_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return load_samples(in);
}

void write_samples_csv(std::ostream& out, const SampleTable& table, std::string_view value_column) {
  out << "x," << value_column << "\n";
  for (const auto& s : table.entries()) out << s.x.str() << "," << s.value.str() << "\n";
}

// ---------------------------------------------------------------------------

HamelAdditive::HamelAdditive(std::vector<Surd> basis, std::vector<Rational> slopes)
    : basis_(std::move(basis)), slopes_(std::move(slopes)) {
  if (basis_.empty() || basis_[0].radicand != 1)
    throw std::invalid_argument("Hamel basis must start with 1");
  if (basis_.size() != slopes_.size())
    throw std::invalid_argument("Hamel basis and slopes differ in length");
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    if (!is_square_free(basis_[i].radicand))
      throw std::invalid_argument("radicand " + std::to_string(basis_[i].radicand) + " is not square-free");
    for (std::size_t j = 0; j < i; ++j)
      if (basis_[i] == basis_[j]) throw std::invalid_argument("Hamel basis elements must be distinct");
  }
}

namespace {

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    auto at = s.find(sep, start);
    out.push_back(trim(s.substr(start, at - start)));
    if (at == std::string_view::npos) break;
    start = at + 1;
  }
  return out;
}

}  // namespace

HamelAdditive HamelAdditive::parse(std::string_view spec) {
  std::vector<Surd> basis;
  std::vector<Rational> slopes;
  bool have_basis = false, have_slopes = false;
  for (const auto& part : split(spec, ';')) {
    auto eq = part.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("bad Hamel spec '" + std::string(spec) + "'");
    std::string key = trim(part.substr(0, eq));
    auto items = split(part.substr(eq + 1), ',');
    if (key == "basis") {
      for (const auto& it : items) basis.push_back(Surd::parse(it));
      have_basis = true;
    } else if (key == "slopes") {
      for (const auto& it : items) slopes.push_back(Rational::parse(it));
      have_slopes = true;
    } else {
      throw std::invalid_argument("unknown Hamel key '" + key + "'");
    }
  }
  if (!have_basis || !have_slopes) throw std::invalid_argument("Hamel spec needs basis= and slopes=");
  return HamelAdditive(std::move(basis), std::move(slopes));
}

std::string HamelAdditive::str() const {
  std::ostringstream os;
  os << "basis=";
  for (std::size_t i = 0; i < basis_.size(); ++i) os << (i ? "," : "") << basis_[i].str();
  os << ";slopes=";
  for (std::size_t i = 0; i < slopes_.size(); ++i) os << (i ? "," : "") << slopes_[i].str();
  return os.str();
}

SpanPoint SpanPoint::operator+(const SpanPoint& other) const {
  if (coords.size() != other.coords.size()) throw std::invalid_argument("span points of different length");
  SpanPoint out{coords};
  for (std::size_t i = 0; i < coords.size(); ++i) out.coords[i] += other.coords[i];
  return out;
}

bool SpanPoint::is_rational() const {
  for (std::size_t i = 1; i < coords.size(); ++i)
    if (!coords[i].is_zero()) return false;
  return true;
}

Rational apply_additive(const HamelAdditive& a, const SpanPoint& p) {
  if (p.coords.size() != a.size()) throw std::invalid_argument("span point does not match basis length");
  Rational sum;
  for (std::size_t i = 0; i < p.coords.size(); ++i) sum += p.coords[i] * a.slopes()[i];
  return sum;
}

Value span_value(const HamelAdditive& a, const SpanPoint& p, int digits) {
  if (p.coords.size() != a.size()) throw std::invalid_argument("span point does not match basis length");
  if (p.is_rational()) return p.coords.empty() ? Rational() : p.coords[0];
  HighPrecDecimal sum(p.coords[0], digits);
  for (std::size_t i = 1; i < p.coords.size(); ++i)
    if (!p.coords[i].is_zero())
      sum = sum + HighPrecDecimal(p.coords[i], digits) * HighPrecDecimal(a.basis()[i], digits);
  return sum;
}

// ---------------------------------------------------------------------------

FunctionOracle FunctionOracle::expression(std::string_view text) {
  return FunctionOracle(Expression{parse_expression(text), std::string(text)});
}

FunctionOracle FunctionOracle::expression(Expr e) {
  std::string text = to_string(e);
  return FunctionOracle(Expression{std::move(e), std::move(text)});
}

FunctionOracle FunctionOracle::table(SampleTable t, Interpolation policy) {
  return FunctionOracle(Table{std::move(t), policy});
}

FunctionOracle FunctionOracle::composite(std::string_view text, HamelAdditive additive) {
  return FunctionOracle(Composite{Expression{parse_expression(text), std::string(text)}, std::move(additive)});
}

namespace {

Value table_eval(const FunctionOracle::Table& t, const Rational& x) {
  const auto& es = t.table.entries();
  if (es.empty()) throw DomainError("empty sample table");
  if (const Value* v = t.table.find(x)) return *v;
  if (t.policy == Interpolation::None) throw DomainError("point " + x.str() + " is not a stored sample");
  if (x < es.front().x || x > es.back().x) throw DomainError("point " + x.str() + " is outside the table domain");
  auto hi = std::lower_bound(es.begin(), es.end(), x, [](const Sample& s, const Rational& v) { return s.x < v; });
  auto lo = hi - 1;
  Rational w = (x - lo->x) / (hi->x - lo->x);
  return lo->value + (hi->value - lo->value) * Value(w);
}

}  // namespace

Value FunctionOracle::evaluate(const Rational& x, int digits) const {
  return std::visit(
      [&](const auto& v) -> Value {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Expression>) {
          return ddp::evaluate(v.expr, Value(x), digits);
        } else if constexpr (std::is_same_v<T, Table>) {
          return table_eval(v, x);
        } else {
          return ddp::evaluate(v.part.expr, Value(x), digits) + Value(x * v.additive.slopes()[0]);
        }
      },
      v_);
}

Value FunctionOracle::evaluate(const SpanPoint& p, int digits) const {
  if (const auto* c = std::get_if<Composite>(&v_)) {
    Value additive = apply_additive(c->additive, p);
    // A constant expression part keeps the whole value exact off Q.
    auto poly = polynomial_coefficients(c->part.expr);
    if (poly && poly->size() <= 1) return Value(poly->empty() ? Rational() : poly->front()) + additive;
    Value at = span_value(c->additive, p, digits);
    return ddp::evaluate(c->part.expr, at, digits) + additive;
  }
  if (p.coords.size() != 1) throw DomainError("span points need a composite oracle");
  return evaluate(p.coords[0], digits);
}

const FunctionOracle::Expression* FunctionOracle::expression_part() const {
  if (const auto* e = std::get_if<Expression>(&v_)) return e;
  if (const auto* c = std::get_if<Composite>(&v_)) return &c->part;
  return nullptr;
}

const HamelAdditive* FunctionOracle::additive_part() const {
  if (const auto* c = std::get_if<Composite>(&v_)) return &c->additive;
  return nullptr;
}

const SampleTable* FunctionOracle::table_part() const {
  if (const auto* t = std::get_if<Table>(&v_)) return &t->table;
  return nullptr;
}

bool FunctionOracle::is_approximate_table() const {
  const auto* t = std::get_if<Table>(&v_);
  return t && t->policy == Interpolation::Linear;
}

std::string FunctionOracle::describe() const {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Expression>) {
          return "expr:" + v.text;
        } else if constexpr (std::is_same_v<T, Table>) {
          return "table:" + std::to_string(v.table.size()) + " samples" +
                 (v.policy == Interpolation::Linear ? " (linear interpolation, approximate)" : "");
        } else {
          return "composite:" + v.part.text + " + A[" + v.additive.str() + "]";
        }
      },
      v_);
}

}  // namespace ddp
