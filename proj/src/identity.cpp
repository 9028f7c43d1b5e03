#include "ddp/identity.hpp"

#include <stdexcept>

namespace ddp {

const Value& MemoOracle::operator()(const Rational& x) {
  auto it = cache_.find(x);
  if (it == cache_.end()) it = cache_.emplace(x, g_.evaluate(x, digits_)).first;
  return it->second;
}

namespace {

Value dd(MemoOracle& g, const Rational& x, const Rational& y) { return g(x + y) - g(x) - g(y); }

Value big_g(MemoOracle& g, const Rational& x, const Rational& y) { return dd(g, x, y) + g(Rational()); }

Rational frac(const Integer& a, const Integer& n) { return Rational(a, n); }

// sum_{j=1}^{m-1} G(q, j q) + G(r, 1 - r) for q = p_i/n, r = p_{i+1}/n
Value step_bracket(MemoOracle& g, const Integer& p_i, const ChainStep& step, const Integer& n,
                   ChainEvaluation* trace) {
  Rational q = frac(p_i, n);
  Value sum;
  auto record = [&](const Value& v) {
    if (trace) {
      ++trace->g_term_count;
      if (!v.is_zero()) trace->g_terms_all_zero = false;
    }
  };
  for (Integer j = 1; j < step.m; ++j) {
    Value term = big_g(g, q, q * Rational(j));
    record(term);
    sum += term;
  }
  Rational r = frac(step.remainder, n);
  Value boundary = big_g(g, r, Rational(1) - r);
  record(boundary);
  sum += boundary;
  return sum;
}

}  // namespace

Value double_difference(const FunctionOracle& g, const Rational& x, const Rational& y, int digits) {
  MemoOracle memo(g, digits);
  return dd(memo, x, y);
}

DDValue dd_value(const FunctionOracle& g, const Rational& x, const Rational& y, int digits) {
  MemoOracle memo(g, digits);
  Value f = dd(memo, x, y);
  Value big = f + memo(Rational());
  return DDValue{x, y, std::move(f), std::move(big)};
}

Value shifted_h(const FunctionOracle& g, const Rational& t, int digits) {
  MemoOracle memo(g, digits);
  return memo(t) - memo(Rational());
}

Value telescope_eval(const FunctionOracle& g, const Rational& x, long k, int digits) {
  if (k < 1) throw std::invalid_argument("telescoping needs k >= 1");
  MemoOracle memo(g, digits);
  Value sum;
  for (long j = 1; j < k; ++j) sum += big_g(memo, x, x * Rational(j));
  Rational kx = x * Rational(k);
  Value h_kx = memo(kx) - memo(Rational());
  Value inv_k = Rational(1, k);
  return inv_k * h_kx - inv_k * sum;
}

ChainEvaluation chain_eval(const FunctionOracle& g, const Integer& p, const Integer& n, int digits) {
  EuclidChain chain = compute_chain(p, n);
  MemoOracle memo(g, digits);
  ChainEvaluation out;
  const auto& steps = chain.steps();
  const std::size_t k = steps.size();
  Value h1 = memo(Rational(1)) - memo(Rational());

  out.h_at_chain.assign(k + 1, Value());
  out.brackets.assign(k, Value());
  // h(p_k / n) = h(0) = 0
  out.h_at_chain[k] = Value();
  for (std::size_t idx = k; idx-- > 0;) {
    Value bracket = step_bracket(memo, chain.remainder(idx), steps[idx], n, &out);
    Value inv_m = Rational(Integer(1), steps[idx].m);
    out.h_at_chain[idx] = inv_m * h1 - inv_m * bracket - inv_m * out.h_at_chain[idx + 1];
    out.brackets[idx] = std::move(bracket);
  }
  out.value = out.h_at_chain[0];
  return out;
}

Value chain_eval_closed_form(const FunctionOracle& g, const Integer& p, const Integer& n, int digits) {
  EuclidChain chain = compute_chain(p, n);
  MemoOracle memo(g, digits);
  Value h1 = memo(Rational(1)) - memo(Rational());
  Value result = h1 * Value(alternating_weight(chain));
  Integer prod = 1;
  int sign = -1;
  for (std::size_t i = 0; i < chain.length(); ++i) {
    prod *= chain.steps()[i].m;
    Value bracket = step_bracket(memo, chain.remainder(i), chain.steps()[i], n, nullptr);
    result += Value(Rational(Integer(sign), prod)) * bracket;
    sign = -sign;
  }
  return result;
}

bool identity_holds(const Value& lhs, const Value& rhs, int digits) {
  if (lhs.is_exact() && rhs.is_exact()) return lhs.exact() == rhs.exact();
  return approx_equal(lhs, rhs, Value(decimal_tolerance(digits)));
}

}  // namespace ddp
