#pragma once

#include <unordered_map>
#include <vector>

#include "ddp/euclid_chain.hpp"
#include "ddp/function_model.hpp"

namespace ddp {

/// F(x, y) = g(x+y) - g(x) - g(y) together with G = F + g(0).
struct DDValue {
  Rational x;
  Rational y;
  Value F;
  Value G;
};

/// Caches g at rational points; chain and telescope sums revisit points.
class MemoOracle {
 public:
  explicit MemoOracle(const FunctionOracle& g, int digits = kDefaultDecimalDigits) : g_(g), digits_(digits) {}
  const Value& operator()(const Rational& x);
  int digits() const { return digits_; }

 private:
  const FunctionOracle& g_;
  int digits_;
  std::unordered_map<Rational, Value> cache_;
};

Value double_difference(const FunctionOracle& g, const Rational& x, const Rational& y,
                        int digits = kDefaultDecimalDigits);
DDValue dd_value(const FunctionOracle& g, const Rational& x, const Rational& y,
                 int digits = kDefaultDecimalDigits);

/// h(t) = g(t) - g(0).
Value shifted_h(const FunctionOracle& g, const Rational& t, int digits = kDefaultDecimalDigits);

/// (1/k) h(kx) - (1/k) [G(x,x) + G(x,2x) + ... + G(x,(k-1)x)], k >= 1.
Value telescope_eval(const FunctionOracle& g, const Rational& x, long k, int digits = kDefaultDecimalDigits);

struct ChainEvaluation {
  Value value;                    // h(p/n) reconstructed from the chain
  std::vector<Value> h_at_chain;  // reconstructed h(p_i/n), i = 0..k
  std::vector<Value> brackets;    // per step: sum of G terms including the boundary term
  bool g_terms_all_zero = true;
  std::size_t g_term_count = 0;
};

/**
 * Reconstructs h(p/n) from h(1) and G values at chain points by literal
 * back-substitution: the last step uses h(p_k/n) = h(0) = 0, and each earlier
 * step
 *
 *   h(p_i/n) = h(1)/m_i - (1/m_i)[sum_{j<m_i} G(p_i/n, j p_i/n)
 *              + G(p_{i+1}/n, 1 - p_{i+1}/n)] - h(p_{i+1}/n)/m_i
 *
 * is applied in turn.
 */
ChainEvaluation chain_eval(const FunctionOracle& g, const Integer& p, const Integer& n,
                           int digits = kDefaultDecimalDigits);

/// The same quantity from the expanded alternating formula; a second route
/// for cross-checking chain_eval.
Value chain_eval_closed_form(const FunctionOracle& g, const Integer& p, const Integer& n,
                             int digits = kDefaultDecimalDigits);

/// Exact equality for exact values, 10^-(digits-10) agreement otherwise.
bool identity_holds(const Value& lhs, const Value& rhs, int digits);

}  // namespace ddp
