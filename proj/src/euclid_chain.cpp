#include "ddp/euclid_chain.hpp"

#include <cassert>
#include <stdexcept>

namespace ddp {

Integer EuclidChain::remainder(std::size_t i) const {
  if (i == 0) return p_;
  return steps_.at(i - 1).remainder;
}

EuclidChain compute_chain(const Integer& p, const Integer& n) {
  if (p <= 0 || n <= 0) throw std::domain_error("chain needs positive p and n");
  Integer g;
  mpz_gcd(g.get_mpz_t(), p.get_mpz_t(), n.get_mpz_t());
  if (g != 1)
    throw std::invalid_argument("fraction " + p.get_str() + "/" + n.get_str() + " is not in lowest terms");
  if (2 * p >= n)
    throw std::domain_error("fraction " + p.get_str() + "/" + n.get_str() + " is not in (0, 1/2)");

  std::vector<ChainStep> steps;
  Integer current = p;
  while (current != 0) {
    Integer m = n / current;  // positive operands: truncation is the floor
    Integer next = n - m * current;
    steps.push_back({m, next});
    current = next;
    // remainders strictly decrease, so the loop runs at most p times
    assert(steps.size() <= p);
  }
  return EuclidChain(p, n, std::move(steps));
}

Rational alternating_weight(const EuclidChain& chain) {
  Rational sum;
  Integer prod = 1;
  int sign = 1;
  for (const auto& s : chain.steps()) {
    prod *= s.m;
    sum += Rational(Integer(sign), prod);
    sign = -sign;
  }
  return sum;
}

Rational geometric_weight(const EuclidChain& chain) {
  Rational sum(1);
  Integer prod = 1;
  const auto& steps = chain.steps();
  for (std::size_t i = 0; i + 1 < steps.size(); ++i) {
    prod *= steps[i].m;
    sum += Rational(Integer(1), prod);
  }
  return sum;
}

std::string chain_violation(const EuclidChain& chain) {
  const auto& steps = chain.steps();
  if (steps.empty()) return "empty chain";
  if (steps.front().m < 2) return "m_0 < 2";
  Integer prev = chain.p();
  for (std::size_t i = 0; i < steps.size(); ++i) {
    if (steps[i].m != chain.n() / chain.remainder(i)) return "m_" + std::to_string(i) + " is not [n/p_i]";
    if (steps[i].remainder != chain.n() - steps[i].m * chain.remainder(i))
      return "p_" + std::to_string(i + 1) + " is not n - m_i p_i";
    if (steps[i].remainder < 0 || steps[i].remainder >= prev)
      return "remainder p_" + std::to_string(i + 1) + " does not decrease";
    if (i > 0 && steps[i].m < steps[i - 1].m) return "m_" + std::to_string(i) + " decreases";
    prev = steps[i].remainder;
  }
  if (steps.back().remainder != 0) return "final remainder is not zero";
  return {};
}

}  // namespace ddp
