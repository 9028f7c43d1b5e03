#pragma once

#include <vector>

#include "ddp/rational.hpp"

namespace ddp {

/// One step of the chain: m_i = [n / p_i] and p_{i+1} = n - m_i p_i.
struct ChainStep {
  Integer m;
  Integer remainder;
  friend bool operator==(const ChainStep&, const ChainStep&) = default;
};

/**
 * Remainder chain of a reduced fraction p/n in (0, 1/2).
 *
 * Starting from p_0 = p the chain repeats m_i = [n / p_i],
 * p_{i+1} = n - m_i p_i with n fixed, until the remainder vanishes. Note this
 * is not the gcd recurrence: the dividend stays n at every step.
 */
class EuclidChain {
 public:
  EuclidChain(Integer p, Integer n, std::vector<ChainStep> steps)
      : p_(std::move(p)), n_(std::move(n)), steps_(std::move(steps)) {}

  const Integer& p() const noexcept { return p_; }
  const Integer& n() const noexcept { return n_; }
  const std::vector<ChainStep>& steps() const noexcept { return steps_; }
  std::size_t length() const noexcept { return steps_.size(); }

  /// p_i for i = 0..k (p_0 = p, p_k = 0).
  Integer remainder(std::size_t i) const;

 private:
  Integer p_;
  Integer n_;
  std::vector<ChainStep> steps_;
};

/// Throws std::invalid_argument if gcd(p, n) != 1 and std::domain_error if
/// p/n is not in the open interval (0, 1/2).
EuclidChain compute_chain(const Integer& p, const Integer& n);

/// 1/m_0 - 1/(m_0 m_1) + ... + (-1)^{k-1}/(m_0 ... m_{k-1}); equals p/n.
Rational alternating_weight(const EuclidChain& chain);

/// 1 + 1/m_0 + ... + 1/(m_0 ... m_{k-2}); bounded by m_0/(m_0 - 1).
Rational geometric_weight(const EuclidChain& chain);

/// Checks every structural invariant; returns a description of the first
/// violation or an empty string.
std::string chain_violation(const EuclidChain& chain);

}  // namespace ddp
