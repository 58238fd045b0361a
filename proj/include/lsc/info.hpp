#pragma once

#include <cstdint>

#include "lsc/prob.hpp"

namespace lsc {

// Conventions used throughout: logs are base 2, 0*log(0) = 0, and
// kl_divergence returns +infinity when the support condition fails.

struct TypicalityParams {
  double eps = 0.0;
  double eps_prime = 0.0;  // must satisfy 0 < eps_prime < eps < 1

  void validate() const;
};

double entropy(const Pmf& p);
// H(B|A) for a joint over A x B.
double conditional_entropy(const JointPmf& j);
// I(A;B) = H(B) - H(B|A); tiny negative rounding (>= -1e-12) clamps to 0.
double mutual_information(const JointPmf& j);
double kl_divergence(const Pmf& p, const Pmf& q);

Pmf empirical_pmf(const Sequence& x);
JointPmf joint_empirical_pmf(const Sequence& x, const Sequence& y);

// Robust typicality: |count(a)/n - p(a)| <= eps * p(a) for every symbol,
// so p(a) = 0 forces count 0.  Comparisons carry a 1e-12 additive slack.
bool is_typical(const Sequence& x, const Pmf& p, double eps);
bool is_jointly_typical(const Sequence& x, const Sequence& y, const JointPmf& j,
                        double eps);

// Smallest eps at which x is typical for p; +infinity when x puts mass
// outside p's support.
double min_typicality_eps(const Sequence& x, const Pmf& p);

// Exact size of { z^n : (y^n, z^n) jointly eps-typical for j } by full
// enumeration over the B alphabet.  Guard: |B|^n <= 2^24.
uint64_t conditional_typical_set_size(const Sequence& y, const JointPmf& j,
                                      double eps);

struct ConditionalTypicalScan {
  uint64_t member_count = 0;
  // members that fail marginal eps-typicality for j.marginal_b()
  uint64_t marginal_violations = 0;
};

// Same enumeration, also checking every member against the B marginal.
ConditionalTypicalScan scan_conditional_typical(const Sequence& y, const JointPmf& j,
                                                double eps);

}  // namespace lsc
