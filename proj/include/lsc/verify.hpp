#pragma once

#include <cstdint>
#include <vector>

#include <json.hpp>

#include "lsc/prob.hpp"

namespace lsc {

// Backing for the verify-prop1 command: exhaustively enumerates the
// conditional typical set of every conditioning word at each block length and
// counts members that fail marginal typicality (none are allowed).  Also
// reports, for a balanced conditioning word, the member count next to the
// explicit size bound (1-eps) * 2^(n(1-eps)H(Z|Y)), without asserting it.
// Covers a binary-output joint up to binary_max_n and a ternary-output joint
// up to ternary_max_n.
nlohmann::json typical_membership_report(double eps, double eps_prime,
                                         int binary_max_n, int ternary_max_n,
                                         unsigned threads);

// Backing for the verify-prop3 command: for each alphabet size in {2,3,4,5}
// and box width xi in {0.2, 0.5, 0.9}/|Z|^2, draws `samples_per_cell` random
// (base, perturbation) pairs and checks the KL bound.  Zero violations pass.
nlohmann::json perturbation_bound_report(uint64_t samples_per_cell, uint64_t seed,
                                         unsigned threads);

// Backing for the verify-lemma1 command: Monte-Carlo conditional-typicality
// hit probability for a mixture-drawn word against the closed-form lower
// bound, with exact enumeration cross-checks where the scan guard allows, and
// the per-n exponent (-1/n) log2(estimate) next to I(Y;Z).
nlohmann::json hit_probability_report(const JointPmf& joint, double eps,
                                      const std::vector<int>& ns, uint64_t trials,
                                      uint64_t seed);

}  // namespace lsc
