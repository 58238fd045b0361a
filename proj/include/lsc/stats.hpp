#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace lsc {

// Standard normal CDF.
double normal_cdf(double x);

// Wilson score interval for a binomial proportion at 95% coverage.
// Returns {lower, upper}; trials must be positive.
std::pair<double, double> wilson_interval(uint64_t hits, uint64_t trials);

// One-sided Mann-Whitney U test p-value for the alternative that samples in
// `x` tend to be smaller than samples in `y`. Normal approximation with tie
// correction and continuity correction.
double mann_whitney_one_sided_p(const std::vector<double>& x,
                                const std::vector<double>& y);

}  // namespace lsc
