#include "lsc/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lsc {

namespace {
constexpr double kZ95 = 1.959963984540054;
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

std::pair<double, double> wilson_interval(uint64_t hits, uint64_t trials) {
  if (trials == 0) throw std::invalid_argument("wilson_interval: zero trials");
  if (hits > trials) throw std::invalid_argument("wilson_interval: hits exceed trials");
  const double n = static_cast<double>(trials);
  const double phat = static_cast<double>(hits) / n;
  const double z2 = kZ95 * kZ95;
  const double denom = 1.0 + z2 / n;
  const double center = phat + z2 / (2.0 * n);
  const double spread = kZ95 * std::sqrt(phat * (1.0 - phat) / n + z2 / (4.0 * n * n));
  double lo = (center - spread) / denom;
  double hi = (center + spread) / denom;
  lo = std::max(0.0, lo);
  hi = std::min(1.0, hi);
  return {lo, hi};
}

double mann_whitney_one_sided_p(const std::vector<double>& x,
                                const std::vector<double>& y) {
  const size_t m = x.size();
  const size_t n = y.size();
  if (m == 0 || n == 0) {
    throw std::invalid_argument("mann_whitney_one_sided_p: empty sample");
  }
  struct Tagged {
    double value;
    bool from_x;
  };
  std::vector<Tagged> all;
  all.reserve(m + n);
  for (double v : x) all.push_back({v, true});
  for (double v : y) all.push_back({v, false});
  std::sort(all.begin(), all.end(),
            [](const Tagged& a, const Tagged& b) { return a.value < b.value; });

  // Midranks, accumulating the tie-correction term sum t^3 - t.
  const size_t total = m + n;
  double rank_sum_x = 0.0;
  double tie_term = 0.0;
  size_t i = 0;
  while (i < total) {
    size_t j = i;
    while (j < total && all[j].value == all[i].value) ++j;
    const double tied = static_cast<double>(j - i);
    const double midrank = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
    for (size_t k = i; k < j; ++k) {
      if (all[k].from_x) rank_sum_x += midrank;
    }
    tie_term += tied * tied * tied - tied;
    i = j;
  }

  const double dm = static_cast<double>(m);
  const double dn = static_cast<double>(n);
  const double dt = dm + dn;
  // U counts pairs where an x-sample exceeds a y-sample; small U supports
  // "x tends to be smaller".
  const double u = rank_sum_x - dm * (dm + 1.0) / 2.0;
  const double mean_u = dm * dn / 2.0;
  const double var_u =
      dm * dn / 12.0 * (dt + 1.0 - tie_term / (dt * (dt - 1.0)));
  if (var_u <= 0.0) return u < mean_u ? 0.0 : 1.0;
  const double z = (u - mean_u + 0.5) / std::sqrt(var_u);
  return normal_cdf(z);
}

}  // namespace lsc
