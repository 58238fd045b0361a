#include "lsc/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>

#include "lsc/codebook.hpp"
#include "lsc/errors.hpp"
#include "lsc/info.hpp"
#include "lsc/parallel.hpp"
#include "lsc/rng.hpp"
#include "lsc/simplex.hpp"

namespace lsc {

namespace {

// k zeros then n-k ones, k = round(n * p0): the canonical conditioning word
// of near-typical composition (set sizes depend on y only through its type).
Sequence balanced_word(Alphabet a, int n, double p0) {
  const int k = static_cast<int>(std::llround(n * p0));
  std::vector<int32_t> symbols(static_cast<size_t>(n), 1);
  for (int i = 0; i < k && i < n; ++i) symbols[static_cast<size_t>(i)] = 0;
  return Sequence(a, std::move(symbols));
}

nlohmann::json membership_sweep(const JointPmf& joint, double eps, double eps_prime,
                                int max_n, unsigned threads, uint64_t* violations) {
  const Pmf p_y = joint.marginal_a();
  const double h_cond = conditional_entropy(joint);
  nlohmann::json rows = nlohmann::json::array();
  for (int n = 2; n <= max_n; ++n) {
    uint64_t y_total = 1;
    for (int i = 0; i < n; ++i) y_total *= static_cast<uint64_t>(joint.a().size);
    std::vector<uint64_t> members(y_total), bad(y_total);
    parallel_for(y_total, threads, [&](size_t rank) {
      std::vector<int32_t> symbols(static_cast<size_t>(n));
      uint64_t r = rank;
      for (int i = n - 1; i >= 0; --i) {
        symbols[static_cast<size_t>(i)] =
            static_cast<int32_t>(r % static_cast<uint64_t>(joint.a().size));
        r /= static_cast<uint64_t>(joint.a().size);
      }
      const ConditionalTypicalScan scan = scan_conditional_typical(
          Sequence(joint.a(), std::move(symbols)), joint, eps);
      members[rank] = scan.member_count;
      bad[rank] = scan.marginal_violations;
    });
    uint64_t members_total = 0, bad_total = 0;
    for (uint64_t v : members) members_total += v;
    for (uint64_t v : bad) bad_total += v;
    *violations += bad_total;

    const Sequence y = balanced_word(joint.a(), n, p_y(0));
    const uint64_t count = conditional_typical_set_size(y, joint, eps);
    const double bound = (1.0 - eps) * std::exp2(n * (1.0 - eps) * h_cond);
    rows.push_back(nlohmann::json{
        {"n", n},
        {"conditioning_words", y_total},
        {"members_total", members_total},
        {"marginal_violations", bad_total},
        {"balanced_word_typical_at_eps_prime", is_typical(y, p_y, eps_prime)},
        {"balanced_word_members", count},
        {"size_bound", bound},
        {"bound_met", static_cast<double>(count) >= bound},
    });
  }
  return nlohmann::json{{"joint", to_json(joint)}, {"rows", std::move(rows)}};
}

}  // namespace

nlohmann::json typical_membership_report(double eps, double eps_prime,
                                         int binary_max_n, int ternary_max_n,
                                         unsigned threads) {
  const JointPmf binary(Alphabet{2}, Alphabet{2}, {0.4, 0.1, 0.1, 0.4});
  const JointPmf ternary(Alphabet{2}, Alphabet{3},
                         {0.25, 0.15, 0.1, 0.1, 0.15, 0.25});
  uint64_t violations = 0;
  nlohmann::json sweeps = nlohmann::json::array();
  sweeps.push_back(membership_sweep(binary, eps, eps_prime, binary_max_n, threads,
                                    &violations));
  sweeps.push_back(membership_sweep(ternary, eps, eps_prime, ternary_max_n, threads,
                                    &violations));
  return nlohmann::json{
      {"eps", eps},
      {"eps_prime", eps_prime},
      {"sweeps", std::move(sweeps)},
      {"marginal_violations", violations},
      {"status", violations == 0 ? "pass" : "fail"},
  };
}

nlohmann::json perturbation_bound_report(uint64_t samples_per_cell, uint64_t seed,
                                         unsigned threads) {
  struct Cell {
    int alphabet;
    int xi_index;
    double xi;
  };
  const double multipliers[] = {0.2, 0.5, 0.9};
  std::vector<Cell> cells;
  for (int k = 2; k <= 5; ++k)
    for (int xi_index = 0; xi_index < 3; ++xi_index)
      cells.push_back({k, xi_index, multipliers[xi_index] / (k * k)});

  nlohmann::json rows(nlohmann::json::array());
  rows.get_ref<nlohmann::json::array_t&>().resize(cells.size());
  uint64_t total_violations = 0;
  std::vector<uint64_t> violations(cells.size(), 0);
  parallel_for(cells.size(), threads, [&](size_t c) {
    const Cell cell = cells[c];
    uint64_t bad = 0;
    double max_kl = 0.0;
    double bound = 0.0;
    for (uint64_t t = 0; t < samples_per_cell; ++t) {
      RngStream rng(seed, {stream_tag::kPerturbation,
                           static_cast<uint64_t>(cell.alphabet),
                           static_cast<uint64_t>(cell.xi_index), t});
      std::vector<double> base = sample_uniform_simplex(cell.alphabet, rng).theta.mass();
      std::sort(base.begin(), base.end());
      const PerturbationBox box(Pmf(Alphabet{cell.alphabet}, std::move(base)),
                                cell.xi);
      const Pmf sample = sample_perturbation(box, rng);
      const double kl = kl_divergence(box.base, sample);
      bound = perturbation_kl_bound(box);
      max_kl = std::max(max_kl, kl);
      if (kl > bound) ++bad;
    }
    violations[c] = bad;
    rows[c] = nlohmann::json{
        {"alphabet", cell.alphabet}, {"xi", cell.xi},
        {"samples", samples_per_cell}, {"violations", bad},
        {"kl_bound", bound},          {"max_kl", max_kl},
    };
  });
  for (uint64_t v : violations) total_violations += v;
  return nlohmann::json{
      {"seed", seed},
      {"cells", std::move(rows)},
      {"violations", total_violations},
      {"status", total_violations == 0 ? "pass" : "fail"},
  };
}

nlohmann::json hit_probability_report(const JointPmf& joint, double eps,
                                      const std::vector<int>& ns, uint64_t trials,
                                      uint64_t seed) {
  if (ns.empty()) throw ConfigError("hit probability report: no block lengths");
  const Pmf p_y = joint.marginal_a();
  const double mi = mutual_information(joint);
  nlohmann::json rows = nlohmann::json::array();
  bool all_ci_ok = true;
  std::vector<double> exponents;
  for (int n : ns) {
    const Sequence y = balanced_word(joint.a(), n, p_y(0));
    RngStream rng(seed, {stream_tag::kMonteCarlo, static_cast<uint64_t>(n)});
    const HitProbEstimate est = estimate_conditional_hit_prob(joint, y, eps, trials, rng);
    const double bound = mixture_hit_lower_bound(joint, n, eps);
    const bool ci_ok = est.ci_low >= bound;
    all_ci_ok = all_ci_ok && ci_ok;
    nlohmann::json row{
        {"n", n},
        {"trials", est.trials},
        {"hits", est.hits},
        {"estimate", est.estimate},
        {"ci_low", est.ci_low},
        {"ci_high", est.ci_high},
        {"lower_bound", bound},
        {"ci_above_bound", ci_ok},
    };
    try {
      row["exact"] = exact_mixture_hit_probability(joint, y, eps);
    } catch (const GuardError&) {
      // enumeration out of reach at this n; Monte-Carlo only
    }
    if (est.estimate > 0.0) {
      const double exponent = -std::log2(est.estimate) / n;
      row["rate_exponent"] = exponent;
      exponents.push_back(exponent);
    }
    rows.push_back(std::move(row));
  }
  bool decreasing = exponents.size() == ns.size();
  for (size_t i = 1; i < exponents.size(); ++i)
    decreasing = decreasing && exponents[i] < exponents[i - 1];
  const bool pass = all_ci_ok && decreasing;
  return nlohmann::json{
      {"joint", to_json(joint)},
      {"eps", eps},
      {"seed", seed},
      {"mutual_information", mi},
      {"rows", std::move(rows)},
      {"ci_above_bound", all_ci_ok},
      {"exponent_decreasing", decreasing},
      {"status", pass ? "pass" : "fail"},
  };
}

}  // namespace lsc
