#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <json.hpp>

#include "lsc/codebook.hpp"
#include "lsc/prob.hpp"
#include "lsc/rd.hpp"
#include "lsc/rng.hpp"

namespace lsc {

// Parameters for the subset-universality experiment.  The codebook is built
// at full_rate; random subsets at subset_rate are evaluated on words drawn
// from source_pmf.  grid_pmf is the design pmf the typicality target and the
// error accounting are measured against (it may differ from source_pmf).
struct ExperimentConfig {
  Pmf source_pmf = Pmf::uniform(Alphabet{2});
  Pmf grid_pmf = Pmf::uniform(Alphabet{2});
  int n = 0;
  double full_rate = 0.0;
  double subset_rate = 0.0;  // in (0, full_rate]
  double backoff = 0.0;      // typicality target solved at subset_rate - backoff
  double eps = 0.0;
  double eps_prime = 0.0;
  double resolution = 0.0;  // must satisfy resolution < eps_prime < eps
  double p_min = 0.0;
  Ensemble ensemble = Ensemble::kMixture;
  std::optional<Pmf> ensemble_pmf;  // generator, required for iid and type
  uint64_t num_subsets = 0;
  uint64_t num_source_words = 0;
  uint64_t seed = 0;
  DistortionMeasure distortion = DistortionMeasure::hamming(Alphabet{2});
  double exceed_slack = 0.05;

  void validate() const;  // throws ConfigError
};

nlohmann::json to_json(const ExperimentConfig& cfg);
ExperimentConfig experiment_config_from_json(const nlohmann::json& v);

// Distortion serialization: explicit {"source","recon","rows"} object, or the
// string "hamming" meaning square Hamming on `fallback`.
nlohmann::json to_json(const DistortionMeasure& d);
DistortionMeasure distortion_from_json(const nlohmann::json& v, Alphabet fallback);

struct SubsetRecord {
  uint64_t subset_id = 0;
  double mean_distortion_optimal = 0.0;
  double mean_distortion_typicality = 0.0;
  uint64_t e1_count = 0;  // source word not eps_prime-typical for grid_pmf
  uint64_t e2_count = 0;  // typical source word, no typical codeword in subset
  double hit_rate = 0.0;
};

struct SubsetSummary {
  double distortion_at_subset_rate = 0.0;  // D(subset_rate) for grid_pmf
  double distortion_at_target_rate = 0.0;  // D(subset_rate - backoff)
  double exceed_threshold = 0.0;  // (1+eps) * D(subset_rate - backoff) + slack
  double exceed_fraction = 0.0;   // fraction of subsets above the threshold
  double median_optimal = 0.0;
  double median_typicality = 0.0;
};

struct SubsetUniversalityResult {
  std::vector<SubsetRecord> records;  // ordered by subset_id
  SubsetSummary summary;
};

// Per-subset streams (seed, kSubset, id) and per-word streams
// (seed, kSourceWord, subset id, word id), so results are identical under any
// thread count.
SubsetUniversalityResult run_subset_universality(const ExperimentConfig& cfg,
                                                 unsigned threads = 1);

// lower/upper median of a nonempty sample (mean of the two central order
// statistics for even sizes).
double median(std::vector<double> values);

struct EnsembleComparison {
  SubsetUniversalityResult first;
  SubsetUniversalityResult second;
  double mw_p_value = 0.0;  // one-sided: first's subset distortions smaller
  bool first_median_below = false;
};

// Both configs must agree on everything except ensemble and ensemble_pmf.
EnsembleComparison run_ensemble_comparison(const ExperimentConfig& first,
                                           const ExperimentConfig& second,
                                           unsigned threads = 1);

// Deterministic channel f over length-n blocks, tabulated by sequence rank.
struct ChannelSpec {
  Alphabet input;
  Alphabet output;
  int n = 0;
  std::vector<uint64_t> table;  // f(input rank) = output rank
  uint64_t image_size = 0;
  double effective_rate = 0.0;  // log2(image_size) / n
};

// Big-endian mixed-radix rank: position 0 is the most significant digit.
uint64_t sequence_rank(const Sequence& x);
Sequence sequence_from_rank(Alphabet a, int n, uint64_t rank);

// Samples target_image_size distinct outputs uniformly, then maps inputs onto
// them: a random bijection covers the image once, remaining inputs land
// uniformly.  Surjectivity onto the sampled image is forced, so the realized
// rate is exact (construction is mildly non-uniform over all functions).
// Guards: |input|^n <= 2^16 (table), |output|^n <= 2^24 (image scan).
ChannelSpec make_random_channel(Alphabet input, Alphabet output, int n,
                                uint64_t target_image_size, RngStream& rng);

// Sorted distinct output ranks actually reachable through the table.
std::vector<uint64_t> channel_image(const ChannelSpec& ch);

struct ChannelRunResult {
  std::vector<double> per_word_distortion;
  double mean_distortion = 0.0;
  double effective_rate = 0.0;
  double benchmark_distortion = 0.0;  // D(effective_rate) for source_pmf
};

// The encoder knows f and the decoder table g(y) = cb.word(rank(y)): each
// source word gets the input x minimizing d(s, g(f(x))) by full search.
// Requires cb.word_count() == |output|^n and matching block lengths.
// Source words are drawn from (seed, kSourceWord, word id).
ChannelRunResult run_channel_simulation(const ChannelSpec& ch, const Codebook& cb,
                                        const Pmf& source_pmf, uint64_t num_words,
                                        uint64_t seed, const DistortionMeasure& d,
                                        unsigned threads = 1);

}  // namespace lsc
