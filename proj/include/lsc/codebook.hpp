#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "lsc/prob.hpp"
#include "lsc/rd.hpp"
#include "lsc/rng.hpp"

namespace lsc {

enum class Ensemble : uint8_t {
  kMixture = 0,  // per word: theta uniform on the simplex, then n i.i.d. P_theta
  kIid = 1,      // n i.i.d. draws from a fixed pmf per word
  kType = 2,     // uniform over the type class nearest to n * pmf
};

std::string ensemble_name(Ensemble e);
Ensemble ensemble_from_name(const std::string& name);

class Codebook {
 public:
  Codebook(Ensemble ensemble, int n, double rate, Alphabet alphabet,
           uint64_t seed, uint64_t word_count, std::vector<uint8_t> words,
           std::optional<Pmf> generator, std::vector<Pmf> thetas);

  Ensemble ensemble() const { return ensemble_; }
  int n() const { return n_; }
  double rate() const { return rate_; }
  Alphabet alphabet() const { return alphabet_; }
  uint64_t seed() const { return seed_; }
  uint64_t word_count() const { return word_count_; }
  const std::optional<Pmf>& generator() const { return generator_; }
  // mixture diagnostics: the theta each word was drawn from
  const std::vector<Pmf>& thetas() const { return thetas_; }

  const uint8_t* word(uint64_t index) const;
  Sequence word_sequence(uint64_t index) const;

 private:
  Ensemble ensemble_;
  int n_;
  double rate_;
  Alphabet alphabet_;
  uint64_t seed_;
  uint64_t word_count_;
  std::vector<uint8_t> words_;  // word-major, one byte per symbol
  std::optional<Pmf> generator_;
  std::vector<Pmf> thetas_;
};

// Word count M = round(2^(n*rate)); per-word streams derived from
// (seed, kCodebookWord, word index), so generation is reproducible under any
// thread count.  Guards: M <= 2^24, alphabet <= 256.
Codebook gen_codebook(Ensemble ensemble, const std::optional<Pmf>& generator,
                      int n, double rate, Alphabet alphabet, uint64_t seed,
                      unsigned threads = 1);

struct SubsetSpec {
  double subset_rate = 0.0;
  std::vector<uint64_t> indices;  // strictly increasing
};

// Uniform K-subset of {0..word_count-1}, K = round(2^(n*subset_rate)),
// via sequential selection sampling.
SubsetSpec sample_subset(uint64_t word_count, double subset_rate, int n,
                         RngStream& rng);

struct EncodeResult {
  uint64_t index = 0;
  double distortion = 0.0;
  bool typicality_hit = false;
};

// Exhaustive minimum-distortion search over the subset; ties take the lowest
// codeword index.  Works for any source word (universal).
EncodeResult encode_optimal(const Codebook& cb, const SubsetSpec& subset,
                            const Sequence& source, const DistortionMeasure& d);

// First subset word jointly eps-typical with the source under the target
// joint; falls back to the smallest subset index with typicality_hit=false.
EncodeResult encode_typicality(const Codebook& cb, const SubsetSpec& subset,
                               const Sequence& source, const RdTarget& target,
                               double eps, const DistortionMeasure& d);

Sequence decode(const Codebook& cb, uint64_t index);

struct HitProbEstimate {
  double estimate = 0.0;
  double ci_low = 0.0;   // Wilson 95% interval
  double ci_high = 0.0;
  uint64_t hits = 0;
  uint64_t trials = 0;
};

// Monte-Carlo probability that a mixture-distributed Z^n lands in the
// conditional eps-typical set of y.  Requires y marginally typical at some
// eps' < eps.
HitProbEstimate estimate_conditional_hit_prob(const JointPmf& j, const Sequence& y,
                                              double eps, uint64_t trials,
                                              RngStream& rng);

// Same probability by exact enumeration: sums the flat-mixture mass
// (Dirichlet-multinomial closed form) over the conditional typical set.
// Guard: |Z|^n <= 2^24.
double exact_mixture_hit_probability(const JointPmf& j, const Sequence& y,
                                     double eps);

// Closed-form lower bound on the mixture hit probability:
// (1-eps) * (|Z|-1)! * xi^(|Z|-1) * 2^(-n(1+eps)(I(Y;Z)+eps+2 eps H(Z|Y))),
// xi = (1-2^-eps)/|Z|^2.
double mixture_hit_lower_bound(const JointPmf& j, int n, double eps);

// Binary codebook container: fixed header, then word-major symbol bytes.
// Layout (little-endian): magic "LSCB", u32 version, u32 n, u32 alphabet,
// u8 ensemble tag + 3 zero bytes, f64 rate, u64 seed, u64 word count,
// u32 generator length, f64[generator length], then word_count*n symbol
// bytes.  A JSON sidecar mirrors the header.
void write_codebook(const Codebook& cb, const std::string& path);
Codebook read_codebook(const std::string& path);
nlohmann::json codebook_sidecar(const Codebook& cb);

}  // namespace lsc
