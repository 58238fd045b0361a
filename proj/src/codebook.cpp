#include "lsc/codebook.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <stdexcept>

#include "lsc/errors.hpp"
#include "lsc/info.hpp"
#include "lsc/parallel.hpp"
#include "lsc/simplex.hpp"
#include "lsc/stats.hpp"

namespace lsc {

namespace {

constexpr uint64_t kMaxWords = 1ull << 24;

uint64_t word_count_for(int n, double rate) {
  if (n <= 0) throw std::invalid_argument("codebook: n must be positive");
  if (!(rate >= 0.0)) throw std::invalid_argument("codebook: rate must be >= 0");
  const double m = std::exp2(static_cast<double>(n) * rate);
  if (m > static_cast<double>(kMaxWords))
    throw GuardError("codebook: word count exceeds 2^24");
  return static_cast<uint64_t>(std::llround(m));
}

// L1-nearest integer type to n*p with fixed sum n; ties during the
// largest-remainder assignment go to higher indices, which yields the
// lexicographically smallest count vector.
std::vector<int64_t> nearest_type_counts(const Pmf& p, int n) {
  const int k = p.size();
  std::vector<int64_t> counts(static_cast<size_t>(k));
  std::vector<std::pair<double, int>> rem(static_cast<size_t>(k));
  int64_t assigned = 0;
  for (int s = 0; s < k; ++s) {
    const double target = p(s) * n;
    counts[static_cast<size_t>(s)] = static_cast<int64_t>(std::floor(target));
    assigned += counts[static_cast<size_t>(s)];
    rem[static_cast<size_t>(s)] = {target - std::floor(target), s};
  }
  int64_t leftover = n - assigned;
  std::sort(rem.begin(), rem.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first > b.first;
    return a.second > b.second;
  });
  for (int64_t i = 0; i < leftover; ++i)
    ++counts[static_cast<size_t>(rem[static_cast<size_t>(i)].second)];
  return counts;
}

void fill_word(Ensemble ensemble, const std::optional<Pmf>& generator,
               const std::vector<int64_t>& type_counts, Alphabet alphabet,
               int n, uint64_t seed, uint64_t w, uint8_t* out, Pmf* theta_out) {
  RngStream rng(seed, {stream_tag::kCodebookWord, w});
  switch (ensemble) {
    case Ensemble::kMixture: {
      std::vector<double> e(static_cast<size_t>(alphabet.size));
      double sum = 0.0;
      for (double& v : e) {
        v = rng.next_exponential();
        sum += v;
      }
      for (double& v : e) v /= sum;
      Pmf theta(alphabet, std::move(e));
      for (int i = 0; i < n; ++i)
        out[i] = static_cast<uint8_t>(rng.next_categorical(theta));
      if (theta_out) *theta_out = theta;
      break;
    }
    case Ensemble::kIid: {
      for (int i = 0; i < n; ++i)
        out[i] = static_cast<uint8_t>(rng.next_categorical(*generator));
      break;
    }
    case Ensemble::kType: {
      int pos = 0;
      for (int s = 0; s < alphabet.size; ++s)
        for (int64_t c = 0; c < type_counts[static_cast<size_t>(s)]; ++c)
          out[pos++] = static_cast<uint8_t>(s);
      // Fisher-Yates for a uniform arrangement of the multiset
      for (int i = n - 1; i > 0; --i) {
        const uint64_t j = rng.next_below(static_cast<uint64_t>(i) + 1);
        std::swap(out[i], out[j]);
      }
      break;
    }
  }
}

void append_u32(std::string& s, uint32_t v) {
  for (int i = 0; i < 4; ++i) s.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}
void append_u64(std::string& s, uint64_t v) {
  for (int i = 0; i < 8; ++i) s.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}
void append_f64(std::string& s, double v) {
  uint64_t bits;
  std::memcpy(&bits, &v, sizeof(bits));
  append_u64(s, bits);
}

struct Cursor {
  const std::string& data;
  size_t pos = 0;

  void need(size_t k) const {
    if (pos + k > data.size()) throw ConfigError("codebook file: truncated");
  }
  uint32_t u32() {
    need(4);
    uint32_t v = 0;
    for (int i = 0; i < 4; ++i)
      v |= static_cast<uint32_t>(static_cast<uint8_t>(data[pos + i])) << (8 * i);
    pos += 4;
    return v;
  }
  uint64_t u64() {
    need(8);
    uint64_t v = 0;
    for (int i = 0; i < 8; ++i)
      v |= static_cast<uint64_t>(static_cast<uint8_t>(data[pos + i])) << (8 * i);
    pos += 8;
    return v;
  }
  double f64() {
    const uint64_t bits = u64();
    double v;
    std::memcpy(&v, &bits, sizeof(v));
    return v;
  }
};

}  // namespace

std::string ensemble_name(Ensemble e) {
  switch (e) {
    case Ensemble::kMixture: return "mixture";
    case Ensemble::kIid: return "iid";
    case Ensemble::kType: return "type";
  }
  throw std::invalid_argument("ensemble_name: bad tag");
}

Ensemble ensemble_from_name(const std::string& name) {
  if (name == "mixture") return Ensemble::kMixture;
  if (name == "iid") return Ensemble::kIid;
  if (name == "type") return Ensemble::kType;
  throw ConfigError("unknown ensemble: " + name);
}

Codebook::Codebook(Ensemble ensemble, int n, double rate, Alphabet alphabet,
                   uint64_t seed, uint64_t word_count, std::vector<uint8_t> words,
                   std::optional<Pmf> generator, std::vector<Pmf> thetas)
    : ensemble_(ensemble),
      n_(n),
      rate_(rate),
      alphabet_(alphabet),
      seed_(seed),
      word_count_(word_count),
      words_(std::move(words)),
      generator_(std::move(generator)),
      thetas_(std::move(thetas)) {
  if (words_.size() != word_count_ * static_cast<uint64_t>(n_))
    throw std::invalid_argument("Codebook: word storage size mismatch");
}

const uint8_t* Codebook::word(uint64_t index) const {
  if (index >= word_count_)
    throw std::invalid_argument("Codebook::word: index out of range");
  return words_.data() + index * static_cast<uint64_t>(n_);
}

Sequence Codebook::word_sequence(uint64_t index) const {
  const uint8_t* w = word(index);
  std::vector<int32_t> sym(static_cast<size_t>(n_));
  for (int i = 0; i < n_; ++i) sym[static_cast<size_t>(i)] = w[i];
  return Sequence(alphabet_, std::move(sym));
}

Codebook gen_codebook(Ensemble ensemble, const std::optional<Pmf>& generator,
                      int n, double rate, Alphabet alphabet, uint64_t seed,
                      unsigned threads) {
  if (alphabet.size <= 0 || alphabet.size > 256)
    throw std::invalid_argument("gen_codebook: alphabet must fit one byte");
  if (ensemble != Ensemble::kMixture) {
    if (!generator) throw std::invalid_argument("gen_codebook: ensemble needs a pmf");
    if (!(generator->alphabet() == alphabet))
      throw std::invalid_argument("gen_codebook: generator alphabet mismatch");
  }
  const uint64_t m = word_count_for(n, rate);
  std::vector<uint8_t> words(m * static_cast<uint64_t>(n));
  std::vector<Pmf> thetas;
  std::vector<int64_t> type_counts;
  if (ensemble == Ensemble::kType) type_counts = nearest_type_counts(*generator, n);
  if (ensemble == Ensemble::kMixture)
    thetas.assign(m, Pmf::uniform(alphabet));

  parallel_for(m, threads, [&](size_t w) {
    fill_word(ensemble, generator, type_counts, alphabet, n, seed,
              static_cast<uint64_t>(w), words.data() + w * static_cast<size_t>(n),
              thetas.empty() ? nullptr : &thetas[w]);
  });
  return Codebook(ensemble, n, rate, alphabet, seed, m, std::move(words),
                  generator, std::move(thetas));
}

SubsetSpec sample_subset(uint64_t word_count, double subset_rate, int n,
                         RngStream& rng) {
  const uint64_t k = word_count_for(n, subset_rate);
  if (k > word_count)
    throw std::invalid_argument("sample_subset: subset larger than codebook");
  SubsetSpec out{subset_rate, {}};
  out.indices.reserve(k);
  uint64_t remaining = k;
  for (uint64_t i = 0; i < word_count && remaining > 0; ++i) {
    // select i with probability remaining / (word_count - i)
    if (rng.next_double() * static_cast<double>(word_count - i) <
        static_cast<double>(remaining)) {
      out.indices.push_back(i);
      --remaining;
    }
  }
  return out;
}

namespace {

double word_distortion(const uint8_t* w, const Sequence& source,
                       const DistortionMeasure& d) {
  double acc = 0.0;
  const int nr = d.recon.size;
  for (int i = 0; i < source.n(); ++i)
    acc += d.d[static_cast<size_t>(source[i]) * nr + w[i]];
  return acc / source.n();
}

void check_encode_args(const Codebook& cb, const SubsetSpec& subset,
                       const Sequence& source, const DistortionMeasure& d) {
  if (subset.indices.empty())
    throw std::invalid_argument("encode: empty subset");
  if (source.n() != cb.n())
    throw std::invalid_argument("encode: source length mismatch");
  if (!(source.alphabet() == d.source) || !(cb.alphabet() == d.recon))
    throw std::invalid_argument("encode: alphabet mismatch");
}

}  // namespace

EncodeResult encode_optimal(const Codebook& cb, const SubsetSpec& subset,
                            const Sequence& source, const DistortionMeasure& d) {
  check_encode_args(cb, subset, source, d);
  EncodeResult best{subset.indices[0],
                    word_distortion(cb.word(subset.indices[0]), source, d), false};
  for (size_t i = 1; i < subset.indices.size(); ++i) {
    const uint64_t m = subset.indices[i];
    const double dist = word_distortion(cb.word(m), source, d);
    if (dist < best.distortion) {
      best.index = m;
      best.distortion = dist;
    }
  }
  return best;
}

EncodeResult encode_typicality(const Codebook& cb, const SubsetSpec& subset,
                               const Sequence& source, const RdTarget& target,
                               double eps, const DistortionMeasure& d) {
  check_encode_args(cb, subset, source, d);
  const int na = target.target_joint.a().size;
  const int nb = target.target_joint.b().size;
  if (source.alphabet().size != na || cb.alphabet().size != nb)
    throw std::invalid_argument("encode_typicality: target joint mismatch");
  const double* jm = target.target_joint.mass().data();
  const double dn = static_cast<double>(source.n());
  std::vector<int64_t> counts(static_cast<size_t>(na) * nb);

  for (uint64_t m : subset.indices) {
    const uint8_t* w = cb.word(m);
    std::fill(counts.begin(), counts.end(), 0);
    for (int i = 0; i < source.n(); ++i)
      ++counts[static_cast<size_t>(source[i]) * nb + w[i]];
    bool ok = true;
    for (int c = 0; c < na * nb && ok; ++c) {
      const double p = jm[c];
      const double freq = static_cast<double>(counts[static_cast<size_t>(c)]) / dn;
      if (p == 0.0) {
        ok = counts[static_cast<size_t>(c)] == 0;
      } else {
        ok = std::fabs(freq - p) <= eps * p + 1e-12;
      }
    }
    if (ok)
      return EncodeResult{m, word_distortion(w, source, d), true};
  }
  const uint64_t fallback = subset.indices[0];
  return EncodeResult{fallback, word_distortion(cb.word(fallback), source, d), false};
}

Sequence decode(const Codebook& cb, uint64_t index) { return cb.word_sequence(index); }

HitProbEstimate estimate_conditional_hit_prob(const JointPmf& j, const Sequence& y,
                                              double eps, uint64_t trials,
                                              RngStream& rng) {
  if (!(y.alphabet() == j.a()))
    throw std::invalid_argument("estimate_conditional_hit_prob: alphabet mismatch");
  if (trials == 0)
    throw std::invalid_argument("estimate_conditional_hit_prob: zero trials");
  const double y_eps = min_typicality_eps(y, j.marginal_a());
  if (!(y_eps < eps))
    throw std::invalid_argument(
        "estimate_conditional_hit_prob: y is not typical at any eps' < eps");

  const int n = y.n();
  const int nb = j.b().size;
  const int cells = j.a().size * nb;
  const double* jm = j.mass().data();
  const double dn = static_cast<double>(n);
  std::vector<double> theta(static_cast<size_t>(nb));
  std::vector<double> cdf(static_cast<size_t>(nb));
  std::vector<int64_t> counts(static_cast<size_t>(cells));

  uint64_t hits = 0;
  for (uint64_t t = 0; t < trials; ++t) {
    double sum = 0.0;
    for (double& v : theta) {
      v = rng.next_exponential();
      sum += v;
    }
    double cum = 0.0;
    for (int b = 0; b < nb; ++b) {
      cum += theta[static_cast<size_t>(b)] / sum;
      cdf[static_cast<size_t>(b)] = cum;
    }
    std::fill(counts.begin(), counts.end(), 0);
    for (int i = 0; i < n; ++i) {
      const double u = rng.next_double();
      int b = 0;
      while (b < nb - 1 && u >= cdf[static_cast<size_t>(b)]) ++b;
      ++counts[static_cast<size_t>(y[i]) * nb + b];
    }
    bool ok = true;
    for (int c = 0; c < cells && ok; ++c) {
      const double p = jm[c];
      if (p == 0.0) {
        ok = counts[static_cast<size_t>(c)] == 0;
      } else {
        const double freq = static_cast<double>(counts[static_cast<size_t>(c)]) / dn;
        ok = std::fabs(freq - p) <= eps * p + 1e-12;
      }
    }
    if (ok) ++hits;
  }
  const auto ci = wilson_interval(hits, trials);
  return HitProbEstimate{static_cast<double>(hits) / static_cast<double>(trials),
                         ci.first, ci.second, hits, trials};
}

double exact_mixture_hit_probability(const JointPmf& j, const Sequence& y,
                                     double eps) {
  // flat-mixture mass of one sequence with symbol counts c:
  // (|Z|-1)! * prod c_b! / (n+|Z|-1)!  (computed via lgamma)
  const int nb = j.b().size;
  const int n = y.n();
  const double total = std::pow(static_cast<double>(nb), n);
  if (total > static_cast<double>(1u << 24))
    throw GuardError("exact_mixture_hit_probability: |Z|^n exceeds 2^24");
  const int cells = j.a().size * nb;

  double prob = 0.0;
  std::vector<int64_t> joint(static_cast<size_t>(cells), 0);
  std::vector<int64_t> zc(static_cast<size_t>(nb), 0);
  std::vector<int32_t> z(static_cast<size_t>(n), 0);
  const double* jm = j.mass().data();
  const double dn = static_cast<double>(n);
  const double log_base = std::lgamma(static_cast<double>(nb)) -
                          std::lgamma(static_cast<double>(n + nb));

  auto typical = [&]() {
    for (int c = 0; c < cells; ++c) {
      const double p = jm[c];
      if (p == 0.0) {
        if (joint[static_cast<size_t>(c)] != 0) return false;
      } else {
        const double freq = static_cast<double>(joint[static_cast<size_t>(c)]) / dn;
        if (std::fabs(freq - p) > eps * p + 1e-12) return false;
      }
    }
    return true;
  };

  int depth = 0;
  while (true) {
    if (depth == n) {
      if (typical()) {
        double lg = log_base;
        for (int b = 0; b < nb; ++b)
          lg += std::lgamma(static_cast<double>(zc[static_cast<size_t>(b)]) + 1.0);
        prob += std::exp(lg);
      }
      --depth;
      if (depth < 0) break;
    } else {
      const int32_t s = z[static_cast<size_t>(depth)];
      ++joint[static_cast<size_t>(y[depth]) * nb + s];
      ++zc[static_cast<size_t>(s)];
      ++depth;
      if (depth <= n - 1) z[static_cast<size_t>(depth)] = 0;
      continue;
    }
    while (true) {
      const int32_t s = z[static_cast<size_t>(depth)];
      --joint[static_cast<size_t>(y[depth]) * nb + s];
      --zc[static_cast<size_t>(s)];
      if (s + 1 < nb) {
        z[static_cast<size_t>(depth)] = s + 1;
        break;
      }
      --depth;
      if (depth < 0) return prob;
    }
  }
  return prob;
}

double mixture_hit_lower_bound(const JointPmf& j, int n, double eps) {
  if (!(eps > 0.0 && eps < 1.0))
    throw std::invalid_argument("mixture_hit_lower_bound: need 0 < eps < 1");
  const int k = j.b().size;
  const double xi = (1.0 - std::exp2(-eps)) / (static_cast<double>(k) * k);
  const double inv_measure = 1.0 / simplex_measure_constant(k);
  const double mi = mutual_information(j);
  const double hzy = conditional_entropy(j);
  const double exponent =
      -static_cast<double>(n) * (1.0 + eps) * (mi + eps + 2.0 * eps * hzy);
  return (1.0 - eps) * inv_measure * std::pow(xi, k - 1) * std::exp2(exponent);
}

void write_codebook(const Codebook& cb, const std::string& path) {
  std::string buf;
  buf += "LSCB";
  append_u32(buf, 1);
  append_u32(buf, static_cast<uint32_t>(cb.n()));
  append_u32(buf, static_cast<uint32_t>(cb.alphabet().size));
  buf.push_back(static_cast<char>(cb.ensemble()));
  buf.append(3, '\0');
  append_f64(buf, cb.rate());
  append_u64(buf, cb.seed());
  append_u64(buf, cb.word_count());
  if (cb.generator()) {
    append_u32(buf, static_cast<uint32_t>(cb.generator()->size()));
    for (double v : cb.generator()->mass()) append_f64(buf, v);
  } else {
    append_u32(buf, 0);
  }
  for (uint64_t w = 0; w < cb.word_count(); ++w)
    buf.append(reinterpret_cast<const char*>(cb.word(w)), static_cast<size_t>(cb.n()));

  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ConfigError("write_codebook: cannot open " + path);
  out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
  if (!out) throw ConfigError("write_codebook: write failed for " + path);
}

Codebook read_codebook(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("read_codebook: cannot open " + path);
  std::string data((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  Cursor c{data};
  c.need(4);
  if (data.compare(0, 4, "LSCB") != 0)
    throw ConfigError("read_codebook: bad magic");
  c.pos = 4;
  const uint32_t version = c.u32();
  if (version != 1) throw ConfigError("read_codebook: unsupported version");
  const int n = static_cast<int>(c.u32());
  const int alphabet = static_cast<int>(c.u32());
  c.need(4);
  const auto tag = static_cast<Ensemble>(static_cast<uint8_t>(data[c.pos]));
  c.pos += 4;
  const double rate = c.f64();
  const uint64_t seed = c.u64();
  const uint64_t m = c.u64();
  const uint32_t gen_len = c.u32();
  std::optional<Pmf> generator;
  if (gen_len > 0) {
    std::vector<double> mass(gen_len);
    for (uint32_t i = 0; i < gen_len; ++i) mass[i] = c.f64();
    generator = Pmf(Alphabet{static_cast<int>(gen_len)}, std::move(mass));
  }
  const uint64_t bytes = m * static_cast<uint64_t>(n);
  c.need(bytes);
  std::vector<uint8_t> words(bytes);
  std::memcpy(words.data(), data.data() + c.pos, bytes);
  return Codebook(tag, n, rate, Alphabet{alphabet}, seed, m, std::move(words),
                  std::move(generator), {});
}

nlohmann::json codebook_sidecar(const Codebook& cb) {
  nlohmann::json out{
      {"magic", "LSCB"},
      {"version", 1},
      {"n", cb.n()},
      {"alphabet_size", cb.alphabet().size},
      {"ensemble", ensemble_name(cb.ensemble())},
      {"rate", cb.rate()},
      {"seed", cb.seed()},
      {"word_count", cb.word_count()},
  };
  if (cb.generator()) out["generator"] = cb.generator()->mass();
  return out;
}

}  // namespace lsc
