#include "lsc/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "lsc/errors.hpp"
#include "lsc/info.hpp"
#include "lsc/parallel.hpp"
#include "lsc/stats.hpp"

namespace lsc {

namespace {

constexpr uint64_t kTableGuard = uint64_t{1} << 16;
constexpr uint64_t kScanGuard = uint64_t{1} << 24;

uint64_t checked_pow(int base, int n, uint64_t guard, const char* what) {
  uint64_t total = 1;
  for (int i = 0; i < n; ++i) {
    if (total > guard / static_cast<uint64_t>(base))
      throw GuardError(std::string(what) + ": alphabet^n exceeds guard");
    total *= static_cast<uint64_t>(base);
  }
  if (total > guard)
    throw GuardError(std::string(what) + ": alphabet^n exceeds guard");
  return total;
}

double sequence_distortion(const Sequence& s, const uint8_t* w,
                           const DistortionMeasure& d) {
  double acc = 0.0;
  const int nr = d.recon.size;
  for (int i = 0; i < s.n(); ++i)
    acc += d.d[static_cast<size_t>(s[i]) * nr + w[i]];
  return acc / s.n();
}

}  // namespace

void ExperimentConfig::validate() const {
  if (n <= 0) throw ConfigError("experiment: n must be positive");
  if (!(source_pmf.alphabet() == grid_pmf.alphabet()))
    throw ConfigError("experiment: source and grid alphabets differ");
  if (!(source_pmf.alphabet() == distortion.source))
    throw ConfigError("experiment: distortion source alphabet mismatch");
  if (!(full_rate > 0.0)) throw ConfigError("experiment: full_rate must be positive");
  if (!(subset_rate > 0.0) || subset_rate > full_rate)
    throw ConfigError("experiment: need 0 < subset_rate <= full_rate");
  if (!(backoff > 0.0) || !(backoff < subset_rate))
    throw ConfigError("experiment: need 0 < backoff < subset_rate");
  if (!(resolution > 0.0) || !(resolution < eps_prime) || !(eps_prime < eps) ||
      !(eps < 1.0))
    throw ConfigError("experiment: need 0 < resolution < eps_prime < eps < 1");
  if (!(p_min > 0.0) || p_min >= 1.0)
    throw ConfigError("experiment: need 0 < p_min < 1");
  if (ensemble != Ensemble::kMixture) {
    if (!ensemble_pmf) throw ConfigError("experiment: ensemble needs a pmf");
    if (!(ensemble_pmf->alphabet() == distortion.recon))
      throw ConfigError("experiment: ensemble pmf alphabet mismatch");
  }
  if (num_subsets == 0) throw ConfigError("experiment: num_subsets must be positive");
  if (num_source_words == 0)
    throw ConfigError("experiment: num_source_words must be positive");
  if (!(exceed_slack >= 0.0)) throw ConfigError("experiment: negative exceed_slack");
}

nlohmann::json to_json(const DistortionMeasure& d) {
  nlohmann::json rows = nlohmann::json::array();
  for (int s = 0; s < d.source.size; ++s) {
    nlohmann::json row = nlohmann::json::array();
    for (int r = 0; r < d.recon.size; ++r) row.push_back(d(s, r));
    rows.push_back(std::move(row));
  }
  return nlohmann::json{{"source", d.source.size}, {"recon", d.recon.size},
                        {"rows", std::move(rows)}};
}

DistortionMeasure distortion_from_json(const nlohmann::json& v, Alphabet fallback) {
  if (v.is_string()) {
    if (v.get<std::string>() == "hamming") return DistortionMeasure::hamming(fallback);
    throw ConfigError("distortion: unknown name " + v.get<std::string>());
  }
  if (!v.is_object() || !v.contains("rows"))
    throw ConfigError("distortion: expected \"hamming\" or an object with rows");
  const auto& rows = v.at("rows");
  if (!rows.is_array() || rows.empty())
    throw ConfigError("distortion: rows must be a nonempty array");
  const int ns = static_cast<int>(rows.size());
  const int nr = static_cast<int>(rows.at(0).size());
  std::vector<double> d;
  d.reserve(static_cast<size_t>(ns) * nr);
  for (const auto& row : rows) {
    if (static_cast<int>(row.size()) != nr)
      throw ConfigError("distortion: ragged rows");
    for (const auto& cell : row) d.push_back(cell.get<double>());
  }
  if (v.contains("source") && v.at("source").get<int>() != ns)
    throw ConfigError("distortion: source size disagrees with rows");
  if (v.contains("recon") && v.at("recon").get<int>() != nr)
    throw ConfigError("distortion: recon size disagrees with rows");
  return DistortionMeasure(Alphabet{ns}, Alphabet{nr}, std::move(d));
}

nlohmann::json to_json(const ExperimentConfig& cfg) {
  nlohmann::json v{
      {"source_pmf", to_json(cfg.source_pmf)},
      {"grid_pmf", to_json(cfg.grid_pmf)},
      {"n", cfg.n},
      {"full_rate", cfg.full_rate},
      {"subset_rate", cfg.subset_rate},
      {"backoff", cfg.backoff},
      {"eps", cfg.eps},
      {"eps_prime", cfg.eps_prime},
      {"resolution", cfg.resolution},
      {"p_min", cfg.p_min},
      {"ensemble", ensemble_name(cfg.ensemble)},
      {"num_subsets", cfg.num_subsets},
      {"num_source_words", cfg.num_source_words},
      {"seed", cfg.seed},
      {"distortion", to_json(cfg.distortion)},
      {"exceed_slack", cfg.exceed_slack},
  };
  if (cfg.ensemble_pmf) v["ensemble_pmf"] = to_json(*cfg.ensemble_pmf);
  return v;
}

ExperimentConfig experiment_config_from_json(const nlohmann::json& v) {
  try {
    ExperimentConfig cfg;
    cfg.source_pmf = pmf_from_json(v.at("source_pmf"));
    cfg.grid_pmf = v.contains("grid_pmf") ? pmf_from_json(v.at("grid_pmf"))
                                          : cfg.source_pmf;
    cfg.n = v.at("n").get<int>();
    cfg.full_rate = v.at("full_rate").get<double>();
    cfg.subset_rate = v.at("subset_rate").get<double>();
    cfg.backoff = v.at("backoff").get<double>();
    cfg.eps = v.at("eps").get<double>();
    cfg.eps_prime = v.at("eps_prime").get<double>();
    cfg.resolution = v.at("resolution").get<double>();
    cfg.p_min = v.at("p_min").get<double>();
    cfg.ensemble = ensemble_from_name(v.at("ensemble").get<std::string>());
    if (v.contains("ensemble_pmf"))
      cfg.ensemble_pmf = pmf_from_json(v.at("ensemble_pmf"));
    cfg.num_subsets = v.at("num_subsets").get<uint64_t>();
    cfg.num_source_words = v.at("num_source_words").get<uint64_t>();
    cfg.seed = v.at("seed").get<uint64_t>();
    cfg.distortion = v.contains("distortion")
                         ? distortion_from_json(v.at("distortion"),
                                                cfg.source_pmf.alphabet())
                         : DistortionMeasure::hamming(cfg.source_pmf.alphabet());
    if (v.contains("exceed_slack"))
      cfg.exceed_slack = v.at("exceed_slack").get<double>();
    cfg.validate();
    return cfg;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("experiment config: ") + e.what());
  }
}

double median(std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("median: empty sample");
  std::sort(values.begin(), values.end());
  const size_t m = values.size();
  if (m % 2 == 1) return values[m / 2];
  return 0.5 * (values[m / 2 - 1] + values[m / 2]);
}

SubsetUniversalityResult run_subset_universality(const ExperimentConfig& cfg,
                                                 unsigned threads) {
  cfg.validate();
  const Codebook cb = gen_codebook(cfg.ensemble, cfg.ensemble_pmf, cfg.n,
                                   cfg.full_rate, cfg.distortion.recon, cfg.seed,
                                   threads);
  const RdTarget target =
      build_rd_target(cfg.grid_pmf, cfg.distortion, cfg.subset_rate, cfg.backoff);

  SubsetUniversalityResult out;
  out.records.assign(cfg.num_subsets, SubsetRecord{});
  parallel_for(cfg.num_subsets, threads, [&](size_t sid) {
    RngStream subset_rng(cfg.seed, {stream_tag::kSubset, sid});
    const SubsetSpec subset =
        sample_subset(cb.word_count(), cfg.subset_rate, cfg.n, subset_rng);
    SubsetRecord rec;
    rec.subset_id = sid;
    double sum_opt = 0.0, sum_typ = 0.0;
    uint64_t hits = 0;
    for (uint64_t wid = 0; wid < cfg.num_source_words; ++wid) {
      RngStream word_rng(cfg.seed, {stream_tag::kSourceWord, sid, wid});
      const Sequence s = sample_iid(cfg.source_pmf, cfg.n, word_rng);
      const EncodeResult opt = encode_optimal(cb, subset, s, cfg.distortion);
      const EncodeResult typ =
          encode_typicality(cb, subset, s, target, cfg.eps, cfg.distortion);
      sum_opt += opt.distortion;
      sum_typ += typ.distortion;
      if (typ.typicality_hit) ++hits;
      if (!is_typical(s, cfg.grid_pmf, cfg.eps_prime))
        ++rec.e1_count;
      else if (!typ.typicality_hit)
        ++rec.e2_count;
    }
    const double words = static_cast<double>(cfg.num_source_words);
    rec.mean_distortion_optimal = sum_opt / words;
    rec.mean_distortion_typicality = sum_typ / words;
    rec.hit_rate = static_cast<double>(hits) / words;
    out.records[sid] = rec;
  });

  SubsetSummary& sum = out.summary;
  sum.distortion_at_subset_rate =
      solve_distortion_at_rate(cfg.grid_pmf, cfg.distortion, cfg.subset_rate)
          .distortion;
  sum.distortion_at_target_rate =
      solve_distortion_at_rate(cfg.grid_pmf, cfg.distortion,
                               cfg.subset_rate - cfg.backoff)
          .distortion;
  sum.exceed_threshold =
      (1.0 + cfg.eps) * sum.distortion_at_target_rate + cfg.exceed_slack;
  uint64_t exceeders = 0;
  std::vector<double> opts, typs;
  opts.reserve(out.records.size());
  typs.reserve(out.records.size());
  for (const SubsetRecord& r : out.records) {
    if (r.mean_distortion_optimal > sum.exceed_threshold) ++exceeders;
    opts.push_back(r.mean_distortion_optimal);
    typs.push_back(r.mean_distortion_typicality);
  }
  sum.exceed_fraction =
      static_cast<double>(exceeders) / static_cast<double>(out.records.size());
  sum.median_optimal = median(std::move(opts));
  sum.median_typicality = median(std::move(typs));
  return out;
}

EnsembleComparison run_ensemble_comparison(const ExperimentConfig& first,
                                           const ExperimentConfig& second,
                                           unsigned threads) {
  ExperimentConfig probe = second;
  probe.ensemble = first.ensemble;
  probe.ensemble_pmf = first.ensemble_pmf;
  const nlohmann::json a = to_json(first);
  const nlohmann::json b = to_json(probe);
  if (a != b)
    throw ConfigError(
        "ensemble comparison: configs differ beyond ensemble choice");

  EnsembleComparison out;
  out.first = run_subset_universality(first, threads);
  out.second = run_subset_universality(second, threads);
  std::vector<double> x, y;
  for (const SubsetRecord& r : out.first.records)
    x.push_back(r.mean_distortion_optimal);
  for (const SubsetRecord& r : out.second.records)
    y.push_back(r.mean_distortion_optimal);
  out.mw_p_value = mann_whitney_one_sided_p(x, y);
  out.first_median_below =
      out.first.summary.median_optimal < out.second.summary.median_optimal;
  return out;
}

uint64_t sequence_rank(const Sequence& x) {
  uint64_t rank = 0;
  const uint64_t base = static_cast<uint64_t>(x.alphabet().size);
  for (int i = 0; i < x.n(); ++i)
    rank = rank * base + static_cast<uint64_t>(x[i]);
  return rank;
}

Sequence sequence_from_rank(Alphabet a, int n, uint64_t rank) {
  std::vector<int32_t> symbols(static_cast<size_t>(n));
  const uint64_t base = static_cast<uint64_t>(a.size);
  for (int i = n - 1; i >= 0; --i) {
    symbols[static_cast<size_t>(i)] = static_cast<int32_t>(rank % base);
    rank /= base;
  }
  if (rank != 0)
    throw std::invalid_argument("sequence_from_rank: rank out of range");
  return Sequence(a, std::move(symbols));
}

ChannelSpec make_random_channel(Alphabet input, Alphabet output, int n,
                                uint64_t target_image_size, RngStream& rng) {
  if (input.size < 1 || output.size < 1 || n < 1)
    throw ConfigError("make_random_channel: bad dimensions");
  const uint64_t inputs = checked_pow(input.size, n, kTableGuard, "channel table");
  const uint64_t outputs = checked_pow(output.size, n, kScanGuard, "channel image");
  if (target_image_size < 1 || target_image_size > outputs ||
      target_image_size > inputs)
    throw ConfigError("make_random_channel: infeasible image size");

  // uniform without-replacement pick of image ranks, in increasing order
  std::vector<uint64_t> image;
  image.reserve(target_image_size);
  uint64_t remaining = target_image_size;
  for (uint64_t r = 0; r < outputs && remaining > 0; ++r) {
    if (rng.next_double() * static_cast<double>(outputs - r) <
        static_cast<double>(remaining)) {
      image.push_back(r);
      --remaining;
    }
  }

  // random bijection onto the image first, rest uniform: surjectivity forced
  std::vector<uint64_t> order(inputs);
  std::iota(order.begin(), order.end(), 0);
  for (uint64_t i = inputs - 1; i > 0; --i)
    std::swap(order[i], order[rng.next_below(i + 1)]);

  ChannelSpec spec;
  spec.input = input;
  spec.output = output;
  spec.n = n;
  spec.table.assign(inputs, 0);
  for (uint64_t i = 0; i < inputs; ++i) {
    spec.table[order[i]] = i < target_image_size
                               ? image[i]
                               : image[rng.next_below(target_image_size)];
  }
  spec.image_size = channel_image(spec).size();
  spec.effective_rate =
      std::log2(static_cast<double>(spec.image_size)) / static_cast<double>(n);
  return spec;
}

std::vector<uint64_t> channel_image(const ChannelSpec& ch) {
  std::vector<uint64_t> image = ch.table;
  std::sort(image.begin(), image.end());
  image.erase(std::unique(image.begin(), image.end()), image.end());
  return image;
}

ChannelRunResult run_channel_simulation(const ChannelSpec& ch, const Codebook& cb,
                                        const Pmf& source_pmf, uint64_t num_words,
                                        uint64_t seed, const DistortionMeasure& d,
                                        unsigned threads) {
  if (ch.n != cb.n())
    throw ConfigError("channel simulation: block length mismatch");
  const uint64_t outputs =
      checked_pow(ch.output.size, ch.n, kScanGuard, "channel image");
  if (cb.word_count() != outputs)
    throw ConfigError("channel simulation: decoder needs one word per output");
  if (!(source_pmf.alphabet() == d.source) || !(cb.alphabet() == d.recon))
    throw ConfigError("channel simulation: alphabet mismatch");
  if (num_words == 0)
    throw ConfigError("channel simulation: num_words must be positive");

  ChannelRunResult out;
  out.per_word_distortion.assign(num_words, 0.0);
  parallel_for(num_words, threads, [&](size_t wid) {
    RngStream word_rng(seed, {stream_tag::kSourceWord, wid});
    const Sequence s = sample_iid(source_pmf, ch.n, word_rng);
    double best = std::numeric_limits<double>::infinity();
    for (uint64_t x = 0; x < ch.table.size(); ++x) {
      const double dist = sequence_distortion(s, cb.word(ch.table[x]), d);
      if (dist < best) best = dist;
    }
    out.per_word_distortion[wid] = best;
  });
  double acc = 0.0;
  for (double v : out.per_word_distortion) acc += v;
  out.mean_distortion = acc / static_cast<double>(num_words);
  out.effective_rate = ch.effective_rate;
  out.benchmark_distortion =
      solve_distortion_at_rate(source_pmf, d, ch.effective_rate).distortion;
  return out;
}

}  // namespace lsc
