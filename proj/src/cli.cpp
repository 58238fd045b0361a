#include "lsc/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "lsc/codebook.hpp"
#include "lsc/errors.hpp"
#include "lsc/experiments.hpp"
#include "lsc/prob.hpp"
#include "lsc/rd.hpp"
#include "lsc/rng.hpp"
#include "lsc/sha256.hpp"
#include "lsc/verify.hpp"

namespace lsc {

namespace {

using nlohmann::json;

std::string format_g(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::vector<std::string> split_csv(const std::string& s) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  return parts;
}

std::vector<double> parse_double_list(const std::string& s) {
  std::vector<double> out;
  for (const std::string& p : split_csv(s)) {
    try {
      size_t pos = 0;
      out.push_back(std::stod(p, &pos));
      if (pos != p.size()) throw std::invalid_argument(p);
    } catch (const std::exception&) {
      throw ConfigError("bad number in list: '" + p + "'");
    }
  }
  return out;
}

std::vector<int> parse_int_list(const std::string& s) {
  std::vector<int> out;
  for (const std::string& p : split_csv(s)) {
    try {
      size_t pos = 0;
      out.push_back(std::stoi(p, &pos));
      if (pos != p.size()) throw std::invalid_argument(p);
    } catch (const std::exception&) {
      throw ConfigError("bad integer in list: '" + p + "'");
    }
  }
  return out;
}

json pmf_json_from_flag(const std::string& s) {
  json arr = json::array();
  for (double v : parse_double_list(s)) arr.push_back(v);
  return arr;
}

// Collects result files and their digests, then seals the run with a
// manifest.  Result files are deterministic; the manifest carries the
// wall-clock duration, so it is metadata rather than a result file.
class RunContext {
 public:
  RunContext(std::string command, const std::string& out_dir)
      : command_(std::move(command)),
        dir_(out_dir),
        start_(std::chrono::steady_clock::now()) {
    std::filesystem::create_directories(dir_);
  }

  const std::filesystem::path& dir() const { return dir_; }

  void note_input(const std::string& path) {
    inputs_[path] = sha256_file_hex(path);
  }

  void write_text(const std::string& name, const std::string& content) {
    const std::filesystem::path p = dir_ / name;
    std::ofstream f(p, std::ios::binary);
    if (!f) throw ConfigError("cannot write " + p.string());
    f << content;
    if (!f) throw ConfigError("short write to " + p.string());
    f.close();
    outputs_[name] = sha256_hex(content);
    std::cout << "wrote " << p.string() << "\n";
  }

  // for files another writer produced (codebook binaries)
  void note_output_file(const std::string& name) {
    const std::filesystem::path p = dir_ / name;
    outputs_[name] = sha256_file_hex(p.string());
    std::cout << "wrote " << p.string() << "\n";
  }

  void finish(const json& config_echo, uint64_t seed) {
    const double duration =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start_)
            .count();
    const json manifest{
        {"command", command_},   {"config", config_echo},
        {"master_seed", seed},   {"version", kArtifactVersion},
        {"inputs", inputs_},     {"outputs", outputs_},
        {"duration_seconds", duration},
    };
    const std::filesystem::path p = dir_ / "manifest.json";
    std::ofstream f(p, std::ios::binary);
    if (!f) throw ConfigError("cannot write " + p.string());
    f << manifest.dump(2) << "\n";
    std::cout << "wrote " << p.string() << "\n";
  }

 private:
  std::string command_;
  std::filesystem::path dir_;
  std::chrono::steady_clock::time_point start_;
  json inputs_ = json::object();
  json outputs_ = json::object();
};

struct CommandEnv {
  std::string config_path;
  std::string out_dir = ".";
  unsigned threads = 1;
  json ov = json::object();  // flag overrides, win over the config file
};

json load_config(const std::string& path, RunContext& ctx) {
  if (path.empty()) return json::object();
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot open config: " + path);
  json v = json::parse(f);
  if (!v.is_object()) throw ConfigError("config must be a JSON object: " + path);
  ctx.note_input(path);
  return v;
}

json merged_config(const CommandEnv& env, RunContext& ctx) {
  json cfg = load_config(env.config_path, ctx);
  cfg.update(env.ov);
  return cfg;
}

void add_common_flags(CLI::App* cmd, CommandEnv* env) {
  cmd->add_option("--config", env->config_path, "JSON config file");
  cmd->add_option("--out", env->out_dir, "output directory (default .)");
  cmd->add_option("--threads", env->threads,
                  "worker thread cap; never changes results");
  cmd->add_option_function<uint64_t>(
      "--seed", [env](const uint64_t& v) { env->ov["seed"] = v; }, "master seed");
}

void bind_double(CLI::App* cmd, const std::string& flag, json* ov,
                 const std::string& key, const std::string& desc) {
  cmd->add_option_function<double>(
      flag, [ov, key](const double& v) { (*ov)[key] = v; }, desc);
}

void bind_int(CLI::App* cmd, const std::string& flag, json* ov,
              const std::string& key, const std::string& desc) {
  cmd->add_option_function<int64_t>(
      flag, [ov, key](const int64_t& v) { (*ov)[key] = v; }, desc);
}

void bind_string(CLI::App* cmd, const std::string& flag, json* ov,
                 const std::string& key, const std::string& desc) {
  cmd->add_option_function<std::string>(
      flag, [ov, key](const std::string& v) { (*ov)[key] = v; }, desc);
}

void bind_pmf(CLI::App* cmd, const std::string& flag, json* ov,
              const std::string& key, const std::string& desc) {
  cmd->add_option_function<std::string>(
      flag, [ov, key](const std::string& v) { (*ov)[key] = pmf_json_from_flag(v); },
      desc);
}

Pmf required_pmf(const json& cfg, const char* key) {
  if (!cfg.contains(key))
    throw ConfigError(std::string("config key required: ") + key);
  return pmf_from_json(cfg.at(key));
}

DistortionMeasure config_distortion(const json& cfg, Alphabet fallback) {
  if (!cfg.contains("distortion")) return DistortionMeasure::hamming(fallback);
  return distortion_from_json(cfg.at("distortion"), fallback);
}

std::string records_csv(const std::vector<SubsetRecord>& records) {
  std::string out = "subset_id,mean_dist_opt,mean_dist_typ,e1,e2,hit_rate\n";
  for (const SubsetRecord& r : records) {
    out += std::to_string(r.subset_id);
    out += ',';
    out += format_g(r.mean_distortion_optimal);
    out += ',';
    out += format_g(r.mean_distortion_typicality);
    out += ',';
    out += std::to_string(r.e1_count);
    out += ',';
    out += std::to_string(r.e2_count);
    out += ',';
    out += format_g(r.hit_rate);
    out += '\n';
  }
  return out;
}

json summary_json(const ExperimentConfig& cfg, const SubsetUniversalityResult& res) {
  return json{
      {"config", to_json(cfg)},
      {"distortion_at_subset_rate", res.summary.distortion_at_subset_rate},
      {"distortion_at_target_rate", res.summary.distortion_at_target_rate},
      {"exceed_threshold", res.summary.exceed_threshold},
      {"exceed_fraction", res.summary.exceed_fraction},
      {"median_optimal", res.summary.median_optimal},
      {"median_typicality", res.summary.median_typicality},
  };
}

void bind_experiment_flags(CLI::App* cmd, json* ov) {
  bind_pmf(cmd, "--source", ov, "source_pmf", "source pmf, e.g. 0.85,0.15");
  bind_pmf(cmd, "--grid", ov, "grid_pmf", "design pmf (defaults to source)");
  bind_int(cmd, "--n", ov, "n", "block length");
  bind_double(cmd, "--full-rate", ov, "full_rate", "codebook rate R (bits)");
  bind_double(cmd, "--subset-rate", ov, "subset_rate", "subset rate (bits)");
  bind_double(cmd, "--backoff", ov, "backoff", "rate backoff for the target");
  bind_double(cmd, "--eps", ov, "eps", "typicality tolerance");
  bind_double(cmd, "--eps-prime", ov, "eps_prime", "source typicality tolerance");
  bind_double(cmd, "--resolution", ov, "resolution", "grid resolution");
  bind_double(cmd, "--p-min", ov, "p_min", "grid minimum mass");
  bind_int(cmd, "--num-subsets", ov, "num_subsets", "subsets to sample");
  bind_int(cmd, "--num-source-words", ov, "num_source_words",
           "source words per subset");
  bind_string(cmd, "--distortion", ov, "distortion",
              "distortion name (hamming); matrices go in the config file");
  bind_double(cmd, "--exceed-slack", ov, "exceed_slack",
              "additive slack in the exceedance threshold");
}

ExperimentConfig experiment_from(json cfg) {
  if (!cfg.contains("seed")) cfg["seed"] = 0;
  return experiment_config_from_json(cfg);
}

// ---- command bodies ----

void cmd_rd_curve(const CommandEnv& env) {
  RunContext ctx("rd-curve", env.out_dir);
  const json cfg = merged_config(env, ctx);
  const Pmf source = required_pmf(cfg, "source");
  const DistortionMeasure d = config_distortion(cfg, source.alphabet());
  std::vector<double> slopes;
  if (cfg.contains("slopes"))
    for (const auto& v : cfg.at("slopes")) slopes.push_back(v.get<double>());
  else
    slopes = {0.25, 0.5, 1, 2, 4, 8, 16, 32};

  const std::vector<RdPoint> points = blahut_arimoto_curve(source, d, slopes);
  std::string csv = "slope,rate_bits,distortion\n";
  for (size_t i = 0; i < points.size(); ++i) {
    csv += format_g(slopes[i]);
    csv += ',';
    csv += format_g(points[i].achieved_mutual_info);
    csv += ',';
    csv += format_g(points[i].distortion);
    csv += '\n';
  }
  ctx.write_text("rd_curve.csv", csv);
  const json echo{{"source", to_json(source)}, {"distortion", to_json(d)},
                  {"slopes", slopes}};
  ctx.finish(echo, cfg.value("seed", uint64_t{0}));
}

void cmd_rd_point(const CommandEnv& env) {
  RunContext ctx("rd-point", env.out_dir);
  json cfg = merged_config(env, ctx);
  const Pmf source = required_pmf(cfg, "source");
  const DistortionMeasure d = config_distortion(cfg, source.alphabet());
  if (!cfg.contains("rate")) throw ConfigError("config key required: rate");
  const double rate = cfg.at("rate").get<double>();

  const RdPoint pt = solve_distortion_at_rate(source, d, rate);
  const json result{{"rate", pt.rate},
                    {"distortion", pt.distortion},
                    {"achieved_mutual_info", pt.achieved_mutual_info},
                    {"achiever", to_json(pt.achiever)}};
  ctx.write_text("rd_point.json", result.dump(2) + "\n");
  const json echo{{"source", to_json(source)}, {"distortion", to_json(d)},
                  {"rate", rate}};
  ctx.finish(echo, cfg.value("seed", uint64_t{0}));
}

void cmd_gen(const CommandEnv& env) {
  RunContext ctx("gen", env.out_dir);
  const json cfg = merged_config(env, ctx);
  const Ensemble ensemble = ensemble_from_name(cfg.value("ensemble", "mixture"));
  std::optional<Pmf> gen_pmf;
  if (cfg.contains("gen_pmf")) gen_pmf = pmf_from_json(cfg.at("gen_pmf"));
  if (!cfg.contains("n")) throw ConfigError("config key required: n");
  if (!cfg.contains("rate")) throw ConfigError("config key required: rate");
  const int n = cfg.at("n").get<int>();
  const double rate = cfg.at("rate").get<double>();
  int alphabet = cfg.value("alphabet", gen_pmf ? gen_pmf->size() : 0);
  if (alphabet <= 0)
    throw ConfigError("gen: alphabet size required (flag or gen_pmf)");
  const uint64_t seed = cfg.value("seed", uint64_t{0});

  const Codebook cb = gen_codebook(ensemble, gen_pmf, n, rate, Alphabet{alphabet},
                                   seed, env.threads);
  write_codebook(cb, (ctx.dir() / "codebook.lscb").string());
  ctx.note_output_file("codebook.lscb");
  ctx.write_text("codebook.json", codebook_sidecar(cb).dump(2) + "\n");
  json echo{{"ensemble", ensemble_name(ensemble)}, {"n", n}, {"rate", rate},
            {"alphabet", alphabet},                {"seed", seed}};
  if (gen_pmf) echo["gen_pmf"] = to_json(*gen_pmf);
  ctx.finish(echo, seed);
}

void cmd_subsets(const CommandEnv& env) {
  RunContext ctx("subsets", env.out_dir);
  const json cfg = merged_config(env, ctx);
  if (!cfg.contains("codebook"))
    throw ConfigError("config key required: codebook (path)");
  const std::string cb_path = cfg.at("codebook").get<std::string>();
  ctx.note_input(cb_path);
  const Codebook cb = read_codebook(cb_path);
  if (!cfg.contains("subset_rate"))
    throw ConfigError("config key required: subset_rate");
  const double subset_rate = cfg.at("subset_rate").get<double>();
  const uint64_t count = cfg.value("count", uint64_t{1});
  const uint64_t seed = cfg.value("seed", uint64_t{0});

  std::string csv = "subset_id,word_index\n";
  for (uint64_t sid = 0; sid < count; ++sid) {
    RngStream rng(seed, {stream_tag::kSubset, sid});
    const SubsetSpec subset = sample_subset(cb.word_count(), subset_rate, cb.n(), rng);
    for (uint64_t index : subset.indices) {
      csv += std::to_string(sid);
      csv += ',';
      csv += std::to_string(index);
      csv += '\n';
    }
  }
  ctx.write_text("subsets.csv", csv);
  const json echo{{"codebook", cb_path}, {"subset_rate", subset_rate},
                  {"count", count},      {"seed", seed}};
  ctx.finish(echo, seed);
}

void cmd_eval_subsets(const CommandEnv& env) {
  RunContext ctx("eval-subsets", env.out_dir);
  const ExperimentConfig cfg = experiment_from(merged_config(env, ctx));
  const SubsetUniversalityResult res = run_subset_universality(cfg, env.threads);
  ctx.write_text("records.csv", records_csv(res.records));
  ctx.write_text("summary.json", summary_json(cfg, res).dump(2) + "\n");
  ctx.finish(to_json(cfg), cfg.seed);
}

void cmd_compare_ensembles(const CommandEnv& env) {
  RunContext ctx("compare-ensembles", env.out_dir);
  const json cfg = merged_config(env, ctx);
  json base = cfg;
  for (const char* key :
       {"first_ensemble", "first_pmf", "second_ensemble", "second_pmf"})
    base.erase(key);
  auto side = [&](const char* ens_key, const char* pmf_key) {
    json v = base;
    if (!cfg.contains(ens_key))
      throw ConfigError(std::string("config key required: ") + ens_key);
    v["ensemble"] = cfg.at(ens_key);
    v.erase("ensemble_pmf");
    if (cfg.contains(pmf_key)) v["ensemble_pmf"] = cfg.at(pmf_key);
    return experiment_from(std::move(v));
  };
  const ExperimentConfig first = side("first_ensemble", "first_pmf");
  const ExperimentConfig second = side("second_ensemble", "second_pmf");
  const EnsembleComparison res = run_ensemble_comparison(first, second, env.threads);

  ctx.write_text("first_records.csv", records_csv(res.first.records));
  ctx.write_text("second_records.csv", records_csv(res.second.records));
  const json echo{{"first", to_json(first)}, {"second", to_json(second)}};
  const json comparison{
      {"config", echo},
      {"first_median", res.first.summary.median_optimal},
      {"second_median", res.second.summary.median_optimal},
      {"mw_p_value", res.mw_p_value},
      {"first_median_below", res.first_median_below},
  };
  ctx.write_text("comparison.json", comparison.dump(2) + "\n");
  ctx.finish(echo, first.seed);
}

void cmd_verify_prop1(const CommandEnv& env) {
  RunContext ctx("verify-prop1", env.out_dir);
  const json cfg = merged_config(env, ctx);
  const double eps = cfg.value("eps", 0.3);
  const double eps_prime = cfg.value("eps_prime", 0.2);
  const int binary_max_n = cfg.value("binary_max_n", 12);
  const int ternary_max_n = cfg.value("ternary_max_n", 8);
  const json report = typical_membership_report(eps, eps_prime, binary_max_n,
                                                ternary_max_n, env.threads);
  ctx.write_text("report.json", report.dump(2) + "\n");
  std::cout << "status: " << report.at("status").get<std::string>() << "\n";
  const json echo{{"eps", eps},
                  {"eps_prime", eps_prime},
                  {"binary_max_n", binary_max_n},
                  {"ternary_max_n", ternary_max_n}};
  ctx.finish(echo, cfg.value("seed", uint64_t{0}));
}

void cmd_verify_prop3(const CommandEnv& env) {
  RunContext ctx("verify-prop3", env.out_dir);
  const json cfg = merged_config(env, ctx);
  const uint64_t samples = cfg.value("samples", uint64_t{100000});
  const uint64_t seed = cfg.value("seed", uint64_t{0});
  const json report = perturbation_bound_report(samples, seed, env.threads);
  ctx.write_text("report.json", report.dump(2) + "\n");
  std::cout << "status: " << report.at("status").get<std::string>() << "\n";
  ctx.finish(json{{"samples", samples}, {"seed", seed}}, seed);
}

void cmd_verify_lemma1(const CommandEnv& env) {
  RunContext ctx("verify-lemma1", env.out_dir);
  const json cfg = merged_config(env, ctx);
  const double eps = cfg.value("eps", 0.35);
  const uint64_t trials = cfg.value("trials", uint64_t{1000000});
  const uint64_t seed = cfg.value("seed", uint64_t{0});
  std::vector<int> lengths;
  if (cfg.contains("lengths"))
    for (const auto& v : cfg.at("lengths")) lengths.push_back(v.get<int>());
  else
    lengths = {8, 10, 12};
  const JointPmf joint =
      cfg.contains("joint")
          ? joint_from_json(cfg.at("joint"))
          : JointPmf(Alphabet{2}, Alphabet{2}, {0.4, 0.1, 0.1, 0.4});
  const json report = hit_probability_report(joint, eps, lengths, trials, seed);
  ctx.write_text("report.json", report.dump(2) + "\n");
  std::cout << "status: " << report.at("status").get<std::string>() << "\n";
  const json echo{{"joint", to_json(joint)},
                  {"eps", eps},
                  {"lengths", lengths},
                  {"trials", trials},
                  {"seed", seed}};
  ctx.finish(echo, seed);
}

void cmd_channel_sim(const CommandEnv& env) {
  RunContext ctx("channel-sim", env.out_dir);
  const json cfg = merged_config(env, ctx);
  const Pmf source = required_pmf(cfg, "source");
  const DistortionMeasure d = config_distortion(cfg, source.alphabet());
  const int input_size = cfg.value("input_size", 2);
  const int output_size = cfg.value("output_size", 2);
  if (!cfg.contains("n")) throw ConfigError("config key required: n");
  if (!cfg.contains("image_size"))
    throw ConfigError("config key required: image_size");
  const int n = cfg.at("n").get<int>();
  const uint64_t image_size = cfg.at("image_size").get<uint64_t>();
  const uint64_t words = cfg.value("words", uint64_t{100});
  const uint64_t seed = cfg.value("seed", uint64_t{0});
  const Ensemble ensemble = ensemble_from_name(cfg.value("ensemble", "mixture"));
  std::optional<Pmf> gen_pmf;
  if (cfg.contains("gen_pmf")) gen_pmf = pmf_from_json(cfg.at("gen_pmf"));

  RngStream channel_rng(seed, {stream_tag::kChannel});
  const ChannelSpec channel = make_random_channel(
      Alphabet{input_size}, Alphabet{output_size}, n, image_size, channel_rng);
  const Codebook cb =
      gen_codebook(ensemble, gen_pmf, n, std::log2(double(output_size)),
                   d.recon, seed, env.threads);
  const ChannelRunResult res =
      run_channel_simulation(channel, cb, source, words, seed, d, env.threads);

  const json result{
      {"input_size", input_size},
      {"output_size", output_size},
      {"n", n},
      {"target_image_size", image_size},
      {"image_size", channel.image_size},
      {"effective_rate", res.effective_rate},
      {"distortion", res.mean_distortion},
      {"benchmark_distortion", res.benchmark_distortion},
      {"words", words},
      {"construction",
       "image sampled uniformly without replacement; a random bijection covers "
       "it once, remaining inputs map uniformly"},
  };
  ctx.write_text("channel.json", result.dump(2) + "\n");
  json echo{{"source", to_json(source)},
            {"distortion", to_json(d)},
            {"input_size", input_size},
            {"output_size", output_size},
            {"n", n},
            {"image_size", image_size},
            {"words", words},
            {"ensemble", ensemble_name(ensemble)},
            {"seed", seed}};
  if (gen_pmf) echo["gen_pmf"] = to_json(*gen_pmf);
  ctx.finish(echo, seed);
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"lossy source coding over random codebook subsets"};
  app.set_version_flag("--version", kArtifactVersion);
  app.require_subcommand(1);

  CommandEnv envs[10];
  struct Entry {
    const char* name;
    const char* help;
    void (*body)(const CommandEnv&);
  };
  const Entry entries[] = {
      {"rd-curve", "distortion-rate curve as CSV (slope, rate, distortion)",
       cmd_rd_curve},
      {"rd-point", "distortion-rate function at one rate, with the achiever",
       cmd_rd_point},
      {"gen", "generate a codebook file and JSON sidecar", cmd_gen},
      {"subsets", "sample codeword subsets from a stored codebook", cmd_subsets},
      {"eval-subsets", "distortion of random subsets under both encoders",
       cmd_eval_subsets},
      {"compare-ensembles",
       "same experiment under two ensembles, with a rank test", cmd_compare_ensembles},
      {"verify-prop1",
       "exhaustive conditional-typicality membership scan", cmd_verify_prop1},
      {"verify-prop3", "perturbation-box KL bound sweep", cmd_verify_prop3},
      {"verify-lemma1",
       "mixture hit probability vs. its closed-form lower bound", cmd_verify_lemma1},
      {"channel-sim", "deterministic-channel coding reduction", cmd_channel_sim},
  };

  for (size_t i = 0; i < std::size(entries); ++i) {
    CLI::App* cmd = app.add_subcommand(entries[i].name, entries[i].help);
    CommandEnv* env = &envs[i];
    add_common_flags(cmd, env);
    json* ov = &env->ov;
    const std::string name = entries[i].name;
    if (name == "rd-curve" || name == "rd-point" || name == "channel-sim") {
      bind_pmf(cmd, "--source", ov, "source", "source pmf, e.g. 0.5,0.5");
      bind_string(cmd, "--distortion", ov, "distortion",
                  "distortion name (hamming); matrices go in the config file");
    }
    if (name == "rd-curve") {
      cmd->add_option_function<std::string>(
          "--slopes",
          [ov](const std::string& v) {
            json arr = json::array();
            for (double s : parse_double_list(v)) arr.push_back(s);
            (*ov)["slopes"] = arr;
          },
          "comma-separated slope list");
    } else if (name == "rd-point") {
      bind_double(cmd, "--rate", ov, "rate", "rate constraint in bits");
    } else if (name == "gen") {
      bind_string(cmd, "--ensemble", ov, "ensemble", "mixture | iid | type");
      bind_pmf(cmd, "--gen-pmf", ov, "gen_pmf", "generator pmf for iid/type");
      bind_int(cmd, "--n", ov, "n", "block length");
      bind_double(cmd, "--rate", ov, "rate", "codebook rate in bits");
      bind_int(cmd, "--alphabet", ov, "alphabet", "reconstruction alphabet size");
    } else if (name == "subsets") {
      bind_string(cmd, "--codebook", ov, "codebook", "codebook file path");
      bind_double(cmd, "--subset-rate", ov, "subset_rate", "subset rate in bits");
      bind_int(cmd, "--count", ov, "count", "number of subsets");
    } else if (name == "eval-subsets") {
      bind_experiment_flags(cmd, ov);
      bind_string(cmd, "--ensemble", ov, "ensemble", "mixture | iid | type");
      bind_pmf(cmd, "--ensemble-pmf", ov, "ensemble_pmf",
               "generator pmf for iid/type ensembles");
    } else if (name == "compare-ensembles") {
      bind_experiment_flags(cmd, ov);
      bind_string(cmd, "--first-ensemble", ov, "first_ensemble",
                  "ensemble of the first arm");
      bind_pmf(cmd, "--first-pmf", ov, "first_pmf", "generator pmf, first arm");
      bind_string(cmd, "--second-ensemble", ov, "second_ensemble",
                  "ensemble of the second arm");
      bind_pmf(cmd, "--second-pmf", ov, "second_pmf", "generator pmf, second arm");
    } else if (name == "verify-prop1") {
      bind_double(cmd, "--eps", ov, "eps", "typicality tolerance (default 0.3)");
      bind_double(cmd, "--eps-prime", ov, "eps_prime",
                  "conditioning-word tolerance (default 0.2)");
      bind_int(cmd, "--binary-max-n", ov, "binary_max_n",
               "largest binary block length (default 12)");
      bind_int(cmd, "--ternary-max-n", ov, "ternary_max_n",
               "largest ternary block length (default 8)");
    } else if (name == "verify-prop3") {
      bind_int(cmd, "--samples", ov, "samples",
               "samples per (alphabet, xi) cell (default 1e5)");
    } else if (name == "verify-lemma1") {
      bind_double(cmd, "--eps", ov, "eps", "typicality tolerance (default 0.35)");
      cmd->add_option_function<std::string>(
          "--lengths",
          [ov](const std::string& v) {
            json arr = json::array();
            for (int x : parse_int_list(v)) arr.push_back(x);
            (*ov)["lengths"] = arr;
          },
          "comma-separated block lengths (default 8,10,12)");
      bind_int(cmd, "--trials", ov, "trials", "Monte-Carlo trials (default 1e6)");
    } else if (name == "channel-sim") {
      bind_int(cmd, "--input-size", ov, "input_size", "channel input alphabet");
      bind_int(cmd, "--output-size", ov, "output_size", "channel output alphabet");
      bind_int(cmd, "--n", ov, "n", "block length");
      bind_int(cmd, "--image-size", ov, "image_size", "target image size");
      bind_int(cmd, "--words", ov, "words", "source words to simulate");
      bind_string(cmd, "--ensemble", ov, "ensemble",
                  "decoder codebook ensemble (default mixture)");
      bind_pmf(cmd, "--gen-pmf", ov, "gen_pmf", "generator pmf for iid/type");
    }
    cmd->callback([env, body = entries[i].body]() { body(*env); });
  }

  try {
    app.parse(argc, argv);
    return 0;
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << app.help() << std::flush;
    return 1;
  } catch (const ConvergenceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const GuardError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace lsc
