#include <doctest.h>

#include <sys/wait.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "lsc/codebook.hpp"
#include "lsc/rng.hpp"
#include "lsc/sha256.hpp"

using namespace lsc;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

const fs::path kWork = fs::temp_directory_path() / "lsc_cli_tests";

int run_cli(const std::string& args) {
  const std::string cmd = std::string("\"") + LSC_CLI_PATH + "\" " + args +
                          " > " + (kWork / "stdout.log").string() + " 2>&1";
  const int status = std::system(cmd.c_str());
  REQUIRE(status != -1);
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  REQUIRE(f.good());
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

json slurp_json(const fs::path& p) { return json::parse(slurp(p)); }

fs::path fresh_dir(const std::string& name) {
  const fs::path p = kWork / name;
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

struct WorkspaceInit {
  WorkspaceInit() {
    fs::remove_all(kWork);
    fs::create_directories(kWork);
  }
};
const WorkspaceInit init_once;

}  // namespace

TEST_CASE("help and parse failures") {
  CHECK(run_cli("--version") == 0);
  CHECK(run_cli("--help") == 0);
  CHECK(run_cli("") == 1);
  CHECK(run_cli("frobnicate") == 1);
  CHECK(run_cli("rd-point --rate notanumber") == 1);
}

TEST_CASE("rd-point output and manifest") {
  const fs::path out = fresh_dir("rd_point");
  CHECK(run_cli("rd-point --source 0.5,0.5 --rate 0.5 --out " + out.string()) == 0);

  const json pt = slurp_json(out / "rd_point.json");
  CHECK(pt.at("rate").get<double>() == 0.5);
  CHECK(pt.at("distortion").get<double>() ==
        doctest::Approx(0.11002786443835955).epsilon(2e-5));
  CHECK(pt.at("achiever").is_array());

  const json manifest = slurp_json(out / "manifest.json");
  CHECK(manifest.at("command") == "rd-point");
  CHECK(manifest.at("version") == "1.0.0");
  CHECK(manifest.at("duration_seconds").is_number());
  const std::string digest =
      manifest.at("outputs").at("rd_point.json").get<std::string>();
  CHECK(digest == sha256_file_hex((out / "rd_point.json").string()));
}

TEST_CASE("rd-curve is deterministic across runs") {
  const fs::path a = fresh_dir("curve_a");
  const fs::path b = fresh_dir("curve_b");
  const std::string flags = "rd-curve --source 0.3,0.7 --slopes 0.5,1,2,4 --out ";
  CHECK(run_cli(flags + a.string()) == 0);
  CHECK(run_cli(flags + b.string()) == 0);
  const std::string csv = slurp(a / "rd_curve.csv");
  CHECK(csv == slurp(b / "rd_curve.csv"));
  CHECK(csv.rfind("slope,rate_bits,distortion\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 5);
}

TEST_CASE("gen, subsets, eval-subsets pipeline") {
  const fs::path g = fresh_dir("gen");
  CHECK(run_cli("gen --ensemble iid --gen-pmf 0.5,0.5 --n 6 --rate 1 --seed 7 "
                "--out " +
                g.string()) == 0);
  const Codebook cb = read_codebook((g / "codebook.lscb").string());
  CHECK(cb.word_count() == 64);
  CHECK(cb.ensemble() == Ensemble::kIid);
  CHECK(cb.seed() == 7);
  const json side = slurp_json(g / "codebook.json");
  CHECK(side.at("word_count") == 64);

  const fs::path s = fresh_dir("subsets");
  CHECK(run_cli("subsets --codebook " + (g / "codebook.lscb").string() +
                " --subset-rate 0.5 --count 2 --seed 7 --out " + s.string()) == 0);
  const std::string csv = slurp(s / "subsets.csv");
  CHECK(csv.rfind("subset_id,word_index\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 1 + 2 * 8);
  // rows reproduce the documented per-subset stream
  RngStream rng(7, {stream_tag::kSubset, 0});
  const SubsetSpec expect = sample_subset(64, 0.5, 6, rng);
  std::istringstream lines(csv);
  std::string line;
  std::getline(lines, line);
  for (uint64_t k = 0; k < 8; ++k) {
    std::getline(lines, line);
    CHECK(line == "0," + std::to_string(expect.indices[k]));
  }

  const fs::path e = fresh_dir("eval");
  const fs::path cfg_path = kWork / "eval.json";
  {
    std::ofstream f(cfg_path);
    f << json{{"source_pmf", {0.6, 0.4}}, {"n", 6},
              {"full_rate", 1.0},         {"subset_rate", 0.5},
              {"backoff", 0.1},           {"eps", 0.3},
              {"eps_prime", 0.2},         {"resolution", 0.05},
              {"p_min", 0.05},            {"ensemble", "mixture"},
              {"num_subsets", 8},         {"num_source_words", 10},
              {"seed", 7}}
             .dump();
  }
  CHECK(run_cli("eval-subsets --config " + cfg_path.string() + " --out " +
                e.string()) == 0);
  const std::string records = slurp(e / "records.csv");
  CHECK(records.rfind("subset_id,mean_dist_opt,mean_dist_typ,e1,e2,hit_rate\n", 0) ==
        0);
  CHECK(std::count(records.begin(), records.end(), '\n') == 9);
  const json summary = slurp_json(e / "summary.json");
  CHECK(summary.at("exceed_fraction").is_number());
  CHECK(summary.at("config").at("num_subsets") == 8);
  const json manifest = slurp_json(e / "manifest.json");
  CHECK(manifest.at("inputs").contains(cfg_path.string()));
}

TEST_CASE("flag overrides beat the config file") {
  const fs::path out = fresh_dir("override");
  const fs::path cfg_path = kWork / "override.json";
  {
    std::ofstream f(cfg_path);
    f << json{{"source", {0.5, 0.5}}, {"rate", 0.9}}.dump();
  }
  CHECK(run_cli("rd-point --config " + cfg_path.string() + " --rate 0.5 --out " +
                out.string()) == 0);
  CHECK(slurp_json(out / "rd_point.json").at("rate").get<double>() == 0.5);
}

TEST_CASE("exit codes") {
  const fs::path out = fresh_dir("errors");
  // invalid configuration
  CHECK(run_cli("rd-point --source 0.5,0.5 --out " + out.string()) == 1);
  CHECK(run_cli("rd-point --source 0.6,0.6 --rate 0.5 --out " + out.string()) == 1);
  const fs::path bad_cfg = kWork / "bad.json";
  {
    std::ofstream f(bad_cfg);
    f << "{not json";
  }
  CHECK(run_cli("rd-point --config " + bad_cfg.string() + " --out " +
                out.string()) == 1);
  // experiment parameter ordering
  CHECK(run_cli("eval-subsets --source 0.5,0.5 --n 6 --full-rate 0.5 "
                "--subset-rate 0.9 --backoff 0.1 --eps 0.3 --eps-prime 0.2 "
                "--resolution 0.05 --p-min 0.05 --num-subsets 2 "
                "--num-source-words 2 --out " +
                out.string()) == 1);
  // resource guard
  CHECK(run_cli("gen --ensemble mixture --n 30 --rate 1 --alphabet 2 --out " +
                out.string()) == 3);
}

TEST_CASE("verify-prop3 smoke run") {
  const fs::path out = fresh_dir("prop3");
  CHECK(run_cli("verify-prop3 --samples 400 --seed 3 --out " + out.string()) == 0);
  const json report = slurp_json(out / "report.json");
  CHECK(report.at("status") == "pass");
  CHECK(report.at("violations") == 0);
  CHECK(report.at("cells").size() == 12);
}

TEST_CASE("verify-prop1 smoke run") {
  const fs::path out = fresh_dir("prop1");
  CHECK(run_cli("verify-prop1 --binary-max-n 6 --ternary-max-n 4 --out " +
                out.string()) == 0);
  const json report = slurp_json(out / "report.json");
  CHECK(report.at("status") == "pass");
  CHECK(report.at("marginal_violations") == 0);
  CHECK(report.at("sweeps").size() == 2);
}

TEST_CASE("verify-lemma1 smoke run") {
  const fs::path out = fresh_dir("lemma1");
  CHECK(run_cli("verify-lemma1 --lengths 8 --trials 4000 --seed 3 --out " +
                out.string()) == 0);
  const json report = slurp_json(out / "report.json");
  REQUIRE(report.at("rows").size() == 1);
  const json& row = report.at("rows")[0];
  CHECK(row.at("n") == 8);
  CHECK(row.at("exact").get<double>() ==
        doctest::Approx(0.025396825396825418).epsilon(1e-12));
  CHECK(row.at("ci_above_bound") == true);
}

TEST_CASE("channel-sim smoke run") {
  const fs::path out = fresh_dir("channel");
  CHECK(run_cli("channel-sim --source 0.5,0.5 --n 4 --image-size 4 --words 5 "
                "--seed 5 --out " +
                out.string()) == 0);
  const json result = slurp_json(out / "channel.json");
  CHECK(result.at("image_size") == 4);
  CHECK(result.at("effective_rate").get<double>() == doctest::Approx(0.5));
  CHECK(result.at("benchmark_distortion").get<double>() ==
        doctest::Approx(0.11002786443835955).epsilon(2e-5));
  CHECK(result.at("distortion").get<double>() >= 0.0);
}
