#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <string>

#include "doctest.h"
#include "json.hpp"

namespace fs = std::filesystem;

namespace {

const fs::path kWorkDir = fs::temp_directory_path() / "streetsim_cli_test";

int run_cli(const std::string& args) {
  const std::string cmd =
      std::string(STREETSIM_BIN_PATH) + " " + args + " >/dev/null 2>&1";
  const int rc = std::system(cmd.c_str());
  REQUIRE(rc != -1);
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  return std::string((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
}

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = kWorkDir / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

size_t line_count(const std::string& text) {
  size_t lines = 0;
  for (char ch : text) lines += (ch == '\n');
  return lines;
}

}  // namespace

TEST_CASE("usage errors exit with code 2") {
  CHECK(run_cli("") == 2);
  CHECK(run_cli("simulate") == 2);  // missing required flags
  CHECK(run_cli("simulate --model mirror --n 3 --p 0.1 --trials 5 --seed 1 --out " +
                (fresh_dir("oddn")).string()) == 2);
  CHECK(run_cli("simulate --model hexagon --n 4 --p 0.1 --trials 5 --seed 1") == 2);
  CHECK(run_cli("simulate --model mirror --n 4 --p 1.5 --trials 5 --seed 1 --out " +
                (fresh_dir("badp")).string()) == 2);
}

TEST_CASE("simulate writes a complete, reproducible artifact set") {
  const fs::path dir_a = fresh_dir("sim_a");
  const fs::path dir_b = fresh_dir("sim_b");
  const std::string flags =
      "simulate --model mirror --n 4 --p 0.3 --trials 50 --seed 7 --out ";
  CHECK(run_cli(flags + dir_a.string() + " --threads 1") == 0);
  CHECK(run_cli(flags + dir_b.string() + " --threads 2") == 0);

  for (const fs::path& dir : {dir_a, dir_b}) {
    CHECK(fs::exists(dir / "trials.csv"));
    CHECK(fs::exists(dir / "aggregate.json"));
    CHECK(fs::exists(dir / "manifest.json"));
  }
  // Data files are byte-identical across worker counts.
  CHECK(slurp(dir_a / "trials.csv") == slurp(dir_b / "trials.csv"));
  CHECK(slurp(dir_a / "aggregate.json") == slurp(dir_b / "aggregate.json"));

  const std::string trials_csv = slurp(dir_a / "trials.csv");
  CHECK(line_count(trials_csv) == 51);  // header + one row per trial
  CHECK(trials_csv.rfind("trial,hitting_time,censored,tau_at_hit,w_0,w_1,"
                         "manifest_hash\n", 0) == 0);

  const auto manifest = nlohmann::json::parse(slurp(dir_a / "manifest.json"));
  const auto aggregate = nlohmann::json::parse(slurp(dir_a / "aggregate.json"));
  CHECK(manifest.at("command") == "simulate");
  CHECK(manifest.at("n") == 4);
  CHECK(aggregate.at("manifest_hash") == manifest.at("manifest_hash"));
  CHECK(aggregate.at("trials") == 50);
}

TEST_CASE("mirror-free conditioned runs censor everything and still exit 0") {
  const fs::path dir = fresh_dir("censored");
  CHECK(run_cli("simulate --model mirror --n 4 --p 0 --trials 20 --seed 3 "
                "--conditioned --cap 50 --out " + dir.string()) == 0);
  const auto aggregate = nlohmann::json::parse(slurp(dir / "aggregate.json"));
  CHECK(aggregate.at("censored_count") == 20);
  CHECK(aggregate.at("hitting_time_mean") == 50.0);
}

TEST_CASE("exact emits the closed-form width-2 conditioned law") {
  const fs::path dir = fresh_dir("exact");
  CHECK(run_cli("exact --model mirror --n 2 --p 1 --conditioned --imax 3 "
                "--dump-dist --out " + dir.string()) == 0);
  const std::string cdf = slurp(dir / "cdf.csv");
  CHECK(cdf.rfind("i,cdf,manifest_hash\n", 0) == 0);
  CHECK(cdf.find("\n1,0.5,") != std::string::npos);
  CHECK(cdf.find("\n2,0.75,") != std::string::npos);
  CHECK(cdf.find("\n3,0.875,") != std::string::npos);
  CHECK(fs::exists(dir / "distribution.csv"));
  const std::string dist = slurp(dir / "distribution.csv");
  CHECK(dist.rfind("diagram,bars,prob,manifest_hash\n", 0) == 0);
  CHECK(dist.find("\"[1+^2+, 1-v2-]\",1,0.5,") != std::string::npos);
}

TEST_CASE("enumeration budgets surface as exit code 3") {
  const fs::path dir = fresh_dir("budget");
  CHECK(run_cli("exact --model mirror --n 10 --p 0.1 --imax 2 --out " +
                dir.string()) == 3);
}

TEST_CASE("tailgrid emits the documented grid") {
  const fs::path dir = fresh_dir("tailgrid");
  CHECK(run_cli("tailgrid --model mirror --n 4 --p 0.3 --trials 40 --seed 1 "
                "--alphas 0,0.5 --out " + dir.string()) == 0);
  const std::string grid = slurp(dir / "tailgrid.csv");
  CHECK(grid.rfind("alpha,x_streets,tail_point,tail_lower,tail_upper,"
                   "bound_full_tail,cdf_point,cdf_lower,cdf_upper,"
                   "bound_early_hit,geometric_cdf,manifest_hash\n", 0) == 0);
  CHECK(grid.find("\n0,0,1,") != std::string::npos);  // alpha 0: tail is 1
  CHECK(line_count(grid) == 3);

  // Regime enforcement: p = 0.3 > C/n = 0.25 is a usage error.
  CHECK(run_cli("tailgrid --model mirror --n 4 --p 0.3 --trials 4 --seed 1 "
                "--enforce-regime --out " + dir.string()) == 2);
}

TEST_CASE("output cross-checker accepts matched files and rejects mixes") {
  const fs::path dir_a = fresh_dir("match_a");
  const fs::path dir_b = fresh_dir("match_b");
  CHECK(run_cli("simulate --model mirror --n 4 --p 0.3 --trials 10 --seed 1 --out " +
                dir_a.string()) == 0);
  CHECK(run_cli("simulate --model mirror --n 4 --p 0.3 --trials 10 --seed 2 --out " +
                dir_b.string()) == 0);
  CHECK(run_cli("check-outputs " + (dir_a / "trials.csv").string() + " " +
                (dir_a / "aggregate.json").string() + " " +
                (dir_a / "manifest.json").string()) == 0);
  CHECK(run_cli("check-outputs " + (dir_a / "trials.csv").string() + " " +
                (dir_b / "manifest.json").string()) == 1);
}

TEST_CASE("verify wiring runs a single fast criterion") {
  CHECK(run_cli("verify --only compose-golden") == 0);
  CHECK(run_cli("verify --only no-such-criterion") == 2);
}
