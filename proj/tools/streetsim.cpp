// Command-line front end: deterministic experiments, exact CDFs, analytic
// bound grids, and the acceptance-check suite.  Exit codes: 0 success,
// 1 verification failure, 2 usage error, 3 enumeration budget exceeded.
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "streetsim/chain.hpp"
#include "streetsim/exact.hpp"
#include "streetsim/manifest.hpp"
#include "streetsim/stats.hpp"
#include "streetsim/verify.hpp"
#include "streetsim/version.hpp"

namespace fs = std::filesystem;
using namespace streetsim;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitBudget = 3;

struct CommonFlags {
  std::string model = "mirror";
  int n = 0;
  double p = 0.0;
  double c = 1.0;
  std::string out;
};

fs::path resolve_outdir(const std::string& flag_value) {
  if (!flag_value.empty()) return fs::path(flag_value);
  if (const char* env = std::getenv("STREETSIM_OUTDIR"); env && *env)
    return fs::path(env);
  return fs::path(".");
}

void write_outputs(const fs::path& dir,
                   const std::vector<std::pair<std::string, std::string>>& files) {
  fs::create_directories(dir);
  for (const auto& [name, content] : files) write_text_file(dir / name, content);
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
      .count();
}

int cmd_simulate(const CommonFlags& common, bool conditioned, uint64_t trials,
                 uint64_t seed, uint32_t cap, int threads, bool loops,
                 bool start_westbound) {
  RunSpec spec;
  spec.model = model_from_name(common.model);
  spec.conditioned = conditioned;
  spec.params.n = common.n;
  spec.params.p = common.p;
  spec.params.c = common.c;
  spec.trials = trials;
  spec.master_seed = seed;
  spec.street_cap = cap;
  spec.parity_offset = start_westbound ? 1 : 0;
  spec.record_loops = loops;
  spec.validate();

  const auto start = std::chrono::steady_clock::now();
  const BatchResult batch = run_batch(spec, threads);

  RunManifest manifest = RunManifest::from_spec("simulate", spec);
  manifest.wall_clock_seconds = seconds_since(start);
  manifest.censored_count = batch.censored_count();
  const std::string hash = manifest.hash_hex();

  write_outputs(resolve_outdir(common.out),
                {{"trials.csv", render_trials_csv(batch, hash)},
                 {"aggregate.json", render_aggregate_json(batch, hash)},
                 {"manifest.json", manifest.to_json_string()}});
  std::cout << "simulate: " << trials << " trials, " << batch.censored_count()
            << " censored, mean hitting " << batch.mean_hitting() << ", hash "
            << hash << "\n";
  return kExitOk;
}

std::string render_distribution_csv(const DistributionVector& dist,
                                    const std::string& hash) {
  std::string out = "diagram,bars,prob,manifest_hash\n";
  for (const auto& [d, prob] : dist.entries()) {
    out += '"' + d.to_string() + "\",";
    out += std::to_string(d.bar_count());
    out += ',';
    out += format_double(prob);
    out += ',';
    out += hash;
    out += '\n';
  }
  return out;
}

int cmd_exact(const CommonFlags& common, bool conditioned, int i_max,
              bool dump_dist, bool start_westbound) {
  RunSpec spec;
  spec.model = model_from_name(common.model);
  spec.conditioned = conditioned;
  spec.params.n = common.n;
  spec.params.p = common.p;
  spec.params.c = common.c;
  spec.trials = 1;  // exact computation; no sampling
  // The street horizon plays the role of the cap for reproducibility hashing.
  spec.street_cap = static_cast<uint32_t>(i_max);
  spec.parity_offset = start_westbound ? 1 : 0;
  spec.params.validate();
  if (i_max < 1) throw std::invalid_argument("exact: --imax must be >= 1");

  const auto start = std::chrono::steady_clock::now();
  const std::vector<double> cdf =
      hitting_cdf(spec.model, spec.params, conditioned, i_max, spec.parity_offset);

  RunManifest manifest = RunManifest::from_spec("exact", spec);
  manifest.wall_clock_seconds = seconds_since(start);
  const std::string hash = manifest.hash_hex();

  std::vector<std::pair<std::string, std::string>> files = {
      {"cdf.csv", render_cdf_csv(cdf, hash)},
      {"manifest.json", manifest.to_json_string()}};
  if (dump_dist) {
    const DistributionVector dist =
        conditioned ? conditioned_distribution(spec.model, spec.params)
                    : street_distribution(spec.model, spec.params,
                                          1 + spec.parity_offset);
    files.emplace_back("distribution.csv", render_distribution_csv(dist, hash));
  }
  write_outputs(resolve_outdir(common.out), files);
  std::cout << "exact: " << i_max << " rows, cdf[" << i_max << "] = "
            << cdf.back() << ", hash " << hash << "\n";
  return kExitOk;
}

int cmd_tailgrid(const CommonFlags& common, uint64_t trials, uint64_t seed,
                 uint32_t cap, int threads, std::vector<double> alphas,
                 bool enforce_regime, bool start_westbound) {
  RunSpec spec;
  spec.model = model_from_name(common.model);
  spec.conditioned = false;
  spec.params.n = common.n;
  spec.params.p = common.p;
  spec.params.c = common.c;
  spec.trials = trials;
  spec.master_seed = seed;
  spec.street_cap = cap;
  spec.parity_offset = start_westbound ? 1 : 0;
  spec.validate();
  if (alphas.empty()) throw std::invalid_argument("tailgrid: --alphas is empty");
  for (double a : alphas) {
    if (a < 0) throw std::invalid_argument("tailgrid: alphas must be >= 0");
  }
  if (enforce_regime && common.p > common.c / common.n) {
    throw std::invalid_argument("tailgrid: p exceeds C/n under --enforce-regime");
  }

  const auto start = std::chrono::steady_clock::now();
  const BatchResult batch = run_batch(spec, threads);

  RunManifest manifest = RunManifest::from_spec("tailgrid", spec);
  manifest.wall_clock_seconds = seconds_since(start);
  manifest.censored_count = batch.censored_count();
  const std::string hash = manifest.hash_hex();

  std::vector<TailGridRow> rows;
  rows.reserve(alphas.size());
  for (double alpha : alphas) {
    TailGridRow row;
    row.alpha = alpha;
    const double x_real =
        common.p > 0 ? std::ceil(alpha / (common.p * common.p)) : 0.0;
    row.x = static_cast<uint64_t>(x_real);
    const uint32_t x32 = static_cast<uint32_t>(
        std::min<double>(x_real, static_cast<double>(UINT32_MAX)));
    const IntervalEstimate tail =
        wilson_interval(batch.tail_successes(x32), trials, 3.0);
    const IntervalEstimate cdf =
        wilson_interval(batch.cdf_successes(x32), trials, 3.0);
    row.tail_point = tail.point;
    row.tail_lower = tail.lower;
    row.tail_upper = tail.upper;
    row.bound_full_tail = full_tail_bound(spec.model, alpha, common.c);
    row.cdf_point = cdf.point;
    row.cdf_lower = cdf.lower;
    row.cdf_upper = cdf.upper;
    row.bound_early_hit = early_hit_bound(alpha);
    row.geometric_cdf = geometric_domination_cdf(alpha, common.p);
    rows.push_back(row);
  }

  write_outputs(resolve_outdir(common.out),
                {{"tailgrid.csv", render_tailgrid_csv(rows, hash)},
                 {"manifest.json", manifest.to_json_string()}});
  std::cout << "tailgrid: " << rows.size() << " grid points, hash " << hash << "\n";
  return kExitOk;
}

int cmd_verify(const std::string& only, int threads, const std::string& out) {
  VerifyOptions options;
  options.only = only;
  options.threads = threads;
  const auto results = run_acceptance(options, std::cout);
  if (results.empty()) {
    std::cerr << "verify: no criterion matches --only " << only << "\n";
    return kExitUsage;
  }
  if (!out.empty()) {
    const fs::path dir = resolve_outdir(out);
    fs::create_directories(dir);
    write_text_file(dir / "report.json", acceptance_report_json(results));
  }
  for (const auto& r : results) {
    if (!r.pass) return kExitVerifyFail;
  }
  return kExitOk;
}

// Pull the manifest hash out of one output file: the manifest_hash JSON field,
// or the trailing manifest_hash CSV column (constant across rows).
std::optional<std::string> extract_hash(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::string content((std::istreambuf_iterator<char>(in)),
                      std::istreambuf_iterator<char>());
  if (!path.has_extension()) return std::nullopt;
  if (path.extension() == ".json") {
    const auto j = nlohmann::json::parse(content, nullptr, false);
    if (j.is_discarded() || !j.contains("manifest_hash")) return std::nullopt;
    return j.at("manifest_hash").get<std::string>();
  }
  // CSV: header names the hash column; every row must carry the same value.
  size_t line_end = content.find('\n');
  if (line_end == std::string::npos) return std::nullopt;
  const std::string header = content.substr(0, line_end);
  if (header.rfind(",manifest_hash") != header.size() - 14) return std::nullopt;
  std::optional<std::string> hash;
  size_t pos = line_end + 1;
  while (pos < content.size()) {
    size_t next = content.find('\n', pos);
    if (next == std::string::npos) next = content.size();
    const std::string row = content.substr(pos, next - pos);
    if (!row.empty()) {
      const size_t comma = row.rfind(',');
      if (comma == std::string::npos) return std::nullopt;
      const std::string value = row.substr(comma + 1);
      if (hash.has_value() && *hash != value) return std::nullopt;
      hash = value;
    }
    pos = next + 1;
  }
  return hash;
}

int cmd_check_outputs(const std::vector<std::string>& paths) {
  std::optional<std::string> expected;
  for (const std::string& p : paths) {
    const auto hash = extract_hash(fs::path(p));
    if (!hash.has_value()) {
      std::cerr << "check-outputs: no consistent manifest hash in " << p << "\n";
      return kExitVerifyFail;
    }
    if (expected.has_value() && *expected != *hash) {
      std::cerr << "check-outputs: hash mismatch: " << p << " carries " << *hash
                << ", expected " << *expected << "\n";
      return kExitVerifyFail;
    }
    expected = hash;
  }
  std::cout << "check-outputs: " << paths.size() << " files carry hash "
            << *expected << "\n";
  return kExitOk;
}

void add_common(CLI::App* cmd, CommonFlags& common, bool needs_params) {
  cmd->add_option("--model", common.model, "lattice model: mirror or manhattan")
      ->check(CLI::IsMember({"mirror", "manhattan"}));
  auto* n_opt = cmd->add_option("--n", common.n, "cylinder width (even, >= 2)");
  auto* p_opt = cmd->add_option("--p", common.p, "mirror probability in [0,1]");
  if (needs_params) {
    n_opt->required();
    p_opt->required();
  }
  cmd->add_option("--C", common.c, "sparse-regime constant (p <= C/n) for bounds");
  cmd->add_option("--out", common.out,
                  "output directory (default: $STREETSIM_OUTDIR or .)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"street-product simulator and exact toolkit for cylinder lattice "
               "models (v" + std::string(kVersion) + ")"};
  app.require_subcommand(1);

  // --- simulate ---
  CommonFlags sim_common;
  uint64_t sim_trials = 0;
  uint64_t sim_seed = 0;
  uint32_t sim_cap = 0;
  int sim_threads = 0;
  bool sim_conditioned = false, sim_loops = false, sim_westbound = false;
  auto* sim = app.add_subcommand("simulate", "run Monte Carlo hitting-time trials");
  add_common(sim, sim_common, true);
  sim->add_option("--trials", sim_trials, "number of trials")->required();
  sim->add_option("--seed", sim_seed, "master seed");
  sim->add_option("--cap", sim_cap, "street cap per trial (0 = automatic)");
  sim->add_option("--threads", sim_threads, "worker threads (0 = hardware)");
  sim->add_flag("--conditioned", sim_conditioned,
                "run the conditioned (<= 2 mirrors per street) chain");
  sim->add_flag("--loops", sim_loops, "record removed-loop counts per trial");
  sim->add_flag("--start-westbound", sim_westbound,
                "flip the first street's direction (Manhattan parity offset)");

  // --- exact ---
  CommonFlags ex_common;
  int ex_imax = 0;
  bool ex_conditioned = false, ex_dump = false, ex_westbound = false;
  auto* ex = app.add_subcommand("exact", "exact hitting-time CDF by enumeration");
  add_common(ex, ex_common, true);
  ex->add_option("--imax", ex_imax, "number of streets to propagate")->required();
  ex->add_flag("--conditioned", ex_conditioned,
               "use the conditioned street law");
  ex->add_flag("--dump-dist", ex_dump, "also write the one-street law");
  ex->add_flag("--start-westbound", ex_westbound,
               "flip the first street's direction (Manhattan parity offset)");

  // --- tailgrid ---
  CommonFlags tg_common;
  uint64_t tg_trials = 0;
  uint64_t tg_seed = 0;
  uint32_t tg_cap = 0;
  int tg_threads = 0;
  std::vector<double> tg_alphas = {1.0, 2.0, 4.0, 8.0};
  bool tg_enforce = false, tg_westbound = false;
  auto* tg = app.add_subcommand(
      "tailgrid", "empirical tails vs analytic bounds on an alpha grid");
  add_common(tg, tg_common, true);
  tg->add_option("--trials", tg_trials, "number of trials")->required();
  tg->add_option("--seed", tg_seed, "master seed");
  tg->add_option("--cap", tg_cap, "street cap per trial (0 = automatic)");
  tg->add_option("--threads", tg_threads, "worker threads (0 = hardware)");
  tg->add_option("--alphas", tg_alphas, "alpha grid (comma separated)")
      ->delimiter(',');
  tg->add_flag("--enforce-regime", tg_enforce, "reject p > C/n as a usage error");
  tg->add_flag("--start-westbound", tg_westbound,
               "flip the first street's direction (Manhattan parity offset)");

  // --- verify ---
  std::string vf_only;
  int vf_threads = 0;
  std::string vf_out;
  auto* vf = app.add_subcommand("verify", "run the acceptance-check suite");
  vf->add_option("--only", vf_only, "run a single named criterion");
  vf->add_option("--threads", vf_threads, "worker threads (0 = hardware)");
  vf->add_option("--out", vf_out, "directory for report.json (default: none)");

  // --- check-outputs ---
  std::vector<std::string> co_paths;
  auto* co = app.add_subcommand("check-outputs",
                                "verify a set of output files share one manifest hash");
  co->add_option("paths", co_paths, "output files to cross-check")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (sim->parsed()) {
      return cmd_simulate(sim_common, sim_conditioned, sim_trials, sim_seed,
                          sim_cap, sim_threads, sim_loops, sim_westbound);
    }
    if (ex->parsed()) {
      return cmd_exact(ex_common, ex_conditioned, ex_imax, ex_dump, ex_westbound);
    }
    if (tg->parsed()) {
      return cmd_tailgrid(tg_common, tg_trials, tg_seed, tg_cap, tg_threads,
                          tg_alphas, tg_enforce, tg_westbound);
    }
    if (vf->parsed()) {
      return cmd_verify(vf_only, vf_threads, vf_out);
    }
    if (co->parsed()) {
      return cmd_check_outputs(co_paths);
    }
  } catch (const BudgetError& e) {
    std::cerr << "budget error: " << e.what() << "\n";
    return kExitBudget;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitVerifyFail;
  }
  return kExitUsage;
}
