#include "streetsim/chain.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <thread>

#include "streetsim/rng.hpp"

namespace streetsim {

namespace {

void require(bool cond, const char* msg) {
  if (!cond) throw std::invalid_argument(msg);
}

}  // namespace

uint32_t default_street_cap(double p, uint64_t trials) {
  if (p <= 0.0) return 10000;
  const double raw = std::ceil(20.0 * std::log(static_cast<double>(std::max<uint64_t>(trials, 2))) / (p * p));
  return static_cast<uint32_t>(std::clamp(raw, 1000.0, 1e8));
}

void RunSpec::validate() const {
  params.validate();
  require(trials >= 1, "RunSpec: trials must be >= 1");
  require(trials <= UINT32_MAX, "RunSpec: trials exceed the 32-bit trial index space");
}

uint32_t RunSpec::effective_cap() const {
  return street_cap != 0 ? street_cap : default_street_cap(params.p, trials);
}

TrialRecord run_trial(const RunSpec& spec, uint32_t trial_index) {
  spec.validate();
  const int n = spec.params.n;
  const int target = n / 2;
  const uint32_t cap = spec.effective_cap();

  TrialRecord rec;
  rec.waits.assign(static_cast<size_t>(target), 0);

  thread_local Diagram product = Diagram::identity(2);
  thread_local Diagram scratch = Diagram::identity(2);
  thread_local Diagram street_diagram = Diagram::identity(2);
  thread_local StreetConfig cfg;
  product = Diagram::identity(n);
  scratch = Diagram::identity(n);

  int bars = 0;
  uint32_t last_level_street = 0;
  uint32_t tau = 0;

  for (uint32_t street = 1; street <= cap; ++street) {
    if (spec.conditioned) {
      street_diagram = sample_conditioned_diagram(spec.model, spec.params,
                                                  spec.master_seed, trial_index, street);
      ++tau;
    } else if (spec.model == Model::mirror) {
      sample_street_mirror_into(spec.params, spec.master_seed, trial_index, street, cfg);
      if (cfg.mirror_count() <= 2) ++tau;
      trace_street_into(cfg, street_diagram);
    } else {
      const int t = static_cast<int>(street) + spec.parity_offset;
      sample_street_manhattan_into(spec.params, t, spec.master_seed, trial_index,
                                   street, cfg);
      if (cfg.mirror_count() <= 2) ++tau;
      trace_street_into(cfg, street_diagram);
    }

    rec.loops_total += static_cast<uint64_t>(compose_into(product, street_diagram, scratch));
    std::swap(product, scratch);

    const int new_bars = product.bar_count();
    if (new_bars > bars) {
      rec.waits[static_cast<size_t>(bars)] = street - last_level_street;
      for (int k = bars + 1; k < new_bars; ++k) rec.waits[static_cast<size_t>(k)] = 0;
      bars = new_bars;
      last_level_street = street;
    }
    if (bars >= target) {
      rec.hitting_time = street;
      rec.censored = false;
      rec.tau_at_hit = tau;
      return rec;
    }
  }

  rec.hitting_time = cap;
  rec.censored = true;
  rec.tau_at_hit = tau;
  if (bars < target) rec.waits[static_cast<size_t>(bars)] = cap - last_level_street;
  return rec;
}

uint64_t BatchResult::censored_count() const {
  uint64_t k = 0;
  for (const TrialRecord& r : records) k += r.censored;
  return k;
}

double BatchResult::mean_hitting() const {
  double total = 0.0;
  for (const TrialRecord& r : records) total += static_cast<double>(r.hitting_time);
  return records.empty() ? 0.0 : total / static_cast<double>(records.size());
}

uint64_t BatchResult::cdf_successes(uint32_t x) const {
  uint64_t k = 0;
  for (const TrialRecord& r : records) k += (!r.censored && r.hitting_time <= x);
  return k;
}

uint64_t BatchResult::tail_successes(uint32_t x) const {
  uint64_t k = 0;
  for (const TrialRecord& r : records) k += (r.censored || r.hitting_time >= x);
  return k;
}

BatchResult run_batch(const RunSpec& spec, int threads) {
  spec.validate();
  BatchResult out;
  out.spec = spec;
  out.records.resize(spec.trials);

  int workers = threads;
  if (workers <= 0) {
    workers = static_cast<int>(std::thread::hardware_concurrency());
    if (workers <= 0) workers = 1;
  }
  workers = static_cast<int>(
      std::min<uint64_t>(static_cast<uint64_t>(workers), spec.trials));

  if (workers == 1) {
    for (uint64_t t = 0; t < spec.trials; ++t)
      out.records[t] = run_trial(spec, static_cast<uint32_t>(t));
    return out;
  }

  // Strided static partition: record t is written only by worker t % workers,
  // and every trial is a pure function of (master_seed, t), so the batch is
  // identical for every worker count.
  std::vector<std::thread> pool;
  pool.reserve(static_cast<size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (uint64_t t = static_cast<uint64_t>(w); t < spec.trials;
           t += static_cast<uint64_t>(workers)) {
        out.records[t] = run_trial(spec, static_cast<uint32_t>(t));
      }
    });
  }
  for (std::thread& th : pool) th.join();
  return out;
}

double bar_increment_prob(Model model, const ModelParams& params, int k) {
  params.validate();
  require(k >= 0 && k < params.n / 2, "bar_increment_prob: k out of range");
  const double p = params.p;
  const int n = params.n;
  if (p <= 0.0) return 0.0;
  const double base = std::pow(1.0 - p, n - 2) * p * p;
  double numerator;
  if (model == Model::mirror) {
    const double m = static_cast<double>(n - 2 * k);
    numerator = 0.5 * base * (m * (m - 1) / 2.0);
  } else {
    const double m = static_cast<double>(n) / 2.0 - static_cast<double>(k);
    numerator = base * m * m;
  }
  return numerator / sparse_street_prob(params);
}

BoundParams BoundParams::from_c(double c) {
  require(c > 0.0, "BoundParams: c must be positive");
  BoundParams b{};
  b.amplitude_mirror = std::cosh(std::numbers::pi);
  b.amplitude_manhattan = std::sinh(std::numbers::pi) / std::numbers::pi;
  b.c2 = 0.5 * c * c + c + 1.0;
  b.c3 = std::exp(-c) * (1.0 + c + 0.5 * c * c);
  return b;
}

double full_tail_bound(Model model, double alpha, double c) {
  const BoundParams b = BoundParams::from_c(c);
  const double a = model == Model::mirror ? b.amplitude_mirror : b.amplitude_manhattan;
  return 2.0 * a * std::exp(-alpha / (8.0 * std::exp(c)));
}

double conditioned_tail_bound(Model model, double alpha, double c) {
  const BoundParams b = BoundParams::from_c(c);
  const double a = model == Model::mirror ? b.amplitude_mirror : b.amplitude_manhattan;
  return a * std::exp(-alpha / (4.0 * b.c2));
}

double early_hit_bound(double alpha) {
  require(alpha >= 0.0, "early_hit_bound: alpha must be >= 0");
  return std::min(1.0, 2.0 * alpha);
}

double geometric_domination_cdf(double alpha, double p) {
  require(alpha >= 0.0, "geometric_domination_cdf: alpha must be >= 0");
  require(p >= 0.0 && p <= 1.0, "geometric_domination_cdf: p must lie in [0,1]");
  if (alpha == 0.0 || p == 0.0) return 0.0;
  if (p >= 1.0) return 1.0;
  const double steps = alpha / (p * p);
  return -std::expm1(steps * std::log1p(-p * p));
}

}  // namespace streetsim
