#pragma once

#include <cstdint>
#include <vector>

#include "streetsim/lattice.hpp"

namespace streetsim {

// Heuristic cap keeping expected censoring negligible at desk scale:
// ceil(20 log(trials) / p^2), clamped to [1000, 1e8]; 10000 when p = 0.
uint32_t default_street_cap(double p, uint64_t trials);

struct RunSpec {
  Model model = Model::mirror;
  bool conditioned = false;  // measure W (conditioned chain) instead of V
  ModelParams params;
  uint64_t trials = 0;
  uint64_t master_seed = 0;
  uint32_t street_cap = 0;  // 0 = default_street_cap(p, trials)
  int parity_offset = 0;    // Manhattan full model: 1 = street 1 westbound
  bool record_loops = false;

  void validate() const;
  uint32_t effective_cap() const;
};

struct TrialRecord {
  uint32_t hitting_time = 0;  // streets consumed (the cap when censored)
  bool censored = false;
  // Count of <= 2-mirror streets among the consumed ones (equals
  // hitting_time for the conditioned chain).
  uint32_t tau_at_hit = 0;
  // n/2 entries; waits[k] = streets between bar levels k and k+1.  A zero
  // marks a level skipped when one full-model street added several bars.
  std::vector<uint32_t> waits;
  uint64_t loops_total = 0;
};

TrialRecord run_trial(const RunSpec& spec, uint32_t trial_index);

struct BatchResult {
  RunSpec spec;
  std::vector<TrialRecord> records;  // indexed by trial

  uint64_t censored_count() const;
  double mean_hitting() const;  // fixed trial order, thread-count independent
  // #{trials: not censored and hitting_time <= x}
  uint64_t cdf_successes(uint32_t x) const;
  // #{trials: censored or hitting_time >= x}; a censored trial hit beyond the
  // cap, so it counts toward every tail event with x <= cap.
  uint64_t tail_successes(uint32_t x) const;
};

// Deterministic parallel runner: trial t's randomness depends only on
// (master_seed, t), and records land at index t, so the result is identical
// for every worker count.  threads = 0 picks the hardware default.
BatchResult run_batch(const RunSpec& spec, int threads = 0);

// Per-street probability that the conditioned chain gains its (k+1)-th bar
// (0 <= k < n/2), constant over all diagrams at level k:
//   mirror:    (p^2/2) (1-p)^(n-2) C(n-2k,2) / P[sparse street]
//   manhattan: p^2 (1-p)^(n-2) (n/2-k)^2    / P[sparse street]
double bar_increment_prob(Model model, const ModelParams& params, int k);

// Constants of the analytic tail bounds, derived from the sparse-regime
// constant c (p <= c/n).
struct BoundParams {
  double amplitude_mirror;     // cosh(pi)
  double amplitude_manhattan;  // sinh(pi)/pi
  double c2;                   // c^2/2 + c + 1
  double c3;                   // e^-c (1 + c + c^2/2)
  static BoundParams from_c(double c);
};

// Upper bound on P[V >= alpha p^-2] for the full model: 2 A e^{-alpha/(8e^c)}.
// Not clamped; values >= 1 are vacuous and reported as such by callers.
double full_tail_bound(Model model, double alpha, double c);

// Upper bound on P[W >= alpha p^-2] for the conditioned chain:
// A e^{-alpha/(4 c2)}.
double conditioned_tail_bound(Model model, double alpha, double c);

// Upper bound on P[V <= alpha p^-2], clamped: min(1, 2 alpha).
double early_hit_bound(double alpha);

// CDF of the dominating geometric benchmark: 1 - (1-p^2)^(alpha p^-2).
double geometric_domination_cdf(double alpha, double p);

}  // namespace streetsim
