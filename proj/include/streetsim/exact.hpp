#pragma once

#include <map>
#include <vector>

#include "streetsim/lattice.hpp"

namespace streetsim {

// Probability distribution over diagrams of one width, with deterministic
// (sorted) iteration order so downstream output is bit-stable.
class DistributionVector {
 public:
  explicit DistributionVector(int n);
  static DistributionVector point_mass(const Diagram& d);

  int width() const { return n_; }
  void add(const Diagram& d, double prob);
  const std::map<Diagram, double>& entries() const { return entries_; }
  size_t support_size() const { return entries_.size(); }
  double total_mass() const;

 private:
  int n_;
  std::map<Diagram, double> entries_;
};

struct ExactBudget {
  EnumBudget enumeration;
  int max_evolve_n = 6;  // support can reach (2n-1)!! during evolution
};

// Exact law of trace_street under the full model, by exhaustive enumeration.
DistributionVector street_distribution(Model model, const ModelParams& params,
                                       int street_index,
                                       const ExactBudget& budget = {});

// Closed-form law of a street conditioned on at most two mirrors.
DistributionVector conditioned_distribution(Model model, const ModelParams& params);

// Push-forward of the product measure under compose (loops discarded).
DistributionVector evolve(const DistributionVector& dist,
                          const DistributionVector& step);

// Probability mass on diagrams with at least k bars.
double mass_bars_ge(const DistributionVector& dist, int k);

// Exact CDF of the absorption time: entry [i-1] = P[product of the first i
// streets has >= n/2 bars].  Valid because the >= n/2-bar class is absorbing.
// Manhattan full model alternates the two street directions; street i uses
// street index i + parity_offset.
std::vector<double> hitting_cdf(Model model, const ModelParams& params,
                                bool conditioned, int i_max,
                                int parity_offset = 0,
                                const ExactBudget& budget = {});

// Same CDF for the conditioned chain, via an independent route: convolution
// of the n/2 geometric per-level waiting-time laws.
std::vector<double> conditioned_hit_cdf_by_convolution(Model model,
                                                       const ModelParams& params,
                                                       int i_max);

// Per-level comparison of the full and conditioned chains.
//   full_mass[k][i-1]  = P[full product after i streets has >= k bars]
//   mixed_mass[k][i-1] = sum_t Binom(i, sparse_street_prob)(t) *
//                        P[conditioned product after t streets has >= k bars]
// The domination property asserts full >= mixed pointwise.
struct BarsComparisonTable {
  std::vector<std::vector<double>> full_mass;   // [k][i-1], k = 0..n/2
  std::vector<std::vector<double>> mixed_mass;  // same shape
};
BarsComparisonTable full_vs_conditioned_bars(Model model, const ModelParams& params,
                                             int i_max,
                                             const ExactBudget& budget = {});

// Exact per-street bar-increment law at one diagram: over the conditioned
// street law, the probability that composing gains exactly one bar, plus the
// extreme bar-count changes observed across the support.
struct BarIncrementExact {
  double gain_one_prob = 0.0;
  int min_delta = 0;
  int max_delta = 0;
};
BarIncrementExact bar_increment_prob_exact(Model model, const ModelParams& params,
                                           int k, const Diagram& b);

}  // namespace streetsim
