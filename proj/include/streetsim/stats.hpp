#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace streetsim {

struct IntervalEstimate {
  double point = 0;
  double lower = 0;
  double upper = 0;
  uint64_t trials = 0;
};

// Wilson score interval for a binomial proportion at z standard-normal units.
IntervalEstimate wilson_interval(uint64_t successes, uint64_t trials, double z);

// Critical value of the asymptotic Kolmogorov statistic: the x solving
// 2 sum_{j>=1} (-1)^(j-1) exp(-2 j^2 x^2) = level.
double kolmogorov_critical(double level);

struct KsResult {
  double statistic = 0;  // sup_k |F_emp(k) - F(k)|
  double critical = 0;   // kolmogorov_critical(level) / sqrt(samples)
  bool pass = false;
  size_t samples = 0;
};

// One-sample KS test of integer samples against Geometric(param) on {1,2,...}
// (pmf param (1-param)^(k-1)).  The continuous asymptotic critical value is
// conservative for discrete laws, so the real level is below the nominal one.
// param = 1 is degenerate: pass iff every sample equals 1.
KsResult ks_geometric(std::span<const uint32_t> samples, double param,
                      double level = 0.01);

struct BoundCheckPoint {
  double x = 0;                  // grid position
  IntervalEstimate empirical{};  // estimate of the bounded probability
  double bound = 0;              // analytic upper bound at x
  bool vacuous = false;          // bound >= 1 carries no information
  bool violation = false;
};

// One-sided comparison against an analytic upper bound: a grid point is
// violated only when the empirical lower confidence bound exceeds the bound.
// Vacuous points never count.
std::vector<BoundCheckPoint> tail_vs_bound(const std::vector<double>& xs,
                                           const std::vector<uint64_t>& successes,
                                           uint64_t trials,
                                           const std::vector<double>& bounds,
                                           double z);

struct CheckReport {
  std::string name;
  double statistic = 0;
  double threshold = 0;
  bool pass = false;
  std::string detail;
};

// Concentration check for the sparse-street counter: tau(i) ~ Binom(i, q)
// with q = p_sparse, and for q >= 3 c3/4 the undershoot probability
// P[tau(i) <= c3 i/2] is bounded by exp(-2 i (c3/4)^2).  Compares the
// empirical rate (lower confidence bound at 3 sigma) against the bound; when
// the precondition on q fails the check is vacuous and reported as such.
CheckReport sparse_count_tail_check(uint64_t i, double p_sparse, double c,
                                    std::span<const uint32_t> tau_samples);

}  // namespace streetsim
