#include "streetsim/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "streetsim/chain.hpp"

namespace streetsim {

namespace {

void require(bool cond, const char* msg) {
  if (!cond) throw std::invalid_argument(msg);
}

}  // namespace

IntervalEstimate wilson_interval(uint64_t successes, uint64_t trials, double z) {
  require(trials >= 1, "wilson_interval: trials must be >= 1");
  require(successes <= trials, "wilson_interval: successes exceed trials");
  require(z > 0.0, "wilson_interval: z must be positive");
  const double n = static_cast<double>(trials);
  const double phat = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = (phat + z2 / (2.0 * n)) / denom;
  const double half =
      (z / denom) * std::sqrt(phat * (1.0 - phat) / n + z2 / (4.0 * n * n));
  IntervalEstimate est;
  est.point = phat;
  est.lower = std::max(0.0, center - half);
  est.upper = std::min(1.0, center + half);
  est.trials = trials;
  return est;
}

namespace {

// Survival function of the asymptotic Kolmogorov law.
double kolmogorov_sf(double x) {
  if (x <= 0.0) return 1.0;
  double total = 0.0;
  for (int j = 1; j <= 200; ++j) {
    const double term = std::exp(-2.0 * j * j * x * x);
    total += (j % 2 == 1) ? term : -term;
    if (term < 1e-18) break;
  }
  return std::min(1.0, 2.0 * total);
}

}  // namespace

double kolmogorov_critical(double level) {
  require(level > 0.0 && level < 1.0, "kolmogorov_critical: level must lie in (0,1)");
  double lo = 1e-3, hi = 8.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (kolmogorov_sf(mid) > level) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

KsResult ks_geometric(std::span<const uint32_t> samples, double param, double level) {
  require(!samples.empty(), "ks_geometric: empty samples");
  require(param > 0.0 && param <= 1.0, "ks_geometric: param must lie in (0,1]");
  KsResult res;
  res.samples = samples.size();
  res.critical = kolmogorov_critical(level) / std::sqrt(static_cast<double>(samples.size()));

  if (param >= 1.0) {
    size_t off = 0;
    for (uint32_t s : samples) off += (s != 1);
    res.statistic = static_cast<double>(off) / static_cast<double>(samples.size());
    res.pass = off == 0;
    return res;
  }

  std::vector<uint32_t> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  require(sorted.front() >= 1, "ks_geometric: samples must be >= 1");

  const double log_q = std::log1p(-param);
  auto cdf = [&](uint32_t k) {  // P[G <= k], k >= 0
    return k == 0 ? 0.0 : -std::expm1(static_cast<double>(k) * log_q);
  };

  // Both CDFs jump only at integers; on each flat stretch of the empirical
  // CDF the supremum is attained at the stretch ends.
  const double m = static_cast<double>(sorted.size());
  double stat = 0.0;
  double emp_prev = 0.0;
  size_t idx = 0;
  while (idx < sorted.size()) {
    const uint32_t v = sorted[idx];
    size_t cnt = 0;
    while (idx < sorted.size() && sorted[idx] == v) {
      ++idx;
      ++cnt;
    }
    stat = std::max(stat, std::abs(emp_prev - cdf(v - 1)));
    const double emp_at_v = static_cast<double>(idx) / m;
    stat = std::max(stat, std::abs(emp_at_v - cdf(v)));
    emp_prev = emp_at_v;
  }
  res.statistic = stat;
  res.pass = stat <= res.critical;
  return res;
}

std::vector<BoundCheckPoint> tail_vs_bound(const std::vector<double>& xs,
                                           const std::vector<uint64_t>& successes,
                                           uint64_t trials,
                                           const std::vector<double>& bounds,
                                           double z) {
  require(xs.size() == successes.size() && xs.size() == bounds.size(),
          "tail_vs_bound: mismatched grid sizes");
  std::vector<BoundCheckPoint> out;
  out.reserve(xs.size());
  for (size_t i = 0; i < xs.size(); ++i) {
    BoundCheckPoint pt;
    pt.x = xs[i];
    pt.empirical = wilson_interval(successes[i], trials, z);
    pt.bound = bounds[i];
    pt.vacuous = bounds[i] >= 1.0;
    pt.violation = !pt.vacuous && pt.empirical.lower > pt.bound;
    out.push_back(pt);
  }
  return out;
}

CheckReport sparse_count_tail_check(uint64_t i, double p_sparse, double c,
                                    std::span<const uint32_t> tau_samples) {
  require(!tau_samples.empty(), "sparse_count_tail_check: empty samples");
  require(p_sparse >= 0.0 && p_sparse <= 1.0,
          "sparse_count_tail_check: p_sparse must lie in [0,1]");
  const BoundParams bp = BoundParams::from_c(c);
  const double cutoff = bp.c3 * static_cast<double>(i) / 2.0;
  const double bound =
      std::exp(-2.0 * static_cast<double>(i) * (bp.c3 / 4.0) * (bp.c3 / 4.0));

  uint64_t under = 0;
  for (uint32_t tau : tau_samples) under += (static_cast<double>(tau) <= cutoff);
  const IntervalEstimate est = wilson_interval(under, tau_samples.size(), 3.0);

  CheckReport rep;
  rep.name = "sparse-count-tail";
  rep.statistic = est.point;
  rep.threshold = bound;
  const bool precondition = p_sparse >= 3.0 * bp.c3 / 4.0;
  if (!precondition) {
    rep.pass = true;
    rep.detail = "vacuous: sparse-street probability " + std::to_string(p_sparse) +
                 " below 3*c3/4 = " + std::to_string(3.0 * bp.c3 / 4.0);
    return rep;
  }
  rep.pass = est.lower <= bound || bound >= 1.0;
  rep.detail = "P[tau <= " + std::to_string(cutoff) + "] = " + std::to_string(est.point) +
               " (lcb " + std::to_string(est.lower) + ") vs bound " + std::to_string(bound);
  return rep;
}

}  // namespace streetsim
