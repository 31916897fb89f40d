#include "streetsim/exact.hpp"

#include <cmath>
#include <stdexcept>

#include "streetsim/chain.hpp"

namespace streetsim {

namespace {

void require(bool cond, const char* msg) {
  if (!cond) throw std::invalid_argument(msg);
}

}  // namespace

DistributionVector::DistributionVector(int n) : n_(n) {
  require(n >= 2 && n % 2 == 0, "DistributionVector: n must be even >= 2");
}

DistributionVector DistributionVector::point_mass(const Diagram& d) {
  DistributionVector out(d.width());
  out.entries_.emplace(d, 1.0);
  return out;
}

void DistributionVector::add(const Diagram& d, double prob) {
  require(d.width() == n_, "DistributionVector::add: width mismatch");
  if (prob == 0.0) return;  // keep the support = {positive mass} invariant
  entries_[d] += prob;
}

double DistributionVector::total_mass() const {
  double total = 0.0;
  for (const auto& [d, pr] : entries_) total += pr;
  return total;
}

DistributionVector street_distribution(Model model, const ModelParams& params,
                                       int street_index, const ExactBudget& budget) {
  DistributionVector out(params.n);
  for (const auto& [cfg, prob] :
       enumerate_streets(model, params, street_index, std::nullopt, budget.enumeration)) {
    out.add(trace_street(cfg), prob);
  }
  return out;
}

DistributionVector conditioned_distribution(Model model, const ModelParams& params) {
  params.validate();
  const int n = params.n;
  const double p = params.p;
  const double pairs = 0.5 * n * (n - 1);
  const double id_weight = (1.0 - p) * (1.0 - p) + n * p * (1.0 - p);
  const double total = id_weight + pairs * p * p;

  DistributionVector out(n);
  out.add(Diagram::identity(n), id_weight / total);
  if (p > 0.0) {
    for (int i = 1; i <= n; ++i) {
      for (int j = i + 1; j <= n; ++j) {
        if (model == Model::mirror) {
          const double w = 0.5 * p * p / total;
          out.add(Diagram::transposition(n, i, j), w);
          out.add(Diagram::bar_pair(n, i, j), w);
        } else if ((j - i) % 2 != 0) {
          out.add(Diagram::bar_pair(n, i, j), p * p / total);
        } else {
          out.add(Diagram::transposition(n, i, j), p * p / total);
        }
      }
    }
  }
  return out;
}

DistributionVector evolve(const DistributionVector& dist,
                          const DistributionVector& step) {
  require(dist.width() == step.width(), "evolve: width mismatch");
  DistributionVector out(dist.width());
  Diagram scratch = Diagram::identity(dist.width());
  for (const auto& [d, pd] : dist.entries()) {
    for (const auto& [z, pz] : step.entries()) {
      compose_into(d, z, scratch);
      out.add(scratch, pd * pz);
    }
  }
  return out;
}

double mass_bars_ge(const DistributionVector& dist, int k) {
  double total = 0.0;
  for (const auto& [d, pr] : dist.entries()) {
    if (d.bar_count() >= k) total += pr;
  }
  return total;
}

namespace {

std::vector<DistributionVector> step_distributions(Model model,
                                                   const ModelParams& params,
                                                   bool conditioned,
                                                   int parity_offset,
                                                   const ExactBudget& budget) {
  if (conditioned) return {conditioned_distribution(model, params)};
  if (model == Model::mirror)
    return {street_distribution(model, params, 1, budget)};
  return {street_distribution(model, params, 1 + parity_offset, budget),
          street_distribution(model, params, 2 + parity_offset, budget)};
}

void check_evolve_budget(const ModelParams& params, const ExactBudget& budget) {
  if (params.n > budget.max_evolve_n)
    throw BudgetError("hitting_cdf: evolve width budget exceeded");
}

double binom_pmf(int i, double q, int t) {
  if (q >= 1.0) return t == i ? 1.0 : 0.0;
  if (q <= 0.0) return t == 0 ? 1.0 : 0.0;
  return std::exp(std::lgamma(i + 1.0) - std::lgamma(t + 1.0) -
                  std::lgamma(i - t + 1.0) + t * std::log(q) +
                  (i - t) * std::log1p(-q));
}

}  // namespace

std::vector<double> hitting_cdf(Model model, const ModelParams& params,
                                bool conditioned, int i_max, int parity_offset,
                                const ExactBudget& budget) {
  params.validate();
  require(i_max >= 1, "hitting_cdf: i_max must be >= 1");
  check_evolve_budget(params, budget);
  const int target = params.n / 2;
  const auto steps = step_distributions(model, params, conditioned, parity_offset, budget);

  // Mass that has reached >= n/2 bars is lumped into one absorbed scalar:
  // it never leaves (bar count is monotone under composition), and only its
  // total is ever queried.
  DistributionVector live = DistributionVector::point_mass(Diagram::identity(params.n));
  double absorbed = 0.0;
  std::vector<double> cdf;
  cdf.reserve(static_cast<size_t>(i_max));
  for (int i = 1; i <= i_max; ++i) {
    const DistributionVector next =
        evolve(live, steps[static_cast<size_t>((i - 1) % static_cast<int>(steps.size()))]);
    DistributionVector trimmed(params.n);
    for (const auto& [d, pr] : next.entries()) {
      if (d.bar_count() >= target) {
        absorbed += pr;
      } else {
        trimmed.add(d, pr);
      }
    }
    live = std::move(trimmed);
    cdf.push_back(absorbed);
  }
  return cdf;
}

std::vector<double> conditioned_hit_cdf_by_convolution(Model model,
                                                       const ModelParams& params,
                                                       int i_max) {
  params.validate();
  require(i_max >= 1, "conditioned_hit_cdf_by_convolution: i_max must be >= 1");
  const int levels = params.n / 2;

  // pmf[s] = P[sum of per-level geometric waits = s], s <= i_max; waits are
  // >= 1 each, so entries below `levels` stay zero.
  std::vector<double> pmf(static_cast<size_t>(i_max) + 1, 0.0);
  pmf[0] = 1.0;
  for (int k = 0; k < levels; ++k) {
    const double g = bar_increment_prob(model, params, k);
    std::vector<double> next(pmf.size(), 0.0);
    if (g > 0.0) {
      for (size_t s = 0; s + 1 < pmf.size(); ++s) {
        if (pmf[s] == 0.0) continue;
        double geo = g;  // P[wait = 1]
        for (size_t w = 1; s + w < pmf.size(); ++w) {
          next[s + w] += pmf[s] * geo;
          geo *= 1.0 - g;
        }
      }
    }
    pmf = std::move(next);
  }
  std::vector<double> cdf(static_cast<size_t>(i_max), 0.0);
  double acc = 0.0;
  for (int i = 1; i <= i_max; ++i) {
    acc += pmf[static_cast<size_t>(i)];
    cdf[static_cast<size_t>(i - 1)] = acc;
  }
  return cdf;
}

BarsComparisonTable full_vs_conditioned_bars(Model model, const ModelParams& params,
                                             int i_max, const ExactBudget& budget) {
  params.validate();
  require(i_max >= 1, "full_vs_conditioned_bars: i_max must be >= 1");
  check_evolve_budget(params, budget);
  const int levels = params.n / 2;
  BarsComparisonTable table;
  table.full_mass.assign(static_cast<size_t>(levels) + 1,
                         std::vector<double>(static_cast<size_t>(i_max), 0.0));
  table.mixed_mass = table.full_mass;

  const auto steps = step_distributions(model, params, false, 0, budget);
  DistributionVector full = DistributionVector::point_mass(Diagram::identity(params.n));
  for (int i = 1; i <= i_max; ++i) {
    full = evolve(full, steps[static_cast<size_t>((i - 1) % static_cast<int>(steps.size()))]);
    for (int k = 0; k <= levels; ++k)
      table.full_mass[static_cast<size_t>(k)][static_cast<size_t>(i - 1)] =
          mass_bars_ge(full, k);
  }

  // Conditioned powers: level masses after t conditioned streets, t = 0..i_max.
  const DistributionVector x = conditioned_distribution(model, params);
  std::vector<std::vector<double>> cond_mass(
      static_cast<size_t>(i_max) + 1, std::vector<double>(static_cast<size_t>(levels) + 1));
  DistributionVector power = DistributionVector::point_mass(Diagram::identity(params.n));
  for (int t = 0; t <= i_max; ++t) {
    for (int k = 0; k <= levels; ++k)
      cond_mass[static_cast<size_t>(t)][static_cast<size_t>(k)] = mass_bars_ge(power, k);
    if (t < i_max) power = evolve(power, x);
  }

  const double q = sparse_street_prob(params);
  for (int i = 1; i <= i_max; ++i) {
    for (int t = 0; t <= i; ++t) {
      const double w = binom_pmf(i, q, t);
      for (int k = 0; k <= levels; ++k)
        table.mixed_mass[static_cast<size_t>(k)][static_cast<size_t>(i - 1)] +=
            w * cond_mass[static_cast<size_t>(t)][static_cast<size_t>(k)];
    }
  }
  return table;
}

BarIncrementExact bar_increment_prob_exact(Model model, const ModelParams& params,
                                           int k, const Diagram& b) {
  params.validate();
  require(b.width() == params.n, "bar_increment_prob_exact: width mismatch");
  require(b.bar_count() == k, "bar_increment_prob_exact: bar_count(b) != k");
  if (model == Model::manhattan)
    require(b.is_walled(), "bar_increment_prob_exact: b must be walled");

  BarIncrementExact out;
  bool first = true;
  Diagram scratch = Diagram::identity(params.n);
  const DistributionVector law = conditioned_distribution(model, params);
  for (const auto& [x, prob] : law.entries()) {
    compose_into(b, x, scratch);
    const int delta = scratch.bar_count() - k;
    if (delta == 1) out.gain_one_prob += prob;
    if (first || delta < out.min_delta) out.min_delta = delta;
    if (first || delta > out.max_delta) out.max_delta = delta;
    first = false;
  }
  return out;
}

}  // namespace streetsim
