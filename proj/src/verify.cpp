#include "streetsim/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <numbers>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <vector>

#include "json.hpp"
#include "streetsim/chain.hpp"
#include "streetsim/exact.hpp"
#include "streetsim/manifest.hpp"
#include "streetsim/stats.hpp"
#include "streetsim/version.hpp"

namespace streetsim {

namespace {

std::string fmt(double v, int precision = 6) {
  std::ostringstream out;
  out.precision(precision);
  out << v;
  return out.str();
}

ModelParams make_params(int n, double p, double c = 1.0) {
  ModelParams params;
  params.n = n;
  params.p = p;
  params.c = c;
  return params;
}

// ---- random diagram generators (self-contained; fixed seeds) --------------

Diagram random_diagram(int n, std::mt19937_64& gen) {
  std::vector<uint32_t> slots(static_cast<size_t>(2 * n));
  for (size_t i = 0; i < slots.size(); ++i) slots[i] = static_cast<uint32_t>(i);
  std::shuffle(slots.begin(), slots.end(), gen);
  std::vector<uint32_t> partner(slots.size());
  for (size_t i = 0; i < slots.size(); i += 2) {
    partner[slots[i]] = slots[i + 1];
    partner[slots[i + 1]] = slots[i];
  }
  return Diagram(partner);
}

// Uniform-ish diagram with exactly k north (and south) bars; when `walled`,
// bars take one odd and one even column and through edges preserve column
// parity.
Diagram random_diagram_with_bars(int n, int k, bool walled, std::mt19937_64& gen) {
  std::vector<uint32_t> partner(static_cast<size_t>(2 * n));
  auto pair_up = [&](uint32_t a, uint32_t b) {
    partner[a] = b;
    partner[b] = a;
  };
  if (!walled) {
    std::vector<uint32_t> north(static_cast<size_t>(n)), south;
    for (int i = 0; i < n; ++i) north[static_cast<size_t>(i)] = static_cast<uint32_t>(i);
    south = north;
    std::shuffle(north.begin(), north.end(), gen);
    std::shuffle(south.begin(), south.end(), gen);
    for (int b = 0; b < k; ++b) {
      pair_up(north[static_cast<size_t>(2 * b)], north[static_cast<size_t>(2 * b + 1)]);
      pair_up(static_cast<uint32_t>(n) + south[static_cast<size_t>(2 * b)],
              static_cast<uint32_t>(n) + south[static_cast<size_t>(2 * b + 1)]);
    }
    for (int i = 2 * k; i < n; ++i) {
      pair_up(north[static_cast<size_t>(i)],
              static_cast<uint32_t>(n) + south[static_cast<size_t>(i)]);
    }
    return Diagram(partner);
  }
  // Columns of odd/even parity, tracked separately per side.
  std::vector<uint32_t> ne, no, se, so;  // north-even/odd, south-even/odd slots
  for (int i = 0; i < n; ++i) {
    (i % 2 == 0 ? ne : no).push_back(static_cast<uint32_t>(i));
    (i % 2 == 0 ? se : so).push_back(static_cast<uint32_t>(n + i));
  }
  for (auto* v : {&ne, &no, &se, &so}) std::shuffle(v->begin(), v->end(), gen);
  for (int b = 0; b < k; ++b) {
    pair_up(ne[static_cast<size_t>(b)], no[static_cast<size_t>(b)]);
    pair_up(se[static_cast<size_t>(b)], so[static_cast<size_t>(b)]);
  }
  for (size_t i = static_cast<size_t>(k); i < ne.size(); ++i) {
    pair_up(ne[i], se[i]);
    pair_up(no[i], so[i]);
  }
  return Diagram(partner);
}

// All fixed-point-free involutions of 2n slots.
void enumerate_pairings(std::vector<uint32_t>& partner, uint32_t filled,
                        std::vector<Diagram>& out) {
  const uint32_t size = static_cast<uint32_t>(partner.size());
  uint32_t first = filled;
  while (first < size && partner[first] != UINT32_MAX) ++first;
  if (first == size) {
    out.emplace_back(partner);
    return;
  }
  for (uint32_t second = first + 1; second < size; ++second) {
    if (partner[second] != UINT32_MAX) continue;
    partner[first] = second;
    partner[second] = first;
    enumerate_pairings(partner, first + 1, out);
    partner[first] = UINT32_MAX;
    partner[second] = UINT32_MAX;
  }
}

std::vector<Diagram> all_diagrams(int n) {
  std::vector<uint32_t> partner(static_cast<size_t>(2 * n), UINT32_MAX);
  std::vector<Diagram> out;
  enumerate_pairings(partner, 0, out);
  return out;
}

// ---- shared Monte Carlo context for the tail-bound criteria ---------------

struct TailRun {
  RunSpec spec;
  BatchResult batch;
};

struct TailContext {
  TailRun mirror;
  TailRun manhattan;
};

const TailContext& tail_context(int threads) {
  static std::optional<TailContext> ctx;
  if (!ctx.has_value()) {
    TailContext built;
    for (Model model : {Model::mirror, Model::manhattan}) {
      RunSpec spec;
      spec.model = model;
      spec.conditioned = false;
      spec.params = make_params(40, 1.0 / 40.0, 1.0);
      spec.trials = 10000;
      spec.master_seed = 20240901;
      spec.street_cap = 1000000;  // far above the alpha grid's largest x
      TailRun run{spec, run_batch(spec, threads)};
      (model == Model::mirror ? built.mirror : built.manhattan) = std::move(run);
    }
    ctx = std::move(built);
  }
  return *ctx;
}

const TailRun& tail_run(Model model, int threads) {
  const TailContext& ctx = tail_context(threads);
  return model == Model::mirror ? ctx.mirror : ctx.manhattan;
}

// ---- criteria --------------------------------------------------------------

struct Outcome {
  bool pass = false;
  std::string detail;
};

Outcome check_algebra_properties(int) {
  size_t products = 0;
  for (int n : {2, 4}) {
    const auto all = all_diagrams(n);
    const size_t want = n == 2 ? 3 : 105;
    if (all.size() != want) {
      return {false, "expected " + std::to_string(want) + " diagrams at width " +
                         std::to_string(n) + ", enumerated " +
                         std::to_string(all.size())};
    }
    for (const Diagram& d : all) {
      for (uint32_t v = 0; v < static_cast<uint32_t>(2 * n); ++v) {
        if (d.partner(d.partner(v)) != v || d.partner(v) == v) {
          return {false, "involution violation in " + d.to_string()};
        }
      }
      if (d.bar_count() < 0 || d.bar_count() > n / 2) {
        return {false, "bar count out of range in " + d.to_string()};
      }
    }
    for (const Diagram& a : all) {
      for (const Diagram& b : all) {
        const ComposeResult r = compose(a, b);
        ++products;
        if (r.diagram.bar_count() < std::max(a.bar_count(), b.bar_count())) {
          return {false, "bar monotonicity violated by " + a.to_string() + " * " +
                             b.to_string()};
        }
        if (r.loops < 0 || r.loops > n / 2) {
          return {false, "loop count out of range for " + a.to_string() + " * " +
                             b.to_string()};
        }
      }
    }
  }
  std::mt19937_64 gen(101);
  for (int rep = 0; rep < 1000; ++rep) {
    const Diagram a = random_diagram(8, gen);
    const Diagram b = random_diagram(8, gen);
    const Diagram c = random_diagram(8, gen);
    const ComposeResult ab = compose(a, b);
    const ComposeResult bc = compose(b, c);
    const ComposeResult left = compose(ab.diagram, c);
    const ComposeResult right = compose(a, bc.diagram);
    if (!(left.diagram == right.diagram) ||
        ab.loops + left.loops != bc.loops + right.loops) {
      return {false, "associativity violated at triple " + std::to_string(rep)};
    }
  }
  return {true, "3 + 105 diagrams valid; " + std::to_string(products) +
                    " products bar-monotone; 1000 random triples associative"};
}

Outcome check_compose_golden(int) {
  const Diagram a = Diagram::bar_pair(6, 3, 4);
  const Diagram b =
      Diagram::from_string("[1+>1-, 2+>4-, 3+^4+, 2-v3-, 5+>5-, 6+>6-]");
  const ComposeResult r = compose(a, b);
  if (!(r.diagram == b) || r.loops != 1) {
    return {false, "six-column golden product mismatch: got " +
                       r.diagram.to_string() + " with " + std::to_string(r.loops) +
                       " loops"};
  }
  const ComposeResult r2 =
      compose(Diagram::transposition(4, 1, 2), Diagram::bar_pair(4, 1, 2));
  if (!(r2.diagram == Diagram::bar_pair(4, 1, 2)) || r2.loops != 0) {
    return {false, "crossing-then-bar golden mismatch"};
  }
  const ComposeResult r3 =
      compose(Diagram::bar_pair(4, 1, 2), Diagram::bar_pair(4, 1, 2));
  if (!(r3.diagram == Diagram::bar_pair(4, 1, 2)) || r3.loops != 1) {
    return {false, "bar self-product golden mismatch"};
  }
  return {true, "golden products and loop counts reproduced exactly"};
}

Outcome check_conditioned_law_enumeration(int) {
  double worst = 0.0;
  for (Model model : {Model::mirror, Model::manhattan}) {
    for (int n : {2, 4, 6, 8}) {
      for (double p : {0.05, 0.3}) {
        const ModelParams params = make_params(n, p);
        DistributionVector traced(n);
        for (const auto& [cfg, prob] : enumerate_streets(model, params, 1, 2)) {
          traced.add(trace_street(cfg), prob);
        }
        const double norm = sparse_street_prob(params);
        const auto want = conditioned_distribution(model, params);
        if (traced.support_size() != want.support_size()) {
          return {false, std::string(model_name(model)) + " n=" +
                             std::to_string(n) + ": support " +
                             std::to_string(traced.support_size()) + " != " +
                             std::to_string(want.support_size())};
        }
        for (const auto& [d, prob] : want.entries()) {
          const auto it = traced.entries().find(d);
          if (it == traced.entries().end()) {
            return {false, "missing diagram " + d.to_string()};
          }
          worst = std::max(worst, std::abs(it->second / norm - prob));
        }
      }
    }
  }
  if (worst >= 1e-12) {
    return {false, "per-coefficient deviation " + fmt(worst, 3) + " >= 1e-12"};
  }
  return {true, "closed form matches enumeration on 16 (model, n, p) combos; "
                "max coefficient deviation " + fmt(worst, 3)};
}

Outcome check_bar_increment_oracle(int) {
  std::mt19937_64 gen(4242);
  double worst = 0.0;
  int checked = 0;
  for (Model model : {Model::mirror, Model::manhattan}) {
    for (int n : {4, 6, 8}) {
      for (double p : {0.1, 0.3}) {
        const ModelParams params = make_params(n, p);
        for (int k = 0; k < n / 2; ++k) {
          const double want = bar_increment_prob(model, params, k);
          for (int rep = 0; rep < 20; ++rep) {
            const Diagram b =
                random_diagram_with_bars(n, k, model == Model::manhattan, gen);
            const BarIncrementExact got = bar_increment_prob_exact(model, params, k, b);
            worst = std::max(worst, std::abs(got.gain_one_prob - want));
            ++checked;
            if (got.min_delta < 0 || got.max_delta > 1) {
              return {false, "bar jump outside {0,1} at " + b.to_string()};
            }
          }
        }
      }
    }
  }
  if (worst >= 1e-12) {
    return {false, "gain probability deviates by " + fmt(worst, 3)};
  }
  return {true, std::to_string(checked) + " random diagrams match the closed "
                "form; max deviation " + fmt(worst, 3) +
                "; single-street bar jumps confined to {0,1}"};
}

Outcome check_waiting_time_geometric(int threads) {
  std::string detail;
  for (Model model : {Model::mirror, Model::manhattan}) {
    RunSpec spec;
    spec.model = model;
    spec.conditioned = true;
    spec.params = make_params(8, 0.05);
    spec.trials = 10000;
    spec.master_seed = 777001;
    const BatchResult batch = run_batch(spec, threads);
    const int levels = spec.params.n / 2;
    const double level = 0.01 / levels;  // union bound across the levels
    for (int k = 0; k < levels; ++k) {
      std::vector<uint32_t> waits;
      waits.reserve(batch.records.size());
      for (const TrialRecord& r : batch.records) {
        if (!r.censored) waits.push_back(r.waits[static_cast<size_t>(k)]);
      }
      const double g = bar_increment_prob(model, spec.params, k);
      const KsResult ks = ks_geometric(waits, g, level);
      if (!ks.pass) {
        return {false, std::string(model_name(model)) + " level " +
                           std::to_string(k) + ": D=" + fmt(ks.statistic) +
                           " > crit=" + fmt(ks.critical) + " (g=" + fmt(g) + ")"};
      }
      if (!detail.empty()) detail += ", ";
      detail += (model == Model::mirror ? "mir k" : "man k") + std::to_string(k) +
                ": D/crit=" + fmt(ks.statistic / ks.critical, 2);
    }
  }
  return {true, "all per-level waits geometric at joint level 0.01 (" + detail + ")"};
}

Outcome check_exact_vs_monte_carlo(int threads) {
  std::string detail;
  const int i_max = 200;
  for (Model model : {Model::mirror, Model::manhattan}) {
    const ModelParams params = make_params(4, 0.1);
    const std::vector<double> exact = hitting_cdf(model, params, false, i_max, 0);

    RunSpec spec;
    spec.model = model;
    spec.conditioned = false;
    spec.params = params;
    spec.trials = 100000;
    spec.master_seed = 424242;
    const BatchResult batch = run_batch(spec, threads);

    std::vector<uint64_t> hits(static_cast<size_t>(i_max) + 1, 0);
    for (const TrialRecord& r : batch.records) {
      if (!r.censored && r.hitting_time <= static_cast<uint32_t>(i_max)) {
        hits[r.hitting_time] += 1;
      }
    }
    int covered = 0;
    uint64_t cumulative = 0;
    for (int i = 1; i <= i_max; ++i) {
      cumulative += hits[static_cast<size_t>(i)];
      const IntervalEstimate est = wilson_interval(cumulative, spec.trials, 3.0);
      const double target = exact[static_cast<size_t>(i - 1)];
      covered += (target >= est.lower && target <= est.upper);
    }
    if (!detail.empty()) detail += "; ";
    detail += std::string(model_name(model)) + " coverage " +
              std::to_string(covered) + "/200";
    if (model == Model::manhattan) {
      const std::vector<double> flipped = hitting_cdf(model, params, false, i_max, 1);
      double delta = 0.0;
      for (int i = 0; i < i_max; ++i) {
        delta = std::max(delta, std::abs(exact[static_cast<size_t>(i)] -
                                         flipped[static_cast<size_t>(i)]));
      }
      detail += " (direction-offset exact delta " + fmt(delta, 3) + ")";
    }
    if (covered < 198) {  // >= 99% of 200 grid points
      return {false, detail + " below the 99% requirement"};
    }
  }
  return {true, detail};
}

Outcome check_exact_route_agreement(int) {
  double worst = 0.0;
  for (Model model : {Model::mirror, Model::manhattan}) {
    for (double p : {0.05, 0.1}) {
      const ModelParams params = make_params(4, p);
      const auto by_matrix = hitting_cdf(model, params, true, 200);
      const auto by_convolution = conditioned_hit_cdf_by_convolution(model, params, 200);
      for (size_t i = 0; i < by_matrix.size(); ++i) {
        worst = std::max(worst, std::abs(by_matrix[i] - by_convolution[i]));
      }
    }
  }
  if (worst >= 1e-10) {
    return {false, "matrix evolution and waiting-time convolution differ by " +
                       fmt(worst, 3)};
  }
  return {true, "two independent exact routes agree to " + fmt(worst, 3) +
                " over 4 (model, p) combos, i <= 200"};
}

Outcome check_full_vs_conditioned_inequality(int) {
  double min_margin = 1.0;
  for (Model model : {Model::mirror, Model::manhattan}) {
    for (double p : {0.05, 0.1, 0.3}) {
      const auto table = full_vs_conditioned_bars(model, make_params(4, p), 50);
      for (int k = 1; k <= 2; ++k) {
        for (int i = 0; i < 50; ++i) {
          const double margin = table.full_mass[static_cast<size_t>(k)][static_cast<size_t>(i)] -
                                table.mixed_mass[static_cast<size_t>(k)][static_cast<size_t>(i)];
          min_margin = std::min(min_margin, margin);
          if (margin < -1e-12) {
            return {false, std::string(model_name(model)) + " p=" + fmt(p) +
                               " k=" + std::to_string(k) + " i=" +
                               std::to_string(i + 1) + ": margin " + fmt(margin, 3)};
          }
        }
      }
    }
  }
  return {true, "full-model bar mass dominates the sparse mixture at every "
                "grid point; smallest margin " + fmt(min_margin, 3)};
}

Outcome check_upper_tail_bound(int threads) {
  std::string detail;
  for (Model model : {Model::mirror, Model::manhattan}) {
    const TailRun& run = tail_run(model, threads);
    const double p = run.spec.params.p;
    const double c = run.spec.params.c;
    const double amplitude = model == Model::mirror
                                 ? BoundParams::from_c(c).amplitude_mirror
                                 : BoundParams::from_c(c).amplitude_manhattan;
    // Just past the vacuity threshold (bound(alpha0) = e^-0.01 < 1), so every
    // grid multiple 1,2,4,8 is informative and 8*alpha0*p^-2 stays below the cap.
    const double alpha0 = 8.0 * std::exp(c) * (std::log(2.0 * amplitude) + 0.01);
    std::vector<double> xs, bounds;
    std::vector<uint64_t> successes;
    for (double mult : {1.0, 2.0, 4.0, 8.0}) {
      const double alpha = mult * alpha0;
      const double x = std::ceil(alpha / (p * p));
      xs.push_back(x);
      successes.push_back(run.batch.tail_successes(static_cast<uint32_t>(x)));
      bounds.push_back(full_tail_bound(model, alpha, c));
    }
    const auto points = tail_vs_bound(xs, successes, run.spec.trials, bounds, 3.0);
    int informative = 0;
    for (size_t j = 0; j < points.size(); ++j) {
      if (points[j].vacuous) continue;
      ++informative;
      if (points[j].violation) {
        return {false, std::string(model_name(model)) + " x=" + fmt(points[j].x, 9) +
                           ": empirical lcb " + fmt(points[j].empirical.lower, 3) +
                           " exceeds bound " + fmt(points[j].bound, 3)};
      }
    }
    if (!detail.empty()) detail += "; ";
    detail += std::string(model_name(model)) + " alpha0=" + fmt(alpha0, 4) + ", " +
              std::to_string(informative) + "/4 informative points clear";
  }
  return {true, detail + " (3-sigma lower confidence bounds below every "
                "non-vacuous bound)"};
}

Outcome check_lower_tail_bound(int threads) {
  std::string detail;
  for (Model model : {Model::mirror, Model::manhattan}) {
    const TailRun& run = tail_run(model, threads);
    const double p = run.spec.params.p;

    // Early-absorption bound P[V <= alpha p^-2] <= 2 alpha.
    for (double alpha : {0.05, 0.1, 0.2}) {
      const double x = std::ceil(alpha / (p * p));
      const uint64_t hits = run.batch.cdf_successes(static_cast<uint32_t>(x));
      const IntervalEstimate est = wilson_interval(hits, run.spec.trials, 3.0);
      if (est.lower > early_hit_bound(alpha)) {
        return {false, std::string(model_name(model)) + " alpha=" + fmt(alpha) +
                           ": empirical " + fmt(est.point, 3) + " (lcb " +
                           fmt(est.lower, 3) + ") exceeds " +
                           fmt(early_hit_bound(alpha), 3)};
      }
    }

    // Geometric benchmark dominates the hitting CDF pointwise.
    double worst_gap = -1.0;
    double worst_alpha = 0.0;
    for (int j = 0; j <= 8; ++j) {
      const double alpha = 0.05 * static_cast<double>(1 << j);
      const double x = std::ceil(alpha / (p * p));
      const uint64_t hits = run.batch.cdf_successes(static_cast<uint32_t>(x));
      const IntervalEstimate est = wilson_interval(hits, run.spec.trials, 3.0);
      const double benchmark = geometric_domination_cdf(alpha, p);
      if (est.lower > benchmark) {
        return {false, std::string(model_name(model)) + " alpha=" + fmt(alpha) +
                           ": empirical CDF lcb " + fmt(est.lower, 3) +
                           " exceeds geometric benchmark " + fmt(benchmark, 3)};
      }
      if (benchmark - est.point > worst_gap) {
        worst_gap = benchmark - est.point;
        worst_alpha = alpha;
      }
    }
    if (!detail.empty()) detail += "; ";
    detail += std::string(model_name(model)) + " early-hit and geometric "
              "benchmarks clear (max benchmark slack " + fmt(worst_gap, 3) +
              " at alpha=" + fmt(worst_alpha, 3) + ")";
  }
  return {true, detail};
}

Outcome check_determinism(int) {
  struct Scenario {
    Model model;
    bool conditioned;
    int n;
    double p;
  };
  size_t bytes = 0;
  for (const Scenario& sc : {Scenario{Model::mirror, false, 4, 0.3},
                             Scenario{Model::manhattan, true, 6, 0.2}}) {
    RunSpec spec;
    spec.model = sc.model;
    spec.conditioned = sc.conditioned;
    spec.params = make_params(sc.n, sc.p);
    spec.trials = 2000;
    spec.master_seed = 90210;
    spec.record_loops = true;
    const std::string hash = RunManifest::from_spec("simulate", spec).hash_hex();

    std::optional<std::string> trials_csv, aggregate_json;
    for (int threads : {1, 2, 8, 2}) {  // the second 2 exercises a re-run
      const BatchResult batch = run_batch(spec, threads);
      const std::string csv = render_trials_csv(batch, hash);
      const std::string agg = render_aggregate_json(batch, hash);
      if (trials_csv.has_value() && (*trials_csv != csv || *aggregate_json != agg)) {
        return {false, std::string(model_name(sc.model)) +
                           ": output bytes differ at threads=" +
                           std::to_string(threads)};
      }
      trials_csv = csv;
      aggregate_json = agg;
    }
    bytes += trials_csv->size() + aggregate_json->size();
  }
  return {true, "trial tables and aggregates byte-identical across worker "
                "counts 1/2/8 and a re-run (" + std::to_string(bytes) + " bytes)"};
}

Outcome check_walled_closure(int) {
  uint64_t streets_checked = 0;
  for (int n : {4, 8, 12}) {
    const ModelParams params = make_params(n, 0.3);
    Diagram product = Diagram::identity(n);
    Diagram scratch = Diagram::identity(n);
    Diagram street_diagram = Diagram::identity(n);
    StreetConfig cfg;
    for (uint32_t street = 1; street <= 10000; ++street) {
      sample_street_manhattan_into(params, static_cast<int>(street), 555,
                                   /*trial=*/static_cast<uint32_t>(n), street, cfg);
      trace_street_into(cfg, street_diagram);
      if (!street_diagram.is_walled()) {
        return {false, "street " + std::to_string(street) + " at width " +
                           std::to_string(n) + " traced to a non-walled diagram " +
                           street_diagram.to_string()};
      }
      compose_into(product, street_diagram, scratch);
      std::swap(product, scratch);
      if (!product.is_walled()) {
        return {false, "running product left the walled family at street " +
                           std::to_string(street) + ", width " + std::to_string(n)};
      }
      ++streets_checked;
    }
  }
  return {true, std::to_string(streets_checked) +
                    " streets and running products stayed walled at widths 4, 8, 12"};
}

struct Criterion {
  const char* name;
  Outcome (*fn)(int threads);
};

constexpr Criterion kCriteria[] = {
    {"algebra-properties", check_algebra_properties},
    {"compose-golden", check_compose_golden},
    {"conditioned-law-enumeration", check_conditioned_law_enumeration},
    {"bar-increment-oracle", check_bar_increment_oracle},
    {"waiting-time-geometric", check_waiting_time_geometric},
    {"exact-vs-monte-carlo", check_exact_vs_monte_carlo},
    {"exact-route-agreement", check_exact_route_agreement},
    {"full-vs-conditioned-inequality", check_full_vs_conditioned_inequality},
    {"upper-tail-bound", check_upper_tail_bound},
    {"lower-tail-bound", check_lower_tail_bound},
    {"determinism", check_determinism},
    {"walled-closure", check_walled_closure},
};

}  // namespace

std::vector<std::string> acceptance_names() {
  std::vector<std::string> names;
  for (const Criterion& c : kCriteria) names.emplace_back(c.name);
  return names;
}

std::vector<CriterionResult> run_acceptance(const VerifyOptions& options,
                                            std::ostream& progress) {
  std::vector<CriterionResult> results;
  for (const Criterion& criterion : kCriteria) {
    if (!options.only.empty() && options.only != criterion.name) continue;
    const auto start = std::chrono::steady_clock::now();
    CriterionResult result;
    result.name = criterion.name;
    try {
      const Outcome outcome = criterion.fn(options.threads);
      result.pass = outcome.pass;
      result.detail = outcome.detail;
    } catch (const std::exception& e) {
      result.pass = false;
      result.detail = std::string("exception: ") + e.what();
    }
    result.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    progress << (result.pass ? "PASS " : "FAIL ") << result.name << " — "
             << result.detail << " [" << fmt(result.seconds, 3) << "s]\n";
    progress.flush();
    results.push_back(std::move(result));
  }
  return results;
}

std::string acceptance_report_json(const std::vector<CriterionResult>& results) {
  nlohmann::ordered_json j;
  j["tool_version"] = kVersion;
  bool all_pass = true;
  nlohmann::ordered_json list = nlohmann::ordered_json::array();
  for (const CriterionResult& r : results) {
    all_pass = all_pass && r.pass;
    nlohmann::ordered_json item;
    item["name"] = r.name;
    item["pass"] = r.pass;
    item["seconds"] = r.seconds;
    item["detail"] = r.detail;
    list.push_back(item);
  }
  j["all_pass"] = all_pass;
  j["criteria"] = list;
  return j.dump(2) + "\n";
}

}  // namespace streetsim
