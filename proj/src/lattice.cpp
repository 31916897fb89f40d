#include "streetsim/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "streetsim/rng.hpp"

namespace streetsim {

namespace {

void require(bool cond, const char* msg) {
  if (!cond) throw std::invalid_argument(msg);
}

// Half-edge ids within one site.
enum : uint8_t { kN = 0, kS = 1, kE = 2, kW = 3 };

// pair_table[state][half_edge] -> matched half-edge.
//   empty: N-S straight through, E-W straight through
//   NE "/": N-W, S-E   (southbound ray reflects west)
//   NW "\": N-E, S-W   (southbound ray reflects east)
constexpr uint8_t kPairTable[3][4] = {
    {kS, kN, kW, kE},  // empty
    {kW, kE, kS, kN},  // ne
    {kE, kW, kN, kS},  // nw
};

double pair_count(int n) { return 0.5 * n * (n - 1); }

}  // namespace

const char* model_name(Model m) {
  return m == Model::mirror ? "mirror" : "manhattan";
}

Model model_from_name(std::string_view name) {
  if (name == "mirror") return Model::mirror;
  if (name == "manhattan") return Model::manhattan;
  throw std::invalid_argument("unknown model name");
}

void ModelParams::validate() const {
  require(n >= 2 && n % 2 == 0, "ModelParams: n must be even >= 2");
  require(p >= 0.0 && p <= 1.0, "ModelParams: p must lie in [0,1]");
  require(c > 0.0, "ModelParams: c must be positive");
}

int StreetConfig::mirror_count() const {
  int k = 0;
  for (SiteState s : sites) k += (s != SiteState::empty);
  return k;
}

std::string StreetConfig::to_string() const {
  std::string out(sites.size(), '.');
  for (size_t i = 0; i < sites.size(); ++i) {
    if (sites[i] == SiteState::ne) out[i] = '/';
    if (sites[i] == SiteState::nw) out[i] = '\\';
  }
  return out;
}

StreetConfig StreetConfig::from_string(std::string_view text, Model model,
                                       int street_index) {
  StreetConfig cfg;
  cfg.n = static_cast<int>(text.size());
  cfg.model = model;
  cfg.street_index = street_index;
  cfg.sites.reserve(text.size());
  for (char ch : text) {
    switch (ch) {
      case '.': cfg.sites.push_back(SiteState::empty); break;
      case '/': cfg.sites.push_back(SiteState::ne); break;
      case '\\': cfg.sites.push_back(SiteState::nw); break;
      default: throw std::invalid_argument("StreetConfig: expected '.', '/' or '\\'");
    }
  }
  require(cfg.n >= 2 && cfg.n % 2 == 0, "StreetConfig: width must be even >= 2");
  return cfg;
}

MirrorOrientation manhattan_orientation(int x, int t) {
  return ((x + t) % 2 != 0) ? MirrorOrientation::nw : MirrorOrientation::ne;
}

namespace {

void fill_sites(const ModelParams& params, Model model, int t, uint64_t seed,
                uint32_t trial, uint32_t street, StreetConfig& out) {
  const int n = params.n;
  const rng::Threshold occ = rng::Threshold::from_prob(params.p);
  thread_local std::vector<uint64_t> u, v;
  u.resize(static_cast<size_t>(n));
  v.resize(static_cast<size_t>(n));
  rng::active_fill()(seed, trial, street, 0, n, u.data(), v.data());
  out.n = n;
  out.model = model;
  out.street_index = t;
  out.sites.resize(static_cast<size_t>(n));
  for (int x = 0; x < n; ++x) {
    if (!occ.hit(u[static_cast<size_t>(x)])) {
      out.sites[static_cast<size_t>(x)] = SiteState::empty;
    } else if (model == Model::mirror) {
      out.sites[static_cast<size_t>(x)] =
          (v[static_cast<size_t>(x)] >> 63) ? SiteState::nw : SiteState::ne;
    } else {
      out.sites[static_cast<size_t>(x)] =
          manhattan_orientation(x + 1, t) == MirrorOrientation::nw ? SiteState::nw
                                                                   : SiteState::ne;
    }
  }
}

}  // namespace

void sample_street_mirror_into(const ModelParams& params, uint64_t seed,
                               uint32_t trial, uint32_t street, StreetConfig& out) {
  params.validate();
  fill_sites(params, Model::mirror, static_cast<int>(street), seed, trial, street, out);
}

void sample_street_manhattan_into(const ModelParams& params, int t, uint64_t seed,
                                  uint32_t trial, uint32_t street,
                                  StreetConfig& out) {
  params.validate();
  require(t >= 1, "sample_street_manhattan: street index must be >= 1");
  fill_sites(params, Model::manhattan, t, seed, trial, street, out);
}

StreetConfig sample_street_mirror(const ModelParams& params, uint64_t seed,
                                  uint32_t trial, uint32_t street) {
  StreetConfig cfg;
  sample_street_mirror_into(params, seed, trial, street, cfg);
  return cfg;
}

StreetConfig sample_street_manhattan(const ModelParams& params, int t,
                                     uint64_t seed, uint32_t trial,
                                     uint32_t street) {
  StreetConfig cfg;
  sample_street_manhattan_into(params, t, seed, trial, street, cfg);
  return cfg;
}

void trace_street_into(const StreetConfig& config, Diagram& out) {
  const int n = config.n;
  require(n >= 2 && n % 2 == 0 && static_cast<int>(config.sites.size()) == n,
          "trace_street: invalid config");
  thread_local std::vector<uint32_t> partner;
  partner.assign(static_cast<size_t>(2 * n), UINT32_MAX);

  auto walk = [&](int x, uint8_t entry) -> uint32_t {
    // Enter site x via half-edge `entry`; follow arcs until a vertical
    // half-edge exits the strip.  Bounded by one visit per arc.
    for (int guard = 0; guard <= 2 * n + 2; ++guard) {
      const uint8_t next =
          kPairTable[static_cast<int>(config.sites[static_cast<size_t>(x)])][entry];
      if (next == kN) return static_cast<uint32_t>(x);
      if (next == kS) return static_cast<uint32_t>(n + x);
      if (next == kE) {
        x = (x + 1) % n;
        entry = kW;
      } else {
        x = (x - 1 + n) % n;
        entry = kE;
      }
    }
    throw std::logic_error("trace_street: unterminated path");
  };

  for (int x = 0; x < n; ++x) {
    if (partner[static_cast<size_t>(x)] == UINT32_MAX) {
      const uint32_t end = walk(x, kN);
      partner[static_cast<size_t>(x)] = end;
      partner[end] = static_cast<uint32_t>(x);
    }
    if (partner[static_cast<size_t>(n + x)] == UINT32_MAX) {
      const uint32_t end = walk(x, kS);
      partner[static_cast<size_t>(n + x)] = end;
      partner[end] = static_cast<uint32_t>(n + x);
    }
  }
  out.assign(partner);
}

Diagram trace_street(const StreetConfig& config) {
  require(config.n >= 2 && config.n % 2 == 0, "trace_street: invalid config");
  Diagram out = Diagram::identity(config.n);
  trace_street_into(config, out);
  return out;
}

double sparse_street_prob(const ModelParams& params) {
  params.validate();
  const double p = params.p;
  const int n = params.n;
  return std::pow(1.0 - p, n - 2) *
         ((1.0 - p) * (1.0 - p) + n * p * (1.0 - p) + pair_count(n) * p * p);
}

namespace {

// Unrank a 2-subset {i<j} of {1..n} in lexicographic order.
std::pair<int, int> unrank_pair(int n, uint64_t rank) {
  int i = 1;
  uint64_t block = static_cast<uint64_t>(n - 1);
  while (rank >= block) {
    rank -= block;
    ++i;
    block = static_cast<uint64_t>(n - i);
  }
  return {i, i + 1 + static_cast<int>(rank)};
}

}  // namespace

Diagram sample_conditioned_diagram(Model model, const ModelParams& params,
                                   uint64_t seed, uint32_t trial, uint32_t street) {
  params.validate();
  const int n = params.n;
  const double p = params.p;
  const double pairs = pair_count(n);
  const double id_weight = (1.0 - p) * (1.0 - p) + n * p * (1.0 - p);
  const double total = id_weight + pairs * p * p;
  const rng::DrawPair d = rng::draws_at(seed, trial, street, rng::aux_slot(0));
  if (rng::to_unit(d.u) < id_weight / total) return Diagram::identity(n);

  const uint64_t classes = model == Model::mirror
                               ? 2 * static_cast<uint64_t>(pairs)
                               : static_cast<uint64_t>(pairs);
  uint64_t idx = static_cast<uint64_t>(rng::to_unit(d.v) * static_cast<double>(classes));
  idx = std::min(idx, classes - 1);
  if (model == Model::mirror) {
    const auto [i, j] = unrank_pair(n, idx >> 1);
    return (idx & 1) ? Diagram::bar_pair(n, i, j) : Diagram::transposition(n, i, j);
  }
  const auto [i, j] = unrank_pair(n, idx);
  return ((j - i) % 2 != 0) ? Diagram::bar_pair(n, i, j)
                            : Diagram::transposition(n, i, j);
}

namespace {

double config_prob(const StreetConfig& cfg, const ModelParams& params) {
  const double p = params.p;
  double prob = 1.0;
  for (SiteState s : cfg.sites) {
    if (s == SiteState::empty) {
      prob *= 1.0 - p;
    } else if (cfg.model == Model::mirror) {
      prob *= p / 2.0;
    } else {
      prob *= p;
    }
  }
  return prob;
}

}  // namespace

std::vector<std::pair<StreetConfig, double>> enumerate_streets(
    Model model, const ModelParams& params, int street_index,
    std::optional<int> max_mirrors, const EnumBudget& budget) {
  params.validate();
  require(street_index >= 1, "enumerate_streets: street index must be >= 1");
  const int n = params.n;
  std::vector<std::pair<StreetConfig, double>> out;

  StreetConfig cfg;
  cfg.n = n;
  cfg.model = model;
  cfg.street_index = street_index;
  cfg.sites.assign(static_cast<size_t>(n), SiteState::empty);

  auto forced_site = [&](int x) {
    return manhattan_orientation(x + 1, street_index) == MirrorOrientation::nw
               ? SiteState::nw
               : SiteState::ne;
  };

  if (max_mirrors.has_value()) {
    const int cap = *max_mirrors;
    require(cap >= 0, "enumerate_streets: negative mirror cap");
    double work = 0;
    double choose = 1;  // C(n, k)
    for (int k = 0; k <= cap && k <= n; ++k) {
      work += choose * (model == Model::mirror ? std::pow(2.0, k) : 1.0);
      choose = choose * (n - k) / (k + 1);
    }
    if (work > 2e7) throw BudgetError("enumerate_streets: mirror cap budget exceeded");

    // Iterate subsets of {0..n-1} of size 0..cap in lexicographic order,
    // then orientation assignments (mirror model only).
    std::vector<int> sel;
    auto emit = [&] {
      if (model == Model::manhattan) {
        std::fill(cfg.sites.begin(), cfg.sites.end(), SiteState::empty);
        for (int x : sel) cfg.sites[static_cast<size_t>(x)] = forced_site(x);
        out.emplace_back(cfg, config_prob(cfg, params));
        return;
      }
      const int k = static_cast<int>(sel.size());
      for (uint32_t bits = 0; bits < (1u << k); ++bits) {
        std::fill(cfg.sites.begin(), cfg.sites.end(), SiteState::empty);
        for (int idx = 0; idx < k; ++idx) {
          cfg.sites[static_cast<size_t>(sel[static_cast<size_t>(idx)])] =
              (bits >> idx & 1u) ? SiteState::nw : SiteState::ne;
        }
        out.emplace_back(cfg, config_prob(cfg, params));
      }
    };
    auto rec = [&](auto&& self, int start) -> void {
      emit();
      if (static_cast<int>(sel.size()) == cap) return;
      for (int x = start; x < n; ++x) {
        sel.push_back(x);
        self(self, x + 1);
        sel.pop_back();
      }
    };
    rec(rec, 0);
    return out;
  }

  if (model == Model::mirror) {
    if (n > budget.max_n_mirror)
      throw BudgetError("enumerate_streets: mirror enumeration budget exceeded");
    // Odometer over 3^n states.
    for (;;) {
      out.emplace_back(cfg, config_prob(cfg, params));
      int x = 0;
      while (x < n) {
        auto& s = cfg.sites[static_cast<size_t>(x)];
        if (s == SiteState::empty) {
          s = SiteState::ne;
          break;
        }
        if (s == SiteState::ne) {
          s = SiteState::nw;
          break;
        }
        s = SiteState::empty;
        ++x;
      }
      if (x == n) break;
    }
  } else {
    if (n > budget.max_n_manhattan)
      throw BudgetError("enumerate_streets: manhattan enumeration budget exceeded");
    for (uint64_t bits = 0; bits < (1ull << n); ++bits) {
      for (int x = 0; x < n; ++x) {
        cfg.sites[static_cast<size_t>(x)] =
            (bits >> x & 1ull) ? forced_site(x) : SiteState::empty;
      }
      out.emplace_back(cfg, config_prob(cfg, params));
    }
  }
  return out;
}

}  // namespace streetsim
