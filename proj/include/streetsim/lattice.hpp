#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "streetsim/diagram.hpp"

namespace streetsim {

enum class Model : uint8_t { mirror, manhattan };

const char* model_name(Model m);
Model model_from_name(std::string_view name);

// "/" mirror (reflects a southbound ray west) or "\" mirror (reflects it
// east).  Reflection tables, involutive by construction:
//   NE "/": {north, west-arc}, {south, east-arc}
//   NW "\": {north, east-arc}, {south, west-arc}
enum class MirrorOrientation : uint8_t { ne, nw };

enum class SiteState : uint8_t { empty = 0, ne = 1, nw = 2 };

struct ModelParams {
  int n = 0;       // even width >= 2
  double p = 0.0;  // mirror probability in [0,1]
  double c = 1.0;  // constant of the sparse regime p <= c/n (bounds only)
  void validate() const;
};

// One street of the cylinder: n sites around a cycle, each empty or holding
// an oriented mirror.
struct StreetConfig {
  int n = 0;
  Model model = Model::mirror;
  int street_index = 1;  // 1-based t; sets Manhattan orientations + direction
  std::vector<SiteState> sites;

  int mirror_count() const;
  bool eastbound() const { return street_index % 2 == 1; }
  // One char per site: '.' empty, '/' NE, '\' NW.
  std::string to_string() const;
  static StreetConfig from_string(std::string_view text, Model model = Model::mirror,
                                  int street_index = 1);
};

// Orientation forced at site x of street t (both 1-based): NW iff x+t odd.
MirrorOrientation manhattan_orientation(int x, int t);

// Full mirror-model law: each site empty w.p. 1-p, else NE/NW each w.p. p/2.
StreetConfig sample_street_mirror(const ModelParams& params, uint64_t seed,
                                  uint32_t trial, uint32_t street);

// Full Manhattan law: each site occupied w.p. p, orientation forced by
// manhattan_orientation(x, t).
StreetConfig sample_street_manhattan(const ModelParams& params, int t,
                                     uint64_t seed, uint32_t trial,
                                     uint32_t street);

// Boundary pairing of one street: paths enter through the 2n vertical
// half-edges, pass straight through empty sites, reflect at mirrors, and
// horizontal arcs wrap around the cycle.  Never records loops (the
// mirror-free horizontal circuit touches no boundary vertex and is ignored).
Diagram trace_street(const StreetConfig& config);

// Allocation-reusing variants of the samplers and tracer for hot loops;
// behaviour is identical to the by-value forms.
void sample_street_mirror_into(const ModelParams& params, uint64_t seed,
                               uint32_t trial, uint32_t street, StreetConfig& out);
void sample_street_manhattan_into(const ModelParams& params, int t, uint64_t seed,
                                  uint32_t trial, uint32_t street,
                                  StreetConfig& out);
void trace_street_into(const StreetConfig& config, Diagram& out);

// Direct categorical sample from the closed-form law of a street conditioned
// on at most two mirrors: identity with the lumped 0/1-mirror weight, else a
// two-mirror class.  Mirror model: crossing or bar on any column pair, equal
// weight.  Manhattan: crossing on even-distance pairs, bar on odd-distance
// pairs.  Exactly one auxiliary draw pair per call.
Diagram sample_conditioned_diagram(Model model, const ModelParams& params,
                                   uint64_t seed, uint32_t trial, uint32_t street);

// P[street has at most two mirrors] =
//   (1-p)^(n-2) [ (1-p)^2 + n p (1-p) + C(n,2) p^2 ].
double sparse_street_prob(const ModelParams& params);

struct EnumBudget {
  int max_n_mirror = 8;      // 3^n configurations
  int max_n_manhattan = 12;  // 2^n configurations
};

// Exhaustive street law: all configurations (with probabilities summing to 1)
// or, under max_mirrors, all configurations with at most that many mirrors
// (probabilities then sum to P[mirror count <= max]).  Throws BudgetError
// when n exceeds the budget and no mirror cap makes the enumeration small.
std::vector<std::pair<StreetConfig, double>> enumerate_streets(
    Model model, const ModelParams& params, int street_index,
    std::optional<int> max_mirrors = std::nullopt, const EnumBudget& budget = {});

struct BudgetError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace streetsim
