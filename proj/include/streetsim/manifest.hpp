#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "streetsim/chain.hpp"

namespace streetsim {

// Reproducibility record written next to every output file.  The hash covers
// exactly the fields that determine output bytes; wall_clock_seconds and
// censored_count are informational and excluded, so re-running the same
// manifest yields the same hash and byte-identical data files.
struct RunManifest {
  std::string command;  // "simulate", "exact", "tailgrid"
  std::string model;
  int n = 0;
  double p = 0.0;
  double c = 1.0;
  uint64_t trials = 0;
  uint64_t master_seed = 0;
  uint32_t street_cap = 0;
  bool conditioned = false;
  int parity_offset = 0;
  std::string tool_version;
  std::string rng = "philox4x32-10";
  // Informational, hash-excluded:
  double wall_clock_seconds = 0.0;
  uint64_t censored_count = 0;

  static RunManifest from_spec(const std::string& command, const RunSpec& spec);
  std::string hash_hex() const;  // 64-bit FNV-1a over the hashed fields, 16 hex chars
  std::string to_json_string() const;
};

uint64_t fnv1a64(std::string_view bytes);

// Exact double round-trip text (shortest form, hexfloat in the hash).
std::string format_double(double v);

// --- Output writers (UTF-8, LF, RFC-4180-style CSV with header row) -------

void write_text_file(const std::filesystem::path& path, const std::string& content);

// Columns: trial,hitting_time,censored,tau_at_hit,w_0..w_{n/2-1}
//          [,loops_total][,manifest_hash]
std::string render_trials_csv(const BatchResult& batch, const std::string& manifest_hash);

// Aggregate statistics in deterministic key order.
std::string render_aggregate_json(const BatchResult& batch,
                                  const std::string& manifest_hash);

// Columns: i,cdf,manifest_hash
std::string render_cdf_csv(const std::vector<double>& cdf,
                           const std::string& manifest_hash);

struct TailGridRow {
  double alpha = 0;
  uint64_t x = 0;             // alpha p^-2 in streets (rounded up)
  double tail_point = 0, tail_lower = 0, tail_upper = 0;
  double bound_full_tail = 0;  // 2 A e^{-alpha/(8e^c)}
  double cdf_point = 0, cdf_lower = 0, cdf_upper = 0;
  double bound_early_hit = 0;  // min(1, 2 alpha)
  double geometric_cdf = 0;    // 1 - (1-p^2)^(alpha p^-2)
};
std::string render_tailgrid_csv(const std::vector<TailGridRow>& rows,
                                const std::string& manifest_hash);

}  // namespace streetsim
