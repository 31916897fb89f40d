#include "streetsim/manifest.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "json.hpp"
#include "streetsim/version.hpp"

namespace streetsim {

uint64_t fnv1a64(std::string_view bytes) {
  uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char b : bytes) {
    h ^= b;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

namespace {

std::string format_double_hex(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::hex);
  return std::string(buf, res.ptr);
}

}  // namespace

RunManifest RunManifest::from_spec(const std::string& command, const RunSpec& spec) {
  RunManifest m;
  m.command = command;
  m.model = model_name(spec.model);
  m.n = spec.params.n;
  m.p = spec.params.p;
  m.c = spec.params.c;
  m.trials = spec.trials;
  m.master_seed = spec.master_seed;
  m.street_cap = spec.effective_cap();
  m.conditioned = spec.conditioned;
  m.parity_offset = spec.parity_offset;
  m.tool_version = kVersion;
  return m;
}

std::string RunManifest::hash_hex() const {
  std::string canon;
  canon += "command=" + command;
  canon += ";model=" + model;
  canon += ";n=" + std::to_string(n);
  canon += ";p=" + format_double_hex(p);
  canon += ";c=" + format_double_hex(c);
  canon += ";trials=" + std::to_string(trials);
  canon += ";seed=" + std::to_string(master_seed);
  canon += ";cap=" + std::to_string(street_cap);
  canon += ";conditioned=" + std::to_string(conditioned ? 1 : 0);
  canon += ";parity=" + std::to_string(parity_offset);
  canon += ";version=" + tool_version;
  canon += ";rng=" + rng;
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(fnv1a64(canon)));
  return std::string(buf, 16);
}

std::string RunManifest::to_json_string() const {
  nlohmann::ordered_json j;
  j["command"] = command;
  j["model"] = model;
  j["n"] = n;
  j["p"] = p;
  j["c"] = c;
  j["trials"] = trials;
  j["master_seed"] = master_seed;
  j["street_cap"] = street_cap;
  j["conditioned"] = conditioned;
  j["parity_offset"] = parity_offset;
  j["tool_version"] = tool_version;
  j["rng"] = rng;
  j["manifest_hash"] = hash_hex();
  j["wall_clock_seconds"] = wall_clock_seconds;
  j["censored_count"] = censored_count;
  return j.dump(2) + "\n";
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

std::string render_trials_csv(const BatchResult& batch, const std::string& manifest_hash) {
  const int levels = batch.spec.params.n / 2;
  std::string out = "trial,hitting_time,censored,tau_at_hit";
  for (int k = 0; k < levels; ++k) out += ",w_" + std::to_string(k);
  if (batch.spec.record_loops) out += ",loops_total";
  out += ",manifest_hash\n";
  for (size_t t = 0; t < batch.records.size(); ++t) {
    const TrialRecord& r = batch.records[t];
    out += std::to_string(t);
    out += ',';
    out += std::to_string(r.hitting_time);
    out += ',';
    out += r.censored ? '1' : '0';
    out += ',';
    out += std::to_string(r.tau_at_hit);
    for (int k = 0; k < levels; ++k) {
      out += ',';
      out += std::to_string(r.waits[static_cast<size_t>(k)]);
    }
    if (batch.spec.record_loops) {
      out += ',';
      out += std::to_string(r.loops_total);
    }
    out += ',';
    out += manifest_hash;
    out += '\n';
  }
  return out;
}

namespace {

uint32_t hitting_quantile(std::vector<uint32_t>& sorted_hits, double q) {
  if (sorted_hits.empty()) return 0;
  const size_t idx = std::min(
      sorted_hits.size() - 1,
      static_cast<size_t>(q * static_cast<double>(sorted_hits.size())));
  return sorted_hits[idx];
}

}  // namespace

std::string render_aggregate_json(const BatchResult& batch,
                                  const std::string& manifest_hash) {
  const int levels = batch.spec.params.n / 2;
  std::vector<uint32_t> hits;
  hits.reserve(batch.records.size());
  for (const TrialRecord& r : batch.records) hits.push_back(r.hitting_time);
  std::sort(hits.begin(), hits.end());

  nlohmann::ordered_json j;
  j["manifest_hash"] = manifest_hash;
  j["trials"] = batch.records.size();
  j["censored_count"] = batch.censored_count();
  j["hitting_time_mean"] = batch.mean_hitting();
  j["hitting_time_min"] = hits.empty() ? 0 : hits.front();
  j["hitting_time_max"] = hits.empty() ? 0 : hits.back();
  j["hitting_time_p50"] = hitting_quantile(hits, 0.50);
  j["hitting_time_p90"] = hitting_quantile(hits, 0.90);
  j["hitting_time_p99"] = hitting_quantile(hits, 0.99);

  nlohmann::ordered_json wait_means = nlohmann::ordered_json::array();
  for (int k = 0; k < levels; ++k) {
    double total = 0.0;
    for (const TrialRecord& r : batch.records)
      total += static_cast<double>(r.waits[static_cast<size_t>(k)]);
    wait_means.push_back(batch.records.empty()
                             ? 0.0
                             : total / static_cast<double>(batch.records.size()));
  }
  j["waiting_time_means"] = wait_means;
  if (batch.spec.record_loops) {
    double total = 0.0;
    for (const TrialRecord& r : batch.records)
      total += static_cast<double>(r.loops_total);
    j["loops_mean"] = batch.records.empty()
                          ? 0.0
                          : total / static_cast<double>(batch.records.size());
  }
  return j.dump(2) + "\n";
}

std::string render_cdf_csv(const std::vector<double>& cdf,
                           const std::string& manifest_hash) {
  std::string out = "i,cdf,manifest_hash\n";
  for (size_t i = 0; i < cdf.size(); ++i) {
    out += std::to_string(i + 1);
    out += ',';
    out += format_double(cdf[i]);
    out += ',';
    out += manifest_hash;
    out += '\n';
  }
  return out;
}

std::string render_tailgrid_csv(const std::vector<TailGridRow>& rows,
                                const std::string& manifest_hash) {
  std::string out =
      "alpha,x_streets,tail_point,tail_lower,tail_upper,bound_full_tail,"
      "cdf_point,cdf_lower,cdf_upper,bound_early_hit,geometric_cdf,manifest_hash\n";
  for (const TailGridRow& r : rows) {
    out += format_double(r.alpha);
    out += ',';
    out += std::to_string(r.x);
    for (double v : {r.tail_point, r.tail_lower, r.tail_upper, r.bound_full_tail,
                     r.cdf_point, r.cdf_lower, r.cdf_upper, r.bound_early_hit,
                     r.geometric_cdf}) {
      out += ',';
      out += format_double(v);
    }
    out += ',';
    out += manifest_hash;
    out += '\n';
  }
  return out;
}

}  // namespace streetsim
