#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <charconv>
#include <cmath>
#include <fstream>
#include <iterator>
#include <string>
#include <system_error>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "streetsim/manifest.hpp"
#include "streetsim/version.hpp"

using namespace streetsim;

namespace {

RunSpec demo_spec() {
  RunSpec spec;
  spec.model = Model::manhattan;
  spec.conditioned = true;
  spec.params.n = 4;
  spec.params.p = 0.1;
  spec.trials = 100;
  spec.master_seed = 42;
  spec.street_cap = 500;
  spec.parity_offset = 1;
  return spec;
}

BatchResult demo_batch() {
  BatchResult batch;
  batch.spec.params.n = 2;
  batch.spec.trials = 2;
  TrialRecord a;
  a.hitting_time = 3;
  a.censored = false;
  a.tau_at_hit = 2;
  a.waits = {3};
  a.loops_total = 1;
  TrialRecord b;
  b.hitting_time = 5;
  b.censored = true;
  b.tau_at_hit = 4;
  b.waits = {5};
  b.loops_total = 0;
  batch.records = {a, b};
  return batch;
}

}  // namespace

TEST_CASE("fnv-1a 64 reference vectors") {
  CHECK(fnv1a64("") == 0xcbf29ce484222325ull);
  CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cull);
  CHECK(fnv1a64("foobar") == 0x85944171f73967e8ull);
}

TEST_CASE("shortest-round-trip double formatting") {
  // std::from_chars rather than stod: stod raises ERANGE on subnormals.
  for (double v : {0.1, 1.0 / 3.0, 2.0, 1e300, 5e-324, 0.0, 0.9963}) {
    const std::string text = format_double(v);
    double back = -1.0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), back);
    CHECK(res.ec == std::errc{});
    CHECK(back == v);
  }
  CHECK(format_double(0.5) == "0.5");
}

TEST_CASE("manifest hash covers exactly the reproducibility fields") {
  const RunManifest base = RunManifest::from_spec("simulate", demo_spec());
  CHECK(base.street_cap == 500);
  CHECK(base.tool_version == kVersion);
  const std::string h = base.hash_hex();
  CHECK(h.size() == 16);
  CHECK(h.find_first_not_of("0123456789abcdef") == std::string::npos);

  RunManifest same = base;
  same.wall_clock_seconds = 123.0;
  same.censored_count = 9;
  CHECK(same.hash_hex() == h);  // informational fields excluded

  for (auto mutate : std::vector<void (*)(RunManifest&)>{
           [](RunManifest& m) { m.command = "exact"; },
           [](RunManifest& m) { m.model = "mirror"; },
           [](RunManifest& m) { m.n = 6; },
           [](RunManifest& m) { m.p = std::nextafter(m.p, 1.0); },
           [](RunManifest& m) { m.c = 2.0; },
           [](RunManifest& m) { m.trials += 1; },
           [](RunManifest& m) { m.master_seed += 1; },
           [](RunManifest& m) { m.street_cap += 1; },
           [](RunManifest& m) { m.conditioned = false; },
           [](RunManifest& m) { m.parity_offset = 0; },
           [](RunManifest& m) { m.tool_version = "9.9.9"; },
       }) {
    RunManifest changed = base;
    mutate(changed);
    CHECK(changed.hash_hex() != h);
  }
}

TEST_CASE("manifest json serialisation") {
  const RunManifest m = RunManifest::from_spec("simulate", demo_spec());
  const std::string text = m.to_json_string();
  CHECK(text.back() == '\n');
  const auto j = nlohmann::json::parse(text);
  CHECK(j.at("command") == "simulate");
  CHECK(j.at("model") == "manhattan");
  CHECK(j.at("n") == 4);
  CHECK(j.at("p") == 0.1);
  CHECK(j.at("trials") == 100);
  CHECK(j.at("master_seed") == 42);
  CHECK(j.at("street_cap") == 500);
  CHECK(j.at("conditioned") == true);
  CHECK(j.at("parity_offset") == 1);
  CHECK(j.at("rng") == "philox4x32-10");
  CHECK(j.at("manifest_hash") == m.hash_hex());
  CHECK(j.contains("wall_clock_seconds"));
  CHECK(j.contains("censored_count"));
}

TEST_CASE("trial table rendering") {
  const BatchResult batch = demo_batch();
  const std::string csv = render_trials_csv(batch, "deadbeef01234567");
  CHECK(csv ==
        "trial,hitting_time,censored,tau_at_hit,w_0,manifest_hash\n"
        "0,3,0,2,3,deadbeef01234567\n"
        "1,5,1,4,5,deadbeef01234567\n");

  BatchResult with_loops = batch;
  with_loops.spec.record_loops = true;
  const std::string csv2 = render_trials_csv(with_loops, "deadbeef01234567");
  CHECK(csv2 ==
        "trial,hitting_time,censored,tau_at_hit,w_0,loops_total,manifest_hash\n"
        "0,3,0,2,3,1,deadbeef01234567\n"
        "1,5,1,4,5,0,deadbeef01234567\n");
}

TEST_CASE("aggregate rendering") {
  const std::string text = render_aggregate_json(demo_batch(), "ffff000011112222");
  const auto j = nlohmann::json::parse(text);
  CHECK(j.at("manifest_hash") == "ffff000011112222");
  CHECK(j.at("trials") == 2);
  CHECK(j.at("censored_count") == 1);
  CHECK(j.at("hitting_time_mean") == 4.0);
  CHECK(j.at("hitting_time_min") == 3);
  CHECK(j.at("hitting_time_max") == 5);
  CHECK(j.at("hitting_time_p50") == 5);
  CHECK(j.at("waiting_time_means").size() == 1);
  CHECK(j.at("waiting_time_means")[0] == 4.0);
  CHECK_FALSE(j.contains("loops_mean"));
}

TEST_CASE("cdf and grid rendering") {
  const std::string csv = render_cdf_csv({0.5, 0.75}, "abcd");
  CHECK(csv == "i,cdf,manifest_hash\n1,0.5,abcd\n2,0.75,abcd\n");

  TailGridRow row;
  row.alpha = 2.0;
  row.x = 800;
  row.tail_point = 0.25;
  row.tail_lower = 0.2;
  row.tail_upper = 0.3;
  row.bound_full_tail = 0.5;
  row.cdf_point = 0.75;
  row.cdf_lower = 0.7;
  row.cdf_upper = 0.8;
  row.bound_early_hit = 1.0;
  row.geometric_cdf = 0.9;
  const std::string grid = render_tailgrid_csv({row}, "abcd");
  CHECK(grid ==
        "alpha,x_streets,tail_point,tail_lower,tail_upper,bound_full_tail,"
        "cdf_point,cdf_lower,cdf_upper,bound_early_hit,geometric_cdf,manifest_hash\n"
        "2,800,0.25,0.2,0.3,0.5,0.75,0.7,0.8,1,0.9,abcd\n");
}

TEST_CASE("text files write byte-exact content") {
  const auto dir = std::filesystem::temp_directory_path() / "streetsim_manifest_test";
  std::filesystem::create_directories(dir);
  const auto path = dir / "sample.csv";
  write_text_file(path, "a,b\n1,2\n");
  std::ifstream in(path, std::ios::binary);
  std::string content((std::istreambuf_iterator<char>(in)),
                      std::istreambuf_iterator<char>());
  CHECK(content == "a,b\n1,2\n");
  std::filesystem::remove_all(dir);
}
