#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "streetsim/stats.hpp"

using namespace streetsim;

namespace {

bool near(double got, double want, double tol = 1e-12) {
  return std::abs(got - want) < tol;
}

}  // namespace

TEST_CASE("wilson interval goldens") {
  const IntervalEstimate mid = wilson_interval(50, 100, 1.96);
  CHECK(near(mid.point, 0.5));
  CHECK(near(mid.lower, 0.40382982859014716));
  CHECK(near(mid.upper, 0.5961701714098528));
  const IntervalEstimate skew = wilson_interval(3, 17, 2.5);
  CHECK(near(skew.lower, 0.04749945994897686));
  CHECK(near(skew.upper, 0.47938226048113075));
}

TEST_CASE("wilson interval edge cases") {
  const IntervalEstimate zero = wilson_interval(0, 10, 1.96);
  CHECK(zero.point == 0.0);
  CHECK(zero.lower == 0.0);
  CHECK(near(zero.upper, 0.2775401687666166));
  const IntervalEstimate full = wilson_interval(10, 10, 1.96);
  CHECK(full.point == 1.0);
  CHECK(near(full.lower, 0.7224598312333834));
  CHECK(full.upper == 1.0);
  CHECK_THROWS_AS(wilson_interval(1, 0, 1.96), std::invalid_argument);
  CHECK_THROWS_AS(wilson_interval(5, 4, 1.96), std::invalid_argument);
  CHECK_THROWS_AS(wilson_interval(1, 2, 0.0), std::invalid_argument);
}

TEST_CASE("asymptotic critical values") {
  // Frozen from an independent evaluation of the limiting law through its
  // theta-function series.
  CHECK(near(kolmogorov_critical(0.01), 1.627623611518952, 1e-9));
  CHECK(near(kolmogorov_critical(0.05), 1.358098639322550, 1e-9));
  CHECK(near(kolmogorov_critical(0.0025), 1.828197435414852, 1e-9));
  CHECK_THROWS_AS(kolmogorov_critical(0.0), std::invalid_argument);
  CHECK_THROWS_AS(kolmogorov_critical(1.0), std::invalid_argument);
}

TEST_CASE("geometric goodness-of-fit accepts the true parameter") {
  // The continuous critical value is conservative on integer data, so the
  // realised rejection rate under the null sits below the nominal level.
  std::mt19937_64 gen(12345);
  const double p = 0.1;
  std::geometric_distribution<uint32_t> geo(p);
  int rejections = 0;
  const int reps = 2000;
  for (int rep = 0; rep < reps; ++rep) {
    std::vector<uint32_t> samples(400);
    for (auto& s : samples) s = geo(gen) + 1;
    const KsResult res = ks_geometric(samples, p, 0.01);
    rejections += res.pass ? 0 : 1;
    CHECK(res.samples == 400);
    CHECK(near(res.critical, 1.627623611518952 / std::sqrt(400.0), 1e-9));
  }
  CHECK(rejections <= 40);  // nominal level would be 20 of 2000
}

TEST_CASE("geometric goodness-of-fit rejects a wrong parameter") {
  std::mt19937_64 gen(777);
  std::geometric_distribution<uint32_t> geo(0.1);
  std::vector<uint32_t> samples(3000);
  for (auto& s : samples) s = geo(gen) + 1;
  CHECK(ks_geometric(samples, 0.1, 0.01).pass);
  CHECK_FALSE(ks_geometric(samples, 0.13, 0.01).pass);
  CHECK_FALSE(ks_geometric(samples, 0.07, 0.01).pass);
}

TEST_CASE("geometric goodness-of-fit degenerate and invalid inputs") {
  const std::vector<uint32_t> ones(50, 1);
  CHECK(ks_geometric(ones, 1.0).pass);
  std::vector<uint32_t> mixed = ones;
  mixed[10] = 2;
  CHECK_FALSE(ks_geometric(mixed, 1.0).pass);
  CHECK_THROWS_AS(ks_geometric(std::vector<uint32_t>{}, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(ks_geometric(ones, 0.0), std::invalid_argument);
  const std::vector<uint32_t> with_zero{1, 0, 2};
  CHECK_THROWS_AS(ks_geometric(with_zero, 0.5), std::invalid_argument);
}

TEST_CASE("one-sided bound comparison") {
  const std::vector<double> xs{1.0, 2.0, 3.0};
  const std::vector<uint64_t> successes{10, 999, 999};
  const std::vector<double> bounds{0.5, 0.9, 1.2};
  const auto pts = tail_vs_bound(xs, successes, 1000, bounds, 3.0);
  REQUIRE(pts.size() == 3);
  CHECK_FALSE(pts[0].violation);  // far below the bound
  CHECK_FALSE(pts[0].vacuous);
  CHECK(pts[1].violation);  // lower confidence bound above 0.9
  CHECK_FALSE(pts[1].vacuous);
  CHECK(pts[2].vacuous);  // bound >= 1 carries no information
  CHECK_FALSE(pts[2].violation);
  CHECK(near(pts[0].empirical.point, 0.01));
  CHECK_THROWS_AS(tail_vs_bound(xs, successes, 1000, {0.5}, 3.0),
                  std::invalid_argument);
}

TEST_CASE("sparse-street counter concentration check") {
  // Precondition failure: reported as a vacuous pass.
  {
    const std::vector<uint32_t> taus(100, 1);
    const CheckReport rep = sparse_count_tail_check(100, 0.5, 1.0, taus);
    CHECK(rep.pass);
    CHECK(rep.detail.find("vacuous") != std::string::npos);
  }
  // Counter comfortably above the cutoff c3*i/2 ~ 45.98: pass.
  {
    const std::vector<uint32_t> taus(1000, 60);
    const CheckReport rep = sparse_count_tail_check(100, 0.99, 1.0, taus);
    CHECK(rep.pass);
    CHECK(rep.statistic == 0.0);
  }
  // Counter always below the cutoff: empirical rate 1 against a ~2.6e-5
  // bound; must fail.
  {
    const std::vector<uint32_t> taus(1000, 40);
    const CheckReport rep = sparse_count_tail_check(100, 0.99, 1.0, taus);
    CHECK_FALSE(rep.pass);
    CHECK(rep.statistic == 1.0);
    CHECK(rep.threshold < 1e-4);
  }
}
