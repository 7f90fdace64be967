#include <doctest.h>

#include <cmath>
#include <map>

#include "lyapspec/map.hpp"
#include "lyapspec/pressure.hpp"
#include "lyapspec/spectrum.hpp"

using namespace lyapspec;

namespace {
const double kLog2 = std::log(2.0);
const double kLog4 = std::log(4.0);

double binom(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}
}  // namespace

TEST_CASE("tent spectrum is a single bin of dimension one") {
  auto tent = MultimodalMap::tent();
  auto est = empirical_spectrum(tent, 10);
  CHECK(est.total_cylinders == 1024);
  REQUIRE(est.bin_centers.size() == 1);
  CHECK(est.bin_centers[0] == doctest::Approx(kLog2).epsilon(1e-12));
  CHECK(est.dim_estimates[0] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("two-slope spectrum matches the binomial oracle") {
  auto two = MultimodalMap::two_slope();
  int n = 12;
  auto est = empirical_spectrum(two, n, 1e-6);
  CHECK(est.total_cylinders == (std::size_t{1} << n));
  CHECK(est.alpha_min == doctest::Approx(kLog2).epsilon(1e-12));
  CHECK(est.alpha_max == doctest::Approx(kLog4).epsilon(1e-12));
  // a cylinder with k slope-4 symbols has alpha = ((n-k) log2 + k log4)/n
  // and there are C(n,k) of them; narrow bins isolate each class
  std::map<long long, std::size_t> got;
  for (std::size_t i = 0; i < est.bin_centers.size(); ++i) {
    if (est.counts[i] == 0) continue;
    long long k = std::llround((est.bin_centers[i] * n / kLog2 - n));
    got[k] += est.counts[i];
  }
  REQUIRE(got.size() == std::size_t(n + 1));
  for (int k = 0; k <= n; ++k) {
    REQUIRE(got.count(k) == 1);
    CHECK(double(got[k]) == binom(n, k));
    double alpha = ((n - k) * kLog2 + k * kLog4) / n;
    // dimension estimate for the class: log C(n,k) / (n alpha)
    bool found = false;
    for (std::size_t i = 0; i < est.bin_centers.size(); ++i) {
      if (est.counts[i] == 0) continue;
      if (std::abs(est.bin_centers[i] - alpha) < 1e-4) {
        CHECK(est.dim_estimates[i] ==
              doctest::Approx(std::log(binom(n, k)) / (n * alpha))
                  .epsilon(1e-6));
        found = true;
      }
    }
    CHECK(found);
  }
}

TEST_CASE("deviation from the predicted spectrum shrinks with depth") {
  auto two = MultimodalMap::two_slope();
  auto curve = build_pressure_curve(two, -8.0, 8.0, 161, 10);
  auto spec = build_spectrum_curve(curve, 201);
  // The default width (spread/40) puts every binomial class exactly on a bin
  // edge for this map, so rounding noise splits classes across bins.  A width
  // incommensurate with the class spacing log2/n aggregates them cleanly.
  double w = 0.1;
  auto shallow = compare_to_prediction(empirical_spectrum(two, 10, w), spec);
  auto deep = compare_to_prediction(empirical_spectrum(two, 20, w), spec);
  REQUIRE(!deep.alpha.empty());
  CHECK(deep.max_deviation < shallow.max_deviation);
  CHECK(deep.max_deviation < 0.05);
  for (std::size_t i = 0; i < deep.alpha.size(); ++i) {
    CHECK(deep.empirical[i] > 0.0);
    CHECK(deep.predicted[i] <= curve.t0 + 1e-6);
  }
}

TEST_CASE("empirical spectrum rejects bad inputs") {
  CHECK_THROWS_AS(empirical_spectrum(MultimodalMap::quadratic(-1.8), 8),
                  NotMarkov);
  CHECK_THROWS_AS(empirical_spectrum(MultimodalMap::two_slope(), 30),
                  DepthTooLarge);
}

TEST_CASE("exponent audit via symbolic itineraries") {
  auto two = MultimodalMap::two_slope();
  auto rep = exponent_range_audit(two, 2000, 500, kLog2, kLog4, 123);
  CHECK(rep.samples == 2000);
  CHECK(rep.violations.empty());
  CHECK(rep.min_exponent >= kLog2 - 1e-12);
  CHECK(rep.max_exponent <= kLog4 + 1e-12);
  // Bernoulli oracle: mean exponent concentrates near (log2 + log4)/2
  CHECK(rep.min_exponent < 0.5 * (kLog2 + kLog4));
  CHECK(rep.max_exponent > 0.5 * (kLog2 + kLog4));
  CHECK(rep.tol == doctest::Approx(3.0 * (kLog4 - kLog2) / std::sqrt(500.0)));
}

TEST_CASE("exponent audit flags an impossible band") {
  auto two = MultimodalMap::two_slope();
  // claim the exponents live in a band around log 2 only: log 4 must violate
  auto rep = exponent_range_audit(two, 500, 400, kLog2, kLog2 + 0.01, 7);
  CHECK(!rep.violations.empty());
}

TEST_CASE("orbit-based audit on the tent map") {
  auto tent = MultimodalMap::tent();
  // give the degenerate band a hair of width so tol = 3*spread/sqrt(horizon)
  // is not exactly zero (orbit sums carry ulp-level rounding)
  auto rep = exponent_range_audit(tent, 200, 300, kLog2 - 1e-12,
                                  kLog2 + 1e-12, 42);
  CHECK(rep.violations.empty());
  CHECK(rep.min_exponent == doctest::Approx(kLog2).epsilon(1e-9));
  CHECK(rep.max_exponent == doctest::Approx(kLog2).epsilon(1e-9));
}
