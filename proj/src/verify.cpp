#include "lyapspec/verify.hpp"

#include <cmath>
#include <random>
#include <sstream>
#include <vector>

#include "lyapspec/cocycle.hpp"
#include "lyapspec/csv.hpp"
#include "lyapspec/map.hpp"
#include "lyapspec/pressure.hpp"
#include "lyapspec/pullback.hpp"
#include "lyapspec/spectrum.hpp"

namespace lyapspec {

namespace {

class Suite {
 public:
  explicit Suite(std::ostringstream& os) : os_(os) {}

  void check(const std::string& name, bool ok, double value) {
    ++checks_;
    if (!ok) ++failures_;
    os_ << name << ": " << (ok ? "PASS" : "FAIL")
        << " value=" << format_number(value) << "\n";
  }

  int checks_ = 0;
  int failures_ = 0;

 private:
  std::ostringstream& os_;
};

void map_suite(Suite& s, std::uint64_t seed) {
  auto tent = MultimodalMap::tent();
  auto two = MultimodalMap::two_slope();

  // 2/5 -> 4/5 -> 2/5 is a tent 2-cycle; check exact recovery
  auto orbit = tent.orbit(0.4, 2);
  s.check("map.tent_two_cycle", std::abs(orbit[2] - 0.4) < 1e-14,
          orbit[2]);
  s.check("map.tent_fix2_count", tent.periodic_points(2).size() == 4,
          static_cast<double>(tent.periodic_points(2).size()));

  std::mt19937_64 rng(derive_seed(seed, "verify.map", 0));
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  double worst = 0.0;
  for (int i = 0; i < 200; ++i) {
    const auto& maps = i % 2 == 0 ? tent : two;
    const auto& brs = maps.branches();
    const auto& b = brs[static_cast<std::size_t>(i) % brs.size()];
    double x = b.interval.a + b.interval.length() * unif(rng);
    double err = std::abs(b.invert(b(x)) - x);
    worst = std::max(worst, err);
  }
  s.check("map.branch_inversion_roundtrip", worst < 1e-10, worst);
}

void cocycle_suite(Suite& s, std::uint64_t seed) {
  std::mt19937_64 rng(derive_seed(seed, "verify.cocycle", 0));
  std::uniform_real_distribution<double> unif(-1.0, 1.4);
  double env_err = 0.0;
  bool pliss_ok = true, density_ok = true;
  for (int rep = 0; rep < 20; ++rep) {
    std::vector<double> inc(200);
    for (auto& v : inc) v = unif(rng);
    Cocycle c = Cocycle::from_increments(inc, 1.4);
    double sigma = 0.1;
    auto env = sigma_envelope(c, sigma);
    // quadratic brute force at integers
    for (std::size_t t = 0; t < env.size(); ++t) {
      double m = c.values[t];
      for (std::size_t u = 0; u < t; ++u)
        m = std::max(m, c.values[u] + sigma * (t - u));
      env_err = std::max(env_err, std::abs(m - env[t]));
    }
    auto pl = pliss_times(c, sigma);
    for (int n : pl.times)
      if (!is_pliss_time_direct(c, n, sigma)) pliss_ok = false;
    auto cr = crossing_intervals(c, sigma, 0.4, 0.8);
    for (const auto& ci : cr.intervals)
      if (ci.pliss_count + 1e-9 < cr.density_bound * ci.tau2)
        density_ok = false;
  }
  s.check("cocycle.envelope_bruteforce", env_err < 1e-12, env_err);
  s.check("cocycle.pliss_direct", pliss_ok, pliss_ok ? 1.0 : 0.0);
  s.check("cocycle.crossing_density", density_ok, density_ok ? 1.0 : 0.0);
  s.check("cocycle.alpha_sharp_degenerate",
          alpha_sharp(0.7, 0.7, std::log(4.0)) == 0.7,
          alpha_sharp(0.7, 0.7, std::log(4.0)));
}

void pressure_suite(Suite& s, int threads) {
  auto tent = MultimodalMap::tent();
  double t = 0.7;
  auto br = pressure_markov(tent, t, 10);
  double exact = (1.0 - t) * std::log(2.0);
  s.check("pressure.tent_closed_form",
          br.lower - 1e-10 <= exact && exact <= br.upper + 1e-10 &&
              br.width() < 1e-10,
          br.mid() - exact);

  auto two = MultimodalMap::two_slope();
  auto curve = build_pressure_curve(two, -6.0, 6.0, 61, 10, threads);
  double t0_exact = std::log((1.0 + std::sqrt(5.0)) / 2.0) / std::log(2.0);
  s.check("pressure.two_slope_t0", std::abs(curve.t0 - t0_exact) < 1e-6,
          curve.t0);
  s.check("pressure.two_slope_chi_inf",
          std::abs(curve.chi_inf - std::log(2.0)) < 1e-4, curve.chi_inf);
  s.check("pressure.two_slope_chi_sup",
          std::abs(curve.chi_sup - std::log(4.0)) < 1e-4, curve.chi_sup);
  auto g = graph_pressure(MarkovGraph::from_markov_map(two), 0.5);
  double m = pressure_markov(two, 0.5, 10).mid();
  s.check("pressure.graph_vs_markov", std::abs(g.value - m) < 1e-6,
          g.value - m);
}

void pullback_suite(Suite& s, std::uint64_t seed) {
  auto tent = MultimodalMap::tent();
  auto tree = pull_back_tree(tent, 0.5, 0.1, 3);
  bool diam_ok = true, forward_ok = true;
  for (int k = 1; k <= 3; ++k) {
    double expect = 0.2 * std::pow(2.0, -k);
    for (std::size_t i : tree.by_depth[static_cast<std::size_t>(k)])
      if (std::abs(tree.nodes[i].iv.length() - expect) > 1e-12)
        diam_ok = false;
  }
  for (std::size_t i : tree.by_depth[3]) {
    double p = tree.nodes[i].iv.mid();
    for (int k = 0; k < 3; ++k) p = tent.evaluate_clamped(p);
    if (std::abs(p - 0.5) > 0.1 + 1e-8) forward_ok = false;
  }
  s.check("pullback.tent_tree_diameters", diam_ok, diam_ok ? 1.0 : 0.0);
  s.check("pullback.leaf_forward_consistency", forward_ok,
          forward_ok ? 1.0 : 0.0);

  // two-slope telescope: affine-exact fitted constant across Pliss times
  auto two = MultimodalMap::two_slope();
  std::mt19937_64 rng(derive_seed(seed, "verify.pullback", 0));
  std::uniform_int_distribution<int> coin(0, 1);
  const int horizon = 40;
  std::vector<int> itin(horizon);
  for (auto& b : itin) b = coin(rng);
  double x = two.backward_point(itin);
  Cocycle c = build_cocycle(two, x, horizon);
  auto pl = pliss_times(c, 0.5);
  double a1_min = 1e300, a1_max = 0.0;
  int used = 0;
  auto orbit2 = two.orbit(x, horizon);
  for (int n : pl.times) {
    if (n < 3 || n >= horizon || used >= 5) continue;
    double yend = orbit2[static_cast<std::size_t>(n)];
    if (yend < 0.011 || yend > 0.989) continue;  // root ball would be clipped
    auto rep = telescope_check(two, x, n, 0.5, 0.0, 0.01);
    a1_min = std::min(a1_min, rep.fitted_A1);
    a1_max = std::max(a1_max, rep.fitted_A1);
    ++used;
  }
  s.check("pullback.telescope_A1_invariant",
          used > 0 && a1_max - a1_min < 1e-9, a1_max - a1_min);

  auto sc1 = singular_branch_count(tent, 0.37, 8, 0.01);
  auto sc2 = singular_branch_count(tent, 0.37, 8, 0.005);
  bool mono_n = true;
  for (std::size_t i = 1; i < sc1.counts.size(); ++i)
    if (sc1.counts[i] < sc1.counts[i - 1]) mono_n = false;
  s.check("pullback.N_monotone_in_n", mono_n, mono_n ? 1.0 : 0.0);
  s.check("pullback.N_antitone_in_r", sc2.counts.back() <= sc1.counts.back(),
          static_cast<double>(sc1.counts.back() - sc2.counts.back()));
}

void spectrum_suite(Suite& s, std::uint64_t seed) {
  auto tent = MultimodalMap::tent();
  auto est = empirical_spectrum(tent, 10);
  s.check("spectrum.tent_dimension_one",
          est.bin_centers.size() == 1 &&
              std::abs(est.dim_estimates[0] - 1.0) < 1e-12,
          est.dim_estimates[0]);

  auto two = MultimodalMap::two_slope();
  auto est2 = empirical_spectrum(two, 10);
  std::size_t total = 0;
  for (auto c : est2.counts) total += c;
  s.check("spectrum.cylinder_count_conservation", total == 1024,
          static_cast<double>(total));

  auto audit = exponent_range_audit(two, 200, 400, std::log(2.0),
                                    std::log(4.0),
                                    derive_seed(seed, "verify.spectrum", 0));
  s.check("spectrum.exponent_range_audit", audit.violations.empty(),
          static_cast<double>(audit.violations.size()));
}

}  // namespace

VerifyResult run_verify_suite(const std::string& suite, std::uint64_t seed,
                              int threads) {
  std::ostringstream os;
  Suite s(os);
  bool all = suite == "all";
  bool known = all;
  if (all || suite == "map") known = true, map_suite(s, seed);
  if (all || suite == "cocycle") known = true, cocycle_suite(s, seed);
  if (all || suite == "pressure") known = true, pressure_suite(s, threads);
  if (all || suite == "pullback") known = true, pullback_suite(s, seed);
  if (all || suite == "spectrum") known = true, spectrum_suite(s, seed);
  if (!known) throw InvalidArgs("unknown verify suite '" + suite + "'");
  os << "checks=" << s.checks_ << " failures=" << s.failures_ << "\n";
  VerifyResult res;
  res.report = os.str();
  res.checks = s.checks_;
  res.failures = s.failures_;
  return res;
}

}  // namespace lyapspec
