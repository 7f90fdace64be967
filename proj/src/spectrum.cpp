#include "lyapspec/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "lyapspec/csv.hpp"

namespace lyapspec {

namespace {

bool all_affine(const MultimodalMap& map) {
  for (const auto& b : map.branches())
    if (!b.is_affine()) return false;
  return true;
}

bool full_branch(const MultimodalMap& map) {
  for (const auto& b : map.branches())
    for (const auto& iv : map.domain_intervals())
      if (!(b.image().contains(iv.a, 1e-12) && b.image().contains(iv.b, 1e-12)))
        return false;
  return true;
}

// alpha-hat for a non-affine cylinder: evaluate log|(f^n)'| at the interval
// endpoints and midpoint via forward orbits.
double cylinder_alpha(const MultimodalMap& map, const Interval& iv, int n) {
  double best = -std::numeric_limits<double>::infinity();
  for (double x : {iv.a + 1e-13 * iv.length(), iv.mid(),
                   iv.b - 1e-13 * iv.length()}) {
    double sum = 0.0;
    double p = x;
    bool ok = true;
    for (int k = 0; k < n; ++k) {
      double d = std::abs(map.derivative(p));
      if (d <= 0.0) {
        ok = false;
        break;
      }
      sum += std::log(d);
      p = map.evaluate_clamped(p);
    }
    if (ok) best = std::max(best, sum / n);
  }
  return best;
}

struct CylinderVisitor {
  const MultimodalMap& map;
  int depth;
  bool affine;
  std::vector<double> log_slopes;  // per branch, affine maps only
  std::vector<double> alphas;

  void visit(const Interval& iv, double log_sum, int level) {
    if (level == depth) {
      alphas.push_back(affine ? log_sum / depth
                              : cylinder_alpha(map, iv, depth));
      return;
    }
    for (std::size_t b = 0; b < map.branches().size(); ++b) {
      auto pre = map.branches()[b].preimage(iv);
      if (!pre || pre->length() <= 1e-15) continue;
      visit(*pre, log_sum + (affine ? log_slopes[b] : 0.0), level + 1);
    }
  }
};

}  // namespace

LevelSetEstimate empirical_spectrum(const MultimodalMap& map, int depth,
                                    double bin_width) {
  if (!map.is_markov()) throw NotMarkov(map.name());
  if (depth < 1 || depth > 24) throw DepthTooLarge(depth);

  CylinderVisitor v{map, depth, all_affine(map), {}, {}};
  if (v.affine)
    for (const auto& b : map.branches())
      v.log_slopes.push_back(std::log(std::abs(b.deriv(b.interval.mid()))));
  for (const auto& b : map.branches())
    v.visit(b.interval, v.affine ? v.log_slopes[&b - map.branches().data()] : 0.0, 1);

  LevelSetEstimate est;
  est.depth = depth;
  est.total_cylinders = v.alphas.size();
  auto [mn, mx] = std::minmax_element(v.alphas.begin(), v.alphas.end());
  est.alpha_min = *mn;
  est.alpha_max = *mx;
  double spread = est.alpha_max - est.alpha_min;
  est.bin_width = bin_width > 0.0 ? bin_width
                                  : (spread > 0.0 ? spread / 40.0 : 1.0);

  int nbins = std::max(1, static_cast<int>(std::ceil(spread / est.bin_width)) +
                              (spread > 0.0 ? 0 : 0));
  if (spread == 0.0) nbins = 1;
  est.counts.assign(static_cast<std::size_t>(nbins), 0);
  for (double a : v.alphas) {
    int bi = spread == 0.0
                 ? 0
                 : std::min(nbins - 1, static_cast<int>((a - est.alpha_min) /
                                                        est.bin_width));
    ++est.counts[static_cast<std::size_t>(bi)];
  }
  for (int bi = 0; bi < nbins; ++bi) {
    double center = est.alpha_min + (bi + 0.5) * est.bin_width;
    if (spread == 0.0) center = est.alpha_min;
    est.bin_centers.push_back(center);
    std::size_t c = est.counts[static_cast<std::size_t>(bi)];
    est.dim_estimates.push_back(
        c == 0 || center <= 0.0
            ? 0.0
            : std::log(static_cast<double>(c)) / (depth * center));
  }
  // degenerate single-exponent maps (tent): one cylinder class, dimension 1
  if (spread == 0.0 && est.alpha_min > 0.0)
    est.dim_estimates[0] =
        std::log(static_cast<double>(est.total_cylinders)) /
        (depth * est.alpha_min);
  return est;
}

SpectrumComparison compare_to_prediction(const LevelSetEstimate& est,
                                         const SpectrumCurve& curve,
                                         double boundary_exclusion) {
  if (curve.alpha_grid.empty() || est.bin_centers.empty())
    throw NoOverlap("empty spectrum data");
  double lo = curve.alpha_grid.front(), hi = curve.alpha_grid.back();
  double margin = boundary_exclusion * (hi - lo);
  double in_lo = lo + margin, in_hi = hi - margin;

  auto predict = [&](double a) {
    const auto& g = curve.alpha_grid;
    auto it = std::lower_bound(g.begin(), g.end(), a);
    if (it == g.begin()) return curve.F.front();
    if (it == g.end()) return curve.F.back();
    std::size_t j = static_cast<std::size_t>(it - g.begin());
    double w = (a - g[j - 1]) / (g[j] - g[j - 1]);
    return (1.0 - w) * curve.F[j - 1] + w * curve.F[j];
  };

  SpectrumComparison cmp;
  for (std::size_t i = 0; i < est.bin_centers.size(); ++i) {
    double a = est.bin_centers[i];
    if (a < in_lo || a > in_hi || est.counts[i] == 0) continue;
    double p = predict(a);
    if (!std::isfinite(p)) continue;
    cmp.alpha.push_back(a);
    cmp.empirical.push_back(est.dim_estimates[i]);
    cmp.predicted.push_back(p);
    cmp.max_deviation =
        std::max(cmp.max_deviation, std::abs(est.dim_estimates[i] - p));
  }
  if (cmp.alpha.empty())
    throw NoOverlap("no interior bins overlap the predicted spectrum");
  return cmp;
}

ExponentAuditReport exponent_range_audit(const MultimodalMap& map, int samples,
                                         int horizon, double chi_inf,
                                         double chi_sup, std::uint64_t seed) {
  ExponentAuditReport rep;
  rep.samples = samples;
  rep.horizon = horizon;
  rep.chi_inf = chi_inf;
  rep.chi_sup = chi_sup;
  rep.tol = 3.0 * (chi_sup - chi_inf) / std::sqrt(static_cast<double>(horizon));
  rep.min_exponent = std::numeric_limits<double>::infinity();
  rep.max_exponent = -rep.min_exponent;

  std::mt19937_64 rng(seed);
  bool symbolic = map.is_markov() && full_branch(map) && all_affine(map);
  std::vector<double> log_slopes;
  if (symbolic)
    for (const auto& b : map.branches())
      log_slopes.push_back(std::log(std::abs(b.deriv(b.interval.mid()))));

  std::uniform_int_distribution<std::size_t> pick(0, map.branches().size() - 1);
  Interval hull = map.domain_hull();
  std::uniform_real_distribution<double> unif(hull.a, hull.b);

  for (int s = 0; s < samples; ++s) {
    double chi;
    if (symbolic) {
      double sum = 0.0;
      for (int k = 0; k < horizon; ++k) sum += log_slopes[pick(rng)];
      chi = sum / horizon;
    } else {
      double x = unif(rng);
      try {
        double sum = 0.0, p = x;
        for (int k = 0; k < horizon; ++k) {
          double d = std::abs(map.derivative(p));
          if (d <= 0.0) throw CriticalOrbit(k);
          sum += std::log(d);
          p = map.evaluate_clamped(p);
        }
        chi = sum / horizon;
      } catch (const Error&) {
        --s;  // resample escapes / critical hits; they carry no exponent
        continue;
      }
    }
    rep.min_exponent = std::min(rep.min_exponent, chi);
    rep.max_exponent = std::max(rep.max_exponent, chi);
    if (chi < chi_inf - rep.tol || chi > chi_sup + rep.tol)
      rep.violations.emplace_back(s, chi);
  }
  return rep;
}

void level_set_to_csv(const LevelSetEstimate& est, const SpectrumCurve& curve,
                      const std::string& path) {
  CsvWriter w(path);
  w.row("alpha_bin", "count", "dim_estimate", "F_predicted");
  auto predict = [&](double a) -> double {
    const auto& g = curve.alpha_grid;
    if (g.empty() || a < g.front() || a > g.back())
      return std::numeric_limits<double>::quiet_NaN();
    auto it = std::lower_bound(g.begin(), g.end(), a);
    if (it == g.begin()) return curve.F.front();
    std::size_t j = static_cast<std::size_t>(it - g.begin());
    double wgt = (a - g[j - 1]) / (g[j] - g[j - 1]);
    return (1.0 - wgt) * curve.F[j - 1] + wgt * curve.F[j];
  };
  for (std::size_t i = 0; i < est.bin_centers.size(); ++i)
    w.row(est.bin_centers[i], est.counts[i], est.dim_estimates[i],
          predict(est.bin_centers[i]));
}

}  // namespace lyapspec
