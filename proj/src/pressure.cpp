#include "lyapspec/pressure.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <memory>
#include <numeric>
#include <sstream>
#include <thread>

#include "lyapspec/cocycle.hpp"
#include "lyapspec/csv.hpp"

namespace lyapspec {

namespace {

// A depth-n cylinder (monotone piece of f^n) with the exact range of
// log|(f^n)'| over it.
struct CylinderBound {
  Interval iv;
  double log_lo;
  double log_hi;
};

std::vector<CylinderBound> markov_cylinders(const MultimodalMap& map,
                                            int depth) {
  std::vector<CylinderBound> cyls;
  for (const auto& b : map.branches()) {
    auto [lo, hi] = b.abs_deriv_range(b.interval.a, b.interval.b);
    cyls.push_back({b.interval, std::log(lo), std::log(hi)});
  }
  for (int d = 2; d <= depth; ++d) {
    std::vector<CylinderBound> next;
    next.reserve(cyls.size() * map.branches().size());
    for (const auto& b : map.branches()) {
      for (const auto& c : cyls) {
        auto pre = b.preimage(c.iv);
        if (!pre || pre->length() <= 1e-15) continue;
        auto [lo, hi] = b.abs_deriv_range(pre->a, pre->b);
        next.push_back({*pre, c.log_lo + std::log(lo), c.log_hi + std::log(hi)});
      }
    }
    cyls.swap(next);
  }
  return cyls;
}

PressureBracket bracket_from_cylinders(const std::vector<CylinderBound>& cyls,
                                       double t, int depth) {
  double sum_lo = 0.0, sum_hi = 0.0;
  for (const auto& c : cyls) {
    double a = std::exp(-t * c.log_lo);
    double b = std::exp(-t * c.log_hi);
    sum_lo += std::min(a, b);
    sum_hi += std::max(a, b);
  }
  return {std::log(sum_lo) / depth, std::log(sum_hi) / depth};
}

}  // namespace

PressureBracket pressure_markov(const MultimodalMap& map, double t, int depth) {
  if (!map.is_markov()) throw NotMarkov(map.name());
  if (depth < 1) throw InvalidArgs("depth must be >= 1");
  auto cyls = markov_cylinders(map, depth);
  return bracket_from_cylinders(cyls, t, depth);
}

double pressure_periodic_cached(const std::vector<PeriodicPoint>& points,
                                double t, int period) {
  double sum = 0.0;
  for (const auto& p : points)
    sum += std::exp(-t * std::log(std::abs(p.multiplier)));
  return std::log(sum) / period;
}

double pressure_periodic(const MultimodalMap& map, double t, int period) {
  return pressure_periodic_cached(map.periodic_points(period), t, period);
}

// ---------------------------------------------------------------------------

MarkovGraph MarkovGraph::from_markov_map(const MultimodalMap& map) {
  if (!map.is_markov()) throw NotMarkov(map.name());
  MarkovGraph g;
  const auto& states = map.domain_intervals();
  g.num_vertices = static_cast<int>(states.size());
  auto state_of = [&](const Interval& iv) {
    for (std::size_t s = 0; s < states.size(); ++s)
      if (states[s].contains(iv.mid())) return static_cast<int>(s);
    return -1;
  };
  for (const auto& b : map.branches()) {
    if (!b.is_affine())
      throw InvalidArgs(
          "graph directed system encoding requires affine branches");
    int from = state_of(b.interval);
    Interval img = b.image();
    double w = std::abs(b.deriv(b.interval.mid()));
    for (std::size_t s = 0; s < states.size(); ++s) {
      const auto& target = states[s];
      bool covers = img.contains(target.a, 1e-12) && img.contains(target.b, 1e-12);
      bool touches = img.intersect(target) &&
                     img.intersect(target)->length() > 1e-12;
      if (touches && !covers) throw NotMarkov(map.name());
      if (covers) g.edges.push_back({from, static_cast<int>(s), w});
    }
  }
  return g;
}

GraphPressureResult graph_pressure(const MarkovGraph& g, double t) {
  if (g.num_vertices < 1 || g.edges.empty())
    throw InvalidArgs("graph pressure needs a nonempty graph");
  for (const auto& e : g.edges)
    if (e.weight <= 0.0) throw InvalidArgs("edge weights must be positive");

  GraphPressureResult res;
  // strong-connectivity probe (forward and backward reachability from 0)
  auto reach = [&](bool forward) {
    std::vector<char> seen(static_cast<std::size_t>(g.num_vertices), 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (const auto& e : g.edges) {
        int from = forward ? e.from : e.to;
        int to = forward ? e.to : e.from;
        if (from == v && !seen[static_cast<std::size_t>(to)]) {
          seen[static_cast<std::size_t>(to)] = 1;
          stack.push_back(to);
        }
      }
    }
    return seen;
  };
  auto fwd = reach(true), bwd = reach(false);
  for (int v = 0; v < g.num_vertices; ++v)
    if (!fwd[static_cast<std::size_t>(v)] || !bwd[static_cast<std::size_t>(v)])
      res.reducible_warning = true;

  std::size_t n = static_cast<std::size_t>(g.num_vertices);
  std::vector<double> M(n * n, 0.0);
  for (const auto& e : g.edges)
    M[static_cast<std::size_t>(e.from) * n + static_cast<std::size_t>(e.to)] +=
        std::exp(-t * std::log(e.weight));

  std::vector<double> x(n, 1.0), y(n, 0.0);
  double rho = 0.0;
  const int cap = 100000;
  for (int it = 1; it <= cap; ++it) {
    double norm = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double s = 0.0;
      for (std::size_t j = 0; j < n; ++j) s += M[i * n + j] * x[j];
      y[i] = s;
      norm += s;
    }
    if (norm <= 0.0)
      throw ConvergenceFailure("power iteration collapsed to zero");
    double rho_new = norm / std::accumulate(x.begin(), x.end(), 0.0);
    for (std::size_t i = 0; i < n; ++i) x[i] = y[i] / norm;
    res.iterations = it;
    if (it > 1 && std::abs(rho_new - rho) <= 1e-12 * std::max(1.0, rho_new)) {
      rho = rho_new;
      res.value = std::log(rho);
      return res;
    }
    rho = rho_new;
  }
  throw ConvergenceFailure("graph pressure power iteration hit the cap");
}

// ---------------------------------------------------------------------------

namespace {

// Aitken delta-squared, iterated twice; robust for (near-)geometric tails.
double aitken_limit(std::vector<double> s) {
  for (int round = 0; round < 2 && s.size() >= 3; ++round) {
    std::vector<double> next;
    for (std::size_t i = 0; i + 2 < s.size(); ++i) {
      double d1 = s[i + 1] - s[i];
      double d2 = s[i + 2] - s[i + 1];
      double denom = d2 - d1;
      if (std::abs(denom) < 1e-14 * (std::abs(s[i + 2]) + 1.0)) {
        next.push_back(s[i + 2]);
      } else {
        next.push_back(s[i + 2] - d2 * d2 / denom);
      }
    }
    s = std::move(next);
  }
  return s.back();
}

double bisect_decreasing(const std::function<double(double)>& g, double lo,
                         double hi, double target, double tol_t) {
  // g decreasing, g(lo) > target > g(hi); returns the crossing point
  while (hi - lo > tol_t) {
    double mid = 0.5 * (lo + hi);
    if (g(mid) > target)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

PressureCurve build_pressure_curve(const MultimodalMap& map, double t_min,
                                   double t_max, int grid_size, int depth,
                                   int threads) {
  if (grid_size < 8) throw InvalidArgs("grid size must be >= 8");
  if (t_max <= t_min) throw InvalidArgs("t range is empty");
  PressureCurve curve;
  curve.depth = depth;

  bool use_markov = map.is_markov() && map.uniformly_expanding();
  std::shared_ptr<std::vector<CylinderBound>> cyls;
  std::shared_ptr<std::vector<PeriodicPoint>> pts;
  int period = 0;
  if (use_markov) {
    cyls = std::make_shared<std::vector<CylinderBound>>(
        markov_cylinders(map, depth));
  } else {
    period = std::min(depth, 14);
    pts = std::make_shared<std::vector<PeriodicPoint>>(
        map.periodic_points(period));
    curve.estimate_only = true;
  }

  auto bracket_at = [=](double t) -> PressureBracket {
    if (cyls) return bracket_from_cylinders(*cyls, t, depth);
    double v = pressure_periodic_cached(*pts, t, period);
    return {v, v};
  };
  curve.eval = [bracket_at](double t) { return bracket_at(t).mid(); };

  curve.t_grid.resize(static_cast<std::size_t>(grid_size));
  curve.P_lower.resize(curve.t_grid.size());
  curve.P_upper.resize(curve.t_grid.size());
  for (int i = 0; i < grid_size; ++i)
    curve.t_grid[static_cast<std::size_t>(i)] =
        t_min + (t_max - t_min) * i / (grid_size - 1);

  int nthreads = std::max(1, threads);
  auto work = [&](int lo, int hi) {
    for (int i = lo; i < hi; ++i) {
      auto br = bracket_at(curve.t_grid[static_cast<std::size_t>(i)]);
      curve.P_lower[static_cast<std::size_t>(i)] = br.lower;
      curve.P_upper[static_cast<std::size_t>(i)] = br.upper;
    }
  };
  if (nthreads == 1) {
    work(0, grid_size);
  } else {
    std::vector<std::thread> pool;
    int chunk = (grid_size + nthreads - 1) / nthreads;
    for (int k = 0; k < nthreads; ++k)
      pool.emplace_back(work, k * chunk, std::min(grid_size, (k + 1) * chunk));
    for (auto& th : pool) th.join();
  }

  // convexify: lower convex hull of the upper brackets (Andrew chain)
  std::vector<std::size_t> hull;
  for (std::size_t i = 0; i < curve.t_grid.size(); ++i) {
    while (hull.size() >= 2) {
      std::size_t a = hull[hull.size() - 2], b = hull.back();
      double cross = (curve.t_grid[b] - curve.t_grid[a]) *
                         (curve.P_upper[i] - curve.P_upper[a]) -
                     (curve.t_grid[i] - curve.t_grid[a]) *
                         (curve.P_upper[b] - curve.P_upper[a]);
      if (cross < 0.0)
        hull.pop_back();
      else
        break;
    }
    hull.push_back(i);
  }
  curve.P = curve.P_upper;
  for (std::size_t h = 0; h + 1 < hull.size(); ++h) {
    std::size_t a = hull[h], b = hull[h + 1];
    for (std::size_t i = a + 1; i < b; ++i) {
      double w = (curve.t_grid[i] - curve.t_grid[a]) /
                 (curve.t_grid[b] - curve.t_grid[a]);
      curve.P[i] = (1.0 - w) * curve.P_upper[a] + w * curve.P_upper[b];
    }
  }
  for (std::size_t i = 0; i < curve.P.size(); ++i) {
    double adj = curve.P_upper[i] - curve.P[i];
    curve.max_convex_adjustment = std::max(curve.max_convex_adjustment, adj);
    double width = curve.P_upper[i] - curve.P_lower[i];
    if (adj > std::max(10.0 * width, 1e-9))
      throw GridTooCoarse("convexification moved a sample beyond bracket width");
  }

  // asymptote slopes from the outer 10% of the grid, Aitken-extrapolated
  std::size_t tail = std::max<std::size_t>(4, curve.t_grid.size() / 10);
  double h = curve.t_grid[1] - curve.t_grid[0];
  std::vector<double> right, left;
  for (std::size_t i = curve.t_grid.size() - tail; i + 1 < curve.t_grid.size();
       ++i)
    right.push_back((curve.P[i + 1] - curve.P[i]) / h);
  for (std::size_t i = tail; i-- > 0;)
    left.push_back((curve.P[i + 1] - curve.P[i]) / h);
  curve.chi_inf = -aitken_limit(right);
  curve.chi_sup = -aitken_limit(left);

  // t0 by bisection on the midpoint evaluator
  if (curve.eval(t_max) > 0.0) {
    curve.t0 = kInfinity;
    curve.chi_star = curve.chi_inf;
  } else if (curve.eval(t_min) < 0.0) {
    curve.t0 = -kInfinity;
    curve.chi_star = curve.chi_sup;
  } else {
    curve.t0 = bisect_decreasing(curve.eval, t_min, t_max, 0.0, 1e-10);
    double hs = 1e-5;
    curve.chi_star = -(curve.eval(curve.t0 + hs) - curve.eval(curve.t0)) / hs;
  }

  double tol_pos = curve.estimate_only ? 1e-3 : 1e-8;
  auto g_plus = [&](double t) { return curve.eval(t) + t * curve.chi_inf; };
  if (g_plus(t_max) > tol_pos) {
    curve.t_plus = kInfinity;
  } else if (g_plus(t_min) <= tol_pos) {
    curve.t_plus = t_min;  // degenerate; outside the sampled window
  } else {
    curve.t_plus = bisect_decreasing(g_plus, t_min, t_max, tol_pos, 1e-8);
  }
  auto g_minus = [&](double t) { return curve.eval(t) + t * curve.chi_sup; };
  if (g_minus(t_min) > tol_pos) {
    curve.t_minus = -kInfinity;
  } else if (g_minus(t_max) <= tol_pos) {
    curve.t_minus = t_max;
  } else {
    // g_minus is non-decreasing; find the first t with g > tol
    double lo = t_min, hi = t_max;
    while (hi - lo > 1e-8) {
      double mid = 0.5 * (lo + hi);
      if (g_minus(mid) > tol_pos)
        hi = mid;
      else
        lo = mid;
    }
    curve.t_minus = 0.5 * (lo + hi);
  }
  return curve;
}

LegendreValue legendre_F(const PressureCurve& curve, double alpha) {
  if (alpha == 0.0)
    throw InvalidArgs("F(0) is defined by the limit, not directly");
  LegendreValue out;
  auto g = [&](double t) { return curve.eval(t) + alpha * t; };
  std::size_t best = 0;
  double best_v = curve.P[0] + alpha * curve.t_grid[0];
  for (std::size_t i = 1; i < curve.t_grid.size(); ++i) {
    double v = curve.P[i] + alpha * curve.t_grid[i];
    if (v < best_v) {
      best_v = v;
      best = i;
    }
  }
  bool boundary = best == 0 || best + 1 == curve.t_grid.size();
  if (boundary) {
    out.asymptote_dominated = true;
    if (alpha < curve.chi_inf - 1e-9 || alpha > curve.chi_sup + 1e-9) {
      out.finite = false;  // infimum diverges
      out.value = -kInfinity;
      return out;
    }
    out.finite = true;
    out.value = g(curve.t_grid[best]) / std::abs(alpha);
    return out;
  }
  // golden-section on the convex section around the grid minimizer
  double a = curve.t_grid[best - 1], b = curve.t_grid[best + 1];
  const double inv_phi = 0.6180339887498949;
  double x1 = b - inv_phi * (b - a), x2 = a + inv_phi * (b - a);
  double f1 = g(x1), f2 = g(x2);
  while (b - a > 1e-10) {
    if (f1 < f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = g(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = g(x2);
    }
  }
  out.finite = true;
  out.value = std::min(f1, f2) / std::abs(alpha);
  return out;
}

SpectrumCurve build_spectrum_curve(const PressureCurve& curve, int grid_size) {
  SpectrumCurve s;
  s.chi_star = curve.chi_star;
  for (int i = 0; i < grid_size; ++i) {
    double alpha = curve.chi_inf +
                   (curve.chi_sup - curve.chi_inf) * i / (grid_size - 1);
    if (alpha == 0.0) continue;
    auto F = legendre_F(curve, alpha);
    s.alpha_grid.push_back(alpha);
    s.F.push_back(F.finite ? F.value : -kInfinity);
  }
  if (curve.chi_inf < 1e-9) {
    s.F0 = curve.t0;
    s.F0_defined = true;
  }
  return s;
}

// ---------------------------------------------------------------------------

namespace {

struct CylNode {
  Interval iv;
  std::vector<std::int8_t> itin;
};

std::string itin_key(const std::vector<std::int8_t>& v) {
  return std::string(reinterpret_cast<const char*>(v.data()), v.size());
}

}  // namespace

ConformalMeasure conformal_eigenmeasure(const MultimodalMap& map, double t,
                                        int depth, double upsilon_delta) {
  if (!map.is_markov()) throw NotMarkov(map.name());
  if (!map.uniformly_expanding()) throw NotExpanding(map.name());
  if (depth < 2) throw InvalidArgs("conformal depth must be >= 2");
  // full-branch requirement: each branch image covers the whole domain
  for (const auto& b : map.branches())
    for (const auto& iv : map.domain_intervals())
      if (!(b.image().contains(iv.a, 1e-12) && b.image().contains(iv.b, 1e-12)))
        throw NotMarkov(map.name() + " (conformal eigenmeasure needs full branches)");

  std::size_t B = map.branches().size();
  std::vector<double> w(B);  // branch derivative magnitudes (affine)
  for (std::size_t b = 0; b < B; ++b) {
    if (!map.branches()[b].is_affine())
      throw InvalidArgs("conformal eigenmeasure implemented for affine branches");
    w[b] = std::abs(map.branches()[b].deriv(map.branches()[b].interval.mid()));
  }
  double lambda = 0.0;
  for (double wi : w) lambda += std::exp(-t * std::log(wi));

  ConformalMeasure mu;
  mu.t = t;
  mu.lambda = lambda;
  mu.depth = depth;

  // enumerate cylinders by itinerary, level by level (prepend recursion)
  std::vector<std::vector<CylNode>> levels(static_cast<std::size_t>(depth) + 1);
  levels[0].push_back({map.domain_hull(), {}});
  {
    std::size_t bi = 0;
    for (const auto& br : map.branches()) {
      levels[1].push_back({br.interval, {static_cast<std::int8_t>(bi)}});
      ++bi;
    }
  }
  for (int d = 2; d <= depth; ++d) {
    for (std::size_t b = 0; b < B; ++b) {
      for (const auto& node : levels[static_cast<std::size_t>(d - 1)]) {
        auto pre = map.branches()[b].preimage(node.iv);
        if (!pre || pre->length() <= 1e-15) continue;
        std::vector<std::int8_t> it;
        it.reserve(node.itin.size() + 1);
        it.push_back(static_cast<std::int8_t>(b));
        it.insert(it.end(), node.itin.begin(), node.itin.end());
        levels[static_cast<std::size_t>(d)].push_back({*pre, std::move(it)});
      }
    }
  }

  // index maps per level for shift/mass lookups
  std::vector<std::map<std::string, std::size_t>> index(levels.size());
  for (std::size_t d = 0; d < levels.size(); ++d)
    for (std::size_t i = 0; i < levels[d].size(); ++i)
      index[d][itin_key(levels[d][i].itin)] = i;

  mu.cylinders.resize(levels.size());
  mu.masses.resize(levels.size());
  for (std::size_t d = 0; d < levels.size(); ++d) {
    mu.cylinders[d].reserve(levels[d].size());
    mu.masses[d].assign(levels[d].size(), 0.0);
    for (const auto& node : levels[d]) mu.cylinders[d].push_back(node.iv);
  }
  // leaf masses: product of branch weights^{-t} over the itinerary / lambda^n
  double total = 0.0;
  std::size_t leaf_level = static_cast<std::size_t>(depth);
  for (std::size_t i = 0; i < levels[leaf_level].size(); ++i) {
    double logm = 0.0;
    for (std::int8_t b : levels[leaf_level][i].itin)
      logm += -t * std::log(w[static_cast<std::size_t>(b)]);
    double m = std::exp(logm - depth * std::log(lambda));
    mu.masses[leaf_level][i] = m;
    total += m;
  }
  for (auto& m : mu.masses[leaf_level]) m /= total;  // exact normalization
  // parents by summation: refinement consistency holds by construction
  for (std::size_t d = leaf_level; d-- > 0;) {
    for (std::size_t i = 0; i < levels[d + 1].size(); ++i) {
      std::vector<std::int8_t> prefix(levels[d + 1][i].itin.begin(),
                                      levels[d + 1][i].itin.end() - 1);
      mu.masses[d][index[d].at(itin_key(prefix))] += mu.masses[d + 1][i];
    }
  }

  // conformality identity on depth-(n-1) cylinders:
  //   mu(f(A)) = lambda * int_A |f'|^t dmu
  std::size_t dA = leaf_level - 1;
  for (std::size_t i = 0; i < levels[dA].size(); ++i) {
    const auto& A = levels[dA][i];
    std::vector<std::int8_t> shifted(A.itin.begin() + 1, A.itin.end());
    double lhs = mu.masses[dA - 1][index[dA - 1].at(itin_key(shifted))];
    // integral over A via its leaf children
    double integral = 0.0;
    for (std::size_t c = 0; c < levels[leaf_level].size(); ++c) {
      const auto& C = levels[leaf_level][c];
      if (!std::equal(A.itin.begin(), A.itin.end(), C.itin.begin())) continue;
      double fp = std::abs(map.derivative(C.iv.mid()));
      integral += std::exp(t * std::log(fp)) * mu.masses[leaf_level][c];
    }
    double rhs = lambda * integral;
    double denom = std::max(std::abs(lhs), 1e-300);
    mu.conformality_max_rel_error =
        std::max(mu.conformality_max_rel_error, std::abs(lhs - rhs) / denom);
  }

  // Upsilon: min ball mass over a grid of leaf midpoints
  mu.upsilon_delta = upsilon_delta;
  double ups = kInfinity;
  for (std::size_t i = 0; i < levels[leaf_level].size(); ++i) {
    double x = levels[leaf_level][i].iv.mid();
    double lo = x - upsilon_delta, hi = x + upsilon_delta;
    double mass = 0.0;
    for (std::size_t c = 0; c < levels[leaf_level].size(); ++c) {
      const auto& C = levels[leaf_level][c].iv;
      double ov = std::min(hi, C.b) - std::max(lo, C.a);
      if (ov <= 0.0) continue;
      double frac = C.length() > 0.0 ? std::min(1.0, ov / C.length()) : 1.0;
      mass += frac * mu.masses[leaf_level][c];
    }
    ups = std::min(ups, mass);
  }
  mu.upsilon = ups;
  return mu;
}

// ---------------------------------------------------------------------------

IrregularBound irregular_bound(const PressureCurve& curve, double alpha,
                               double beta) {
  if (!(alpha <= beta) || !(beta > 0.0) ||
      beta > curve.chi_sup + 1e-6)
    throw InvalidBand("need alpha <= beta <= chi_sup, beta > 0");
  IrregularBound out;
  out.alpha = alpha;
  out.beta = beta;
  out.alpha_sharp_value = alpha_sharp(alpha, beta, curve.chi_sup);
  auto Fa = legendre_F(curve, alpha == 0.0 ? 1e-12 : alpha);
  auto Fb = legendre_F(curve, beta);
  out.lower_defined = Fa.finite && Fb.finite;
  out.lower = out.lower_defined ? std::min(Fa.value, Fb.value) : -kInfinity;

  double peak_alpha = std::clamp(curve.chi_star, alpha, beta);
  if (peak_alpha == 0.0) peak_alpha = 1e-12;
  auto Fpeak = legendre_F(curve, peak_alpha);
  out.upper_weak = std::max(0.0, Fpeak.finite ? Fpeak.value : 0.0);

  auto Fsharp = legendre_F(
      curve, out.alpha_sharp_value == 0.0 ? 1e-12 : out.alpha_sharp_value);
  double strong = std::min(Fsharp.finite ? Fsharp.value : -kInfinity,
                           Fb.finite ? Fb.value : -kInfinity);
  out.upper_strong = std::max(0.0, strong);
  out.empty = out.alpha_sharp_value < curve.chi_inf - 1e-12;
  return out;
}

// ---------------------------------------------------------------------------

void pressure_curve_to_csv(const PressureCurve& curve, const std::string& path) {
  CsvWriter w(path);
  w.row("t", "P_lower", "P", "P_upper");
  for (std::size_t i = 0; i < curve.t_grid.size(); ++i)
    w.row(curve.t_grid[i], curve.P_lower[i], curve.P[i], curve.P_upper[i]);
}

void spectrum_curve_to_csv(const SpectrumCurve& curve, const std::string& path) {
  CsvWriter w(path);
  w.row("alpha", "F");
  for (std::size_t i = 0; i < curve.alpha_grid.size(); ++i)
    w.row(curve.alpha_grid[i], curve.F[i]);
}

std::string pressure_summary_json(const PressureCurve& curve) {
  auto num = [](double v) -> std::string {
    if (v == kInfinity) return "\"inf\"";
    if (v == -kInfinity) return "\"-inf\"";
    return format_number(v);
  };
  std::ostringstream os;
  os << "{\n"
     << "  \"chi_inf\": " << num(curve.chi_inf) << ",\n"
     << "  \"chi_sup\": " << num(curve.chi_sup) << ",\n"
     << "  \"chi_star\": " << num(curve.chi_star) << ",\n"
     << "  \"t0\": " << num(curve.t0) << ",\n"
     << "  \"t_plus\": " << num(curve.t_plus) << ",\n"
     << "  \"t_minus\": " << num(curve.t_minus) << ",\n"
     << "  \"estimate_only\": " << (curve.estimate_only ? "true" : "false")
     << "\n}\n";
  return os.str();
}

}  // namespace lyapspec
