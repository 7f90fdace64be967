#include "lyapspec/pullback.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <limits>
#include <sstream>

#include "lyapspec/cocycle.hpp"
#include "lyapspec/csv.hpp"

namespace lyapspec {

namespace {

constexpr double kSlack = 1e-12;
constexpr double kInf = std::numeric_limits<double>::infinity();

bool meets_singular(const MultimodalMap& map, const Interval& iv) {
  for (const auto& s : map.singular_set())
    if (iv.contains(s.location, kSlack)) return true;
  return false;
}

bool meets_critical(const MultimodalMap& map, const Interval& iv) {
  for (double c : map.critical_set())
    if (iv.contains(c, kSlack)) return true;
  return false;
}

Interval clip_ball(const MultimodalMap& map, double y, double r) {
  Interval hull = map.domain_hull();
  return Interval{std::max(y - r, hull.a), std::min(y + r, hull.b)};
}

}  // namespace

std::vector<int> PullbackTree::signature(std::size_t node) const {
  std::vector<int> sig;
  for (int i = static_cast<int>(node); i > 0; i = nodes[static_cast<std::size_t>(i)].parent)
    sig.push_back(nodes[static_cast<std::size_t>(i)].branch);
  std::reverse(sig.begin(), sig.end());
  return sig;
}

int PullbackTree::critical_encounters(const MultimodalMap& map,
                                      std::size_t node) const {
  int count = 0;
  for (int i = static_cast<int>(node); i >= 0; i = nodes[static_cast<std::size_t>(i)].parent)
    if (meets_critical(map, nodes[static_cast<std::size_t>(i)].iv)) ++count;
  return count;
}

double PullbackTree::max_diameter_at(int depth) const {
  double m = 0.0;
  for (std::size_t i : by_depth[static_cast<std::size_t>(depth)])
    m = std::max(m, nodes[i].iv.length());
  return m;
}

PullbackTree pull_back_tree(const MultimodalMap& map, double y, double r,
                            int n, PrunePolicy prune,
                            const std::vector<double>& track_points,
                            std::size_t node_cap, std::size_t per_depth_cap) {
  if (r <= 0.0) throw InvalidArgs("pull-back ball radius must be positive");
  if (!map.domain_hull().contains(y, kSlack))
    throw OutOfDomain(y);
  if (prune == PrunePolicy::keep_track_branch &&
      track_points.size() < static_cast<std::size_t>(n) + 1)
    throw InvalidArgs("keep_track_branch needs a track point per depth");

  PullbackTree tree;
  tree.y = y;
  tree.r = r;
  tree.depth = n;
  tree.by_depth.assign(static_cast<std::size_t>(n) + 1, {});

  Interval root = clip_ball(map, y, r);
  tree.nodes.push_back({0, root, -1, -1, meets_singular(map, root)});
  tree.by_depth[0].push_back(0);

  for (int k = 1; k <= n; ++k) {
    for (std::size_t pi : tree.by_depth[static_cast<std::size_t>(k - 1)]) {
      Interval parent = tree.nodes[pi].iv;
      for (const auto& [b, J] : map.monotone_branch_inverses(parent)) {
        if (J.length() <= 0.0) continue;
        if (prune == PrunePolicy::keep_track_branch &&
            !J.contains(track_points[static_cast<std::size_t>(k)], kSlack))
          continue;
        if (prune == PrunePolicy::cap_per_depth &&
            tree.by_depth[static_cast<std::size_t>(k)].size() >= per_depth_cap)
          break;
        if (tree.nodes.size() >= node_cap)
          throw TreeExplosion(tree.nodes.size());
        tree.nodes.push_back(
            {k, J, static_cast<int>(pi), b, meets_singular(map, J)});
        tree.by_depth[static_cast<std::size_t>(k)].push_back(tree.nodes.size() - 1);
      }
    }
  }
  return tree;
}

// ---------------------------------------------------------------------------

TelescopeReport telescope_check(const MultimodalMap& map, double x, int n,
                                double sigma, double epsilon, double r) {
  Cocycle c = build_cocycle(map, x, n);
  if (!is_pliss_time_direct(c, n, sigma)) throw NotPlissTime(n);

  TelescopeReport rep;
  rep.x = x;
  rep.n = n;
  rep.sigma = sigma;
  rep.epsilon = epsilon;
  rep.r = r;

  std::vector<double> orbit = map.orbit(x, n);
  Interval comp = clip_ball(map, orbit.back(), r);
  rep.diameters.resize(static_cast<std::size_t>(n));
  rep.multipliers.resize(static_cast<std::size_t>(n));
  for (int k = 1; k <= n; ++k) {
    double pt = orbit[static_cast<std::size_t>(n - k)];
    bool found = false;
    for (const auto& [b, J] : map.monotone_branch_inverses(comp)) {
      if (J.contains(pt, kSlack)) {
        comp = J;
        found = true;
        break;
      }
    }
    if (!found)
      throw OutOfDomain(pt);  // orbit round-off pushed the point off its component
    rep.diameters[static_cast<std::size_t>(k - 1)] = comp.length();
    // Phi(n) - Phi(n-k) = log|(f^k)'(f^{n-k}(x))|
    rep.multipliers[static_cast<std::size_t>(k - 1)] =
        std::exp(c.values[static_cast<std::size_t>(n)] -
                 c.values[static_cast<std::size_t>(n - k)]);
  }

  double A1 = 0.0;
  for (int k = 1; k <= n; ++k) {
    std::size_t i = static_cast<std::size_t>(k - 1);
    A1 = std::max(A1, rep.diameters[i] * rep.multipliers[i] *
                          std::exp(-epsilon * k) / r);
  }
  rep.fitted_A1 = A1;
  rep.bounds.resize(static_cast<std::size_t>(n));
  rep.sigma_bound_ok = true;
  for (int k = 1; k <= n; ++k) {
    std::size_t i = static_cast<std::size_t>(k - 1);
    rep.bounds[i] = r * A1 * std::exp(epsilon * k) / rep.multipliers[i];
    if (rep.diameters[i] >
        r * A1 * std::exp(-(sigma - epsilon) * k) * (1.0 + 1e-12))
      rep.sigma_bound_ok = false;
  }
  return rep;
}

// ---------------------------------------------------------------------------

namespace {

struct RestartState {
  int depth;
  double point;
  Interval comp;
};

}  // namespace

SingularCountReport singular_branch_count(const MultimodalMap& map, double y,
                                          int n, double r,
                                          std::size_t node_cap) {
  if (r <= 0.0) throw InvalidArgs("radius must be positive");
  SingularCountReport rep;
  rep.y = y;
  rep.r = r;
  rep.n = n;

  // distinct (step, point) restart pairs, with the step they appear at
  std::set<std::pair<int, long long>> pairs;
  auto key = [](double p) {
    return static_cast<long long>(std::llround(p * 1e10));
  };
  std::vector<int> restarts_by_depth(static_cast<std::size_t>(n) + 1, 0);

  std::size_t visited = 0;
  std::vector<RestartState> stack{{0, y, clip_ball(map, y, r)}};
  while (!stack.empty()) {
    RestartState s = stack.back();
    stack.pop_back();
    if (++visited > node_cap) throw TreeExplosion(visited);
    if (s.depth == n) continue;
    for (const auto& [b, J] : map.monotone_branch_inverses(s.comp)) {
      const auto& br = map.branches()[static_cast<std::size_t>(b)];
      if (!br.image().contains(s.point, kSlack)) continue;
      double q = br.invert(std::clamp(s.point, br.image().a, br.image().b));
      if (!J.contains(q, kSlack)) continue;
      int d = s.depth + 1;
      if (meets_singular(map, J)) {
        if (pairs.insert({d, key(q)}).second)
          ++restarts_by_depth[static_cast<std::size_t>(d)];
        stack.push_back({d, q, clip_ball(map, q, r)});
      } else {
        stack.push_back({d, q, J});
      }
    }
  }

  rep.counts.resize(static_cast<std::size_t>(n));
  int running = 1;  // the conventional root pair (y, 0)
  for (int m = 1; m <= n; ++m) {
    running += restarts_by_depth[static_cast<std::size_t>(m)];
    rep.counts[static_cast<std::size_t>(m - 1)] = running;
  }

  // least-squares fit of log N(m) against m
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (int m = 1; m <= n; ++m) {
    double lx = m, ly = std::log(rep.counts[static_cast<std::size_t>(m - 1)]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  double denom = n * sxx - sx * sx;
  rep.eps_hat = denom > 0.0 ? (n * sxy - sx * sy) / denom : 0.0;
  rep.A2_hat = std::exp(sy / n - rep.eps_hat * sx / n);
  return rep;
}

// ---------------------------------------------------------------------------

TceReport tce_diagnostic(const MultimodalMap& map, double x, int n_max,
                         double r, int M_cap) {
  TceReport rep;
  rep.x = x;
  rep.r = r;
  rep.n_max = n_max;
  rep.M_cap = M_cap;
  std::vector<double> orbit = map.orbit(x, n_max);
  int good = 0;
  for (int n = 1; n <= n_max; ++n) {
    Interval comp = clip_ball(map, orbit[static_cast<std::size_t>(n)], r);
    int count = 0;
    for (int j = 1; j <= n; ++j) {  // component at f^{n-j}(x)
      double pt = orbit[static_cast<std::size_t>(n - j)];
      bool found = false;
      for (const auto& [b, J] : map.monotone_branch_inverses(comp)) {
        if (J.contains(pt, kSlack)) {
          comp = J;
          found = true;
          break;
        }
      }
      if (!found) break;
      if (meets_critical(map, comp)) ++count;
    }
    rep.counts.push_back(count);
    rep.max_count = std::max(rep.max_count, count);
    if (count <= M_cap) ++good;
  }
  rep.tce_density = static_cast<double>(good) / n_max;
  return rep;
}

// ---------------------------------------------------------------------------

double distortion(const MultimodalMap& map, const std::vector<int>& chain,
                  const Interval& Z, int grid_points) {
  if (chain.empty()) throw InvalidArgs("empty inverse-branch chain");
  if (grid_points < 3) throw InvalidArgs("grid needs at least 3 points");
  double lo = kInf, hi = -kInf;
  for (int i = 0; i < grid_points; ++i) {
    double z = Z.a + Z.length() * i / (grid_points - 1);
    double log_gp = 0.0;  // log |g'(z)| by the chain rule
    double p = z;
    for (int b : chain) {
      const auto& br = map.branches()[static_cast<std::size_t>(b)];
      if (!br.image().contains(p, kSlack))
        throw BranchNotDiffeomorphic("inverse chain leaves branch " + std::to_string(b));
      p = br.invert(std::clamp(p, br.image().a, br.image().b));
      double d = std::abs(br.deriv(p));
      if (d <= 0.0) throw BranchNotDiffeomorphic("inverse chain leaves branch " + std::to_string(b));
      log_gp -= std::log(d);
    }
    lo = std::min(lo, log_gp);
    hi = std::max(hi, log_gp);
  }
  return std::exp(hi - lo);
}

// ---------------------------------------------------------------------------

CriticalImageBoundReport critical_image_bound_check(const MultimodalMap& map,
                                                    const CriticalPoint& c,
                                                    int samples,
                                                    std::uint64_t seed) {
  if (c.R0 <= 0.0) throw InvalidArgs("critical point has no non-flatness radius");
  CriticalImageBoundReport rep;
  rep.min_ratio = kInf;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  Interval hull = map.domain_hull();
  double lo = std::max(c.location - c.R0, hull.a);
  double hi = std::min(c.location + c.R0, hull.b);
  double denom = 2.0 * c.order * std::pow(c.A0, 4);

  for (int s = 0; s < samples; ++s) {
    double u = lo + (hi - lo) * unif(rng);
    double v = lo + (hi - lo) * unif(rng);
    Interval T{std::min(u, v), std::max(u, v)};
    if (T.length() < 1e-12) {
      --s;
      continue;
    }
    double x = T.a + T.length() * unif(rng);
    // exact image range of f over T (continuous across the critical point)
    double img_lo = kInf, img_hi = -kInf;
    for (const auto& br : map.branches()) {
      auto part = br.interval.intersect(T);
      if (!part || part->length() <= 0.0) continue;
      auto [rlo, rhi] = br.value_fn.range_on(part->a, part->b);
      img_lo = std::min(img_lo, rlo);
      img_hi = std::max(img_hi, rhi);
    }
    double image_diam = img_hi - img_lo;
    double bound = T.length() * std::abs(map.derivative(x)) / denom;
    ++rep.samples;
    if (bound <= 0.0) continue;
    double ratio = image_diam / bound;
    rep.min_ratio = std::min(rep.min_ratio, ratio);
    if (ratio < 1.0) ++rep.violations;
  }
  return rep;
}

// ---------------------------------------------------------------------------

ShadowBudgetReport shadow_budget(const MultimodalMap& map, double x, int n,
                                 double kappa, int M) {
  ShadowBudgetReport rep;
  rep.x = x;
  rep.n = n;
  rep.kappa = kappa;
  std::vector<double> orbit = map.orbit(x, n);
  const auto& refs = map.shadow_reference_points();
  if (refs.empty()) throw InvalidArgs("map exposes no shadow reference points");

  rep.a.resize(static_cast<std::size_t>(n));
  // closest-approach index per reference point, dropped from the primed sum
  std::vector<int> closest(refs.size(), -1);
  std::vector<double> closest_dist(refs.size(), kInf);
  for (int j = 0; j < n; ++j) {
    double best = kInf;
    for (std::size_t ci = 0; ci < refs.size(); ++ci) {
      double d = std::abs(orbit[static_cast<std::size_t>(j)] - refs[ci]);
      best = std::min(best, d);
      if (d < closest_dist[ci]) {
        closest_dist[ci] = d;
        closest[ci] = j;
      }
    }
    if (best == 0.0) throw CriticalOrbit(j);
    rep.a[static_cast<std::size_t>(j)] = -std::log(best);
  }

  double sum_prime = 0.0;
  for (int j = 0; j < n; ++j) {
    bool dropped = false;
    for (std::size_t ci = 0; ci < refs.size(); ++ci)
      if (closest[ci] == j) dropped = true;
    if (!dropped) sum_prime += std::max(0.0, rep.a[static_cast<std::size_t>(j)]);
  }
  rep.sum_prime_over_n = sum_prime / n;

  // shadow of time j covers [j, j + kappa * a(j)]
  double total = 0.0;
  std::vector<int> cover(static_cast<std::size_t>(n) + 1, 0);
  for (int j = 0; j < n; ++j) {
    double len = kappa * std::max(0.0, rep.a[static_cast<std::size_t>(j)]);
    total += len;
    int last = std::min(n, j + static_cast<int>(std::floor(len)));
    for (int i = j; i <= last; ++i) ++cover[static_cast<std::size_t>(i)];
  }
  rep.total_shadow_length = total;
  int over = 0;
  for (int i = 0; i <= n; ++i)
    if (cover[static_cast<std::size_t>(i)] > M) ++over;
  rep.over_covered_fraction = static_cast<double>(over) / (n + 1);
  return rep;
}

// ---------------------------------------------------------------------------

void pullback_tree_to_csv(const PullbackTree& tree, const std::string& path) {
  CsvWriter w(path);
  w.row("depth", "left", "right", "signature", "singular_flag");
  for (std::size_t i = 0; i < tree.nodes.size(); ++i) {
    const auto& n = tree.nodes[i];
    std::string sig;
    for (int b : tree.signature(i)) {
      if (!sig.empty()) sig += '.';
      sig += std::to_string(b);
    }
    w.row(n.depth, n.iv.a, n.iv.b, sig.empty() ? std::string("-") : sig,
          n.contains_singular ? 1 : 0);
  }
}

namespace {

void node_to_json(const PullbackTree& tree,
                  const std::vector<std::vector<std::size_t>>& children,
                  std::size_t i, std::ostringstream& os) {
  const auto& n = tree.nodes[i];
  os << "{\"depth\":" << n.depth << ",\"left\":" << format_number(n.iv.a)
     << ",\"right\":" << format_number(n.iv.b) << ",\"branch\":" << n.branch
     << ",\"singular\":" << (n.contains_singular ? "true" : "false")
     << ",\"children\":[";
  for (std::size_t k = 0; k < children[i].size(); ++k) {
    if (k) os << ',';
    node_to_json(tree, children, children[i][k], os);
  }
  os << "]}";
}

}  // namespace

std::string pullback_tree_to_json(const PullbackTree& tree) {
  std::vector<std::vector<std::size_t>> children(tree.nodes.size());
  for (std::size_t i = 1; i < tree.nodes.size(); ++i)
    children[static_cast<std::size_t>(tree.nodes[i].parent)].push_back(i);
  std::ostringstream os;
  node_to_json(tree, children, 0, os);
  os << '\n';
  return os.str();
}

}  // namespace lyapspec
