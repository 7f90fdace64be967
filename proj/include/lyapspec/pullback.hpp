#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lyapspec/errors.hpp"
#include "lyapspec/map.hpp"

namespace lyapspec {

enum class PrunePolicy { none, keep_track_branch, cap_per_depth };

struct PullbackNode {
  int depth = 0;       // k: node interval is a component of f^{-k}(root)
  Interval iv;
  int parent = -1;     // index into PullbackTree::nodes
  int branch = -1;     // branch index of the last inverse step
  bool contains_singular = false;
};

struct PullbackTree {
  double y = 0.0;
  double r = 0.0;
  int depth = 0;
  std::vector<PullbackNode> nodes;                  // BFS order, nodes[0] = root
  std::vector<std::vector<std::size_t>> by_depth;   // node indices per depth

  // branch indices from the root down to the node
  std::vector<int> signature(std::size_t node) const;
  // number of ancestors (including the node) meeting the critical set
  int critical_encounters(const MultimodalMap& map, std::size_t node) const;
  double max_diameter_at(int depth) const;
};

// Components of f^{-k}(B(y,r)), k <= n, one node per (branch, piece); built
// breadth-first with children ordered by branch index. track_points[k] is the
// point the depth-k component must contain under keep_track_branch.
PullbackTree pull_back_tree(const MultimodalMap& map, double y, double r, int n,
                            PrunePolicy prune = PrunePolicy::none,
                            const std::vector<double>& track_points = {},
                            std::size_t node_cap = 1000000,
                            std::size_t per_depth_cap = 4096);

struct TelescopeReport {
  double x = 0.0;
  int n = 0;
  double sigma = 0.0;
  double epsilon = 0.0;
  double r = 0.0;
  std::vector<double> diameters;    // k = 1..n, component containing f^{n-k}(x)
  std::vector<double> multipliers;  // |(f^k)'(f^{n-k}(x))|
  std::vector<double> bounds;       // r * A1 * e^{k eps} / multiplier
  double fitted_A1 = 0.0;           // minimal constant making the bound hold
  bool sigma_bound_ok = false;      // diam_k <= r * A1 * e^{-k(sigma-eps)}
};

// Pull-back diameters along the backward orbit of a verified Pliss time.
TelescopeReport telescope_check(const MultimodalMap& map, double x, int n,
                                double sigma, double epsilon, double r);

struct SingularCountReport {
  double y = 0.0;
  double r = 0.0;
  int n = 0;
  std::vector<int> counts;   // N(y,m,r) for m = 1..n
  double A2_hat = 0.0;       // exp(intercept) of the log-linear fit
  double eps_hat = 0.0;      // slope of log N(m) against m
};

// Restart recursion over backward branches: each singular encounter restarts
// the radius-r ball at the current preimage point; N counts the distinct
// maximal (point, step) pairs, including the conventional root pair.
SingularCountReport singular_branch_count(const MultimodalMap& map, double y,
                                          int n, double r,
                                          std::size_t node_cap = 1000000);

struct TceReport {
  double x = 0.0;
  double r = 0.0;
  int n_max = 0;
  int M_cap = 0;
  std::vector<int> counts;   // per n: critical-meeting pull-backs along the orbit
  int max_count = 0;
  double tce_density = 0.0;  // fraction of n with count <= M_cap
};

TceReport tce_diagnostic(const MultimodalMap& map, double x, int n_max,
                         double r, int M_cap);

// Maximal distortion sup |g'(a)| / |g'(b)| of the inverse-branch composition
// g = branches[chain.back()]^{-1} o ... o branches[chain.front()]^{-1} over Z,
// sampled on an endpoint-and-midpoint grid.
double distortion(const MultimodalMap& map, const std::vector<int>& chain,
                  const Interval& Z, int grid_points = 129);

struct CriticalImageBoundReport {
  int samples = 0;
  int violations = 0;
  double min_ratio = 0.0;  // min over samples of diam f(T) / bound
};

// Randomized check of diam f(T) >= diam T * |f'(x)| / (2 d A0^4) for
// T inside B(c, R0) and x in T.
CriticalImageBoundReport critical_image_bound_check(const MultimodalMap& map,
                                                    const CriticalPoint& c,
                                                    int samples,
                                                    std::uint64_t seed);

struct ShadowBudgetReport {
  double x = 0.0;
  int n = 0;
  double kappa = 0.0;
  std::vector<double> a;          // a(j) = -log dist(f^j(x), Crit)
  double sum_prime_over_n = 0.0;  // (1/n) sum' a(j), closest approaches dropped
  double total_shadow_length = 0.0;
  double over_covered_fraction = 0.0;  // times covered by > M shadows
};

ShadowBudgetReport shadow_budget(const MultimodalMap& map, double x, int n,
                                 double kappa, int M = 2);

void pullback_tree_to_csv(const PullbackTree& tree, const std::string& path);
std::string pullback_tree_to_json(const PullbackTree& tree);

}  // namespace lyapspec
