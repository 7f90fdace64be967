#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lyapspec/errors.hpp"
#include "lyapspec/polynomial.hpp"

namespace lyapspec {

struct Interval {
  double a = 0.0;
  double b = 0.0;
  double length() const { return b - a; }
  double mid() const { return 0.5 * (a + b); }
  bool contains(double x, double slack = 0.0) const {
    return x >= a - slack && x <= b + slack;
  }
  std::optional<Interval> intersect(const Interval& o) const {
    double lo = std::max(a, o.a), hi = std::min(b, o.b);
    if (lo > hi) return std::nullopt;
    return Interval{lo, hi};
  }
};

// One maximal interval of monotonicity. value_fn and derivative_fn are the
// closed-form branch and its exact symbolic derivative.
struct MonotoneBranch {
  Interval interval;
  Polynomial value_fn;
  Polynomial derivative_fn;
  int orientation = +1;  // sign of f' on the interior

  double operator()(double x) const { return value_fn(x); }
  double deriv(double x) const { return derivative_fn(x); }
  bool is_affine() const { return value_fn.is_affine(); }

  Interval image() const {
    double va = value_fn(interval.a), vb = value_fn(interval.b);
    return orientation > 0 ? Interval{va, vb} : Interval{vb, va};
  }

  // Unique x in the branch interval with f(x)=y. Exact for affine branches,
  // bisection otherwise. Precondition: y in image().
  double invert(double y) const;

  // Preimage of the part of target covered by this branch, or nullopt.
  std::optional<Interval> preimage(const Interval& target) const;

  // [min,max] of |f'| over [a,b] within the branch, exact via stationary points.
  std::pair<double, double> abs_deriv_range(double a, double b) const {
    return derivative_fn.abs_range_on(a, b);
  }
};

enum class CriticalKind { turning, inflection };

// Smooth critical point (f'(c)=0) with its non-flatness data: for
// |x-c| <= R0 the ratio |f'(x)| / |x-c|^{d-1} stays in [1/A0, A0].
struct CriticalPoint {
  double location = 0.0;
  int order = 2;  // d(c) >= 2
  CriticalKind kind = CriticalKind::turning;
  double A0 = 1.0;
  double R0 = 0.0;
};

enum class SingularProvenance { critical, boundary, not_open };

struct SingularPoint {
  double location;
  SingularProvenance provenance;
};

struct PeriodicPoint {
  double point;
  double multiplier;  // (f^n)'(p)
};

class MultimodalMap {
 public:
  MultimodalMap(std::string name, std::vector<Interval> domain_intervals,
                std::vector<MonotoneBranch> branches,
                std::vector<CriticalPoint> critical_points, bool is_markov,
                bool exceptional);

  // --- built-in test maps ---
  static MultimodalMap tent();
  static MultimodalMap two_slope();
  static MultimodalMap chebyshev();
  static MultimodalMap quadratic(double c);
  // Builtin by name ("tent", "two-slope", "chebyshev", "quadratic:c").
  static MultimodalMap builtin(const std::string& name);
  static MultimodalMap from_json_file(const std::string& path);
  static MultimodalMap from_json_text(const std::string& text);

  const std::string& name() const { return name_; }
  const std::vector<Interval>& domain_intervals() const { return intervals_; }
  const std::vector<MonotoneBranch>& branches() const { return branches_; }
  const std::vector<CriticalPoint>& critical_points() const { return critical_; }
  const std::vector<double>& boundary_points() const { return boundary_; }
  bool is_markov() const { return markov_; }
  bool exceptional() const { return exceptional_; }

  // Critical set used by pull-back/TCE diagnostics: smooth critical points
  // plus topological turning points at branch junctions (e.g. the tent tip).
  const std::vector<double>& critical_set() const { return crit_set_; }
  // Restricted singular set S' = Crit union not-open boundary points.
  const std::vector<SingularPoint>& singular_set() const { return singular_; }
  // Reference points for shadow diagnostics; equals critical_set() when
  // nonempty, otherwise the configured fold points (Cantor-map gaps).
  const std::vector<double>& shadow_reference_points() const {
    return shadow_refs_;
  }
  void set_shadow_reference_points(std::vector<double> pts) {
    shadow_refs_ = std::move(pts);
  }
  void override_singular_set(std::vector<SingularPoint> s) {
    singular_ = std::move(s);
  }

  bool in_domain(double x, double slack = 0.0) const;
  Interval domain_hull() const;

  // value / exact derivative at x; OutOfDomain outside all intervals.
  double evaluate(double x) const;
  double derivative(double x) const;
  // evaluate with a 1e-12 clamp onto the domain, for orbit round-off.
  double evaluate_clamped(double x) const;

  // index of the branch whose interval contains x (first on shared endpoints)
  int branch_index_at(double x, double slack = 0.0) const;

  // [x, f(x), ..., f^n(x)]; throws OrbitEscaped(k) when f^k(x) leaves.
  std::vector<double> orbit(double x, int n) const;

  // All (branch_id, J) with f(J) = target intersect branch image.
  std::vector<std::pair<int, Interval>> monotone_branch_inverses(
      const Interval& target) const;

  // Monotone pieces of f^n, each given by its interval (symbolic itineraries).
  std::vector<Interval> monotone_pieces(int n) const;

  // Fixed points of f^n with exact multipliers, bisection to 1e-12,
  // duplicates within 1e-9 merged.
  std::vector<PeriodicPoint> periodic_points(int n) const;

  // sup over the domain of log|f'| (the cocycle Lipschitz constant L).
  double log_deriv_sup() const;
  // inf over the domain of |f'|; > 1 means uniformly expanding.
  double min_abs_deriv() const;
  bool uniformly_expanding() const { return min_abs_deriv() > 1.0; }

  // distance from x to the critical set (or shadow reference points).
  double dist_to_critical(double x) const;

  // Point whose forward orbit follows the branch itinerary and ends at
  // terminal: inverse branches applied right to left. For maps whose invariant
  // set is not the whole domain (Cantor-type), this is the reliable way to
  // produce points with long in-domain orbits.
  double backward_point(const std::vector<int>& itinerary,
                        double terminal = 0.0) const;

 private:
  void finalize();

  std::string name_;
  std::vector<Interval> intervals_;
  std::vector<MonotoneBranch> branches_;
  std::vector<CriticalPoint> critical_;
  std::vector<double> boundary_;
  std::vector<double> crit_set_;
  std::vector<SingularPoint> singular_;
  std::vector<double> shadow_refs_;
  bool markov_ = false;
  bool exceptional_ = false;
};

}  // namespace lyapspec
