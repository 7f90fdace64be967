#pragma once

#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "lyapspec/errors.hpp"
#include "lyapspec/map.hpp"

namespace lyapspec {

struct PressureBracket {
  double lower = 0.0;
  double upper = 0.0;
  double mid() const { return 0.5 * (lower + upper); }
  double width() const { return upper - lower; }
};

// Cylinder pressure on a Markov map:
//   lower = (1/n) log sum_cyl inf_cyl |(f^n)'|^{-t},
//   upper = (1/n) log sum_cyl sup_cyl |(f^n)'|^{-t}.
// Cylinders are the monotone pieces of f^n; derivative ranges are exact
// (per-level stationary-point evaluation).
PressureBracket pressure_markov(const MultimodalMap& map, double t, int depth);

// Periodic-orbit pressure estimate (1/n) log sum_{f^n p = p} |(f^n)'(p)|^{-t}.
double pressure_periodic(const MultimodalMap& map, double t, int period);
double pressure_periodic_cached(const std::vector<PeriodicPoint>& points,
                                double t, int period);

// ---------------------------------------------------------------------------

struct MarkovGraph {
  struct Edge {
    int from;
    int to;
    double weight;  // |g'| = |f'| on the edge branch
  };
  int num_vertices = 0;
  std::vector<Edge> edges;

  // Encode a Markov map with affine branches as a graph directed system:
  // vertices are the partition intervals, one edge per (branch, target).
  static MarkovGraph from_markov_map(const MultimodalMap& map);
};

struct GraphPressureResult {
  double value = 0.0;
  bool reducible_warning = false;
  int iterations = 0;
};

// log spectral radius of the matrix M_ij = sum_{edges i->j} w^{-t},
// by power iteration to 1e-12 relative change.
GraphPressureResult graph_pressure(const MarkovGraph& g, double t);

// ---------------------------------------------------------------------------

constexpr double kInfinity = std::numeric_limits<double>::infinity();

struct PressureCurve {
  std::vector<double> t_grid;
  std::vector<double> P_lower;
  std::vector<double> P_upper;
  std::vector<double> P;  // convexified midpoints
  double chi_inf = 0.0;
  double chi_sup = 0.0;
  double chi_star = 0.0;  // -(right derivative of P at t0)
  double t0 = 0.0;
  double t_plus = kInfinity;
  double t_minus = -kInfinity;
  bool estimate_only = false;  // periodic estimate, no certified bracket
  int depth = 0;
  double max_convex_adjustment = 0.0;
  // midpoint pressure evaluator used for refinement (t0, F, chi_star)
  std::function<double(double)> eval;
};

// Samples P over [t_min, t_max], convexifies, and extracts chi_inf/chi_sup
// (Aitken-extrapolated asymptote slopes), t0, chi_star, t_plus, t_minus.
PressureCurve build_pressure_curve(const MultimodalMap& map, double t_min,
                                   double t_max, int grid_size, int depth,
                                   int threads = 1);

struct LegendreValue {
  double value = -kInfinity;
  bool finite = false;
  bool asymptote_dominated = false;
};

// F(alpha) = (1/|alpha|) inf_t (P(t) + alpha t), golden-section refined.
LegendreValue legendre_F(const PressureCurve& curve, double alpha);

struct SpectrumCurve {
  std::vector<double> alpha_grid;
  std::vector<double> F;
  double chi_star = 0.0;
  double F0 = 0.0;
  bool F0_defined = false;
};

SpectrumCurve build_spectrum_curve(const PressureCurve& curve, int grid_size);

// ---------------------------------------------------------------------------

struct ConformalMeasure {
  double t = 0.0;
  double lambda = 0.0;  // e^{P(t)}
  int depth = 0;
  // cylinders and masses per depth, masses summing to 1 at each depth
  std::vector<std::vector<Interval>> cylinders;
  std::vector<std::vector<double>> masses;
  double conformality_max_rel_error = 0.0;
  double upsilon = 0.0;  // inf over grid of mu(B(x, Delta))
  double upsilon_delta = 0.0;
};

// Transfer-operator eigenmeasure on a uniformly expanding Markov map;
// verifies mu(f(A)) = e^{P(t)} int_A |f'|^t dmu on depth-(n-1) cylinders.
ConformalMeasure conformal_eigenmeasure(const MultimodalMap& map, double t,
                                        int depth, double upsilon_delta);

// ---------------------------------------------------------------------------

struct IrregularBound {
  double alpha = 0.0;
  double beta = 0.0;
  double alpha_sharp_value = 0.0;
  double lower = 0.0;        // min(F(alpha), F(beta))
  bool lower_defined = false;
  double upper_weak = 0.0;   // max(0, max over [alpha,beta] of F)
  double upper_strong = 0.0; // max(0, min(F(alpha_sharp), F(beta)))
  bool empty = false;        // alpha_sharp < chi_inf
};

IrregularBound irregular_bound(const PressureCurve& curve, double alpha,
                               double beta);

// ---------------------------------------------------------------------------

void pressure_curve_to_csv(const PressureCurve& curve, const std::string& path);
void spectrum_curve_to_csv(const SpectrumCurve& curve, const std::string& path);
std::string pressure_summary_json(const PressureCurve& curve);

}  // namespace lyapspec
