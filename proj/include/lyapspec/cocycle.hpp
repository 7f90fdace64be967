#pragma once

#include <algorithm>
#include <vector>

#include "lyapspec/errors.hpp"
#include "lyapspec/map.hpp"

namespace lyapspec {

// Derivative cocycle Phi(l) = log|(f^l)'(x)| sampled at integers, understood
// as the piecewise affine interpolation in between. slope_bound is a uniform
// Lipschitz constant (sup of log|f'| for map cocycles).
struct Cocycle {
  double base_point = 0.0;
  int length = 0;
  std::vector<double> values;  // Phi(0..n), Phi(0) = 0
  double slope_bound = 0.0;    // L
  double L0_estimate = 0.0;

  double increment(int k) const { return values[k + 1] - values[k]; }

  static Cocycle from_increments(const std::vector<double>& increments,
                                 double slope_bound, double base_point = 0.0);
};

Cocycle build_cocycle(const MultimodalMap& map, double x, int n);

// One left-to-right pass: env(t) = max(env(t-1) + sigma, phi(t)).
// Works over any ordered field; instantiated with scaled integers for the
// exact-arithmetic tests.
template <typename T>
std::vector<T> sigma_envelope_values(const std::vector<T>& phi, const T& sigma) {
  std::vector<T> env(phi.size());
  if (phi.empty()) return env;
  env[0] = phi[0];
  for (std::size_t i = 1; i < phi.size(); ++i)
    env[i] = std::max(env[i - 1] + sigma, phi[i]);
  return env;
}

// Validated wrapper over the cocycle; requires 0 <= sigma < L.
std::vector<double> sigma_envelope(const Cocycle& c, double sigma);

struct FiniteTimeExponents {
  std::vector<double> averages;  // Phi(n)/n, n = 1..length
  double lower = 0.0;            // running min (lower-exponent estimate)
  double upper = 0.0;            // running max (upper-exponent estimate)
  double tail_lower = 0.0;       // same over the last half of the horizon
  double tail_upper = 0.0;
};

FiniteTimeExponents finite_time_exponents(const Cocycle& c);

struct PlissReport {
  double sigma = 0.0;
  std::vector<int> times;  // sorted Pliss hyperbolic times
  double upper_density_estimate = 0.0;
  std::vector<double> envelope;  // Phi^sigma at integers
};

PlissReport pliss_times(const Cocycle& c, double sigma);

// Direct check of the defining inequality: Phi(n) - Phi(n-k) >= k*sigma for
// all 1 <= k <= n. Quadratic; used to certify pliss_times output.
bool is_pliss_time_direct(const Cocycle& c, int n, double sigma,
                          double tol = 1e-12);

struct CrossingInterval {
  double tau1 = 0.0;
  double tau2 = 0.0;   // exact crossing times on the piecewise affine envelope
  int tau2_int = 0;    // smallest integer >= tau2
  double q1 = 0.0;
  double q2 = 0.0;
  int pliss_count = 0;     // #(H_N intersect [tau1, tau2_int])
  double density = 0.0;    // pliss_count / tau2
  bool minimal = true;
};

struct CrossingReport {
  std::vector<CrossingInterval> intervals;
  double density_bound = 0.0;  // C = (q2 - q1)/L
};

// All minimal (q1,q2)-crossing intervals of Phi^sigma, with the Pliss-count
// density reported per interval. Requires 0 <= sigma <= q1 < q2 < L.
CrossingReport crossing_intervals(const Cocycle& c, double sigma, double q1,
                                  double q2);

// beta / (1 + (beta-alpha)/chi_sup); equals alpha when alpha == beta.
double alpha_sharp(double alpha, double beta, double chi_sup);

struct AlphaSharpReport {
  double sigma = 0.0;
  double alpha_estimate = 0.0;   // tail min of Phi(t)/t
  double beta_estimate = 0.0;    // tail max of Phi(t)/t
  double L0_estimate = 0.0;      // windowed slope estimate
  double envelope_liminf = 0.0;  // tail min of Phi^sigma(t)/t
  double bound = 0.0;
  double margin = 0.0;  // bound - envelope_liminf
  bool satisfied = false;
};

AlphaSharpReport check_alpha_sharp_bound(const Cocycle& c, double sigma,
                                         double tol = 1e-6);

struct ClusterResult {
  std::vector<int> elements;  // k elements of J spanning at most m
  int m = 0;
};

// Lemma-style clustering: from J subset of [1,n] with #J >= d*n, pick k
// elements within a window of width m = floor(2k/d) + 1.
ClusterResult clustered_subset(const std::vector<int>& J, double d, int k,
                               int n);

// CSV export (columns k, Phi(k)) and import.
void cocycle_to_csv(const Cocycle& c, const std::string& path);
Cocycle cocycle_from_csv(const std::string& path, double slope_bound);
void pliss_report_to_csv(const Cocycle& c, const PlissReport& r,
                         const std::string& path);

}  // namespace lyapspec
