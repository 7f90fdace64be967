#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lyapspec/errors.hpp"
#include "lyapspec/map.hpp"
#include "lyapspec/pressure.hpp"

namespace lyapspec {

struct LevelSetEstimate {
  int depth = 0;
  double bin_width = 0.0;
  double alpha_min = 0.0;  // min over cylinders of alpha-hat
  double alpha_max = 0.0;
  std::vector<double> bin_centers;
  std::vector<std::size_t> counts;
  std::vector<double> dim_estimates;  // log(count) / (n * alpha_center)
  std::size_t total_cylinders = 0;
};

// Enumerate all depth-n cylinders of a Markov map, bin them by the finite-time
// exponent alpha-hat = (1/n) log sup |(f^n)'|, and report per-bin box-counting
// dimension estimates. bin_width <= 0 selects the default (spread / 40).
LevelSetEstimate empirical_spectrum(const MultimodalMap& map, int depth,
                                    double bin_width = 0.0);

struct SpectrumComparison {
  double max_deviation = 0.0;
  std::vector<double> alpha;      // interior bins actually compared
  std::vector<double> empirical;
  std::vector<double> predicted;
};

// Max |dim_estimate - F(alpha)| over interior bins, excluding the 5% boundary
// zones where finite-size effects dominate.
SpectrumComparison compare_to_prediction(const LevelSetEstimate& est,
                                         const SpectrumCurve& curve,
                                         double boundary_exclusion = 0.05);

struct ExponentAuditReport {
  int samples = 0;
  int horizon = 0;
  double tol = 0.0;
  double chi_inf = 0.0;
  double chi_sup = 0.0;
  double min_exponent = 0.0;
  double max_exponent = 0.0;
  std::vector<std::pair<int, double>> violations;  // (sample index, exponent)
};

// Samples finite-time exponents (symbolic itineraries for full-branch Markov
// maps, orbits otherwise) and checks them against [chi_inf - tol, chi_sup + tol]
// with tol = 3 * horizon^{-1/2} * (chi_sup - chi_inf).
ExponentAuditReport exponent_range_audit(const MultimodalMap& map, int samples,
                                         int horizon, double chi_inf,
                                         double chi_sup, std::uint64_t seed);

void level_set_to_csv(const LevelSetEstimate& est, const SpectrumCurve& curve,
                      const std::string& path);

}  // namespace lyapspec
