#include "lyapspec/cocycle.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "lyapspec/csv.hpp"

namespace lyapspec {

namespace {
constexpr double kEnvelopeTol = 1e-12;  // contact tolerance for Phi = Phi^sigma

double window_slope_estimate(const std::vector<double>& phi) {
  int n = static_cast<int>(phi.size()) - 1;
  if (n < 2) return 0.0;
  int N = (n + 9) / 10;
  double m = 0.0;
  for (int k = 0; k + N <= n; ++k)
    m = std::max(m, std::abs(phi[k + N] - phi[k]) / N);
  return m;
}
}  // namespace

Cocycle Cocycle::from_increments(const std::vector<double>& increments,
                                 double slope_bound, double base_point) {
  Cocycle c;
  c.base_point = base_point;
  c.length = static_cast<int>(increments.size());
  c.values.resize(increments.size() + 1);
  c.values[0] = 0.0;
  for (std::size_t i = 0; i < increments.size(); ++i)
    c.values[i + 1] = c.values[i] + increments[i];
  c.slope_bound = slope_bound;
  c.L0_estimate = window_slope_estimate(c.values);
  return c;
}

Cocycle build_cocycle(const MultimodalMap& map, double x, int n) {
  std::vector<double> orb = map.orbit(x, n);
  std::vector<double> inc(n);
  for (int k = 0; k < n; ++k) {
    for (double c : map.critical_set())
      if (orb[static_cast<std::size_t>(k)] == c) throw CriticalOrbit(k);
    double d = map.derivative(orb[static_cast<std::size_t>(k)]);
    if (d == 0.0) throw CriticalOrbit(k);
    inc[static_cast<std::size_t>(k)] = std::log(std::abs(d));
  }
  return Cocycle::from_increments(inc, map.log_deriv_sup(), x);
}

std::vector<double> sigma_envelope(const Cocycle& c, double sigma) {
  if (sigma < 0.0 || sigma >= c.slope_bound)
    throw InvalidSigma("sigma must satisfy 0 <= sigma < L");
  return sigma_envelope_values(c.values, sigma);
}

FiniteTimeExponents finite_time_exponents(const Cocycle& c) {
  if (c.length < 1) throw InvalidArgs("cocycle horizon must be >= 1");
  FiniteTimeExponents out;
  out.averages.resize(static_cast<std::size_t>(c.length));
  for (int n = 1; n <= c.length; ++n)
    out.averages[static_cast<std::size_t>(n - 1)] = c.values[n] / n;
  out.lower = *std::min_element(out.averages.begin(), out.averages.end());
  out.upper = *std::max_element(out.averages.begin(), out.averages.end());
  int half = std::max(1, c.length / 2);
  out.tail_lower = out.tail_upper = out.averages[static_cast<std::size_t>(half - 1)];
  for (int n = half; n <= c.length; ++n) {
    double v = out.averages[static_cast<std::size_t>(n - 1)];
    out.tail_lower = std::min(out.tail_lower, v);
    out.tail_upper = std::max(out.tail_upper, v);
  }
  return out;
}

PlissReport pliss_times(const Cocycle& c, double sigma) {
  PlissReport r;
  r.sigma = sigma;
  r.envelope = sigma_envelope(c, sigma);
  for (int n = 1; n <= c.length; ++n)
    if (c.values[n] >= r.envelope[static_cast<std::size_t>(n)] - kEnvelopeTol)
      r.times.push_back(n);
  int half = std::max(1, c.length / 2);
  int tail = 0;
  for (int t : r.times)
    if (t > half) ++tail;
  r.upper_density_estimate =
      c.length > half ? static_cast<double>(tail) / (c.length - half) : 0.0;
  return r;
}

bool is_pliss_time_direct(const Cocycle& c, int n, double sigma, double tol) {
  if (n < 1 || n > c.length) return false;
  for (int k = 1; k <= n; ++k)
    if (c.values[n] - c.values[n - k] < k * sigma - tol) return false;
  return true;
}

namespace {

// An affine piece of the envelope graph on [t0,t1].
struct EnvPiece {
  double t0, t1, v0, v1;
  double slope() const { return (v1 - v0) / (t1 - t0); }
  double value(double t) const { return v0 + slope() * (t - t0); }
};

// Decompose Phi^sigma into affine pieces. On each integer segment the
// envelope is max(env(k) + sigma*(t-k), Phi(t)), so at most two pieces.
std::vector<EnvPiece> envelope_pieces(const Cocycle& c,
                                      const std::vector<double>& env,
                                      double sigma) {
  std::vector<EnvPiece> pieces;
  for (int k = 0; k < c.length; ++k) {
    double e0 = env[static_cast<std::size_t>(k)];
    double e1 = env[static_cast<std::size_t>(k + 1)];
    double p0 = c.values[static_cast<std::size_t>(k)];
    double p1 = c.values[static_cast<std::size_t>(k + 1)];
    double m = p1 - p0;
    // line 1: e0 + sigma*(t-k); line 2: Phi on the segment
    // envelope = pointwise max of the two
    double l1_at_k1 = e0 + sigma;
    if (p1 >= l1_at_k1) {
      // contact at the right end
      double gap = e0 - p0;  // >= 0
      if (gap <= kEnvelopeTol || m <= sigma) {
        // single piece (either full contact or the crossing is at t=k)
        pieces.push_back({double(k), double(k + 1), e0, e1});
      } else {
        double cross = k + gap / (m - sigma);
        cross = std::min(std::max(cross, double(k)), double(k + 1));
        double vc = e0 + sigma * (cross - k);
        pieces.push_back({double(k), cross, e0, vc});
        pieces.push_back({cross, double(k + 1), vc, e1});
      }
    } else {
      // no contact inside: pure sigma-slope piece
      pieces.push_back({double(k), double(k + 1), e0, e1});
    }
  }
  return pieces;
}

// Roots of piece(t) = q*t on an affine piece, in increasing t.
void append_line_roots(const EnvPiece& p, double q, std::vector<double>* out) {
  double s = p.slope();
  double g0 = p.v0 - q * p.t0;
  double g1 = p.v1 - q * p.t1;
  if (std::abs(s - q) < 1e-15) {
    if (std::abs(g0) < 1e-12) out->push_back(p.t0);  // whole piece on the line
    return;
  }
  double t = (p.v0 - s * p.t0) / (q - s);
  if (t >= p.t0 - 1e-12 && t <= p.t1 + 1e-12) {
    (void)g0;
    (void)g1;
    out->push_back(std::min(std::max(t, p.t0), p.t1));
  }
}

}  // namespace

CrossingReport crossing_intervals(const Cocycle& c, double sigma, double q1,
                                  double q2) {
  if (!(0.0 <= sigma && sigma <= q1 && q1 < q2 && q2 < c.slope_bound))
    throw InvalidBand("need 0 <= sigma <= q1 < q2 < L");
  CrossingReport report;
  report.density_bound = (q2 - q1) / c.slope_bound;

  std::vector<double> env = sigma_envelope(c, sigma);
  std::vector<EnvPiece> pieces = envelope_pieces(c, env, sigma);
  PlissReport pliss = pliss_times(c, sigma);

  auto env_value = [&](double t) {
    int k = std::min(c.length - 1, std::max(0, static_cast<int>(std::floor(t))));
    for (const auto& p : pieces)
      if (t >= p.t0 - 1e-12 && t <= p.t1 + 1e-12 && p.t0 >= k - 1e-9 &&
          p.t1 <= k + 1 + 1e-9)
        return p.value(t);
    return env[static_cast<std::size_t>(std::min<int>(
        c.length, static_cast<int>(std::lround(t))))];
  };

  // scan for q1-roots and q2-upcrossings in time order
  double last_q1 = -1.0, last_q2 = -1.0;
  for (const auto& p : pieces) {
    if (p.t1 - p.t0 <= 0.0) continue;
    std::vector<double> r1, r2;
    append_line_roots(p, q1, &r1);
    append_line_roots(p, q2, &r2);
    // merge in time order; q1 roots first on ties so a simultaneous touch
    // still yields a degenerate interval
    std::size_t i1 = 0, i2 = 0;
    while (i1 < r1.size() || i2 < r2.size()) {
      bool take1 = i2 >= r2.size() ||
                   (i1 < r1.size() && r1[i1] <= r2[i2]);
      if (take1) {
        double t = r1[i1++];
        if (t > 1e-12) last_q1 = t;
      } else {
        double t = r2[i2++];
        if (t <= 1e-12) continue;
        // upcrossing: envelope below the q2 line just before t
        double before = std::max(0.0, t - 1e-7);
        bool up = env_value(before) < q2 * before + 1e-12 || p.slope() > q2;
        if (up && last_q1 > 0.0 && last_q1 < t && last_q2 < last_q1) {
          CrossingInterval ci;
          ci.tau1 = last_q1;
          ci.tau2 = t;
          double ceil_t = std::ceil(t - 1e-9);
          ci.tau2_int = static_cast<int>(ceil_t);
          ci.q1 = q1;
          ci.q2 = q2;
          for (int h : pliss.times)
            if (h >= ci.tau1 - 1e-12 && h <= ci.tau2_int + 1e-12)
              ++ci.pliss_count;
          ci.density = ci.pliss_count / ci.tau2;
          ci.minimal = true;
          report.intervals.push_back(ci);
        }
        last_q2 = t;
      }
    }
  }
  return report;
}

double alpha_sharp(double alpha, double beta, double chi_sup) {
  if (!(alpha <= beta) || !(beta > 0.0) || !(chi_sup > 0.0))
    throw InvalidArgs("alpha_sharp needs alpha <= beta, beta > 0, chi_sup > 0");
  if (alpha == beta) return alpha;
  return beta / (1.0 + (beta - alpha) / chi_sup);
}

AlphaSharpReport check_alpha_sharp_bound(const Cocycle& c, double sigma,
                                         double tol) {
  AlphaSharpReport r;
  r.sigma = sigma;
  FiniteTimeExponents ex = finite_time_exponents(c);
  r.alpha_estimate = ex.tail_lower;
  r.beta_estimate = ex.tail_upper;
  r.L0_estimate = c.L0_estimate;
  if (r.beta_estimate <= sigma)
    throw InvalidArgs("upper exponent estimate must exceed sigma");

  std::vector<double> env = sigma_envelope(c, sigma);
  int half = std::max(1, c.length / 2);
  r.envelope_liminf = env[static_cast<std::size_t>(half)] / half;
  for (int t = half; t <= c.length; ++t)
    r.envelope_liminf =
        std::min(r.envelope_liminf, env[static_cast<std::size_t>(t)] / t);

  // finite-horizon liminf/limsup only make sense once the cocycle has
  // alternated between its slow and fast phases a few times; count
  // up-crossings of Phi(t)/t through the midlevel between the two estimates
  if (r.beta_estimate - r.alpha_estimate > 1e-9) {
    double mid = 0.5 * (r.alpha_estimate + r.beta_estimate);
    int episodes = 0;
    bool below = false;
    for (int t = 1; t <= c.length; ++t) {
      double v = c.values[static_cast<std::size_t>(t)] / t;
      if (v < mid) {
        below = true;
      } else if (below) {
        ++episodes;
        below = false;
      }
    }
    if (episodes < 3)
      throw HorizonTooShort("fewer than 3 crossing episodes at this horizon");
  }

  double denom = r.L0_estimate - sigma;
  double spread = r.beta_estimate - r.alpha_estimate;
  if (denom <= 0.0) {
    r.bound = r.beta_estimate;
  } else {
    r.bound = (r.beta_estimate + sigma * spread / denom) / (1.0 + spread / denom);
  }
  r.margin = r.bound - r.envelope_liminf;
  r.satisfied = r.envelope_liminf <= r.bound + tol;
  return r;
}

ClusterResult clustered_subset(const std::vector<int>& J, double d, int k,
                               int n) {
  if (d <= 0.0 || d > 1.0 || k < 1 || n < 1)
    throw InvalidArgs("clustered_subset needs d in (0,1], k >= 1, n >= 1");
  int m = static_cast<int>(std::floor(2.0 * k / d)) + 1;
  if (static_cast<double>(J.size()) < d * n - 1e-9)
    throw TooSparse("#J < d*n");
  if (static_cast<double>(n) * d / 2.0 < static_cast<double>(m))
    throw TooSparse("n below the n0 threshold of the clustering bound");
  std::vector<int> sorted = J;
  std::sort(sorted.begin(), sorted.end());
  std::size_t j = 0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (j < i) j = i;
    while (j + 1 < sorted.size() && sorted[j + 1] - sorted[i] <= m) ++j;
    if (j - i + 1 >= static_cast<std::size_t>(k)) {
      ClusterResult res;
      res.m = m;
      res.elements.assign(sorted.begin() + static_cast<long>(i),
                          sorted.begin() + static_cast<long>(i + k));
      return res;
    }
  }
  throw TooSparse("no window of width m contains k elements");
}

void cocycle_to_csv(const Cocycle& c, const std::string& path) {
  CsvWriter w(path);
  w.row("k", "phi");
  for (int k = 0; k <= c.length; ++k)
    w.row(k, c.values[static_cast<std::size_t>(k)]);
}

Cocycle cocycle_from_csv(const std::string& path, double slope_bound) {
  std::ifstream in(path);
  if (!in) throw InvalidArgs("cannot open cocycle csv '" + path + "'");
  std::string line;
  std::getline(in, line);  // header
  std::vector<double> phi;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::size_t comma = line.find(',');
    phi.push_back(std::stod(line.substr(comma + 1)));
  }
  if (phi.empty() || phi[0] != 0.0)
    throw InvalidArgs("cocycle csv must start with Phi(0)=0");
  std::vector<double> inc(phi.size() - 1);
  for (std::size_t i = 0; i + 1 < phi.size(); ++i) inc[i] = phi[i + 1] - phi[i];
  return Cocycle::from_increments(inc, slope_bound);
}

void pliss_report_to_csv(const Cocycle& c, const PlissReport& r,
                         const std::string& path) {
  CsvWriter w(path);
  w.row("n", "phi", "envelope", "is_pliss");
  std::vector<char> mark(static_cast<std::size_t>(c.length) + 1, 0);
  for (int t : r.times) mark[static_cast<std::size_t>(t)] = 1;
  for (int k = 1; k <= c.length; ++k)
    w.row(k, c.values[static_cast<std::size_t>(k)],
          r.envelope[static_cast<std::size_t>(k)],
          static_cast<int>(mark[static_cast<std::size_t>(k)]));
}

}  // namespace lyapspec
