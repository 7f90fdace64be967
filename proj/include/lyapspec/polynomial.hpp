#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <vector>

namespace lyapspec {

// Real polynomial with coefficients in ascending powers, degree <= 4.
// Small enough that everything stays by value.
class Polynomial {
 public:
  Polynomial() : coeffs_{0.0} {}
  explicit Polynomial(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) coeffs_.push_back(0.0);
    trim();
  }

  static Polynomial affine(double intercept, double slope) {
    return Polynomial({intercept, slope});
  }

  double operator()(double x) const {
    double v = 0.0;
    for (std::size_t i = coeffs_.size(); i-- > 0;) v = v * x + coeffs_[i];
    return v;
  }

  Polynomial derivative() const {
    if (coeffs_.size() <= 1) return Polynomial({0.0});
    std::vector<double> d(coeffs_.size() - 1);
    for (std::size_t i = 1; i < coeffs_.size(); ++i)
      d[i - 1] = coeffs_[i] * static_cast<double>(i);
    return Polynomial(std::move(d));
  }

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<double>& coeffs() const { return coeffs_; }
  bool is_affine() const { return degree() <= 1; }

  // Real roots inside [a,b], degrees 0..2 only (enough for f'' of a quartic).
  std::vector<double> roots_in(double a, double b) const {
    std::vector<double> out;
    auto push = [&](double r) {
      if (r >= a && r <= b) out.push_back(r);
    };
    if (degree() <= 0) return out;
    if (degree() == 1) {
      push(-coeffs_[0] / coeffs_[1]);
      return out;
    }
    // quadratic
    double c = coeffs_[0], bq = coeffs_[1], aq = coeffs_[2];
    double disc = bq * bq - 4.0 * aq * c;
    if (disc < 0.0) return out;
    double sq = std::sqrt(disc);
    // numerically stable pair
    double q = -0.5 * (bq + (bq >= 0 ? sq : -sq));
    push(q / aq);
    if (q != 0.0) push(c / q);
    std::sort(out.begin(), out.end());
    return out;
  }

  // min and max of the polynomial over [a,b]; exact for degree <= 3 via the
  // roots of the derivative, endpoint+stationary evaluation otherwise.
  std::pair<double, double> range_on(double a, double b) const {
    double lo = std::min((*this)(a), (*this)(b));
    double hi = std::max((*this)(a), (*this)(b));
    Polynomial d = derivative();
    if (d.degree() >= 1 && d.degree() <= 2) {
      for (double r : d.roots_in(a, b)) {
        double v = (*this)(r);
        lo = std::min(lo, v);
        hi = std::max(hi, v);
      }
    } else if (d.degree() == 3) {
      // stationary points of a quartic: sample the cubic's roots by bisection
      for (double r : d.roots_by_bisection(a, b)) {
        double v = (*this)(r);
        lo = std::min(lo, v);
        hi = std::max(hi, v);
      }
    }
    return {lo, hi};
  }

  // range of |p| on [a,b]
  std::pair<double, double> abs_range_on(double a, double b) const {
    auto [lo, hi] = range_on(a, b);
    if (lo >= 0.0) return {lo, hi};
    if (hi <= 0.0) return {-hi, -lo};
    return {0.0, std::max(-lo, hi)};
  }

  // All real roots in [a,b] by sign-change bisection on a fine grid; used only
  // for cubic derivatives where no closed form is kept.
  std::vector<double> roots_by_bisection(double a, double b, int grid = 256) const {
    std::vector<double> out;
    double prev_x = a, prev_v = (*this)(a);
    for (int i = 1; i <= grid; ++i) {
      double x = a + (b - a) * static_cast<double>(i) / grid;
      double v = (*this)(x);
      if (prev_v == 0.0) out.push_back(prev_x);
      if (prev_v * v < 0.0) {
        double lo = prev_x, hi = x;
        for (int it = 0; it < 80; ++it) {
          double mid = 0.5 * (lo + hi);
          if (((*this)(lo)) * ((*this)(mid)) <= 0.0)
            hi = mid;
          else
            lo = mid;
        }
        out.push_back(0.5 * (lo + hi));
      }
      prev_x = x;
      prev_v = v;
    }
    if ((*this)(b) == 0.0) out.push_back(b);
    return out;
  }

 private:
  void trim() {
    while (coeffs_.size() > 1 && coeffs_.back() == 0.0) coeffs_.pop_back();
  }
  std::vector<double> coeffs_;
};

}  // namespace lyapspec
