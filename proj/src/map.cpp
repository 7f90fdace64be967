#include "lyapspec/map.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace lyapspec {

namespace {
constexpr double kEndpointSlack = 1e-12;
constexpr double kMergeTol = 1e-9;
constexpr double kBisectTol = 1e-12;
}  // namespace

double MonotoneBranch::invert(double y) const {
  if (value_fn.is_affine()) {
    double c0 = value_fn.coeffs()[0];
    double c1 = value_fn.coeffs().size() > 1 ? value_fn.coeffs()[1] : 0.0;
    double x = (y - c0) / c1;
    return std::clamp(x, interval.a, interval.b);
  }
  double lo = interval.a, hi = interval.b;
  // monotone bisection; ~100 halvings reach full double resolution
  for (int it = 0; it < 110 && hi - lo > 0.0; ++it) {
    double mid = 0.5 * (lo + hi);
    double v = value_fn(mid);
    bool go_right = (orientation > 0) ? (v < y) : (v > y);
    if (go_right)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

std::optional<Interval> MonotoneBranch::preimage(const Interval& target) const {
  auto overlap = image().intersect(target);
  if (!overlap) return std::nullopt;
  double x1 = invert(overlap->a);
  double x2 = invert(overlap->b);
  if (x1 > x2) std::swap(x1, x2);
  return Interval{x1, x2};
}

MultimodalMap::MultimodalMap(std::string name, std::vector<Interval> intervals,
                             std::vector<MonotoneBranch> branches,
                             std::vector<CriticalPoint> critical, bool is_markov,
                             bool exceptional)
    : name_(std::move(name)),
      intervals_(std::move(intervals)),
      branches_(std::move(branches)),
      critical_(std::move(critical)),
      markov_(is_markov),
      exceptional_(exceptional) {
  finalize();
}

void MultimodalMap::finalize() {
  for (const auto& iv : intervals_) {
    boundary_.push_back(iv.a);
    boundary_.push_back(iv.b);
  }
  for (const auto& cp : critical_) crit_set_.push_back(cp.location);
  // branch junctions where the orientation flips and no smooth critical point
  // sits there are topological turning points (tent tip)
  for (std::size_t i = 0; i + 1 < branches_.size(); ++i) {
    const auto& l = branches_[i];
    const auto& r = branches_[i + 1];
    if (std::abs(l.interval.b - r.interval.a) > kEndpointSlack) continue;
    if (l.orientation == r.orientation) continue;
    double c = l.interval.b;
    bool known = std::any_of(crit_set_.begin(), crit_set_.end(), [&](double v) {
      return std::abs(v - c) < kMergeTol;
    });
    if (!known) crit_set_.push_back(c);
  }
  std::sort(crit_set_.begin(), crit_set_.end());
  for (double c : crit_set_)
    singular_.push_back({c, SingularProvenance::critical});
  shadow_refs_ = crit_set_;
}

bool MultimodalMap::in_domain(double x, double slack) const {
  for (const auto& iv : intervals_)
    if (iv.contains(x, slack)) return true;
  return false;
}

Interval MultimodalMap::domain_hull() const {
  return {intervals_.front().a, intervals_.back().b};
}

int MultimodalMap::branch_index_at(double x, double slack) const {
  for (std::size_t i = 0; i < branches_.size(); ++i)
    if (branches_[i].interval.contains(x, slack)) return static_cast<int>(i);
  return -1;
}

double MultimodalMap::evaluate(double x) const {
  int i = branch_index_at(x);
  if (i < 0) {
    i = branch_index_at(x, kEndpointSlack);
    if (i < 0) throw OutOfDomain(x);
  }
  return branches_[static_cast<std::size_t>(i)](x);
}

double MultimodalMap::evaluate_clamped(double x) const {
  int i = branch_index_at(x, kEndpointSlack);
  if (i < 0) throw OutOfDomain(x);
  const auto& br = branches_[static_cast<std::size_t>(i)];
  return br(std::clamp(x, br.interval.a, br.interval.b));
}

double MultimodalMap::derivative(double x) const {
  int i = branch_index_at(x);
  if (i < 0) {
    i = branch_index_at(x, kEndpointSlack);
    if (i < 0) throw OutOfDomain(x);
  }
  return branches_[static_cast<std::size_t>(i)].deriv(x);
}

std::vector<double> MultimodalMap::orbit(double x, int n) const {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(n) + 1);
  out.push_back(x);
  double y = x;
  for (int k = 1; k <= n; ++k) {
    if (!in_domain(y, kEndpointSlack)) throw OrbitEscaped(k - 1, y);
    y = evaluate_clamped(y);
    if (!in_domain(y, kEndpointSlack)) throw OrbitEscaped(k, y);
    out.push_back(y);
  }
  return out;
}

std::vector<std::pair<int, Interval>> MultimodalMap::monotone_branch_inverses(
    const Interval& target) const {
  std::vector<std::pair<int, Interval>> out;
  for (std::size_t i = 0; i < branches_.size(); ++i) {
    auto pre = branches_[i].preimage(target);
    if (pre) out.emplace_back(static_cast<int>(i), *pre);
  }
  return out;
}

std::vector<Interval> MultimodalMap::monotone_pieces(int n) const {
  std::vector<Interval> pieces;
  for (const auto& b : branches_) pieces.push_back(b.interval);
  for (int k = 2; k <= n; ++k) {
    std::vector<Interval> next;
    for (const auto& b : branches_) {
      for (const auto& p : pieces) {
        auto pre = b.preimage(p);
        if (pre && pre->length() > 1e-15) next.push_back(*pre);
      }
    }
    pieces.swap(next);
  }
  return pieces;
}

std::vector<PeriodicPoint> MultimodalMap::periodic_points(int n) const {
  std::vector<PeriodicPoint> found;
  auto iterate = [&](double x) {
    double y = x;
    for (int k = 0; k < n; ++k) y = evaluate_clamped(y);
    return y;
  };
  for (const auto& piece : monotone_pieces(n)) {
    double ga = iterate(piece.a) - piece.a;
    double gb = iterate(piece.b) - piece.b;
    if (ga == 0.0) {
      found.push_back({piece.a, 0.0});
    } else if (gb == 0.0) {
      found.push_back({piece.b, 0.0});
    } else if (ga * gb < 0.0) {
      double lo = piece.a, hi = piece.b;
      double glo = ga;
      while (hi - lo > kBisectTol) {
        double mid = 0.5 * (lo + hi);
        double gm = iterate(mid) - mid;
        if (gm == 0.0) {
          lo = hi = mid;
          break;
        }
        if (glo * gm < 0.0)
          hi = mid;
        else {
          lo = mid;
          glo = gm;
        }
      }
      found.push_back({0.5 * (lo + hi), 0.0});
    }
  }
  std::sort(found.begin(), found.end(),
            [](const PeriodicPoint& x, const PeriodicPoint& y) {
              return x.point < y.point;
            });
  std::vector<PeriodicPoint> out;
  for (auto& p : found) {
    if (!out.empty() && std::abs(p.point - out.back().point) < kMergeTol) continue;
    double mult = 1.0;
    double y = p.point;
    for (int k = 0; k < n; ++k) {
      mult *= derivative(std::clamp(y, domain_hull().a, domain_hull().b));
      y = evaluate_clamped(y);
    }
    p.multiplier = mult;
    out.push_back(p);
  }
  return out;
}

double MultimodalMap::log_deriv_sup() const {
  double m = 0.0;
  bool first = true;
  for (const auto& b : branches_) {
    auto [lo, hi] = b.abs_deriv_range(b.interval.a, b.interval.b);
    (void)lo;
    if (first || hi > m) m = hi;
    first = false;
  }
  return std::log(m);
}

double MultimodalMap::min_abs_deriv() const {
  double m = 0.0;
  bool first = true;
  for (const auto& b : branches_) {
    auto [lo, hi] = b.abs_deriv_range(b.interval.a, b.interval.b);
    (void)hi;
    if (first || lo < m) m = lo;
    first = false;
  }
  return m;
}

double MultimodalMap::dist_to_critical(double x) const {
  const auto& refs = shadow_refs_;
  double d = std::numeric_limits<double>::infinity();
  for (double c : refs) d = std::min(d, std::abs(x - c));
  return d;
}

double MultimodalMap::backward_point(const std::vector<int>& itinerary,
                                     double terminal) const {
  double p = terminal;
  for (auto it = itinerary.rbegin(); it != itinerary.rend(); ++it) {
    if (*it < 0 || static_cast<std::size_t>(*it) >= branches_.size())
      throw InvalidArgs("itinerary symbol out of range");
    const auto& b = branches_[static_cast<std::size_t>(*it)];
    Interval img = b.image();
    if (!img.contains(p, 1e-12)) throw OutOfDomain(p);
    p = b.invert(std::clamp(p, img.a, img.b));
  }
  return p;
}

// ---------------------------------------------------------------------------
// built-ins

namespace {

MonotoneBranch make_branch(Interval iv, Polynomial f) {
  Polynomial df = f.derivative();
  int sgn = df(iv.mid()) >= 0 ? +1 : -1;
  return MonotoneBranch{iv, std::move(f), std::move(df), sgn};
}

// Non-flatness constants for a smooth critical point: sample the e:slowl
// ratio on (0,R0] and take the worst two-sided bound with a hair of slack.
void fit_nonflat_constants(const MultimodalMap& m, CriticalPoint& cp) {
  double span = m.domain_hull().length();
  double R0 = std::min(0.5, 0.1 * span);
  double worst = 1.0;
  for (int i = 1; i <= 200; ++i) {
    double h = R0 * static_cast<double>(i) / 200.0;
    for (double x : {cp.location - h, cp.location + h}) {
      if (!m.in_domain(x)) continue;
      double ratio = std::abs(m.derivative(x)) /
                     std::pow(h, static_cast<double>(cp.order - 1));
      if (ratio <= 0.0) continue;
      worst = std::max(worst, std::max(ratio, 1.0 / ratio));
    }
  }
  cp.R0 = R0;
  cp.A0 = worst * (1.0 + 1e-9) + 1e-12;
}

}  // namespace

MultimodalMap MultimodalMap::tent() {
  std::vector<Interval> dom{{0.0, 1.0}};
  std::vector<MonotoneBranch> br{
      make_branch({0.0, 0.5}, Polynomial::affine(0.0, 2.0)),
      make_branch({0.5, 1.0}, Polynomial::affine(2.0, -2.0))};
  return MultimodalMap("tent", dom, br, {}, /*markov=*/true,
                       /*exceptional=*/false);
}

MultimodalMap MultimodalMap::two_slope() {
  std::vector<Interval> dom{{0.0, 0.5}, {0.75, 1.0}};
  std::vector<MonotoneBranch> br{
      make_branch({0.0, 0.5}, Polynomial::affine(0.0, 2.0)),
      make_branch({0.75, 1.0}, Polynomial::affine(4.0, -4.0))};
  MultimodalMap m("two-slope", dom, br, {}, /*markov=*/true,
                  /*exceptional=*/false);
  // no critical points in K; shadow diagnostics measure distance to the
  // gap-defining folds instead
  m.set_shadow_reference_points({0.5, 0.75});
  return m;
}

MultimodalMap MultimodalMap::chebyshev() {
  std::vector<Interval> dom{{-2.0, 2.0}};
  Polynomial f({-2.0, 0.0, 1.0});  // x^2 - 2
  std::vector<MonotoneBranch> br{make_branch({-2.0, 0.0}, f),
                                 make_branch({0.0, 2.0}, f)};
  CriticalPoint cp{0.0, 2, CriticalKind::turning, 0.0, 0.0};
  MultimodalMap m("chebyshev", dom, br, {cp}, /*markov=*/true,
                  /*exceptional=*/true);
  fit_nonflat_constants(m, const_cast<CriticalPoint&>(m.critical_points()[0]));
  return m;
}

MultimodalMap MultimodalMap::quadratic(double c) {
  if (c >= 0.0 || c < -2.0)
    throw InvalidArgs("quadratic parameter must lie in [-2, 0)");
  double hi = c * c + c;  // f(c), image of the critical value
  if (hi < 0.0) throw InvalidArgs("quadratic parameter gives a trivial interval");
  double top = hi * hi + c;
  if (top > hi + 1e-12)
    throw InvalidArgs("quadratic interval [c, c^2+c] is not forward invariant");
  std::vector<Interval> dom{{c, hi}};
  Polynomial f({c, 0.0, 1.0});  // x^2 + c
  std::vector<MonotoneBranch> br{make_branch({c, 0.0}, f),
                                 make_branch({0.0, hi}, f)};
  CriticalPoint cp{0.0, 2, CriticalKind::turning, 0.0, 0.0};
  std::ostringstream name;
  name << "quadratic:" << c;
  MultimodalMap m(name.str(), dom, br, {cp}, /*markov=*/false,
                  /*exceptional=*/false);
  fit_nonflat_constants(m, const_cast<CriticalPoint&>(m.critical_points()[0]));
  return m;
}

MultimodalMap MultimodalMap::builtin(const std::string& name) {
  if (name == "tent") return tent();
  if (name == "two-slope") return two_slope();
  if (name == "chebyshev") return chebyshev();
  if (name.rfind("quadratic:", 0) == 0)
    return quadratic(std::stod(name.substr(10)));
  throw InvalidArgs("unknown builtin map '" + name + "'");
}

MultimodalMap MultimodalMap::from_json_text(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  std::string name = j.at("name").get<std::string>();
  std::vector<Interval> dom;
  for (const auto& iv : j.at("intervals"))
    dom.push_back({iv.at(0).get<double>(), iv.at(1).get<double>()});
  std::vector<MonotoneBranch> br;
  for (const auto& jb : j.at("branches")) {
    Interval iv{jb.at("interval").at(0).get<double>(),
                jb.at("interval").at(1).get<double>()};
    std::vector<double> coeffs = jb.at("coeffs").get<std::vector<double>>();
    if (coeffs.size() > 5)
      throw InvalidArgs("branch polynomials are limited to degree 4");
    br.push_back(make_branch(iv, Polynomial(coeffs)));
  }
  std::vector<CriticalPoint> crit;
  if (j.contains("critical")) {
    for (const auto& jc : j.at("critical")) {
      CriticalPoint cp;
      cp.location = jc.at("c").get<double>();
      cp.order = jc.at("d").get<int>();
      cp.kind = jc.value("kind", std::string("turning")) == "inflection"
                    ? CriticalKind::inflection
                    : CriticalKind::turning;
      crit.push_back(cp);
    }
  }
  MultimodalMap m(name, dom, br, crit, j.value("markov", false),
                  j.value("exceptional", false));
  for (auto& cp : const_cast<std::vector<CriticalPoint>&>(m.critical_points()))
    if (cp.R0 == 0.0) fit_nonflat_constants(m, cp);
  return m;
}

MultimodalMap MultimodalMap::from_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgs("cannot open map config '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return from_json_text(ss.str());
}

}  // namespace lyapspec
