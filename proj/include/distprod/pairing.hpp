#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include <boost/math/distributions/students_t.hpp>

#include "distprod/boundary.hpp"
#include "distprod/errors.hpp"
#include "distprod/fit.hpp"
#include "distprod/quadrature.hpp"
#include "distprod/testfn.hpp"

namespace distprod {

/// One factor of a product: x^power * f.
struct Factor {
  HyperfunctionPair pair;
  int power = 0;
  friend bool operator==(const Factor&, const Factor&) = default;
};

/// Ordered product x^r1 f1 * x^r2 f2 * ... * x^rm fm.
class ProductExpression {
 public:
  ProductExpression() = default;
  explicit ProductExpression(std::vector<Factor> factors) : factors_(std::move(factors)) { validate(); }
  ProductExpression(std::initializer_list<HyperfunctionPair> pairs) {
    for (const auto& p : pairs) factors_.push_back({p, 0});
    validate();
  }

  const std::vector<Factor>& factors() const { return factors_; }
  std::size_t size() const { return factors_.size(); }

  int total_power() const {
    int r = 0;
    for (const auto& f : factors_) r += f.power;
    return r;
  }

  /// Same product with the first factor's monomial prefactor raised by q.
  ProductExpression with_extra_power(int q) const {
    if (q < 0) throw ParameterError("extra prefactor power must be nonnegative");
    ProductExpression e = *this;
    e.factors_.front().power += q;
    return e;
  }

  /// Same factors multiplied in consecutive groups: each group's product is
  /// formed first, then the groups are multiplied left to right.
  /// grouped({2, 1}) evaluates (f1 f2) f3, grouped({1, 2}) evaluates f1 (f2 f3).
  ProductExpression grouped(std::vector<std::size_t> sizes) const {
    std::size_t total = 0;
    for (auto k : sizes) {
      if (k == 0) throw ParameterError("groups must be nonempty");
      total += k;
    }
    if (total != factors_.size()) throw ParameterError("group sizes must cover every factor");
    ProductExpression e = *this;
    e.groups_ = std::move(sizes);
    return e;
  }
  const std::vector<std::size_t>& groups() const { return groups_; }

  /// Pointwise regularized product x^R prod_i F_i^y(x).
  Complex eval(double x, double y) const {
    Complex v = std::pow(x, total_power());
    if (groups_.empty()) {
      for (const auto& f : factors_) v *= eval_Fy(f.pair, x, y);
      return v;
    }
    std::size_t i = 0;
    for (auto k : groups_) {
      Complex g = eval_Fy(factors_[i++].pair, x, y);
      for (std::size_t j = 1; j < k; ++j) g *= eval_Fy(factors_[i++].pair, x, y);
      v *= g;
    }
    return v;
  }

  friend bool operator==(const ProductExpression&, const ProductExpression&) = default;

 private:
  void validate() const {
    if (factors_.empty()) throw ParameterError("a product needs at least one factor");
    for (const auto& f : factors_)
      if (f.power < 0) throw ParameterError("prefactor powers must be nonnegative");
  }

  std::vector<Factor> factors_;
  std::vector<std::size_t> groups_;
};

namespace detail {

// Splitting points: the test function's own, the poles of every factor, and a
// dense band of width 10y around each pole followed by a geometric ladder so
// that structure on every scale between y and 1 gets its own cells.
template <SmoothFunction F>
std::vector<double> pairing_edges(const ProductExpression& expr, const F& phi, double y) {
  const Interval s = phi.support();
  std::vector<double> centers{0.0};
  for (const auto& f : expr.factors()) {
    for (const auto& p : f.pair.plus.poles()) centers.push_back(p.location);
    for (const auto& p : f.pair.minus.poles()) centers.push_back(p.location);
  }
  std::sort(centers.begin(), centers.end());
  centers.erase(std::unique(centers.begin(), centers.end()), centers.end());

  std::vector<double> e{s.lo, s.hi};
  const double width = s.hi - s.lo;
  for (double c : centers) {
    e.push_back(c);
    for (double k : {0.25, 0.5, 1.0, 2.0, 4.0, 10.0}) {
      e.push_back(c - k * y);
      e.push_back(c + k * y);
    }
    for (double d = 40.0 * y; d < width; d *= 4.0) {
      e.push_back(c - d);
      e.push_back(c + d);
    }
  }
  for (double b : phi.breakpoints()) e.push_back(b);
  std::vector<double> inside;
  for (double v : e)
    if (v >= s.lo && v <= s.hi) inside.push_back(v);
  return inside;
}

}  // namespace detail

/// Smeared product  int x^R F_1^y(x) ... F_m^y(x) phi(x) dx  at fixed y > 0.
template <SmoothFunction F>
Complex pair_at_y(const ProductExpression& expr, const F& phi, double y,
                  const QuadratureOptions& opt = {}) {
  if (!(y > 0.0)) throw RegulatorError("pairing requires y > 0");
  auto integrand = [&](double x) { return expr.eval(x, y) * phi(x); };
  return integrate(integrand, detail::pairing_edges(expr, phi, y), opt).value;
}

struct Schedule {
  double y0 = 0.1;
  double ratio = 0.5;
  int count = 12;

  std::vector<double> values() const {
    std::vector<double> v(static_cast<std::size_t>(count));
    double y = y0;
    for (auto& e : v) {
      e = y;
      y *= ratio;
    }
    return v;
  }
};

enum class PairingStatus { converged, diverged, inconclusive };

inline std::string to_string(PairingStatus s) {
  switch (s) {
    case PairingStatus::converged: return "converged";
    case PairingStatus::diverged: return "diverged";
    case PairingStatus::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

struct PairingOptions {
  Schedule schedule;
  /// Absolute agreement required of the extrapolated tail.
  double tolerance = 1e-7;
  /// Ratio of the confirming schedule; it spans the same y-range.
  double second_ratio = 1.0 / 3.0;
  bool check_schedule = true;
  double min_r_squared = 0.99;
  double min_divergence = 0.1;
  QuadratureOptions quadrature;
};

struct PairingResult {
  std::vector<double> y;
  std::vector<Complex> values;
  PairingStatus status = PairingStatus::inconclusive;
  /// Extrapolated limit (converged only).
  Complex value;
  /// Spread of the last three extrapolants in the selected column.
  double spread = 0.0;
  int extrapolation_order = 0;
  /// Limit from the confirming schedule, when it was run.
  bool schedule_checked = false;
  Complex value_second;
  /// I(y) ~ coefficient * y^-s (diverged only).
  double s = 0.0;
  double s_lo = 0.0;
  double s_hi = 0.0;
  double r_squared = 0.0;
  Complex leading_coefficient;
};

struct Extrapolation {
  Complex value;
  double spread = 0.0;
  int order = 0;
};

/// Richardson table on a geometric sequence y_k = y0 r^k, eliminating
/// y, y^2, ... column by column. The column whose last three entries agree
/// best (real and imaginary parts taken separately) is selected.
inline Extrapolation richardson(const std::vector<Complex>& seq, double ratio) {
  const std::size_t n = seq.size();
  if (n < 3) throw ParameterError("extrapolation needs at least three terms");
  std::vector<std::vector<Complex>> t(n);
  for (std::size_t i = 0; i < n; ++i) {
    t[i].resize(i + 1);
    t[i][0] = seq[i];
    double rj = 1.0;
    for (std::size_t j = 1; j <= i; ++j) {
      rj *= ratio;
      t[i][j] = (t[i][j - 1] - rj * t[i - 1][j - 1]) / (1.0 - rj);
    }
  }
  Extrapolation best;
  best.spread = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j + 3 <= n; ++j) {
    const Complex a = t[n - 3][j], b = t[n - 2][j], c = t[n - 1][j];
    const double sr = std::max({a.real(), b.real(), c.real()}) - std::min({a.real(), b.real(), c.real()});
    const double si = std::max({a.imag(), b.imag(), c.imag()}) - std::min({a.imag(), b.imag(), c.imag()});
    const double spread = std::max(sr, si);
    if (spread < best.spread) {
      best = {c, spread, static_cast<int>(j)};
    }
  }
  return best;
}

namespace detail {

inline void classify(PairingResult& r, const PairingOptions& opt, double ratio) {
  const auto ex = richardson(r.values, ratio);
  r.spread = ex.spread;
  r.extrapolation_order = ex.order;
  if (ex.spread <= opt.tolerance) {
    r.status = PairingStatus::converged;
    r.value = ex.value;
    return;
  }

  const std::size_t n = r.values.size();
  const std::size_t m = std::max<std::size_t>(6, n / 2);
  std::vector<double> lx, ly;
  for (std::size_t i = n - std::min(m, n); i < n; ++i) {
    const double a = std::abs(r.values[i]);
    if (!(a > 0.0)) {
      r.status = PairingStatus::inconclusive;
      return;
    }
    lx.push_back(std::log(r.y[i]));
    ly.push_back(std::log(a));
  }
  const auto f = fit_line(lx, ly);
  r.s = -f.slope;
  r.r_squared = f.r_squared;
  double t_crit = 2.0;
  if (lx.size() > 2) {
    boost::math::students_t dist(double(lx.size() - 2));
    t_crit = boost::math::quantile(boost::math::complement(dist, 0.025));
  }
  r.s_lo = r.s - t_crit * f.slope_stderr;
  r.s_hi = r.s + t_crit * f.slope_stderr;
  if (!(f.r_squared >= opt.min_r_squared) || !(r.s > opt.min_divergence)) {
    r.status = PairingStatus::inconclusive;
    return;
  }
  // A logarithmic divergence also looks like a weak power law over a few
  // decades; if |I| is better explained as linear in log y, do not call it.
  std::vector<double> la;
  for (double v : ly) la.push_back(std::exp(v));
  if (fit_line(lx, la).r_squared > f.r_squared) {
    r.status = PairingStatus::inconclusive;
    return;
  }
  r.status = PairingStatus::diverged;

  // Leading coefficient: when s is close to an integer, y^s I(y) tends to it
  // with integer-power corrections and can be extrapolated like a limit.
  const double s_int = std::round(r.s);
  if (s_int >= 1.0 && std::abs(r.s - s_int) <= 0.1) {
    std::vector<Complex> scaled(n);
    for (std::size_t i = 0; i < n; ++i) scaled[i] = r.values[i] * std::pow(r.y[i], s_int);
    r.leading_coefficient = richardson(scaled, ratio).value;
  } else {
    r.leading_coefficient = r.values.back() * std::pow(r.y.back(), r.s);
  }
}

template <SmoothFunction F>
PairingResult run_schedule(const ProductExpression& expr, const F& phi, const Schedule& sched,
                           const PairingOptions& opt) {
  if (!(sched.y0 > 0.0) || !(sched.ratio > 0.0 && sched.ratio < 1.0) || sched.count < 6)
    throw ParameterError("schedule requires y0 > 0, 0 < ratio < 1 and count >= 6");
  PairingResult r;
  r.y = sched.values();
  r.values.reserve(r.y.size());
  for (double y : r.y) r.values.push_back(pair_at_y(expr, phi, y, opt.quadrature));
  classify(r, opt, sched.ratio);
  return r;
}

}  // namespace detail

/// y -> 0 limit of the smeared product on a geometric schedule.
///
/// A converged result is confirmed on a second schedule with a different
/// ratio covering the same y-range; the two limits must agree within ten
/// times the tolerance, otherwise the result is downgraded to inconclusive.
template <SmoothFunction F>
PairingResult limit_pairing(const ProductExpression& expr, const F& phi, const PairingOptions& opt = {}) {
  auto r = detail::run_schedule(expr, phi, opt.schedule, opt);
  if (r.status != PairingStatus::converged || !opt.check_schedule) return r;

  Schedule second = opt.schedule;
  second.ratio = opt.second_ratio;
  const double span = double(opt.schedule.count - 1) * std::log(opt.schedule.ratio);
  second.count = std::max(6, static_cast<int>(std::lround(span / std::log(opt.second_ratio))) + 1);
  const auto alt = detail::run_schedule(expr, phi, second, opt);
  r.schedule_checked = true;
  r.value_second = alt.value;
  const double limit = 10.0 * opt.tolerance;
  if (alt.status != PairingStatus::converged || std::abs(alt.value.real() - r.value.real()) > limit ||
      std::abs(alt.value.imag() - r.value.imag()) > limit)
    r.status = PairingStatus::inconclusive;
  return r;
}

/// Reference Gaussian exp(-x^2) used to probe a product in isolation.
inline TestFunction reference_test_function() { return TestFunction::gaussian(RealPolynomial{1.0}); }

/// Fitted divergence order s of the product against exp(-x^2); 0 if the
/// pairing converges.
inline double divergence_order(const ProductExpression& expr, const PairingOptions& opt = {}) {
  const auto r = limit_pairing(expr, reference_test_function(), opt);
  if (r.status == PairingStatus::converged) return 0.0;
  if (r.status == PairingStatus::diverged) return r.s;
  throw InconclusiveError("pairing neither converges nor follows a power law", r.y, r.values);
}

/// Bases with nonzero value at the origin and both parities, so that odd and
/// even parts of a divergence are both exposed.
inline std::vector<TestFunction> probe_bases() {
  return {TestFunction::gaussian(RealPolynomial{1.0}),
          TestFunction(RealPolynomial{1.0, 1.0}, 1.0, 0.0, 8),
          TestFunction(RealPolynomial{1.0, -0.5, 0.25}, 0.6, 0.3, 8)};
}

struct SubtractionOrder {
  /// False when the product already converges; p is then 0 and unused.
  bool needed = false;
  int p = 0;
};

/// Smallest p <= p_max such that x^(p+1) times the product converges against
/// every probe basis, and the product converges against every x^(p+1)-probe.
inline SubtractionOrder subtraction_order(const ProductExpression& expr, int p_max,
                                          const PairingOptions& opt = {}) {
  if (p_max < 0) throw ParameterError("p_max must be nonnegative");
  const auto bases = probe_bases();
  auto all_converge = [&](const ProductExpression& e, int probe_order) {
    for (const auto& b : bases) {
      const auto phi = probe_order < 0 ? b : vanish_probe(probe_order, b);
      if (limit_pairing(e, phi, opt).status != PairingStatus::converged) return false;
    }
    return true;
  };
  if (all_converge(expr, -1)) return {false, 0};
  for (int p = 0; p <= p_max; ++p) {
    if (all_converge(expr.with_extra_power(p + 1), -1) && all_converge(expr, p)) return {true, p};
  }
  throw NotExtendable("no subtraction order up to " + std::to_string(p_max) + " makes the product converge");
}

struct RingCheck {
  Complex a;
  Complex b;
  double difference = 0.0;
  bool ok = false;
};

/// Two regroupings of the same factor multiset must pair identically at a
/// fixed y: the regularized product is an ordinary product of complex numbers.
template <SmoothFunction F>
RingCheck ring_axiom_check(const ProductExpression& a, const ProductExpression& b, const F& phi, double y,
                           const QuadratureOptions& opt = {}) {
  RingCheck r;
  r.a = pair_at_y(a, phi, y, opt);
  r.b = pair_at_y(b, phi, y, opt);
  r.difference = std::abs(r.a - r.b);
  r.ok = r.difference <= 1e-12 * (1.0 + std::abs(r.a));
  return r;
}

}  // namespace distprod
