#pragma once

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "distprod/errors.hpp"
#include "distprod/polynomial.hpp"

namespace distprod {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

/// A real test function with exact derivative access up to max_order().
/// support() bounds the region where the function is numerically nonzero and
/// breakpoints() lists abscissae where a quadrature should split.
template <class F>
concept SmoothFunction = requires(const F& f, double x, int q) {
  { f.derivative(x, q) } -> std::convertible_to<double>;
  { f.max_order() } -> std::convertible_to<int>;
  { f.support() } -> std::convertible_to<Interval>;
  { f.breakpoints() } -> std::convertible_to<std::vector<double>>;
};

/// p(x) exp(-(x - mu)^2 / (2 sigma^2)).
///
/// The family is closed under differentiation:
///   d/dx [p g] = (p' - p (x - mu) / sigma^2) g,
/// so every derivative up to the declared order is kept as an explicit
/// polynomial and evaluated without finite differences.
class TestFunction {
 public:
  TestFunction(RealPolynomial poly, double sigma, double mu, int max_order)
      : poly_(std::move(poly)), sigma_(sigma), mu_(mu), max_order_(max_order) {
    if (!(sigma > 0.0) || !std::isfinite(sigma))
      throw ParameterError("test function width sigma must be positive");
    if (!std::isfinite(mu)) throw ParameterError("test function center must be finite");
    if (max_order < 0) throw ParameterError("max derivative order must be nonnegative");
    const RealPolynomial shift{-mu / (sigma * sigma), 1.0 / (sigma * sigma)};
    derivs_.reserve(static_cast<std::size_t>(max_order) + 1);
    derivs_.push_back(poly_);
    for (int q = 1; q <= max_order; ++q) {
      const auto& prev = derivs_.back();
      derivs_.push_back(prev.derivative() - prev * shift);
    }
    build_taylor();
  }

  /// exp(-x^2 / (2 sigma^2)) times the given polynomial, centered at 0.
  static TestFunction gaussian(RealPolynomial poly, double sigma = 1.0 / std::sqrt(2.0),
                               int max_order = 8) {
    return TestFunction(std::move(poly), sigma, 0.0, max_order);
  }

  const RealPolynomial& polynomial() const { return poly_; }
  double sigma() const { return sigma_; }
  double mu() const { return mu_; }
  int max_order() const { return max_order_; }

  /// Polynomial factor of the q-th derivative.
  const RealPolynomial& derivative_polynomial(int q) const {
    check_order(q);
    return derivs_[static_cast<std::size_t>(q)];
  }

  double derivative(double x, int q) const {
    check_order(q);
    const auto& p = derivs_[static_cast<std::size_t>(q)];
    if (p.is_zero()) return 0.0;
    const double u = (x - mu_) / sigma_;
    return p(x) * std::exp(-0.5 * u * u);
  }

  double operator()(double x) const { return derivative(x, 0); }

  Interval support() const { return {mu_ - 40.0 * sigma_, mu_ + 40.0 * sigma_}; }
  std::vector<double> breakpoints() const { return {mu_}; }

  /// phi(x) - sum_{k<=p} phi^(k)(0) x^k / k!. Near the origin the remainder is
  /// summed from the power series instead of subtracted, which would cancel
  /// catastrophically.
  double taylor_remainder(double x, int p) const {
    const double radius = sigma_ / (1.0 + std::abs(mu_) / sigma_);
    if (std::abs(x) > radius || p + 1 >= static_cast<int>(taylor_.size())) {
      double v = (*this)(x);
      double xk = 1.0;
      double fact = 1.0;
      for (int k = 0; k <= p; ++k) {
        if (k > 0) {
          xk *= x;
          fact *= double(k);
        }
        v -= derivative(0.0, k) * xk / fact;
      }
      return v;
    }
    double acc = 0.0;
    double xk = std::pow(x, p + 1);
    for (std::size_t k = static_cast<std::size_t>(p) + 1; k < taylor_.size(); ++k) {
      acc += taylor_[k] * xk;
      xk *= x;
    }
    return acc;
  }

  /// Same Gaussian factor with the polynomial multiplied by `factor`.
  TestFunction times(const RealPolynomial& factor, int max_order) const {
    return TestFunction(poly_ * factor, sigma_, mu_, max_order);
  }

  friend bool operator==(const TestFunction& a, const TestFunction& b) {
    return a.poly_ == b.poly_ && a.sigma_ == b.sigma_ && a.mu_ == b.mu_ &&
           a.max_order_ == b.max_order_;
  }

 private:
  void check_order(int q) const {
    if (q < 0 || q > max_order_) throw OrderExceeded(q, max_order_);
  }

  // Maclaurin coefficients of phi. With h(x) = -(x - mu)^2 / (2 sigma^2),
  // g = exp(h) obeys (k+1) g_{k+1} = h1 g_k + 2 h2 g_{k-1}; phi = p * g.
  void build_taylor() {
    constexpr std::size_t terms = 72;
    const double s2 = sigma_ * sigma_;
    const double h1 = mu_ / s2;
    const double h2 = -0.5 / s2;
    std::vector<double> g(terms, 0.0);
    g[0] = std::exp(-0.5 * mu_ * mu_ / s2);
    for (std::size_t k = 0; k + 1 < terms; ++k)
      g[k + 1] = (h1 * g[k] + (k > 0 ? 2.0 * h2 * g[k - 1] : 0.0)) / double(k + 1);
    taylor_.assign(terms, 0.0);
    const auto& c = poly_.coefficients();
    for (std::size_t i = 0; i < c.size(); ++i)
      for (std::size_t k = 0; i + k < terms; ++k) taylor_[i + k] += c[i] * g[k];
  }

  RealPolynomial poly_;
  double sigma_;
  double mu_;
  int max_order_;
  std::vector<RealPolynomial> derivs_;
  std::vector<double> taylor_;
};

static_assert(SmoothFunction<TestFunction>);

/// a*f + b*g, with derivatives combined term by term.
template <SmoothFunction F, SmoothFunction G>
class LinearCombination {
 public:
  LinearCombination(double a, F f, double b, G g)
      : a_(a), b_(b), f_(std::move(f)), g_(std::move(g)) {}

  int max_order() const { return std::min<int>(f_.max_order(), g_.max_order()); }

  double derivative(double x, int q) const {
    if (q < 0 || q > max_order()) throw OrderExceeded(q, max_order());
    return a_ * f_.derivative(x, q) + b_ * g_.derivative(x, q);
  }
  double operator()(double x) const { return derivative(x, 0); }

  Interval support() const {
    const Interval s = f_.support();
    const Interval t = g_.support();
    return {std::min(s.lo, t.lo), std::max(s.hi, t.hi)};
  }
  std::vector<double> breakpoints() const {
    auto v = f_.breakpoints();
    const auto w = g_.breakpoints();
    v.insert(v.end(), w.begin(), w.end());
    return v;
  }

 private:
  double a_;
  double b_;
  F f_;
  G g_;
};

/// x^(p+1) * base: a test function whose derivatives of order 0..p vanish
/// exactly at the origin.
inline TestFunction vanish_probe(int p, const TestFunction& base) {
  if (p < 0) throw ParameterError("vanishing order must be nonnegative");
  if (base(0.0) == 0.0) throw ParameterError("vanish_probe base must be nonzero at the origin");
  return base.times(RealPolynomial::monomial(p + 1), base.max_order());
}

struct SeminormReport {
  int order = 0;
  /// values[k][q] = sup_x |x^k phi^(q)(x)|
  std::vector<std::vector<double>> values;

  double norm() const {
    double m = 0.0;
    for (const auto& row : values)
      for (double v : row) m = std::max(m, v);
    return m;
  }
};

namespace detail {

// Maximize |g| on [lo, hi]: scan a uniform grid, then polish the best node
// with a golden-section search over its two neighbouring cells.
inline double sup_on_grid(const std::function<double(double)>& g, double lo, double hi,
                          std::size_t n) {
  const double h = (hi - lo) / double(n - 1);
  std::size_t best = 0;
  double best_val = -1.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double v = std::abs(g(lo + h * double(i)));
    if (v > best_val) {
      best_val = v;
      best = i;
    }
  }
  double a = lo + h * double(best == 0 ? 0 : best - 1);
  double b = lo + h * double(std::min(best + 1, n - 1));
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = std::abs(g(c));
  double fd = std::abs(g(d));
  for (int it = 0; it < 100 && (b - a) > 1e-13 * (1.0 + std::abs(a)); ++it) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = std::abs(g(c));
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = std::abs(g(d));
    }
  }
  return std::max({best_val, fc, fd});
}

}  // namespace detail

/// Schwartz seminorm table sup |x^k phi^(q)(x)| for k, q <= order, each entry
/// refined until successive grid doublings agree to 1e-6 relative.
template <SmoothFunction F>
SeminormReport seminorm(const F& phi, int order) {
  if (order < 0) throw ParameterError("seminorm order must be nonnegative");
  if (order > phi.max_order()) throw OrderExceeded(order, phi.max_order());
  const Interval s = phi.support();
  SeminormReport rep;
  rep.order = order;
  rep.values.assign(static_cast<std::size_t>(order) + 1,
                    std::vector<double>(static_cast<std::size_t>(order) + 1, 0.0));
  for (int k = 0; k <= order; ++k) {
    for (int q = 0; q <= order; ++q) {
      auto g = [&](double x) { return std::pow(x, k) * phi.derivative(x, q); };
      std::size_t n = 1025;
      double prev = detail::sup_on_grid(g, s.lo, s.hi, n);
      for (int refine = 0; refine < 8; ++refine) {
        n = 2 * n - 1;
        const double next = detail::sup_on_grid(g, s.lo, s.hi, n);
        const bool stable = std::abs(next - prev) <= 1e-6 * std::max(next, prev) || next == prev;
        prev = std::max(prev, next);
        if (stable) break;
      }
      rep.values[static_cast<std::size_t>(k)][static_cast<std::size_t>(q)] = prev;
    }
  }
  return rep;
}

}  // namespace distprod
