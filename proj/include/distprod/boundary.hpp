#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <string>
#include <string_view>
#include <vector>

#include "distprod/errors.hpp"
#include "distprod/fit.hpp"
#include "distprod/rational.hpp"

namespace distprod {

/// A distribution given as the boundary value of
///   F^y(x) = f+(x + iy) - f-(x - iy),  y -> 0+,
/// with f+ holomorphic above and f- below the real axis, together with the
/// growth exponents (alpha, beta) of the bound
///   |f(x + iy)| <= C |y|^-alpha (1 + |x|)^beta.
struct HyperfunctionPair {
  RationalFunction plus;
  RationalFunction minus;
  double alpha = 0.0;
  double beta = 0.0;
  std::string label;

  HyperfunctionPair() = default;
  HyperfunctionPair(RationalFunction f_plus, RationalFunction f_minus, double a, double b,
                    std::string name)
      : plus(std::move(f_plus)), minus(std::move(f_minus)), alpha(a), beta(b), label(std::move(name)) {
    if (!(alpha >= 0.0) || !(beta >= 0.0) || !std::isfinite(alpha) || !std::isfinite(beta))
      throw ParameterError("growth exponents must be finite and nonnegative");
  }

  bool is_zero() const { return plus.is_zero() && minus.is_zero(); }

  friend bool operator==(const HyperfunctionPair&, const HyperfunctionPair&) = default;
};

/// Regularized boundary function F^y(x); y must be strictly positive.
inline Complex eval_Fy(const HyperfunctionPair& d, double x, double y) {
  if (!(y > 0.0)) throw RegulatorError("boundary representative evaluated at y <= 0");
  return d.plus(Complex(x, y)) - d.minus(Complex(x, -y));
}

inline HyperfunctionPair derivative(const HyperfunctionPair& d) {
  return HyperfunctionPair(d.plus.derivative(), d.minus.derivative(), d.alpha + 1.0, d.beta,
                           "d(" + d.label + ")");
}

/// Linear combination a*d1 + b*d2; exponents take the worse of the two.
inline HyperfunctionPair combine(Complex a, const HyperfunctionPair& d1, Complex b,
                                 const HyperfunctionPair& d2) {
  return HyperfunctionPair(a * d1.plus + b * d2.plus, a * d1.minus + b * d2.minus,
                           std::max(d1.alpha, d2.alpha), std::max(d1.beta, d2.beta),
                           "combination");
}

namespace catalog {

inline HyperfunctionPair delta() {
  // f+ = f- = -1/(2 pi i z)  =>  F^y = y / (pi (x^2 + y^2))
  const Complex c = -1.0 / (2.0 * std::numbers::pi * Complex(0.0, 1.0));
  const auto f = RationalFunction::power(-1, c);
  return HyperfunctionPair(f, f, 1.0, 0.0, "delta");
}

inline HyperfunctionPair pv_inv_x() {
  // f+ = 1/(2z), f- = -1/(2z)  =>  F^y = x / (x^2 + y^2)
  return HyperfunctionPair(RationalFunction::power(-1, 0.5), RationalFunction::power(-1, -0.5), 1.0,
                           0.0, "pv(1/x)");
}

inline HyperfunctionPair plus_i0_pow(int k) {
  if (k <= 0) throw ParameterError("(x+i0)^-k requires k >= 1");
  return HyperfunctionPair(RationalFunction::power(-k), RationalFunction{}, double(k), 0.0,
                           "(x+i0)^-" + std::to_string(k));
}

inline HyperfunctionPair minus_i0_pow(int k) {
  if (k <= 0) throw ParameterError("(x-i0)^-k requires k >= 1");
  return HyperfunctionPair(RationalFunction{}, RationalFunction::power(-k, -1.0), double(k), 0.0,
                           "(x-i0)^-" + std::to_string(k));
}

/// f+ = z^r/2, f- = -z^r/2, so F^y = Re (x + iy)^r, which is x^r only as y -> 0.
inline HyperfunctionPair monomial(int r) {
  if (r < 0) throw ParameterError("monomial power must be nonnegative");
  return HyperfunctionPair(RationalFunction::power(r, 0.5), RationalFunction::power(r, -0.5), 0.0,
                           double(r), r == 0 ? "1" : "monomial(" + std::to_string(r) + ")");
}

inline HyperfunctionPair one() { return monomial(0); }

inline HyperfunctionPair zero() { return HyperfunctionPair({}, {}, 0.0, 0.0, "0"); }

/// Lookup by name: delta, pv_inv_x, plus_i0_pow, minus_i0_pow, monomial, one.
/// `param` is k for the (x +- i0)^-k entries and r for monomial.
inline HyperfunctionPair by_name(std::string_view name, int param = 0) {
  if (name == "delta") return delta();
  if (name == "pv_inv_x") return pv_inv_x();
  if (name == "plus_i0_pow") return plus_i0_pow(param);
  if (name == "minus_i0_pow") return minus_i0_pow(param);
  if (name == "monomial") return monomial(param);
  if (name == "one") return one();
  throw CatalogError("unknown catalog entry '" + std::string(name) + "'");
}

}  // namespace catalog

struct GrowthRegion {
  double x_lo = -10.0;
  double x_hi = 10.0;
  double y_lo = 1e-3;
  double y_hi = 1.0;
};

struct GrowthReport {
  double C = 0.0;
  double alpha = 0.0;
  double beta = 0.0;
  double max_residual = 0.0;
  double alpha_r_squared = 1.0;
  double beta_r_squared = 1.0;
  bool ok = true;
  GrowthRegion region;
};

namespace detail {

// Majorant of both holomorphic pieces; it also bounds |F^y|.
inline double piece_magnitude(const HyperfunctionPair& d, double x, double y) {
  return std::abs(d.plus(Complex(x, y))) + std::abs(d.minus(Complex(x, -y)));
}

inline std::vector<double> log_space(double lo, double hi, int n) {
  std::vector<double> v(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    v[static_cast<std::size_t>(i)] = lo * std::pow(hi / lo, double(i) / double(n - 1));
  return v;
}

inline std::vector<double> lin_space(double lo, double hi, int n) {
  std::vector<double> v(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    v[static_cast<std::size_t>(i)] = lo + (hi - lo) * double(i) / double(n - 1);
  return v;
}

}  // namespace detail

/// Fits the exponents of |f(x+iy)| <= C |y|^-alpha (1+|x|)^beta on a
/// rectangle. alpha comes from the log-log slope in y along x = 0, beta from
/// the log-log slope in |x| over the outer decade of the x-range at y = y_lo;
/// negative slopes are clamped to zero. C is the largest ratio on a coarse
/// grid and the residual is re-measured on a finer, interleaved grid.
inline GrowthReport verify_growth_bound(const HyperfunctionPair& d, const GrowthRegion& region,
                                        double tolerance = 1e-2) {
  if (!(region.y_lo > 0.0) || !(region.y_hi > region.y_lo) || !(region.x_hi > region.x_lo))
    throw ParameterError("growth region must satisfy x_lo < x_hi and 0 < y_lo < y_hi");
  GrowthReport rep;
  rep.region = region;
  if (d.is_zero()) return rep;

  constexpr int n_fit = 41;
  {
    std::vector<double> lx, ly;
    for (double y : detail::log_space(region.y_lo, region.y_hi, n_fit)) {
      const double m = detail::piece_magnitude(d, 0.0, y);
      if (m > 0.0) {
        lx.push_back(std::log(y));
        ly.push_back(std::log(m));
      }
    }
    if (lx.size() >= 2) {
      const auto f = fit_line(lx, ly);
      rep.alpha = std::max(0.0, -f.slope);
      rep.alpha_r_squared = f.r_squared;
    }
  }
  {
    const double x_max = std::max(std::abs(region.x_lo), std::abs(region.x_hi));
    std::vector<double> lx, ly;
    for (double x : detail::log_space(x_max / 10.0, x_max, n_fit)) {
      const double m = std::max(detail::piece_magnitude(d, x, region.y_lo),
                                detail::piece_magnitude(d, -x, region.y_lo));
      if (m > 0.0) {
        lx.push_back(std::log(x));
        ly.push_back(std::log(m));
      }
    }
    if (lx.size() >= 2) {
      const auto f = fit_line(lx, ly);
      rep.beta = std::max(0.0, f.slope);
      rep.beta_r_squared = f.r_squared;
    }
  }

  auto ratio = [&](double x, double y) {
    return detail::piece_magnitude(d, x, y) /
           (std::pow(y, -rep.alpha) * std::pow(1.0 + std::abs(x), rep.beta));
  };
  for (double x : detail::lin_space(region.x_lo, region.x_hi, n_fit))
    for (double y : detail::log_space(region.y_lo, region.y_hi, n_fit)) rep.C = std::max(rep.C, ratio(x, y));
  if (region.x_lo <= 0.0 && region.x_hi >= 0.0)
    for (double y : detail::log_space(region.y_lo, region.y_hi, n_fit)) rep.C = std::max(rep.C, ratio(0.0, y));

  constexpr int n_check = 4 * (n_fit - 1) + 1;
  double worst = 0.0;
  for (double x : detail::lin_space(region.x_lo, region.x_hi, n_check))
    for (double y : detail::log_space(region.y_lo, region.y_hi, n_check))
      worst = std::max(worst, ratio(x, y));
  rep.max_residual = rep.C > 0.0 ? worst / rep.C : (worst > 0.0 ? std::numeric_limits<double>::infinity() : 0.0);
  rep.ok = rep.max_residual <= 1.0 + tolerance;
  return rep;
}

/// Order of the dual Schwartz space holding the boundary value in one
/// dimension: ceil(alpha + beta) + n + 3 with n = 1.
inline int required_order(double alpha, double beta) {
  if (!(alpha >= 0.0) || !(beta >= 0.0) || !std::isfinite(alpha + beta))
    throw ParameterError("required_order needs finite nonnegative exponents");
  constexpr int dimension = 1;
  return static_cast<int>(std::ceil(alpha + beta - 1e-9)) + dimension + 3;
}

}  // namespace distprod
