#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>

#include "distprod/errors.hpp"
#include "distprod/polynomial.hpp"
#include "distprod/testfn.hpp"

namespace distprod {

/// Smooth monotone step S: [0,1] -> [0,1], S(0) = 0, S(1) = 1, with every
/// derivative vanishing at both ends. S is the normalized running integral of
/// the bump psi(s) = exp(-1 / (s (1 - s))).
///
/// Derivatives of psi are psi times P_n(s) / w^(2n), w = s (1 - s), with
///   P_{n+1} = w (P_n' w - 2n P_n w') + P_n w'.
class BumpStep {
 public:
  explicit BumpStep(int max_order) : max_order_(max_order) {
    if (max_order < 0) throw ParameterError("max derivative order must be nonnegative");
    const RealPolynomial w{0.0, 1.0, -1.0};
    const RealPolynomial dw{1.0, -2.0};
    bump_polys_.push_back(RealPolynomial{1.0});
    for (int n = 0; n + 1 < max_order; ++n) {
      const auto& p = bump_polys_.back();
      bump_polys_.push_back(w * (p.derivative() * w - p * dw * double(2 * n)) + p * dw);
    }
    half_mass_ = left_mass(0.5);
  }

  int max_order() const { return max_order_; }

  /// n-th derivative of the bump at s.
  double bump(double s, int n) const {
    if (s <= 0.0 || s >= 1.0) return 0.0;
    const double w = s * (1.0 - s);
    const double e = -1.0 / w - 2.0 * double(n) * std::log(w);
    return bump_polys_[static_cast<std::size_t>(n)](s) * std::exp(e);
  }

  double operator()(double t, int q = 0) const {
    if (q < 0 || q > max_order_) throw OrderExceeded(q, max_order_);
    if (t <= 0.0) return 0.0;
    if (t >= 1.0) return q == 0 ? 1.0 : 0.0;
    if (q > 0) return bump(t, q - 1) / (2.0 * half_mass_);
    if (t <= 0.5) return left_mass(t) / (2.0 * half_mass_);
    return 1.0 - left_mass(1.0 - t) / (2.0 * half_mass_);
  }

 private:
  // Integral of the bump over [0, t], t <= 1/2, by composite Gauss-Legendre.
  double left_mass(double t) const {
    using Rule = boost::math::quadrature::gauss<double, 30>;
    constexpr int panels = 4;
    const double h = t / panels;
    double acc = 0.0;
    for (int j = 0; j < panels; ++j) {
      const double mid = h * (j + 0.5);
      const double half = 0.5 * h;
      double panel = 0.0;
      for (std::size_t i = 0; i < Rule::abscissa().size(); ++i) {
        const double dx = half * Rule::abscissa()[i];
        panel += Rule::weights()[i] * (dx == 0.0 ? bump(mid, 0) : bump(mid - dx, 0) + bump(mid + dx, 0));
      }
      acc += panel * half;
    }
    return acc;
  }

  int max_order_;
  std::vector<RealPolynomial> bump_polys_;
  double half_mass_ = 0.0;
};

/// Even cutoff: 1 on |x| <= plateau, 0 on |x| >= support, and a bump
/// smoothstep in between.
class PlateauCutoff {
 public:
  PlateauCutoff(double plateau, double support, int max_order = 12)
      : plateau_(plateau), support_(support), step_(max_order) {
    if (!(plateau > 0.0) || !(support > plateau) || !std::isfinite(support))
      throw InvalidGeometry("cutoff requires 0 < plateau < support");
  }

  double plateau() const { return plateau_; }
  double support_radius() const { return support_; }
  int max_order() const { return step_.max_order(); }

  double derivative(double x, int q) const {
    if (q < 0 || q > max_order()) throw OrderExceeded(q, max_order());
    const double r = std::abs(x);
    if (r <= plateau_) return q == 0 ? 1.0 : 0.0;
    if (r >= support_) return 0.0;
    const double width = support_ - plateau_;
    const double t = (support_ - r) / width;
    double v = step_(t, q) * std::pow(-1.0 / width, q);
    if (x < 0.0 && (q % 2) == 1) v = -v;
    return v;
  }
  double operator()(double x) const { return derivative(x, 0); }

  Interval support() const { return {-support_, support_}; }
  std::vector<double> breakpoints() const { return {-support_, -plateau_, plateau_, support_}; }

 private:
  double plateau_;
  double support_;
  BumpStep step_;
};

static_assert(SmoothFunction<PlateauCutoff>);

inline PlateauCutoff build_plateau_cutoff(double plateau, double support, int max_order = 12) {
  return PlateauCutoff(plateau, support, max_order);
}

}  // namespace distprod
