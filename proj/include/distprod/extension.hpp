#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include "distprod/cutoff.hpp"
#include "distprod/errors.hpp"
#include "distprod/pairing.hpp"
#include "distprod/testfn.hpp"

namespace distprod {

namespace detail {

inline double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * double(n - k + i) / double(i);
  return r;
}

inline double factorial(int n) {
  double r = 1.0;
  for (int i = 2; i <= n; ++i) r *= double(i);
  return r;
}

}  // namespace detail

/// phi minus its cutoff Taylor polynomial of order p at the origin:
///   phi(x) - sum_{k<=p} phi^(k)(0) w(x) x^k / k!
/// Derivatives go through Leibniz on w(x) * x^k/k!. On the plateau w is 1 with
/// vanishing derivatives, so the first p+1 derivatives at 0 cancel exactly.
template <SmoothFunction F>
class TaylorSubtracted {
 public:
  TaylorSubtracted(F phi, PlateauCutoff omega, int p)
      : phi_(std::move(phi)), omega_(std::move(omega)), p_(p) {
    if (p < 0) throw ParameterError("subtraction order must be nonnegative");
    if (p > phi_.max_order()) throw OrderExceeded(p, phi_.max_order());
    if (omega_.max_order() < phi_.max_order()) throw OrderExceeded(phi_.max_order(), omega_.max_order());
    taylor_.reserve(static_cast<std::size_t>(p) + 1);
    for (int k = 0; k <= p; ++k) taylor_.push_back(phi_.derivative(0.0, k));
  }

  int max_order() const { return phi_.max_order(); }
  int order() const { return p_; }
  const F& base() const { return phi_; }
  const PlateauCutoff& cutoff() const { return omega_; }

  double derivative(double x, int q) const {
    if (q < 0 || q > max_order()) throw OrderExceeded(q, max_order());
    const bool on_plateau = std::abs(x) <= omega_.plateau();
    if constexpr (requires { phi_.taylor_remainder(x, p_); }) {
      if (on_plateau && q == 0) return phi_.taylor_remainder(x, p_);
    }
    double v = phi_.derivative(x, q);
    for (int k = 0; k <= p_; ++k) {
      const double c = taylor_[static_cast<std::size_t>(k)];
      if (c == 0.0) continue;
      double term = 0.0;
      if (on_plateau) {
        // w = 1 and every derivative of w vanishes: only (x^k/k!)^(q) survives.
        if (q <= k) term = std::pow(x, k - q) / detail::factorial(k - q);
      } else {
        for (int j = 0; j <= std::min(q, k); ++j) {
          const double w = omega_.derivative(x, q - j);
          if (w != 0.0) term += detail::binomial(q, j) * w * std::pow(x, k - j) / detail::factorial(k - j);
        }
      }
      v -= c * term;
    }
    return v;
  }
  double operator()(double x) const { return derivative(x, 0); }

  Interval support() const {
    const Interval s = phi_.support();
    return {std::min(s.lo, -omega_.support_radius()), std::max(s.hi, omega_.support_radius())};
  }
  std::vector<double> breakpoints() const {
    auto v = phi_.breakpoints();
    for (double b : omega_.breakpoints()) v.push_back(b);
    return v;
  }

 private:
  F phi_;
  PlateauCutoff omega_;
  int p_;
  std::vector<double> taylor_;
};

template <SmoothFunction F>
TaylorSubtracted<F> taylor_subtract(const F& phi, const PlateauCutoff& omega, int p) {
  return TaylorSubtracted<F>(phi, omega, p);
}

/// sum_{k<=p} c_k (delta^(k), phi) with (delta^(k), phi) = (-1)^k phi^(k)(0).
template <SmoothFunction F>
Complex counterterm_part(const std::vector<Complex>& c, const F& phi) {
  Complex acc = 0.0;
  for (std::size_t k = 0; k < c.size(); ++k) {
    const double d = phi.derivative(0.0, static_cast<int>(k));
    acc += c[k] * ((k % 2 == 0) ? d : -d);
  }
  return acc;
}

/// A continuation of a product to all test functions:
///   (T, phi) = (Tbar, phi_bar) + sum_{k<=p} c_k (delta^(k), phi),
/// where Tbar is the product's limit on functions vanishing to order p at 0.
struct Extension {
  ProductExpression expr;
  int p = 0;
  std::vector<Complex> c;
  PlateauCutoff omega{1.0, 2.0};

  Extension(ProductExpression e, int order, std::vector<Complex> counterterms, PlateauCutoff cutoff)
      : expr(std::move(e)), p(order), c(std::move(counterterms)), omega(std::move(cutoff)) {
    if (p < 0) throw ParameterError("subtraction order must be nonnegative");
    if (c.empty()) c.assign(static_cast<std::size_t>(p) + 1, Complex(0.0));
    if (c.size() != static_cast<std::size_t>(p) + 1)
      throw ParameterError("counterterm vector must have p+1 entries");
  }

  Extension with_counterterms(std::vector<Complex> counterterms) const {
    return Extension(expr, p, std::move(counterterms), omega);
  }
  Extension with_cutoff(PlateauCutoff cutoff) const { return Extension(expr, p, c, std::move(cutoff)); }
};

struct ExtensionValue {
  Complex value;
  Complex tbar_phibar;
  Complex counterterm_part;
  PairingResult pairing;
};

template <SmoothFunction F>
ExtensionValue evaluate_extension(const Extension& E, const F& phi, const PairingOptions& opt = {}) {
  if (phi.max_order() < E.p) throw OrderExceeded(E.p, phi.max_order());
  const auto phibar = taylor_subtract(phi, E.omega, E.p);
  ExtensionValue v;
  v.pairing = limit_pairing(E.expr, phibar, opt);
  if (v.pairing.status != PairingStatus::converged)
    throw ExtensionFailure("subtracted pairing is " + to_string(v.pairing.status) +
                           "; the subtraction order is too small or the product is out of scope");
  v.tbar_phibar = v.pairing.value;
  v.counterterm_part = counterterm_part(E.c, phi);
  v.value = v.tbar_phibar + v.counterterm_part;
  return v;
}

struct OmegaCheck {
  Complex first;
  Complex second;
  double difference = 0.0;
  bool ok = false;
};

/// |value with w1 - value with w2| for the c = 0 extension; must stay within
/// 1e-5 (1 + |value|).
template <SmoothFunction F>
OmegaCheck omega_independence_check(const ProductExpression& expr, int p, const F& phi,
                                    const PlateauCutoff& w1, const PlateauCutoff& w2,
                                    const PairingOptions& opt = {}) {
  OmegaCheck r;
  r.first = evaluate_extension(Extension(expr, p, {}, w1), phi, opt).value;
  r.second = evaluate_extension(Extension(expr, p, {}, w2), phi, opt).value;
  r.difference = std::abs(r.first - r.second);
  r.ok = r.difference <= 1e-5 * (1.0 + std::abs(r.first));
  return r;
}

struct FactorizationCheck {
  /// (T, x^(k+1) psi)
  PairingResult lhs;
  /// (x^(k+1) T, psi)
  PairingResult rhs;
  double difference = 0.0;
  bool converged = false;
  bool ok = false;
};

/// (T, x^(k+1) psi) against (x^(k+1) T, psi), agreement within 1e-7.
inline FactorizationCheck factorization_identity_check(const ProductExpression& expr, int kappa,
                                                       const TestFunction& psi,
                                                       const PairingOptions& opt = {}) {
  if (kappa < 0) throw ParameterError("monomial order must be nonnegative");
  FactorizationCheck r;
  r.lhs = limit_pairing(expr, vanish_probe(kappa, psi), opt);
  r.rhs = limit_pairing(expr.with_extra_power(kappa + 1), psi, opt);
  r.converged = r.lhs.status == PairingStatus::converged && r.rhs.status == PairingStatus::converged;
  if (r.converged) {
    r.difference = std::abs(r.lhs.value - r.rhs.value);
    r.ok = r.difference <= 1e-7;
  }
  return r;
}

struct ScanRow {
  std::size_t phi_index = 0;
  std::vector<Complex> c;
  Complex value;
  Complex offset;
  Complex expected_offset;
  bool ok = false;
};

/// Evaluates the extension over a grid of counterterm vectors for each test
/// function. Each row is evaluated from scratch and compared with the c = 0
/// row; the offset must be sum_k c_k (-1)^k phi^(k)(0).
template <SmoothFunction F>
std::vector<ScanRow> nonuniqueness_scan(const Extension& E, const std::vector<std::vector<Complex>>& c_grid,
                                        const std::vector<F>& phis, const PairingOptions& opt = {}) {
  std::vector<ScanRow> rows;
  for (std::size_t i = 0; i < phis.size(); ++i) {
    const auto base = evaluate_extension(E.with_counterterms({}), phis[i], opt);
    for (const auto& c : c_grid) {
      const auto shifted = E.with_counterterms(c);
      ScanRow row;
      row.phi_index = i;
      row.c = shifted.c;
      row.value = evaluate_extension(shifted, phis[i], opt).value;
      row.offset = row.value - base.value;
      row.expected_offset = counterterm_part(shifted.c, phis[i]);
      row.ok = std::abs(row.offset - row.expected_offset) <=
               1e-12 * std::max(1.0, std::abs(row.expected_offset));
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

}  // namespace distprod
