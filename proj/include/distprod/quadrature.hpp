#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <queue>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "distprod/errors.hpp"

namespace distprod {

struct QuadratureOptions {
  double abs_tol = 1e-10;
  double rel_tol = 1e-12;
  // Tolerance floor relative to the integral of |f|; below this the Kronrod
  // error estimates are dominated by rounding in the integrand itself.
  double roundoff_rel = 1e-13;
  int max_intervals = 20000;
};

struct QuadratureResult {
  std::complex<double> value;
  double error = 0.0;
  double l1 = 0.0;
  int intervals = 0;
};

namespace detail {

struct Cell {
  double a = 0.0;
  double b = 0.0;
  std::complex<double> value;
  double error = 0.0;
  double l1 = 0.0;
};

// 21-point Kronrod rule with the embedded 10-point Gauss rule; error estimate
// follows the QUADPACK heuristic.
template <class F>
Cell kronrod21(const F& f, double a, double b) {
  using K = boost::math::quadrature::gauss_kronrod<double, 21>;
  using G = boost::math::quadrature::gauss<double, 10>;
  const auto& xk = K::abscissa();
  const auto& wk = K::weights();
  const auto& wg = G::weights();
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);

  std::complex<double> fv[21];
  fv[0] = f(mid);
  for (std::size_t i = 1; i < xk.size(); ++i) {
    fv[2 * i - 1] = f(mid - half * xk[i]);
    fv[2 * i] = f(mid + half * xk[i]);
  }
  std::complex<double> rk = fv[0] * wk[0];
  std::complex<double> rg = 0.0;
  double resabs = std::abs(fv[0]) * wk[0];
  for (std::size_t i = 1; i < xk.size(); ++i) {
    const auto s = fv[2 * i - 1] + fv[2 * i];
    rk += s * wk[i];
    resabs += (std::abs(fv[2 * i - 1]) + std::abs(fv[2 * i])) * wk[i];
    if (i % 2 == 1) rg += s * wg[i / 2];
  }
  const std::complex<double> mean = 0.5 * rk;
  double resasc = std::abs(fv[0] - mean) * wk[0];
  for (std::size_t i = 1; i < xk.size(); ++i)
    resasc += (std::abs(fv[2 * i - 1] - mean) + std::abs(fv[2 * i] - mean)) * wk[i];

  Cell c;
  c.a = a;
  c.b = b;
  c.value = rk * half;
  resabs *= std::abs(half);
  resasc *= std::abs(half);
  double err = std::abs((rk - rg) * half);
  if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  constexpr double eps = std::numeric_limits<double>::epsilon();
  if (resabs > std::numeric_limits<double>::min() / (50.0 * eps)) err = std::max(50.0 * eps * resabs, err);
  c.error = err;
  c.l1 = resabs;
  return c;
}

}  // namespace detail

/// Globally adaptive Gauss-Kronrod integration of a complex-valued f over
/// consecutive intervals [edges[i], edges[i+1]]. The cell with the largest
/// error estimate is bisected until the summed estimate meets
/// max(abs_tol, rel_tol |I|, roundoff_rel * int |f|). The result is summed in
/// left-to-right order so it is bit-stable for fixed inputs.
template <class F>
QuadratureResult integrate(const F& f, std::vector<double> edges, const QuadratureOptions& opt = {}) {
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  if (edges.size() < 2) return {};

  auto worse = [](const detail::Cell& x, const detail::Cell& y) {
    if (x.error != y.error) return x.error < y.error;
    return x.a > y.a;
  };
  std::priority_queue<detail::Cell, std::vector<detail::Cell>, decltype(worse)> heap(worse);
  std::vector<detail::Cell> done;

  std::complex<double> total = 0.0;
  double total_err = 0.0;
  double total_l1 = 0.0;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    auto c = detail::kronrod21(f, edges[i], edges[i + 1]);
    total += c.value;
    total_err += c.error;
    total_l1 += c.l1;
    heap.push(c);
  }

  auto target = [&] {
    return std::max({opt.abs_tol, opt.rel_tol * std::abs(total), opt.roundoff_rel * total_l1});
  };
  int count = static_cast<int>(heap.size());
  while (total_err > target() && count < opt.max_intervals && !heap.empty()) {
    const auto worst = heap.top();
    const double m = 0.5 * (worst.a + worst.b);
    if (!(m > worst.a && m < worst.b)) {
      // Cannot be split further in double precision.
      done.push_back(worst);
      heap.pop();
      continue;
    }
    heap.pop();
    const auto left = detail::kronrod21(f, worst.a, m);
    const auto right = detail::kronrod21(f, m, worst.b);
    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    total_l1 += left.l1 + right.l1 - worst.l1;
    heap.push(left);
    heap.push(right);
    ++count;
  }

  while (!heap.empty()) {
    done.push_back(heap.top());
    heap.pop();
  }
  std::sort(done.begin(), done.end(), [](const auto& x, const auto& y) { return x.a < y.a; });
  QuadratureResult r;
  for (const auto& c : done) {
    r.value += c.value;
    r.error += c.error;
    r.l1 += c.l1;
  }
  r.intervals = static_cast<int>(done.size());
  const double tol = std::max({opt.abs_tol, opt.rel_tol * std::abs(r.value), opt.roundoff_rel * r.l1});
  if (!(r.error <= tol) || !std::isfinite(r.value.real()) || !std::isfinite(r.value.imag()))
    throw QuadratureError("adaptive quadrature did not reach tolerance", r.value, r.error);
  return r;
}

}  // namespace distprod
