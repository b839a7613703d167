#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include "distprod/errors.hpp"
#include "distprod/polynomial.hpp"

namespace distprod {

using Complex = std::complex<double>;

struct Pole {
  double location = 0.0;
  int multiplicity = 0;
  friend bool operator==(const Pole&, const Pole&) = default;
};

/// N(z) / prod_j (z - a_j)^(m_j) with complex numerator coefficients and real
/// poles a_j. Keeping the denominator in factored form means every pole is on
/// the real axis by construction, so each piece is holomorphic off the axis.
class RationalFunction {
 public:
  RationalFunction() = default;
  explicit RationalFunction(ComplexPolynomial numerator, std::vector<Pole> poles = {})
      : num_(std::move(numerator)), poles_(std::move(poles)) {
    normalize();
  }

  /// coeff * z^power; negative powers give a pole at the origin.
  static RationalFunction power(int power, Complex coeff = 1.0) {
    if (power >= 0) return RationalFunction(ComplexPolynomial::monomial(power, coeff));
    return RationalFunction(ComplexPolynomial{coeff}, {{0.0, -power}});
  }

  const ComplexPolynomial& numerator() const { return num_; }
  const std::vector<Pole>& poles() const { return poles_; }
  bool is_zero() const { return num_.is_zero(); }

  ComplexPolynomial denominator() const {
    ComplexPolynomial d{Complex(1.0)};
    for (const auto& p : poles_)
      for (int k = 0; k < p.multiplicity; ++k) d = d * ComplexPolynomial{Complex(-p.location), Complex(1.0)};
    return d;
  }

  Complex operator()(Complex z) const {
    if (num_.is_zero()) return 0.0;
    Complex v = num_(z);
    for (const auto& p : poles_) {
      const Complex f = z - p.location;
      for (int k = 0; k < p.multiplicity; ++k) v /= f;
    }
    return v;
  }

  /// Quotient rule in factored form:
  ///   (N/D)' = (N' D0 - N sum_j m_j D0/(z - a_j)) / (D D0),  D0 = prod_j (z - a_j).
  RationalFunction derivative() const {
    if (poles_.empty()) return RationalFunction(num_.derivative());
    ComplexPolynomial d0{Complex(1.0)};
    for (const auto& p : poles_) d0 = d0 * linear(p.location);
    ComplexPolynomial acc = num_.derivative() * d0;
    for (std::size_t j = 0; j < poles_.size(); ++j) {
      ComplexPolynomial others{Complex(1.0)};
      for (std::size_t l = 0; l < poles_.size(); ++l)
        if (l != j) others = others * linear(poles_[l].location);
      acc -= num_ * others * Complex(double(poles_[j].multiplicity));
    }
    auto poles = poles_;
    for (auto& p : poles) ++p.multiplicity;
    return RationalFunction(std::move(acc), std::move(poles));
  }

  friend RationalFunction operator*(const RationalFunction& r, Complex s) {
    return RationalFunction(r.num_ * s, r.poles_);
  }
  friend RationalFunction operator*(Complex s, const RationalFunction& r) { return r * s; }

  friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
    std::vector<Pole> common = a.poles_;
    for (const auto& p : b.poles_) {
      auto it = std::find_if(common.begin(), common.end(),
                             [&](const Pole& q) { return q.location == p.location; });
      if (it == common.end()) common.push_back(p);
      else it->multiplicity = std::max(it->multiplicity, p.multiplicity);
    }
    auto lift = [&](const RationalFunction& r) {
      ComplexPolynomial n = r.num_;
      for (const auto& p : common) {
        int have = 0;
        for (const auto& q : r.poles_)
          if (q.location == p.location) have = q.multiplicity;
        for (int k = have; k < p.multiplicity; ++k) n = n * linear(p.location);
      }
      return n;
    };
    ComplexPolynomial num = lift(a) + lift(b);
    return RationalFunction(std::move(num), std::move(common));
  }
  friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) {
    return a + b * Complex(-1.0);
  }

  friend bool operator==(const RationalFunction&, const RationalFunction&) = default;

 private:
  static ComplexPolynomial linear(double root) {
    return ComplexPolynomial{Complex(-root), Complex(1.0)};
  }

  // Cancel common factors (z - a) between numerator and denominator and drop
  // empty poles; the zero function carries no poles.
  void normalize() {
    std::sort(poles_.begin(), poles_.end(),
              [](const Pole& x, const Pole& y) { return x.location < y.location; });
    std::vector<Pole> merged;
    for (const auto& p : poles_) {
      if (p.multiplicity < 0) throw ParameterError("pole multiplicity must be nonnegative");
      if (!std::isfinite(p.location)) throw ParameterError("pole location must be finite");
      if (!merged.empty() && merged.back().location == p.location)
        merged.back().multiplicity += p.multiplicity;
      else
        merged.push_back(p);
    }
    poles_.clear();
    if (num_.is_zero()) return;
    for (auto p : merged) {
      while (p.multiplicity > 0 && num_.degree() >= 1) {
        Complex rem;
        auto q = num_.divide_linear(Complex(p.location), &rem);
        if (std::abs(rem) > 1e-14 * num_.max_abs_coefficient()) break;
        num_ = std::move(q);
        --p.multiplicity;
      }
      if (p.multiplicity > 0) poles_.push_back(p);
    }
  }

  ComplexPolynomial num_;
  std::vector<Pole> poles_;
};

}  // namespace distprod
