#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <vector>

namespace distprod {

namespace detail {
inline double magnitude(double v) { return std::abs(v); }
inline double magnitude(const std::complex<double>& v) { return std::abs(v); }
}  // namespace detail

/// Dense polynomial with ascending coefficients c[0] + c[1] x + ...
/// Trailing zeros are trimmed, so the zero polynomial has no coefficients.
template <typename T>
class Polynomial {
 public:
  Polynomial() = default;
  Polynomial(std::initializer_list<T> coeffs) : c_(coeffs) { trim(); }
  explicit Polynomial(std::vector<T> coeffs) : c_(std::move(coeffs)) { trim(); }

  static Polynomial monomial(int degree, T coeff = T(1)) {
    std::vector<T> c(static_cast<std::size_t>(degree) + 1, T(0));
    c.back() = coeff;
    return Polynomial(std::move(c));
  }

  const std::vector<T>& coefficients() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }

  T coefficient(int k) const {
    return (k >= 0 && k < static_cast<int>(c_.size())) ? c_[k] : T(0);
  }

  template <typename X>
  auto operator()(const X& x) const {
    using R = decltype(T{} * x);
    R acc{};
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  Polynomial derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<T> d(c_.size() - 1);
    for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = T(double(k)) * c_[k];
    return Polynomial(std::move(d));
  }

  Polynomial& operator+=(const Polynomial& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), T(0));
    for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
    trim();
    return *this;
  }
  Polynomial& operator-=(const Polynomial& o) { return *this += o * T(-1); }

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<T> r(a.c_.size() + b.c_.size() - 1, T(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    return Polynomial(std::move(r));
  }
  friend Polynomial operator*(Polynomial a, T s) {
    for (auto& v : a.c_) v *= s;
    a.trim();
    return a;
  }
  friend Polynomial operator*(T s, Polynomial a) { return std::move(a) * s; }

  friend bool operator==(const Polynomial&, const Polynomial&) = default;

  /// Synthetic division by (x - root); returns the quotient and writes the
  /// remainder, which equals p(root).
  Polynomial divide_linear(T root, T* remainder = nullptr) const {
    if (c_.empty()) {
      if (remainder) *remainder = T(0);
      return {};
    }
    std::vector<T> q(c_.size() - 1, T(0));
    T carry = T(0);
    for (std::size_t k = c_.size(); k-- > 0;) {
      T next = c_[k] + carry * root;
      if (k > 0) q[k - 1] = next;
      else if (remainder) *remainder = next;
      carry = next;
    }
    return Polynomial(std::move(q));
  }

  double max_abs_coefficient() const {
    double m = 0.0;
    for (const auto& v : c_) m = std::max(m, detail::magnitude(v));
    return m;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == T(0)) c_.pop_back();
  }

  std::vector<T> c_;
};

using RealPolynomial = Polynomial<double>;
using ComplexPolynomial = Polynomial<std::complex<double>>;

}  // namespace distprod
