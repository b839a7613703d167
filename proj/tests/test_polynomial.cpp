#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "distprod/fit.hpp"
#include "distprod/polynomial.hpp"
#include "distprod/rational.hpp"

using namespace distprod;

TEST(Polynomial, EvaluatesAndTrims) {
  const RealPolynomial p{1.0, -2.0, 3.0, 0.0, 0.0};
  EXPECT_EQ(p.degree(), 2);
  EXPECT_DOUBLE_EQ(p(2.0), 1.0 - 4.0 + 12.0);
  EXPECT_TRUE(RealPolynomial{}.is_zero());
  EXPECT_TRUE((RealPolynomial{0.0, 0.0}).is_zero());
}

TEST(Polynomial, DerivativeAndProduct) {
  const RealPolynomial p{1.0, 1.0};
  const RealPolynomial q{-1.0, 1.0};
  EXPECT_EQ(p * q, (RealPolynomial{-1.0, 0.0, 1.0}));
  EXPECT_EQ((p * q).derivative(), (RealPolynomial{0.0, 2.0}));
  EXPECT_EQ(p - p, RealPolynomial{});
  EXPECT_EQ(RealPolynomial::monomial(3, 2.0), (RealPolynomial{0.0, 0.0, 0.0, 2.0}));
}

TEST(Polynomial, DivideLinear) {
  const RealPolynomial p{-6.0, 11.0, -6.0, 1.0};  // (x-1)(x-2)(x-3)
  double rem = 1.0;
  const auto q = p.divide_linear(2.0, &rem);
  EXPECT_DOUBLE_EQ(rem, 0.0);
  EXPECT_EQ(q, (RealPolynomial{3.0, -4.0, 1.0}));
}

TEST(Rational, PowerAndDerivative) {
  const auto r = RationalFunction::power(-2, 0.5);  // 0.5 / z^2
  const Complex z(0.3, 1.1);
  EXPECT_NEAR(std::abs(r(z) - 0.5 / (z * z)), 0.0, 1e-14);
  const auto d = r.derivative();
  EXPECT_NEAR(std::abs(d(z) + 1.0 / (z * z * z)), 0.0, 1e-13);
}

TEST(Rational, SumCombinesPoles) {
  const auto a = RationalFunction::power(-1);
  const auto b = RationalFunction::power(-1, -1.0);
  EXPECT_TRUE((a + b).is_zero());
  EXPECT_TRUE((a + b).poles().empty());
  const Complex z(0.7, -0.2);
  EXPECT_NEAR(std::abs((a + a)(z) - 2.0 / z), 0.0, 1e-14);
}

TEST(Rational, SumWithDifferentPoleOrders) {
  const Complex z(0.3, 0.2);
  const auto s = RationalFunction::power(-1) + RationalFunction::power(-2);
  EXPECT_NEAR(std::abs(s(z) - (1.0 / z + 1.0 / (z * z))), 0.0, 1e-12);
  const auto t = RationalFunction::power(-1) + RationalFunction::power(2);
  EXPECT_NEAR(std::abs(t(z) - (1.0 / z + z * z)), 0.0, 1e-13);
  const RationalFunction shifted(ComplexPolynomial{Complex(1.0)}, {{1.0, 1}});
  const auto u = shifted - RationalFunction::power(-1);
  EXPECT_NEAR(std::abs(u(z) - (1.0 / (z - 1.0) - 1.0 / z)), 0.0, 1e-12);
  EXPECT_EQ(u.poles().size(), 2u);
}

TEST(Rational, CancelsCommonFactors) {
  // (z^2 - 1) / (z - 1) = z + 1
  const RationalFunction r(ComplexPolynomial{Complex(-1.0), Complex(0.0), Complex(1.0)}, {{1.0, 1}});
  EXPECT_TRUE(r.poles().empty());
  EXPECT_EQ(r.numerator(), (ComplexPolynomial{Complex(1.0), Complex(1.0)}));
  EXPECT_THROW(RationalFunction(ComplexPolynomial{Complex(1.0)}, {{0.0, -1}}), ParameterError);
}

TEST(Fit, ExactLine) {
  const std::vector<double> x{0.0, 1.0, 2.0, 3.0};
  const std::vector<double> y{1.0, 3.0, 5.0, 7.0};
  const auto f = fit_line(x, y);
  EXPECT_NEAR(f.slope, 2.0, 1e-14);
  EXPECT_NEAR(f.intercept, 1.0, 1e-14);
  EXPECT_NEAR(f.r_squared, 1.0, 1e-14);
  EXPECT_NEAR(f.slope_stderr, 0.0, 1e-12);
}
