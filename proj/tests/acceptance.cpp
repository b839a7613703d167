// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <cmath>
#include <complex>
#include <cstdio>
#include <exception>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "distprod/boundary.hpp"
#include "distprod/expression.hpp"
#include "distprod/extension.hpp"
#include "distprod/pairing.hpp"

using namespace distprod;

namespace {

int failures = 0;

void report(int id, const std::string& name, const std::function<std::string(bool&)>& body) {
  bool ok = false;
  std::string detail;
  try {
    detail = body(ok);
  } catch (const std::exception& e) {
    ok = false;
    detail = std::string("exception: ") + e.what();
  }
  if (!ok) ++failures;
  std::printf("%s [%2d] %s: %s\n", ok ? "PASS" : "FAIL", id, name.c_str(), detail.c_str());
  std::fflush(stdout);
}

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

const double sqrt_pi = std::sqrt(std::numbers::pi);

TestFunction gauss() { return reference_test_function(); }

// Three unrelated members of the family, all nonzero at the origin.
std::vector<TestFunction> three_phis() {
  return {gauss(), TestFunction(RealPolynomial{1.0, 0.5}, 1.0, 0.0, 8),
          TestFunction(RealPolynomial{2.0, -1.0, 0.5}, 0.7, 0.2, 8)};
}

}  // namespace

int main() {
  report(1, "convergent product (x+i0)^-1 * (x+i0)^-1", [](bool& ok) {
    const auto r = limit_pairing(parse_expression("(x+i0)^-1 * (x+i0)^-1"), gauss());
    const double dre = std::abs(r.value.real() + 2.0 * sqrt_pi);
    ok = r.status == PairingStatus::converged && dre <= 1e-6 && std::abs(r.value.imag()) <= 1e-6;
    return fmt("value = %.10f %+.2e i, |re + 2 sqrt(pi)| = %.2e", r.value.real(), r.value.imag(), dre);
  });

  report(2, "mixed product delta * pv(1/x)", [](bool& ok) {
    const auto phi = TestFunction(RealPolynomial{0.0, 1.0}, 1.0, 0.0, 8);
    const auto r = limit_pairing(parse_expression("delta * pv(1/x)"), phi);
    const double d = std::abs(r.value - Complex(0.5, 0.0));
    ok = r.status == PairingStatus::converged && d <= 1e-6;
    return fmt("value = %.10f %+.2e i, error %.2e", r.value.real(), r.value.imag(), d);
  });

  report(3, "divergence detection delta * delta", [](bool& ok) {
    const auto phi = gauss();
    const auto r = limit_pairing(parse_expression("delta * delta"), phi);
    const double expected = phi(0.0) / (2.0 * std::numbers::pi);
    const double rel = std::abs(r.leading_coefficient - expected) / expected;
    ok = r.status == PairingStatus::diverged && std::abs(r.s - 1.0) <= 0.05 && rel <= 0.01;
    return to_string(r.status) + fmt(", s = %.6f, coefficient %.8f (relative error %.2e)", r.s,
                                     r.leading_coefficient.real(), rel);
  });

  report(4, "subtraction order and factorization identity", [](bool& ok) {
    const auto expr = parse_expression("delta * delta");
    const auto so = subtraction_order(expr, 4);
    double worst = 0.0;
    bool all = so.needed && so.p == 0;
    for (const auto& psi : probe_bases()) {
      const auto f = factorization_identity_check(expr, 0, psi);
      all = all && f.converged && f.ok;
      worst = std::max(worst, f.difference);
    }
    ok = all;
    return fmt("p = %.0f, worst |(T, x psi) - (x T, psi)| = %.2e over 3 psi", so.p, worst);
  });

  report(5, "omega independence for delta * delta", [](bool& ok) {
    const auto expr = parse_expression("delta * delta");
    const std::vector<PlateauCutoff> cutoffs{{1.0, 2.0}, {0.5, 1.0}, {2.0, 3.0}};
    double worst = 0.0;
    bool all = true;
    for (const auto& phi : three_phis()) {
      const auto ref = evaluate_extension(Extension(expr, 0, {}, cutoffs[0]), phi).value;
      for (std::size_t i = 1; i < cutoffs.size(); ++i) {
        const auto v = evaluate_extension(Extension(expr, 0, {}, cutoffs[i]), phi).value;
        const double rel = std::abs(v - ref) / (1.0 + std::abs(ref));
        worst = std::max(worst, rel);
        all = all && rel <= 1e-5;
      }
    }
    ok = all;
    return fmt("worst relative spread %.2e over 3 cutoffs x 3 phi", worst);
  });

  report(6, "counterterm structure", [](bool& ok) {
    const Extension E(parse_expression("delta * delta"), 0, {}, PlateauCutoff(1.0, 2.0));
    const std::vector<std::vector<Complex>> grid{{Complex(1.0, 0.0)}, {Complex(-2.5, 0.75)}, {Complex(0.0, 3.0)}};
    const auto rows = nonuniqueness_scan(E, grid, three_phis());
    double worst = 0.0;
    bool all = rows.size() == 9;
    for (const auto& r : rows) {
      worst = std::max(worst, std::abs(r.offset - r.expected_offset) / std::max(1.0, std::abs(r.expected_offset)));
      all = all && r.ok;
    }
    ok = all;
    return fmt("%.0f rows, worst relative offset error %.2e", double(rows.size()), worst);
  });

  report(7, "ring axioms at fixed y", [](bool& ok) {
    const auto a = catalog::plus_i0_pow(1);
    const auto b = catalog::delta();
    const auto c = catalog::pv_inv_x();
    const ProductExpression base{a, b, c};
    const std::vector<ProductExpression> variants{
        ProductExpression{c, a, b},
        ProductExpression{b, c, a},
        base.grouped({2, 1}),
        base.grouped({1, 2}),
        ProductExpression{a, catalog::one(), b, c},
    };
    const auto phi = gauss();
    double worst = 0.0;
    bool all = true;
    for (double y : {0.1, 0.01}) {
      for (const auto& v : variants) {
        const auto r = ring_axiom_check(base, v, phi, y);
        worst = std::max(worst, r.difference / (1.0 + std::abs(r.a)));
        all = all && r.ok;
      }
    }
    ok = all;
    return fmt("worst relative difference %.2e over 5 variants x 2 y", worst);
  });

  report(8, "annihilation x^1 * delta", [](bool& ok) {
    const auto expr = parse_expression("x^1 * delta");
    double worst = 0.0;
    bool all = true;
    for (const auto& phi : three_phis()) {
      const auto r = limit_pairing(expr, phi);
      all = all && r.status == PairingStatus::converged && std::abs(r.value) <= 1e-8;
      worst = std::max(worst, std::abs(r.value));
    }
    ok = all;
    return fmt("worst |value| = %.2e over 3 phi", worst);
  });

  report(9, "order formula", [](bool& ok) {
    const int m = required_order(1.0, 0.0);
    ok = m == 5;
    return "required_order(1, 0) = " + std::to_string(m);
  });

  report(10, "growth bound for (x+i0)^-1", [](bool& ok) {
    const auto g = verify_growth_bound(catalog::plus_i0_pow(1), GrowthRegion{});
    ok = std::abs(g.alpha - 1.0) <= 0.05 && g.max_residual <= 1.01;
    return fmt("alpha = %.4f, beta = %.4f, residual = %.4f", g.alpha, g.beta, g.max_residual);
  });

  report(11, "continuation property on vanishing probes", [](bool& ok) {
    struct Case {
      const char* expr;
      int p;
      TestFunction base;
    };
    const auto bases = three_phis();
    const std::vector<Case> cases{
        {"delta * delta", 0, bases[0]},
        {"(x+i0)^-1 * delta", 0, bases[1]},
        {"(x+i0)^-1 * delta", 0, bases[2]},
        {"delta * d(delta)", 1, bases[0]},
        {"delta * d(delta)", 1, bases[2]},
    };
    const std::vector<PlateauCutoff> cutoffs{{1.0, 2.0}, {0.5, 1.0}};
    double worst = 0.0;
    bool all = true;
    for (const auto& cs : cases) {
      const auto expr = parse_expression(cs.expr);
      const auto probe = vanish_probe(cs.p, cs.base);
      const auto direct = limit_pairing(expr, probe);
      all = all && direct.status == PairingStatus::converged;
      for (const auto& w : cutoffs) {
        for (Complex c0 : {Complex(0.0), Complex(1.5, -0.5)}) {
          std::vector<Complex> c(static_cast<std::size_t>(cs.p) + 1, c0);
          const auto v = evaluate_extension(Extension(expr, cs.p, c, w), probe).value;
          worst = std::max(worst, std::abs(v - direct.value));
          all = all && std::abs(v - direct.value) <= 1e-7;
        }
      }
    }
    ok = all;
    return fmt("worst |extension - direct| = %.2e over 5 probes x 2 cutoffs x 2 c", worst);
  });

  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
