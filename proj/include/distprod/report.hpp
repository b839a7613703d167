#pragma once

#include <complex>
#include <vector>

#include "json.hpp"

#include "distprod/boundary.hpp"
#include "distprod/cutoff.hpp"
#include "distprod/extension.hpp"
#include "distprod/pairing.hpp"
#include "distprod/testfn.hpp"

namespace distprod {

using json = nlohmann::json;

inline json complex_json(Complex z) { return json::array({z.real(), z.imag()}); }

inline Complex complex_from_json(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2) return {j[0].get<double>(), j[1].get<double>()};
  throw ParameterError("complex values are written as a number or [re, im]");
}

inline json to_json(const TestFunction& phi) {
  return {{"poly", phi.polynomial().coefficients()},
          {"sigma", phi.sigma()},
          {"mu", phi.mu()},
          {"order", phi.max_order()}};
}

/// {"poly": [c0, c1, ...], "sigma": s, "mu": m} with optional "order".
inline TestFunction test_function_from_json(const json& j) {
  if (!j.is_object() || !j.contains("poly")) throw ParameterError("test function needs a \"poly\" array");
  return TestFunction(RealPolynomial(j.at("poly").get<std::vector<double>>()), j.value("sigma", 1.0),
                      j.value("mu", 0.0), j.value("order", 8));
}

inline json to_json(const PlateauCutoff& w) {
  return {{"plateau", w.plateau()}, {"support", w.support_radius()}};
}

inline json to_json(const PairingResult& r) {
  std::vector<double> re, im;
  for (const auto& v : r.values) {
    re.push_back(v.real());
    im.push_back(v.imag());
  }
  json j = {{"y", r.y}, {"I_re", re}, {"I_im", im}, {"status", to_string(r.status)}};
  j["value"] = r.status == PairingStatus::converged ? complex_json(r.value) : json(nullptr);
  if (r.status == PairingStatus::diverged) {
    j["s"] = r.s;
    j["s_ci"] = json::array({r.s_lo, r.s_hi});
    j["leading_coefficient"] = complex_json(r.leading_coefficient);
  } else {
    j["s"] = nullptr;
    j["s_ci"] = nullptr;
    j["leading_coefficient"] = nullptr;
  }
  j["spread"] = r.spread;
  j["extrapolation_order"] = r.extrapolation_order;
  j["value_second_schedule"] = r.schedule_checked ? complex_json(r.value_second) : json(nullptr);
  return j;
}

inline json to_json(const Extension& E, const ExtensionValue& v) {
  json c = json::array();
  for (const auto& ck : E.c) c.push_back(complex_json(ck));
  return {{"p", E.p},
          {"c", c},
          {"omega", to_json(E.omega)},
          {"value", complex_json(v.value)},
          {"Tbar_phibar", complex_json(v.tbar_phibar)},
          {"counterterm_part", complex_json(v.counterterm_part)}};
}

inline json to_json(const GrowthReport& g) {
  return {{"C", g.C},
          {"alpha", g.alpha},
          {"beta", g.beta},
          {"max_residual", g.max_residual},
          {"ok", g.ok},
          {"region", {{"x", {g.region.x_lo, g.region.x_hi}}, {"y", {g.region.y_lo, g.region.y_hi}}}}};
}

inline json to_json(const OmegaCheck& c, const PlateauCutoff& w1, const PlateauCutoff& w2) {
  return {{"omega_1", to_json(w1)},
          {"omega_2", to_json(w2)},
          {"value_1", complex_json(c.first)},
          {"value_2", complex_json(c.second)},
          {"difference", c.difference},
          {"ok", c.ok}};
}

inline json to_json(const ScanRow& r) {
  json c = json::array();
  for (const auto& ck : r.c) c.push_back(complex_json(ck));
  return {{"c", c},
          {"value", complex_json(r.value)},
          {"offset", complex_json(r.offset)},
          {"expected_offset", complex_json(r.expected_offset)},
          {"ok", r.ok}};
}

}  // namespace distprod
