#pragma once

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <ios>
#include <optional>
#include <string>
#include <vector>

#include "distprod/expression.hpp"
#include "distprod/extension.hpp"
#include "distprod/report.hpp"

namespace distprod {

/// One batch run: an expression, the test functions it is paired with and the
/// numerical settings. Mirrors the JSON accepted by `--job`.
struct Job {
  std::string expression;
  std::vector<TestFunction> phis;
  Schedule schedule;
  double plateau = 1.0;
  double support = 2.0;
  std::optional<int> p;
  int p_max = 4;
  std::vector<Complex> c;
  std::vector<std::vector<Complex>> c_grid;
  std::optional<double> tolerance;
  std::string out;
};

inline std::vector<Complex> complex_list_from_json(const json& j) {
  std::vector<Complex> v;
  for (const auto& e : j) v.push_back(complex_from_json(e));
  return v;
}

inline Job job_from_json(const json& j) {
  Job job;
  job.expression = j.at("expr").get<std::string>();
  if (j.contains("phi"))
    for (const auto& p : j.at("phi")) job.phis.push_back(test_function_from_json(p));
  job.schedule.y0 = j.value("y0", job.schedule.y0);
  job.schedule.ratio = j.value("ratio", job.schedule.ratio);
  job.schedule.count = j.value("steps", job.schedule.count);
  job.plateau = j.value("plateau", job.plateau);
  job.support = j.value("support", job.support);
  if (j.contains("p") && !j.at("p").is_null()) job.p = j.at("p").get<int>();
  job.p_max = j.value("p_max", job.p_max);
  if (j.contains("c")) job.c = complex_list_from_json(j.at("c"));
  if (j.contains("c_grid"))
    for (const auto& row : j.at("c_grid")) job.c_grid.push_back(complex_list_from_json(row));
  if (j.contains("tolerance")) job.tolerance = j.at("tolerance").get<double>();
  job.out = j.value("out", std::string());
  return job;
}

/// Convergence tolerance: explicit job value, else DISTPROD_TOL, else 1e-7.
inline double effective_tolerance(const Job& job) {
  if (job.tolerance) return *job.tolerance;
  if (const char* env = std::getenv("DISTPROD_TOL")) {
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end != env && v > 0.0) return v;
    throw ParameterError("DISTPROD_TOL must be a positive number");
  }
  return PairingOptions{}.tolerance;
}

/// Runs the pairing for every test function. If any pairing fails to
/// converge, the subtraction order is determined (or taken from the job) and
/// the continuation is evaluated with c = 0, with the job's counterterms, over
/// the counterterm grid, and with a second cutoff of half the radii.
///
/// Mathematical outcomes (divergence, inconclusive fits, failed extensions)
/// are reported inside the document; only malformed input and numerical
/// breakdown escape as exceptions.
inline json run_job(const Job& job) {
  const auto expr = parse_expression(job.expression);
  PairingOptions opt;
  opt.schedule = job.schedule;
  opt.tolerance = effective_tolerance(job);
  const std::vector<TestFunction> phis =
      job.phis.empty() ? std::vector<TestFunction>{reference_test_function()} : job.phis;
  const PlateauCutoff omega(job.plateau, job.support);
  const PlateauCutoff omega_alt(job.plateau / 2.0, job.support / 2.0);

  json doc;
  doc["expression"] = to_string(expr);
  doc["schedule"] = {{"y0", job.schedule.y0}, {"ratio", job.schedule.ratio}, {"steps", job.schedule.count}};
  doc["tolerance"] = opt.tolerance;

  std::vector<PairingResult> pairings;
  bool all_converged = true;
  for (const auto& phi : phis) {
    pairings.push_back(limit_pairing(expr, phi, opt));
    all_converged = all_converged && pairings.back().status == PairingStatus::converged;
  }

  std::optional<int> p;
  if (all_converged) {
    doc["subtraction"] = nullptr;
  } else if (job.p) {
    p = *job.p;
    doc["subtraction"] = {{"p", *p}, {"source", "override"}};
  } else {
    try {
      const auto so = subtraction_order(expr, job.p_max, opt);
      p = so.p;
      doc["subtraction"] = {{"p", so.p}, {"needed", so.needed}, {"source", "computed"}};
    } catch (const NotExtendable& e) {
      doc["subtraction"] = {{"error", e.what()}, {"source", "computed"}};
    }
  }

  json results = json::array();
  for (std::size_t i = 0; i < phis.size(); ++i) {
    json r;
    r["phi"] = to_json(phis[i]);
    r["pairing"] = to_json(pairings[i]);
    if (p) {
      const Extension minimal(expr, *p, {}, omega);
      try {
        r["extension"] = to_json(minimal, evaluate_extension(minimal, phis[i], opt));
        if (!job.c.empty()) {
          const auto chosen = minimal.with_counterterms(job.c);
          r["extension_c"] = to_json(chosen, evaluate_extension(chosen, phis[i], opt));
        }
        const auto check = omega_independence_check(expr, *p, phis[i], omega, omega_alt, opt);
        r["omega_check"] = to_json(check, omega, omega_alt);
        if (!job.c_grid.empty()) {
          json scan = json::array();
          for (const auto& row : nonuniqueness_scan(minimal, job.c_grid, std::vector{phis[i]}, opt))
            scan.push_back(to_json(row));
          r["scan"] = scan;
        }
      } catch (const ExtensionFailure& e) {
        r["extension"] = {{"p", *p}, {"error", e.what()}};
      }
    }
    results.push_back(std::move(r));
  }
  doc["results"] = std::move(results);
  return doc;
}

/// Writes to a sibling temporary file and renames it into place.
inline void write_report(const json& doc, const std::filesystem::path& path) {
  const auto tmp = std::filesystem::path(path.string() + ".tmp");
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw std::ios_base::failure("cannot open " + tmp.string() + " for writing");
    os << doc.dump(2) << '\n';
    if (!os) throw std::ios_base::failure("failed writing " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace distprod
