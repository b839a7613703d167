// distprod: pair a product of boundary-value distributions with test functions
// and emit a JSON report.
//
//   distprod --expr "delta * delta"
//   distprod --expr "delta * pv(1/x)" --phi '{"poly": [0, 1], "sigma": 1}'
//   distprod --job job.json --out report.json
//
// Exit status: 0 whenever the run finishes, whatever the mathematical outcome;
// 2 on bad input, 3 on I/O failure, 4 on numerical breakdown.

#include <exception>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "distprod/job.hpp"

namespace {

distprod::Complex parse_complex_flag(const std::string& text) {
  std::istringstream in(text);
  double re = 0.0, im = 0.0;
  char sep = 0;
  if (!(in >> re)) throw distprod::ParameterError("bad complex value '" + text + "'");
  if (in >> sep) {
    if (sep != ',' || !(in >> im)) throw distprod::ParameterError("bad complex value '" + text + "'");
  }
  if (in >> sep) throw distprod::ParameterError("bad complex value '" + text + "'");
  return {re, im};
}

distprod::json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::ios_base::failure("cannot open " + path);
  return distprod::json::parse(in);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Limits of products of boundary-value distributions"};
  std::string expr, job_file, out;
  std::vector<std::string> phis, cs;
  std::optional<double> y0, ratio, plateau, support;
  std::optional<int> steps, p;
  app.add_option("--expr", expr, "product expression, e.g. \"x^1 * delta\"");
  app.add_option("--phi", phis, "test function as JSON {\"poly\": [...], \"sigma\": s, \"mu\": m}");
  app.add_option("--y0", y0, "first regulator value");
  app.add_option("--ratio", ratio, "geometric ratio of the y schedule");
  app.add_option("--steps", steps, "number of y values");
  app.add_option("--plateau", plateau, "cutoff plateau radius a");
  app.add_option("--support", support, "cutoff support radius b");
  app.add_option("--p", p, "subtraction order override");
  app.add_option("--c", cs, "counterterm c_k as re or re,im; repeat for k = 0, 1, ...");
  app.add_option("--out", out, "output file (default: stdout)");
  app.add_option("--job", job_file, "JSON job file; flags given alongside override it");
  CLI11_PARSE(app, argc, argv);

  try {
    distprod::Job job;
    if (!job_file.empty()) job = distprod::job_from_json(read_json_file(job_file));
    if (!expr.empty()) job.expression = expr;
    if (job.expression.empty()) throw distprod::ParameterError("no expression given (--expr or --job)");
    if (!phis.empty()) {
      job.phis.clear();
      for (const auto& s : phis) job.phis.push_back(distprod::test_function_from_json(distprod::json::parse(s)));
    }
    if (y0) job.schedule.y0 = *y0;
    if (ratio) job.schedule.ratio = *ratio;
    if (steps) job.schedule.count = *steps;
    if (plateau) job.plateau = *plateau;
    if (support) job.support = *support;
    if (p) job.p = *p;
    if (!cs.empty()) {
      job.c.clear();
      for (const auto& s : cs) job.c.push_back(parse_complex_flag(s));
    }
    if (!out.empty()) job.out = out;

    const auto doc = distprod::run_job(job);
    if (job.out.empty())
      std::cout << doc.dump(2) << '\n';
    else
      distprod::write_report(doc, job.out);
    return 0;
  } catch (const distprod::ParseError& e) {
    std::cerr << "distprod: parse error: " << e.what() << '\n';
    return 2;
  } catch (const distprod::json::exception& e) {
    std::cerr << "distprod: bad JSON: " << e.what() << '\n';
    return 2;
  } catch (const distprod::QuadratureError& e) {
    std::cerr << "distprod: " << e.what() << '\n';
    return 4;
  } catch (const distprod::Error& e) {
    std::cerr << "distprod: " << e.what() << '\n';
    return 2;
  } catch (const std::ios_base::failure& e) {
    std::cerr << "distprod: " << e.what() << '\n';
    return 3;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "distprod: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "distprod: internal error: " << e.what() << '\n';
    return 4;
  }
}
