#include <gtest/gtest.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>

#include "distprod/expression.hpp"
#include "distprod/job.hpp"
#include "distprod/report.hpp"

using namespace distprod;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int run(const std::string& args) {
  const std::string cmd = std::string(DISTPROD_CLI) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::filesystem::path scratch(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / "distprod_cli_test";
  std::filesystem::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST(Parser, Examples) {
  const auto a = parse_expression("delta * pv(1/x)");
  ASSERT_EQ(a.size(), 2u);
  EXPECT_EQ(a.factors()[0].pair, catalog::delta());
  EXPECT_EQ(a.factors()[1].pair, catalog::pv_inv_x());

  const auto b = parse_expression("x^2 * delta * delta");
  ASSERT_EQ(b.size(), 2u);
  EXPECT_EQ(b.total_power(), 2);
  EXPECT_EQ(b.factors()[0].power, 2);

  const auto c = parse_expression("(x+i0)^-1 * (x+i0)^-1");
  ASSERT_EQ(c.size(), 2u);
  EXPECT_EQ(c.factors()[0].pair, catalog::plus_i0_pow(1));
  EXPECT_EQ(c.factors()[1].pair, catalog::plus_i0_pow(1));
}

TEST(Parser, DerivativeAndTrailingMonomial) {
  const auto d = parse_expression("d(d(delta)) * (x-i0)^-3");
  EXPECT_EQ(d.factors()[0].pair, derivative(derivative(catalog::delta())));
  EXPECT_EQ(d.factors()[1].pair, catalog::minus_i0_pow(3));

  const auto t = parse_expression("delta * x^3");
  ASSERT_EQ(t.size(), 2u);
  EXPECT_EQ(t.factors()[1].pair, catalog::one());
  EXPECT_EQ(t.factors()[1].power, 3);

  const auto lone = parse_expression("  x^1*x^2  ");
  ASSERT_EQ(lone.size(), 1u);
  EXPECT_EQ(lone.total_power(), 3);
  EXPECT_EQ(parse_expression("1").factors()[0].pair, catalog::one());
}

TEST(Parser, RoundTrip) {
  for (const char* text : {"delta * pv(1/x)", "x^2 * delta * delta", "(x+i0)^-1 * (x+i0)^-1", "d(delta) * x^1",
                           "x^1 * d(pv(1/x)) * 1 * (x-i0)^-2", "x^4"}) {
    const auto e = parse_expression(text);
    EXPECT_EQ(parse_expression(to_string(e)), e) << text << " -> " << to_string(e);
  }
}

TEST(Parser, Errors) {
  auto offset_of = [](const char* text) -> std::size_t {
    try {
      parse_expression(text);
    } catch (const ParseError& e) {
      return e.offset();
    }
    return std::string::npos;
  };
  EXPECT_THROW(parse_expression(""), ParseError);
  EXPECT_THROW(parse_expression("delta *"), ParseError);
  EXPECT_THROW(parse_expression("delta delta"), ParseError);
  EXPECT_THROW(parse_expression("(x+i0)^-0"), ParseError);
  EXPECT_THROW(parse_expression("(x+i0)^-"), ParseError);
  EXPECT_THROW(parse_expression("x^99999"), ParseError);
  EXPECT_THROW(parse_expression("d(delta"), ParseError);
  EXPECT_THROW(parse_expression("gamma"), UnknownAtom);
  EXPECT_THROW(parse_expression("delta * 12"), UnknownAtom);
  EXPECT_EQ(offset_of("delta * gamma"), 8u);
  EXPECT_EQ(offset_of("delta delta"), 6u);
  EXPECT_EQ(offset_of("(x+i0)^-0"), 8u);
}

TEST(Report, PairingSchema) {
  const auto r = limit_pairing(parse_expression("delta * pv(1/x)"), TestFunction(RealPolynomial{0.0, 1.0}, 1.0, 0.0, 8));
  const auto j = to_json(r);
  for (const char* key : {"y", "I_re", "I_im", "status", "value", "s", "s_ci"}) EXPECT_TRUE(j.contains(key)) << key;
  EXPECT_EQ(j["status"], "converged");
  EXPECT_NEAR(j["value"][0].get<double>(), 0.5, 1e-6);
  EXPECT_EQ(j["y"].size(), j["I_re"].size());

  const auto d = to_json(limit_pairing(parse_expression("delta * delta"), reference_test_function()));
  EXPECT_EQ(d["status"], "diverged");
  EXPECT_NEAR(d["s"].get<double>(), 1.0, 0.05);
  EXPECT_TRUE(d["value"].is_null());
  EXPECT_EQ(d["s_ci"].size(), 2u);
}

TEST(Report, ExtensionSchema) {
  const Extension e(parse_expression("delta * delta"), 0, {Complex(1.0, 2.0)}, PlateauCutoff(1.0, 2.0));
  const auto j = to_json(e, evaluate_extension(e, reference_test_function()));
  for (const char* key : {"p", "c", "omega", "value", "Tbar_phibar", "counterterm_part"})
    EXPECT_TRUE(j.contains(key)) << key;
  EXPECT_EQ(j["c"][0][1].get<double>(), 2.0);
  EXPECT_EQ(j["omega"]["plateau"].get<double>(), 1.0);
  EXPECT_EQ(j["omega"]["support"].get<double>(), 2.0);
}

TEST(Report, TestFunctionRoundTrip) {
  const TestFunction phi(RealPolynomial{1.0, -0.5, 0.25}, 0.6, 0.3, 6);
  EXPECT_EQ(test_function_from_json(to_json(phi)), phi);
  EXPECT_THROW(test_function_from_json(json::object()), ParameterError);
  EXPECT_THROW(complex_from_json(json::array({1, 2, 3})), ParameterError);
  EXPECT_EQ(complex_from_json(json(2.5)), Complex(2.5));
}

TEST(Job, Examples) {
  Job a;
  a.expression = "delta * pv(1/x)";
  a.phis = {TestFunction(RealPolynomial{0.0, 1.0}, 1.0, 0.0, 8)};
  const auto ra = run_job(a);
  EXPECT_EQ(ra["results"][0]["pairing"]["status"], "converged");
  EXPECT_NEAR(ra["results"][0]["pairing"]["value"][0].get<double>(), 0.5, 1e-6);
  EXPECT_TRUE(ra["subtraction"].is_null());

  Job b;
  b.expression = "delta * delta";
  b.c_grid = {{Complex(1.0)}, {Complex(-1.0)}};
  const auto rb = run_job(b);
  const auto& res = rb["results"][0];
  EXPECT_EQ(res["pairing"]["status"], "diverged");
  EXPECT_NEAR(res["pairing"]["s"].get<double>(), 1.0, 0.05);
  EXPECT_EQ(rb["subtraction"]["p"], 0);
  EXPECT_EQ(res["extension"]["p"], 0);
  EXPECT_TRUE(res["omega_check"]["ok"].get<bool>());
  EXPECT_EQ(res["scan"].size(), 2u);

  Job c;
  c.expression = "1";
  const auto rc = run_job(c);
  EXPECT_NEAR(rc["results"][0]["pairing"]["value"][0].get<double>(), std::sqrt(std::numbers::pi), 1e-6);
}

TEST(Job, NotExtendableIsInBand) {
  // delta * delta' is odd, so an even phi would pair to exactly zero.
  Job j;
  j.expression = "delta * d(delta)";
  j.phis = {TestFunction(RealPolynomial{1.0, 1.0}, 1.0, 0.0, 8)};
  j.p_max = 0;
  const auto r = run_job(j);
  EXPECT_TRUE(r["subtraction"].contains("error"));
  EXPECT_FALSE(r["results"][0].contains("extension"));
}

TEST(Job, TooSmallOverrideIsInBand) {
  Job j;
  j.expression = "delta * d(delta)";
  j.phis = {TestFunction(RealPolynomial{1.0, 1.0}, 1.0, 0.0, 8)};
  j.p = 0;
  const auto r = run_job(j);
  EXPECT_TRUE(r["results"][0]["extension"].contains("error"));
}

TEST(Job, FromJson) {
  const auto j = job_from_json(json::parse(slurp(std::filesystem::path(DISTPROD_TOOLS_DIR) / "jobs/delta_squared.json")));
  EXPECT_EQ(j.expression, "delta * delta");
  EXPECT_EQ(j.phis.size(), 2u);
  ASSERT_EQ(j.c_grid.size(), 3u);
  EXPECT_EQ(j.c_grid[2][0], Complex(0.0, 2.0));
  EXPECT_THROW(job_from_json(json::object()), json::exception);
}

TEST(Job, Deterministic) {
  Job j;
  j.expression = "delta * delta";
  j.phis = {reference_test_function(), TestFunction(RealPolynomial{1.0, 0.5}, 1.0, 0.0, 8)};
  j.c_grid = {{Complex(0.5, -0.5)}};
  EXPECT_EQ(run_job(j).dump(), run_job(j).dump());
}

TEST(Job, AtomicWrite) {
  const auto path = scratch("atomic.json");
  write_report(json{{"a", 1}}, path);
  EXPECT_EQ(json::parse(slurp(path))["a"], 1);
  EXPECT_FALSE(std::filesystem::exists(path.string() + ".tmp"));
  EXPECT_THROW(write_report(json{}, "/nonexistent-dir/x.json"), std::ios_base::failure);
}

TEST(Cli, ExitCodesAndDeterminism) {
  const auto out1 = scratch("r1.json");
  const auto out2 = scratch("r2.json");
  const std::string job = std::string(DISTPROD_TOOLS_DIR) + "/jobs/delta_squared.json";
  ASSERT_EQ(run("--job " + job + " --out " + out1.string()), 0);
  ASSERT_EQ(run("--job " + job + " --out " + out2.string()), 0);
  EXPECT_EQ(slurp(out1), slurp(out2));
  const auto doc = json::parse(slurp(out1));
  EXPECT_EQ(doc["results"].size(), 2u);
  EXPECT_EQ(doc["results"][0]["pairing"]["status"], "diverged");

  EXPECT_EQ(run("--expr 'delta * gamma'"), 2);
  EXPECT_EQ(run("--expr delta --phi '{\"poly\": [1], \"sigma\": -1}'"), 2);
  EXPECT_EQ(run("--expr delta --phi 'not json'"), 2);
  EXPECT_EQ(run("--job /nonexistent/job.json"), 3);
  EXPECT_EQ(run("--expr delta --out /nonexistent-dir/r.json"), 3);
  // Divergent and not-extendable outcomes are still successful runs.
  EXPECT_EQ(run("--expr 'delta * d(delta)' --p 0"), 0);
}

TEST(Cli, FlagsOverride) {
  const auto out = scratch("flags.json");
  ASSERT_EQ(run("--expr 'delta * delta' --y0 0.05 --ratio 0.5 --steps 10 --plateau 0.5 --support 1.5 --c 1,2 --out " +
                out.string()),
            0);
  const auto doc = json::parse(slurp(out));
  EXPECT_EQ(doc["schedule"]["steps"], 10);
  EXPECT_EQ(doc["results"][0]["pairing"]["y"].size(), 10u);
  EXPECT_EQ(doc["results"][0]["extension"]["omega"]["plateau"].get<double>(), 0.5);
  EXPECT_EQ(doc["results"][0]["extension_c"]["c"][0][1].get<double>(), 2.0);
}

TEST(Cli, ToleranceFromEnvironment) {
  const auto out = scratch("tol.json");
  const std::string cmd = "DISTPROD_TOL=1e-5 " + std::string(DISTPROD_CLI) + " --expr delta --out " + out.string();
  ASSERT_EQ(std::system(cmd.c_str()), 0);
  EXPECT_EQ(json::parse(slurp(out))["tolerance"].get<double>(), 1e-5);
}
