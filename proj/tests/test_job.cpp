// Job layer: config parsing with strict key checking, the per-command
// runners against known values, and the report serializers.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "bosefock/basis.hpp"
#include "bosefock/gibbs.hpp"
#include "bosefock/hermite.hpp"
#include "bosefock/job.hpp"
#include "bosefock/quantization.hpp"

#include <cmath>
#include <string>

using namespace bosefock;

namespace {

const std::string kLn2 = "0.6931471805599453";

std::string thermal_config_json(const std::string& extra) {
  return "{\"modes\": 1, \"cutoff\": 40, \"hamiltonian\": [[[" + kLn2 +
         ", 0]]], \"vectors\": {\"f\": [[1, 0]]}" + extra + "}";
}

} // namespace

TEST_CASE("config parsing: defaults and full round trip") {
  const JobConfig defaults = parse_job_config("{}");
  CHECK(defaults.modes == 1);
  CHECK(defaults.cutoff == 0);
  CHECK(defaults.beta == 1.0);
  CHECK(defaults.mu == 0.0);
  CHECK(defaults.seed == 0);
  CHECK(defaults.samples == 10000);
  CHECK(defaults.antithetic == false);
  CHECK(defaults.mc_modes == 0);
  CHECK(defaults.sobolev_order == 2);
  CHECK(defaults.include_constant_term == true);
  CHECK(defaults.degree == 0);
  CHECK(defaults.point == 0.0);
  CHECK(defaults.expression.empty());
  CHECK(defaults.hamiltonian.empty());
  CHECK(defaults.vectors.empty());
  CHECK(defaults.state.empty());
  CHECK(defaults.mode_list.empty());

  const JobConfig full = parse_job_config(R"json({
    "modes": 2,
    "cutoff": 12,
    "hamiltonian": [[[0.5, 0], [0.1, -0.2]], [[0.1, 0.2], [0.7, 0]]],
    "beta": 1.5,
    "mu": -0.25,
    "vectors": {"f": [[1, 0], [0, -1]], "g": [[0.5, 0.5], [0, 0]]},
    "expression": "adag(f) a(g)",
    "weyl_vector": "f",
    "seed": 99,
    "samples": 5000,
    "antithetic": true,
    "mc_modes": 1,
    "mode_list": [1, 2],
    "state": [[[1, 0], [0.5, -0.25]], [[0, 2], [0, 1]]],
    "sobolev_order": 3,
    "include_constant_term": false,
    "degree": 7,
    "point": -1.25
  })json");
  CHECK(full.modes == 2);
  CHECK(full.cutoff == 12);
  REQUIRE(full.hamiltonian.size() == 2);
  CHECK(full.hamiltonian[0][1] == cplx(0.1, -0.2));
  CHECK(full.beta == 1.5);
  CHECK(full.mu == -0.25);
  REQUIRE(full.vectors.count("f") == 1);
  CHECK(full.vectors.at("f")[1] == cplx(0.0, -1.0));
  CHECK(full.expression == "adag(f) a(g)");
  CHECK(full.weyl_vector == "f");
  CHECK(full.seed == 99);
  CHECK(full.samples == 5000);
  CHECK(full.antithetic == true);
  CHECK(full.mc_modes == 1);
  CHECK(full.mode_list == std::vector<int>{1, 2});
  REQUIRE(full.state.size() == 2);
  CHECK(full.state[0].first == OccupationIndex{1, 0});
  CHECK(full.state[0].second == cplx(0.5, -0.25));
  CHECK(full.state[1].second == cplx(0.0, 1.0));
  CHECK(full.sobolev_order == 3);
  CHECK(full.include_constant_term == false);
  CHECK(full.degree == 7);
  CHECK(full.point == -1.25);
}

TEST_CASE("config parsing: unknown keys and type mismatches are rejected") {
  CHECK_THROWS_WITH_AS(parse_job_config(R"({"cutof": 8})"),
                       doctest::Contains("cutof"), std::invalid_argument);
  CHECK_THROWS_AS(parse_job_config(R"({"modes": "two"})"), std::invalid_argument);
  CHECK_THROWS_AS(parse_job_config(R"({"beta": [1]})"), std::invalid_argument);
  CHECK_THROWS_AS(parse_job_config(R"({"seed": -1})"), std::invalid_argument);
  CHECK_THROWS_AS(parse_job_config(R"({"antithetic": 1})"), std::invalid_argument);
  // Complex entries must be exactly [re, im].
  CHECK_THROWS_AS(parse_job_config(R"({"vectors": {"f": [[1]]}})"),
                  std::invalid_argument);
  CHECK_THROWS_AS(parse_job_config(R"({"vectors": {"f": [[1, 0, 0]]}})"),
                  std::invalid_argument);
  CHECK_THROWS_AS(parse_job_config(R"({"hamiltonian": [[1.0]]})"),
                  std::invalid_argument);
  // State entries are [multi-index, [re, im]] pairs.
  CHECK_THROWS_AS(parse_job_config(R"({"state": [[[1, 0]]]})"),
                  std::invalid_argument);
  CHECK_THROWS_AS(parse_job_config("not json"), std::invalid_argument);
}

TEST_CASE("command names round trip") {
  for (const char* name :
       {"partition", "gibbs", "weyl", "trace-mc", "sobolev", "hermite", "verify"}) {
    CHECK(command_name(parse_command_name(name)) == name);
  }
  CHECK_THROWS_AS(parse_command_name("bogus"), std::invalid_argument);
  CHECK_THROWS_AS(parse_command_name(""), std::invalid_argument);
}

TEST_CASE("partition command: single-mode closed value and convention note") {
  JobConfig config = parse_job_config(
      "{\"modes\": 1, \"cutoff\": 60, \"hamiltonian\": [[[" + kLn2 + ", 0]]]}");
  const Report report = run_job(JobCommand::partition, config);
  CHECK(report.value.real() == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(report.value.imag() == 0.0);
  REQUIRE(report.closed_form.has_value());
  CHECK(report.closed_form->real() == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(!report.std_error.has_value());
  CHECK(report.truncation_tail ==
        doctest::Approx(truncation_tail(1, 60, 0, 0.5)).epsilon(1e-9));
  CHECK(report.basis_modes == 1);
  CHECK(report.basis_cutoff == 60);
  CHECK(report.basis_dim == 61);
  // The report must flag the competing square-root convention.
  CHECK(!report.note.empty());
  CHECK(report.note.find("square-root") != std::string::npos);
}

TEST_CASE("gibbs command: occupation expectation and dressed Weyl factor") {
  JobConfig occupation =
      parse_job_config(thermal_config_json(", \"expression\": \"adag(f) a(f)\""));
  const Report r1 = run_job(JobCommand::gibbs, occupation);
  CHECK(std::abs(r1.value - cplx(1.0, 0.0)) < 1e-9);
  REQUIRE(r1.closed_form.has_value());
  CHECK(std::abs(*r1.closed_form - cplx(1.0, 0.0)) < 1e-12);
  CHECK(r1.truncation_tail == doctest::Approx(truncation_tail(1, 40, 2, 0.5)));

  JobConfig dressed =
      parse_job_config(thermal_config_json(", \"expression\": \"2 * W(f) I\""));
  const Report r2 = run_job(JobCommand::gibbs, dressed);
  REQUIRE(r2.closed_form.has_value());
  CHECK(std::abs(*r2.closed_form - cplx(2.0 * std::exp(-0.75), 0.0)) < 1e-12);
  CHECK(std::abs(r2.value - *r2.closed_form) < 1e-9);

  JobConfig missing = parse_job_config(thermal_config_json(""));
  CHECK_THROWS_AS(run_job(JobCommand::gibbs, missing), std::invalid_argument);
}

TEST_CASE("weyl command matches the closed characteristic value") {
  JobConfig config = parse_job_config(
      "{\"modes\": 1, \"cutoff\": 50, \"hamiltonian\": [[[" + kLn2 +
      ", 0]]], \"vectors\": {\"f\": [[0.5, 0.25]]}, \"weyl_vector\": \"f\"}");
  const Report report = run_job(JobCommand::weyl, config);
  REQUIRE(report.closed_form.has_value());
  CHECK(std::abs(report.value - *report.closed_form) < 1e-8);
  const ThermalSpectrum spectrum = thermal_spectrum(
      OneBodyOperator([] {
        DenseMatrix h(1);
        h.at(0, 0) = std::log(2.0);
        return h;
      }()),
      1.0, 0.0);
  CHECK(report.closed_form->real() ==
        doctest::Approx(weyl_gibbs_closed(spectrum, {cplx(0.5, 0.25)})).epsilon(1e-12));
  CHECK(!report.std_error.has_value());

  JobConfig no_vector = parse_job_config(thermal_config_json(""));
  CHECK_THROWS_AS(run_job(JobCommand::weyl, no_vector), std::invalid_argument);
}

TEST_CASE("trace-mc command: deterministic for a fixed seed") {
  JobConfig config = parse_job_config(
      "{\"modes\": 1, \"cutoff\": 10, \"hamiltonian\": [[[" + kLn2 +
      ", 0]]], \"vectors\": {\"f\": [[1, 0]]}, \"expression\": \"adag(f) a(f)\", "
      "\"samples\": 2000, \"seed\": 42}");
  const Report a = run_job(JobCommand::trace_mc, config);
  const Report b = run_job(JobCommand::trace_mc, config);
  CHECK(report_to_json(a) == report_to_json(b));
  CHECK(report_to_csv(a) == report_to_csv(b));

  REQUIRE(a.closed_form.has_value()); // diagonal trace rides along
  REQUIRE(a.std_error.has_value());
  CHECK(std::abs(a.value - *a.closed_form) < 8.0 * *a.std_error + 1e-6);
  CHECK(a.note.find("samples=2000") != std::string::npos);
  CHECK(a.note.find("antithetic=0") != std::string::npos);

  JobConfig variant = config;
  variant.antithetic = true;
  variant.mode_list = {1};
  const Report c = run_job(JobCommand::trace_mc, variant);
  CHECK(c.note.find("antithetic=1") != std::string::npos);
  CHECK(c.note.find("partial[1]=") != std::string::npos);

  variant.seed = 43;
  const Report d = run_job(JobCommand::trace_mc, variant);
  CHECK(d.value != c.value); // the seed reaches the sampler

  JobConfig no_expr = parse_job_config(R"({"modes": 1, "cutoff": 6})");
  CHECK_THROWS_AS(run_job(JobCommand::trace_mc, no_expr), std::invalid_argument);
}

TEST_CASE("sobolev command: homogeneous closed form and both norm routes") {
  JobConfig config = parse_job_config(R"({
    "modes": 1, "cutoff": 8,
    "state": [[[3], [1, 0]]],
    "sobolev_order": 2
  })");
  const Report full = run_job(JobCommand::sobolev, config);
  const double expected = 1.0 + std::sqrt(3.0) + std::sqrt(6.0);
  CHECK(full.value.real() == doctest::Approx(expected).epsilon(1e-12));
  REQUIRE(full.closed_form.has_value());
  CHECK(full.closed_form->real() == doctest::Approx(expected).epsilon(1e-12));
  CHECK(full.note.find("level_norm=") != std::string::npos);

  config.include_constant_term = false;
  const Report seminorm = run_job(JobCommand::sobolev, config);
  CHECK(seminorm.value.real() ==
        doctest::Approx(std::sqrt(3.0) + std::sqrt(6.0)).epsilon(1e-12));

  JobConfig empty = parse_job_config(R"({"modes": 1, "cutoff": 8})");
  CHECK_THROWS_AS(run_job(JobCommand::sobolev, empty), std::invalid_argument);
}

TEST_CASE("hermite command evaluates the requested degree") {
  JobConfig config = parse_job_config(
      R"({"modes": 2, "cutoff": 5, "degree": 4, "point": 0.7})");
  const Report report = run_job(JobCommand::hermite, config);
  CHECK(report.value.real() == hermite_eval(4, 0.7));
  CHECK(report.value.imag() == 0.0);
  CHECK(!report.closed_form.has_value());
  CHECK(!report.std_error.has_value());
  CHECK(report.basis_dim ==
        static_cast<int>(TruncatedBasis::dimension_of(2, 5)));
  CHECK(report.note.find("degree=4") != std::string::npos);
  CHECK(report.note.find("derivative_residual=") != std::string::npos);

  // Degree zero is a constant; there is no derivative identity to report.
  JobConfig constant = parse_job_config(R"({"degree": 0, "point": 0.0})");
  const Report r0 = run_job(JobCommand::hermite, constant);
  CHECK(r0.value.real() == 1.0);
  CHECK(r0.note.find("derivative_residual=") == std::string::npos);
}

TEST_CASE("report JSON: field order, null handling, optional note") {
  Report report;
  report.value = cplx(1.5, -0.25);
  report.closed_form = cplx(2.0, 0.0);
  report.std_error = 0.125;
  report.truncation_tail = 0.001953125;
  report.seed = 7;
  report.basis_modes = 2;
  report.basis_cutoff = 8;
  report.basis_dim = 45;
  report.note = "hello";

  const std::string json = report_to_json(report);
  CHECK(json.back() == '\n');
  const auto pos = [&](const char* key) { return json.find(key); };
  CHECK(pos("\"value\"") < pos("\"closed_form\""));
  CHECK(pos("\"closed_form\"") < pos("\"std_error\""));
  CHECK(pos("\"std_error\"") < pos("\"truncation_tail\""));
  CHECK(pos("\"truncation_tail\"") < pos("\"seed\""));
  CHECK(pos("\"seed\"") < pos("\"basis\""));
  CHECK(pos("\"basis\"") < pos("\"note\""));
  CHECK(pos("\"modes\"") < pos("\"cutoff\""));
  CHECK(pos("\"cutoff\"") < pos("\"dim\""));
  CHECK(json.find("\"std_error\": 0.125") != std::string::npos);
  CHECK(json.find("\"seed\": 7") != std::string::npos);
  CHECK(json.find("\"note\": \"hello\"") != std::string::npos);

  report.closed_form.reset();
  report.std_error.reset();
  report.note.clear();
  const std::string bare = report_to_json(report);
  CHECK(bare.find("\"closed_form\": null") != std::string::npos);
  CHECK(bare.find("\"std_error\": null") != std::string::npos);
  CHECK(bare.find("\"note\"") == std::string::npos);
}

TEST_CASE("report CSV: golden rows and quoting") {
  Report report;
  report.value = cplx(1.5, -0.25);
  report.closed_form = cplx(2.0, 0.0);
  report.std_error = 0.125;
  report.truncation_tail = 0.001953125;
  report.seed = 7;
  report.basis_modes = 2;
  report.basis_cutoff = 8;
  report.basis_dim = 45;
  report.note = "hello";

  const std::string header =
      "value.re,value.im,closed_form.re,closed_form.im,std_error,"
      "truncation_tail,seed,basis.modes,basis.cutoff,basis.dim,note";
  CHECK(report_to_csv(report) ==
        header + "\n1.5,-0.25,2,0,0.125,0.001953125,7,2,8,45,hello\n");

  report.closed_form.reset();
  report.std_error.reset();
  report.note = "a,b \"c\"";
  CHECK(report_to_csv(report) ==
        header + "\n1.5,-0.25,,,,0.001953125,7,2,8,45,\"a,b \"\"c\"\"\"\n");

  CHECK(format_report(report, "csv") == report_to_csv(report));
  CHECK(format_report(report, "json") == report_to_json(report));
  CHECK_THROWS_AS(format_report(report, "yaml"), std::invalid_argument);
}

TEST_CASE("seeded reports serialize byte-identically across runs") {
  JobConfig config =
      parse_job_config(thermal_config_json(", \"expression\": \"adag(f) a(f)\", "
                                           "\"seed\": 1234"));
  const std::string first = report_to_json(run_job(JobCommand::gibbs, config));
  const std::string second = report_to_json(run_job(JobCommand::gibbs, config));
  CHECK(first == second);

  JobConfig partition = parse_job_config(
      "{\"modes\": 1, \"cutoff\": 30, \"hamiltonian\": [[[" + kLn2 +
      ", 0]]], \"seed\": 1234}");
  const std::string p1 = report_to_json(run_job(JobCommand::partition, partition));
  const std::string p2 = report_to_json(run_job(JobCommand::partition, partition));
  CHECK(p1 == p2);
  CHECK(p1.find("\"seed\": 1234") != std::string::npos);
}
