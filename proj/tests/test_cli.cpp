#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "hartogs/config.hpp"

using namespace hartogs::cli;
using hartogs::algebra::Rational;

namespace {

const char* kBalancedThullen = R"({"factors": [{"kind": "ball", "dim": 1, "mu": "1/2", "nu": "1/2"}], "d0": 1})";

RunResult run_text(const std::string& text) { return run(parse_config(text)); }

std::string with_settings(const std::string& spec, const std::string& settings) {
  Json doc = Json::parse(spec);
  Json extra = Json::parse(settings);
  for (auto it = extra.begin(); it != extra.end(); ++it) doc[it.key()] = it.value();
  return doc.dump();
}

}  // namespace

TEST_CASE("command names") {
  CHECK(parse_command("eval-epsilon") == Command::eval_epsilon);
  CHECK(parse_command("verify-numeric") == Command::verify_numeric);
  CHECK_FALSE(parse_command("frobnicate").has_value());
  for (auto c : {Command::report, Command::balanced, Command::polynomiality, Command::eval_epsilon,
                 Command::verify_numeric, Command::catalog}) {
    CHECK(parse_command(to_string(c)) == c);
  }
}

TEST_CASE("rational parsing") {
  CHECK(parse_rational(Json("3/4"), "x") == Rational(3, 4));
  CHECK(parse_rational(Json(2), "x") == Rational(2));
  CHECK(parse_rational(Json("0.25"), "x") == Rational(1, 4));
  CHECK_THROWS_AS(parse_rational(Json("abc"), "x"), ConfigError);
  CHECK_THROWS_AS(parse_rational(Json(nullptr), "x"), ConfigError);
}

TEST_CASE("spec parsing") {
  const auto spec = parse_spec(Json::parse(
      R"({"factors": [{"kind": "I", "m": 2, "n": 3, "mu": "3/2"}, {"kind": "VI", "mu": 1, "nu": "1/3"}], "d0": 2})"));
  REQUIRE(spec.factors.size() == 2);
  CHECK(spec.factors[0].params.dim == 6);
  CHECK(spec.factors[0].nu == Rational(0));
  CHECK(spec.factors[1].params.dim == 27);
  CHECK(spec.fiber_dim == 2);
  CHECK(parse_spec(spec_to_json(spec)).factors[1].nu == Rational(1, 3));
  CHECK(spec_to_json(parse_spec(spec_to_json(spec))) == spec_to_json(spec));

  auto issue_path = [](const std::string& text) {
    try {
      parse_spec(Json::parse(text));
    } catch (const ConfigError& e) {
      REQUIRE_FALSE(e.issues().empty());
      return e.issues().front().path;
    }
    return std::string("no error");
  };
  CHECK(issue_path(R"({"factors": [{"kind": "ball", "dim": 1, "mu": 1, "nu": "-1"}], "d0": 1})") == "factors[0].nu");
  CHECK(issue_path(R"({"factors": [{"kind": "ball", "dim": 1, "mu": 0}], "d0": 1})") == "factors[0].mu");
  CHECK(issue_path(R"({"factors": [{"kind": "VII", "mu": 1}], "d0": 1})") == "factors[0].kind");
  CHECK(issue_path(R"({"factors": [{"kind": "ball", "dim": 1, "mu": 1, "colour": 2}], "d0": 1})") ==
        "factors[0].colour");
  CHECK(issue_path(R"({"factors": [], "d0": 1})") == "factors");
  CHECK(issue_path(R"({"factors": [{"kind": "ball", "dim": 1, "mu": 1}]})") == "d0");
}

TEST_CASE("config settings") {
  const auto cfg = parse_config(with_settings(kBalancedThullen,
                                              R"({"command": "eval-epsilon", "alpha": "5", "s": "3/10", "seed": 4})"));
  CHECK(cfg.command == Command::eval_epsilon);
  CHECK(cfg.alphas == std::vector<Rational>{Rational(5)});
  CHECK(cfg.s == Rational(3, 10));
  CHECK(cfg.seed == 4);
  CHECK(cfg.has_spec);
  CHECK_THROWS_AS(parse_config("{not json"), ConfigError);
  CHECK_THROWS_AS(parse_config(with_settings(kBalancedThullen, R"({"mode": "loose"})")), ConfigError);

  RunConfig missing = cfg;
  missing.s.reset();
  CHECK_THROWS_AS(validate_run(missing), ConfigError);
}

TEST_CASE("report on the balanced Thullen domain") {
  auto cfg = parse_config(kBalancedThullen);
  cfg.samples = 10;
  const auto result = run(cfg);
  CHECK(result.exit_code == exit_ok);
  const Json& rep = result.report;
  std::vector<std::string> keys;
  for (auto it = rep.begin(); it != rep.end(); ++it) keys.push_back(it.key());
  CHECK(keys == std::vector<std::string>{"spec_echo", "alpha_threshold", "verdict", "phi_coefficients",
                                         "epsilon_coefficients", "balanced", "wallach", "berezin_admissible",
                                         "numeric_checks"});
  CHECK(rep["alpha_threshold"] == "2");
  CHECK(rep["verdict"]["status"] == "polynomial_all_alpha");
  CHECK(rep["phi_coefficients"] == Json::array({"-1", "1"}));
  CHECK(rep["balanced"]["balanced"] == true);
  CHECK(rep["berezin_admissible"] == true);
  // epsilon = (alpha - 1)(alpha - 2), all in the constant coefficient
  CHECK(rep["epsilon_coefficients"][0] == "alpha^2 - 3*alpha + 2");
  CHECK(rep["epsilon_coefficients"][1] == "0");
  CHECK(rep["numeric_checks"]["monge_ampere"]["passed"] == true);
  CHECK(rep["numeric_checks"]["diastasis"]["passed"] == true);
  CHECK(rep["numeric_checks"]["boundedness"]["passed"] == true);
  CHECK(parse_spec(rep["spec_echo"]).factors[0].mu == Rational(1, 2));

  const auto again = run(cfg);
  CHECK(again.report.dump() == result.report.dump());
}

TEST_CASE("fixed mode report") {
  auto cfg = parse_config(kBalancedThullen);
  cfg.symbolic = false;
  cfg.alphas = {Rational(3), Rational(5)};
  cfg.samples = 5;
  const auto result = run(cfg);
  CHECK(result.exit_code == exit_ok);
  CHECK(result.report["verdict"]["status"] == "polynomial_at_alpha");
  REQUIRE(result.report["phi_coefficients"].size() == 2);
  CHECK(result.report["phi_coefficients"][1]["alpha"] == "5");
  CHECK(result.report["epsilon_coefficients"][1]["coefficients"][0] == "12");
  CHECK(result.report["berezin_admissible"] == true);
}

TEST_CASE("not polynomial") {
  const auto result = run_text(
      R"({"command": "polynomiality", "factors": [{"kind": "ball", "dim": 1, "mu": 1, "nu": 1}], "d0": 1})");
  CHECK(result.exit_code == exit_ok);
  CHECK(result.report["verdict"]["status"] == "not_polynomial");
  CHECK(result.report["phi_coefficients"].is_null());
}

TEST_CASE("eval-epsilon") {
  const auto result = run_text(
      R"({"command": "eval-epsilon", "alpha": 5, "s": "3/10", "factors": [{"kind": "ball", "dim": 1, "mu": 1}], "d0": 1})");
  CHECK(result.exit_code == exit_ok);
  const Json& ev = result.report["evaluation"];
  CHECK(ev["closed_form"].get<double>() == doctest::Approx(12).epsilon(1e-12));
  CHECK(ev["series"]["value"].get<double>() == doctest::Approx(12).epsilon(1e-9));
  CHECK(ev["agreement"] == true);
}

TEST_CASE("balanced command") {
  const auto result = run_text(
      R"({"command": "balanced", "factors": [{"kind": "ball", "dim": 1, "mu": 2}], "d0": 1})");
  CHECK(result.exit_code == exit_ok);
  CHECK(result.report["balanced"]["balanced"] == false);
  CHECK(result.report["balanced"]["residual"] == "1");
}

TEST_CASE("exit codes") {
  RunConfig bad;
  bad.spec.factors.push_back(hartogs::domains::make_factor(hartogs::domains::FactorKind::ball(1), Rational(1), Rational(-1)));
  bad.has_spec = true;
  const auto rejected = run(bad);
  CHECK(rejected.exit_code == exit_invalid_input);
  CHECK(rejected.report["error"] == "invalid_input");
  CHECK(rejected.report["issues"][0]["path"] == "factors[0].nu");

  const auto low = run_text(
      R"({"command": "eval-epsilon", "alpha": 2, "s": "1/2", "factors": [{"kind": "ball", "dim": 1, "mu": 1}], "d0": 1})");
  CHECK(low.exit_code == exit_alpha_below_threshold);
  CHECK(low.report["error"] == "alpha_below_threshold");

  const auto unsupported = run_text(
      R"({"command": "verify-numeric", "factors": [{"kind": "IV", "n": 3, "mu": 1}], "d0": 1})");
  CHECK(unsupported.exit_code == exit_invalid_input);

  const auto numeric_fail = run_text(with_settings(kBalancedThullen, R"({"command": "verify-numeric", "tol": "1e-30", "samples": 3})"));
  CHECK(numeric_fail.exit_code == exit_numeric_failure);
}

TEST_CASE("catalog") {
  const auto result = run_text(R"({"command": "catalog"})");
  CHECK(result.exit_code == exit_ok);
  bool has_vi = false;
  for (const auto& row : result.report["catalog"]) has_vi = has_vi || row["kind"] == "VI";
  CHECK(has_vi);
}

TEST_CASE("atomic write") {
  const auto dir = std::filesystem::temp_directory_path() / "hartogs_cli_test";
  std::filesystem::create_directories(dir);
  const auto path = dir / "report.json";
  write_atomically(path, "first");
  write_atomically(path, "second");
  std::ifstream in(path);
  std::stringstream buf;
  buf << in.rdbuf();
  CHECK(buf.str() == "second");
  std::size_t files = 0;
  for ([[maybe_unused]] const auto& entry : std::filesystem::directory_iterator(dir)) ++files;
  CHECK(files == 1);
  std::filesystem::remove_all(dir);
}
