#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hartogs/config.hpp"

namespace {

using hartogs::cli::ConfigError;
using hartogs::cli::RunConfig;

std::string slurp(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("", "cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

hartogs::algebra::Rational flag_rational(const std::string& text, const std::string& flag) {
  try {
    return hartogs::algebra::Rational::parse(text);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(flag, std::string("not a rational number: ") + e.what());
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Epsilon-function analysis for generalized Cartan-Hartogs domains"};
  app.set_version_flag("--version", "hartogs 1.0.0");

  std::string command;
  std::string spec_path;
  std::vector<std::string> alphas;
  std::string s_text;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  std::string tol;
  std::string out_path;
  bool symbolic = false;
  bool fixed = false;

  app.add_option("command", command, "report | balanced | polynomiality | eval-epsilon | verify-numeric | catalog")
      ->required();
  app.add_option("spec", spec_path, "Domain spec JSON file ('-' reads standard input)");
  app.add_option("--alpha", alphas, "Weight alpha as an exact rational; repeat for several values");
  app.add_option("--s", s_text, "Fiber ratio s in [0, 1) as an exact rational");
  auto* samples_opt = app.add_option("--samples", samples, "Number of random samples (default 100)")
                          ->check(CLI::PositiveNumber);
  auto* seed_opt = app.add_option("--seed", seed, "Seed for the sampling checks (default 0)");
  app.add_option("--tol", tol, "Tolerance as a decimal string");
  app.add_option("--out", out_path, "Write the JSON report here instead of standard output");
  auto* sym_flag = app.add_flag("--symbolic", symbolic, "Keep alpha symbolic (default)");
  app.add_flag("--fixed", fixed, "Decide polynomiality at each --alpha separately")->excludes(sym_flag);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : hartogs::cli::exit_invalid_input;
  }

  RunConfig config;
  try {
    const auto cmd = hartogs::cli::parse_command(command);
    if (!cmd) throw ConfigError("command", "unknown command \"" + command + "\"");
    if (!spec_path.empty()) {
      config = hartogs::cli::parse_config(slurp(spec_path));
    }
    config.command = *cmd;
    if (!alphas.empty()) {
      config.alphas.clear();
      for (const auto& a : alphas) config.alphas.push_back(flag_rational(a, "--alpha"));
    }
    if (!s_text.empty()) config.s = flag_rational(s_text, "--s");
    if (*samples_opt) config.samples = samples;
    if (*seed_opt) config.seed = seed;
    if (!tol.empty()) config.tolerance = tol;
    if (!out_path.empty()) config.output = out_path;
    if (symbolic) config.symbolic = true;
    if (fixed) config.symbolic = false;
  } catch (const ConfigError& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return hartogs::cli::exit_invalid_input;
  }

  const auto result = hartogs::cli::run(config);
  std::cerr << result.summary;
  const std::string text = result.report.dump(2) + "\n";
  try {
    if (config.output.empty() || config.output == "-") {
      std::cout << text;
    } else {
      hartogs::cli::write_atomically(config.output, text);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return hartogs::cli::exit_invalid_input;
  }
  return result.exit_code;
}
