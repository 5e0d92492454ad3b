#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "hartogs/domains.hpp"
#include "hartogs/rational.hpp"

namespace hartogs::cli {

using Json = nlohmann::ordered_json;
using algebra::Rational;
using domains::DomainSpec;

enum class Command { report, balanced, polynomiality, eval_epsilon, verify_numeric, catalog };

std::optional<Command> parse_command(std::string_view name);
const char* to_string(Command command);

enum ExitCode : int { exit_ok = 0, exit_invalid_input = 1, exit_alpha_below_threshold = 2, exit_numeric_failure = 3 };

struct ConfigIssue {
  std::string path;
  std::string message;
};

/// Malformed input. Every issue carries a path into the document such as
/// "factors[0].nu".
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(std::vector<ConfigIssue> issues);
  ConfigError(std::string path, std::string message);
  const std::vector<ConfigIssue>& issues() const { return issues_; }

 private:
  std::vector<ConfigIssue> issues_;
};

struct RunConfig {
  DomainSpec spec;
  bool has_spec = false;
  Command command = Command::report;
  /// Empty means a default alpha just above the threshold.
  std::vector<Rational> alphas;
  std::optional<Rational> s;
  std::size_t samples = 100;
  std::uint64_t seed = 0;
  /// Per-command default when empty.
  std::string tolerance;
  /// Empty or "-" writes to standard output.
  std::string output;
  bool symbolic = true;
};

/// Rationals are JSON strings ("3/4", "0.25") or integers.
Rational parse_rational(const Json& value, const std::string& path);

/// Parses {"factors": [...], "d0": k} and runs validate_spec.
DomainSpec parse_spec(const Json& doc);
/// Inverse of parse_spec.
Json spec_to_json(const DomainSpec& spec);

/// Spec plus optional run settings ("command", "alpha", "s", "samples",
/// "seed", "tol", "mode"). Throws ConfigError.
RunConfig parse_config(std::string_view text);

/// Checks command-specific requirements. Throws ConfigError.
void validate_run(const RunConfig& config);

struct RunResult {
  int exit_code = exit_ok;
  Json report;
  std::string summary;
};

/// Never throws for bad input; failures map to exit codes.
RunResult run(const RunConfig& config);

/// Writes through a temporary file in the same directory and renames it.
void write_atomically(const std::filesystem::path& path, std::string_view content);

}  // namespace hartogs::cli
