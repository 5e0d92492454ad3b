#include "hartogs/config.hpp"

#include <unistd.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "hartogs/epsilon.hpp"
#include "hartogs/numeric.hpp"

namespace hartogs::cli {

namespace {

using domains::CartanType;
using domains::FactorKind;

std::string join_issues(const std::vector<ConfigIssue>& issues) {
  std::string out;
  for (const auto& issue : issues) {
    if (!out.empty()) out += "; ";
    out += issue.path.empty() ? issue.message : issue.path + ": " + issue.message;
  }
  return out;
}

struct KindName {
  const char* name;
  CartanType type;
};

constexpr KindName kKindNames[] = {
    {"ball", CartanType::ball}, {"I", CartanType::I},   {"II", CartanType::II}, {"III", CartanType::III},
    {"IV", CartanType::IV},     {"V", CartanType::V},   {"VI", CartanType::VI},
};

const char* kind_name(CartanType type) {
  for (const auto& k : kKindNames) {
    if (k.type == type) return k.name;
  }
  return "?";
}

// Accumulates issues while walking a document.
class Reader {
 public:
  std::vector<ConfigIssue> issues;

  void fail(std::string path, std::string message) { issues.push_back({std::move(path), std::move(message)}); }

  std::optional<long long> integer(const Json& obj, const std::string& key, const std::string& path) {
    if (!obj.contains(key)) {
      fail(path + "." + key, "missing required integer");
      return std::nullopt;
    }
    const Json& v = obj.at(key);
    if (!v.is_number_integer()) {
      fail(path + "." + key, "expected an integer");
      return std::nullopt;
    }
    return v.get<long long>();
  }

  std::optional<Rational> rational(const Json& v, const std::string& path) {
    try {
      return parse_rational(v, path);
    } catch (const ConfigError& e) {
      issues.insert(issues.end(), e.issues().begin(), e.issues().end());
      return std::nullopt;
    }
  }
};

int to_int(long long v) {
  return static_cast<int>(std::clamp<long long>(v, -1000000, 1000000));
}

std::optional<domains::Factor> read_factor(Reader& reader, const Json& f, const std::string& path) {
  if (!f.is_object()) {
    reader.fail(path, "expected an object");
    return std::nullopt;
  }
  if (!f.contains("kind") || !f.at("kind").is_string()) {
    reader.fail(path + ".kind", "missing factor kind");
    return std::nullopt;
  }
  const std::string name = f.at("kind").get<std::string>();
  const auto match = std::find_if(std::begin(kKindNames), std::end(kKindNames),
                                  [&name](const KindName& k) { return name == k.name; });
  if (match == std::end(kKindNames)) {
    reader.fail(path + ".kind", "unknown factor kind \"" + name + "\"");
    return std::nullopt;
  }

  std::set<std::string> allowed{"kind", "mu", "nu", "label", "params"};
  FactorKind kind{match->type, 0, 0};
  bool sizes_ok = true;
  auto size = [&](const char* key) {
    allowed.insert(key);
    const auto v = reader.integer(f, key, path);
    if (!v) sizes_ok = false;
    return v ? to_int(*v) : 0;
  };
  switch (match->type) {
    case CartanType::ball: kind = FactorKind::ball(size("dim")); break;
    case CartanType::I: {
      const int m = size("m");
      kind = FactorKind::type_one(m, size("n"));
      break;
    }
    case CartanType::II: kind = FactorKind::type_two(size("n")); break;
    case CartanType::III: kind = FactorKind::type_three(size("n")); break;
    case CartanType::IV: kind = FactorKind::type_four(size("n")); break;
    case CartanType::V: kind = FactorKind::type_five(); break;
    case CartanType::VI: kind = FactorKind::type_six(); break;
  }
  for (const auto& item : f.items()) {
    if (!allowed.contains(item.key())) reader.fail(path + "." + item.key(), "unknown key");
  }

  std::optional<Rational> mu;
  if (!f.contains("mu")) {
    reader.fail(path + ".mu", "missing mu");
  } else {
    mu = reader.rational(f.at("mu"), path + ".mu");
  }
  std::optional<Rational> nu = Rational(0);
  if (f.contains("nu")) nu = reader.rational(f.at("nu"), path + ".nu");
  if (!sizes_ok || !mu || !nu) return std::nullopt;

  try {
    return domains::make_factor(kind, *mu, *nu);
  } catch (const std::invalid_argument& e) {
    reader.fail(path, e.what());
    return std::nullopt;
  }
}

const std::set<std::string> kSettingKeys{"command", "alpha", "s", "samples", "seed", "tol", "mode"};

}  // namespace

ConfigError::ConfigError(std::vector<ConfigIssue> issues)
    : std::runtime_error(join_issues(issues)), issues_(std::move(issues)) {}

ConfigError::ConfigError(std::string path, std::string message)
    : ConfigError(std::vector<ConfigIssue>{{std::move(path), std::move(message)}}) {}

std::optional<Command> parse_command(std::string_view name) {
  for (Command c : {Command::report, Command::balanced, Command::polynomiality, Command::eval_epsilon,
                    Command::verify_numeric, Command::catalog}) {
    if (name == to_string(c)) return c;
  }
  return std::nullopt;
}

const char* to_string(Command command) {
  switch (command) {
    case Command::report: return "report";
    case Command::balanced: return "balanced";
    case Command::polynomiality: return "polynomiality";
    case Command::eval_epsilon: return "eval-epsilon";
    case Command::verify_numeric: return "verify-numeric";
    case Command::catalog: return "catalog";
  }
  return "?";
}

Rational parse_rational(const Json& value, const std::string& path) {
  try {
    if (value.is_string()) return Rational::parse(value.get<std::string>());
    if (value.is_number_integer()) return Rational(value.get<long long>());
    if (value.is_number_float()) return Rational::parse(value.dump());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(path, std::string("not a rational number: ") + e.what());
  }
  throw ConfigError(path, "expected a rational as a string or an integer");
}

DomainSpec parse_spec(const Json& doc) {
  Reader reader;
  DomainSpec spec;
  spec.fiber_dim = 0;
  if (!doc.is_object()) throw ConfigError("", "expected a JSON object");

  if (!doc.contains("factors") || !doc.at("factors").is_array()) {
    reader.fail("factors", "missing array of factors");
  } else {
    const Json& factors = doc.at("factors");
    for (std::size_t i = 0; i < factors.size(); ++i) {
      if (auto f = read_factor(reader, factors[i], "factors[" + std::to_string(i) + "]")) spec.factors.push_back(*f);
    }
  }
  if (const auto d0 = reader.integer(doc, "d0", "")) spec.fiber_dim = to_int(*d0);
  for (auto& issue : reader.issues) {
    if (issue.path.starts_with(".")) issue.path.erase(0, 1);
  }
  if (!reader.issues.empty()) throw ConfigError(reader.issues);

  std::vector<ConfigIssue> issues;
  for (const auto& v : domains::validate_spec(spec)) issues.push_back({v.path, v.message});
  if (!issues.empty()) throw ConfigError(issues);
  return spec;
}

Json spec_to_json(const DomainSpec& spec) {
  Json factors = Json::array();
  for (const auto& f : spec.factors) {
    Json item;
    item["kind"] = kind_name(f.kind.type);
    switch (f.kind.type) {
      case CartanType::ball: item["dim"] = f.kind.n; break;
      case CartanType::I:
        item["m"] = f.kind.m;
        item["n"] = f.kind.n;
        break;
      case CartanType::II:
      case CartanType::III:
      case CartanType::IV: item["n"] = f.kind.n; break;
      case CartanType::V:
      case CartanType::VI: break;
    }
    item["mu"] = f.mu.to_string();
    item["nu"] = f.nu.to_string();
    factors.push_back(std::move(item));
  }
  Json out;
  out["factors"] = std::move(factors);
  out["d0"] = spec.fiber_dim;
  return out;
}

RunConfig parse_config(std::string_view text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ConfigError("", std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("", "expected a JSON object");

  RunConfig config;
  Reader reader;
  for (const auto& item : doc.items()) {
    if (item.key() != "factors" && item.key() != "d0" && !kSettingKeys.contains(item.key())) {
      reader.fail(item.key(), "unknown key");
    }
  }
  if (doc.contains("command")) {
    const Json& c = doc.at("command");
    const auto cmd = c.is_string() ? parse_command(c.get<std::string>()) : std::nullopt;
    if (cmd) {
      config.command = *cmd;
    } else {
      reader.fail("command", "unknown command");
    }
  }
  if (doc.contains("alpha")) {
    const Json& a = doc.at("alpha");
    if (a.is_array()) {
      for (std::size_t i = 0; i < a.size(); ++i) {
        if (auto r = reader.rational(a[i], "alpha[" + std::to_string(i) + "]")) config.alphas.push_back(*r);
      }
    } else if (auto r = reader.rational(a, "alpha")) {
      config.alphas.push_back(*r);
    }
  }
  if (doc.contains("s")) config.s = reader.rational(doc.at("s"), "s");
  if (doc.contains("samples")) {
    const Json& v = doc.at("samples");
    if (v.is_number_unsigned() && v.get<unsigned long long>() > 0) {
      config.samples = v.get<std::size_t>();
    } else {
      reader.fail("samples", "expected a positive integer");
    }
  }
  if (doc.contains("seed")) {
    const Json& v = doc.at("seed");
    if (v.is_number_unsigned()) {
      config.seed = v.get<std::uint64_t>();
    } else {
      reader.fail("seed", "expected a non-negative integer");
    }
  }
  if (doc.contains("tol")) {
    const Json& v = doc.at("tol");
    if (v.is_string()) {
      config.tolerance = v.get<std::string>();
    } else if (v.is_number()) {
      config.tolerance = v.dump();
    } else {
      reader.fail("tol", "expected a decimal string");
    }
  }
  if (doc.contains("mode")) {
    const Json& v = doc.at("mode");
    if (v == "symbolic") {
      config.symbolic = true;
    } else if (v == "fixed") {
      config.symbolic = false;
    } else {
      reader.fail("mode", "expected \"symbolic\" or \"fixed\"");
    }
  }
  if (!reader.issues.empty()) throw ConfigError(reader.issues);

  if (doc.contains("factors") || doc.contains("d0")) {
    config.spec = parse_spec(doc);
    config.has_spec = true;
  }
  return config;
}

void validate_run(const RunConfig& config) {
  std::vector<ConfigIssue> issues;
  if (config.command != Command::catalog && !config.has_spec) issues.push_back({"factors", "a domain spec is required"});
  if (config.has_spec) {
    for (const auto& v : domains::validate_spec(config.spec)) issues.push_back({v.path, v.message});
  }
  if (config.command == Command::eval_epsilon) {
    if (config.alphas.size() != 1) issues.push_back({"alpha", "eval-epsilon needs exactly one alpha"});
    if (!config.s) issues.push_back({"s", "eval-epsilon needs s"});
  }
  if (!config.symbolic && config.alphas.empty() &&
      (config.command == Command::report || config.command == Command::polynomiality)) {
    issues.push_back({"alpha", "fixed mode needs at least one alpha"});
  }
  if (config.samples == 0) issues.push_back({"samples", "expected a positive integer"});
  if (!config.tolerance.empty()) {
    std::istringstream in(config.tolerance);
    long double tol = 0;
    in >> tol;
    if (!in || !in.eof() || !(tol > 0)) issues.push_back({"tol", "expected a positive decimal"});
  }
  if (!issues.empty()) throw ConfigError(issues);
}

namespace {

using epsilon::PolynomialityVerdict;
using numeric::Real;

// Sampling margins for the numeric checks. The finite-difference Hessian
// needs points well inside the domain; the kernel series needs s away from 1.
constexpr Real kHessianMargin = 0.3L;
constexpr Real kHessianStep = 1e-3L;
constexpr Real kSeriesMargin = 0.1L;

long double tolerance_or(const RunConfig& config, long double fallback) {
  if (config.tolerance.empty()) return fallback;
  std::istringstream in(config.tolerance);
  long double tol = fallback;
  in >> tol;
  return tol;
}

Rational default_alpha(const RunConfig& config) {
  if (!config.alphas.empty()) return config.alphas.front();
  return Rational(mpz_class(domains::alpha_threshold(config.spec).floor() + 1), mpz_class(1));
}

Json strings(const std::vector<Rational>& values) {
  Json out = Json::array();
  for (const auto& v : values) out.push_back(v.to_string());
  return out;
}

Json poly_strings(const std::vector<algebra::UniPoly>& values, std::string_view var) {
  Json out = Json::array();
  for (const auto& v : values) out.push_back(v.to_string(var));
  return out;
}

// Coefficient of (1 - s)^k at index k, each a polynomial in alpha.
std::vector<algebra::UniPoly> symbolic_epsilon(const DomainSpec& spec, const algebra::BiPoly& phi) {
  const int d = spec.base_dim();
  const int n = spec.total_dim();
  std::vector<algebra::UniPoly> by_j;
  for (int j = 0; j <= d; ++j) {
    const auto uj = static_cast<unsigned>(j);
    algebra::UniPoly diff;
    for (unsigned l = 0; l <= uj; ++l) {
      const algebra::UniPoly value = phi.restrict(algebra::Variable::x, Rational(d - static_cast<int>(l)));
      const algebra::UniPoly term = value.scaled(algebra::binomial(uj, l));
      diff = (l % 2 == 0) ? diff + term : diff - term;
    }
    by_j.push_back(diff.scaled(algebra::factorial(uj).inverse()) *
                   algebra::rising_factorial_poly(Rational(-n), static_cast<unsigned>(spec.fiber_dim + j)));
  }
  std::reverse(by_j.begin(), by_j.end());
  return by_j;
}

std::vector<Rational> fixed_epsilon(const epsilon::EpsilonClosedForm& closed) {
  std::vector<Rational> out(closed.coeffs.rbegin(), closed.coeffs.rend());
  return out;
}

Json verdict_json(const PolynomialityVerdict& v, bool symbolic) {
  Json out;
  out["mode"] = symbolic ? "symbolic" : "fixed";
  out["status"] = epsilon::to_string(v.status);
  out["witness"] = v.witness ? Json(v.witness->to_string("x", "alpha")) : Json(nullptr);
  out["witness_alpha"] = v.witness_alpha ? Json(v.witness_alpha->to_string()) : Json(nullptr);
  return out;
}

Json phi_json(const PolynomialityVerdict& v, bool symbolic) {
  if (symbolic) {
    if (!v.phi) return nullptr;
    return poly_strings(v.phi->coefficients_in(algebra::Variable::x), "alpha");
  }
  Json out = Json::array();
  for (const auto& entry : v.per_alpha) {
    Json item;
    item["alpha"] = entry.alpha.to_string();
    item["coefficients"] = entry.phi ? strings(entry.phi->coefficients()) : Json(nullptr);
    item["remainder"] = entry.remainder.to_string();
    out.push_back(std::move(item));
  }
  return out;
}

Json epsilon_json(const DomainSpec& spec, const PolynomialityVerdict& v, bool symbolic) {
  if (symbolic) {
    if (!v.phi) return nullptr;
    return poly_strings(symbolic_epsilon(spec, *v.phi), "alpha");
  }
  Json out = Json::array();
  for (const auto& entry : v.per_alpha) {
    Json item;
    item["alpha"] = entry.alpha.to_string();
    item["coefficients"] =
        entry.phi ? strings(fixed_epsilon(epsilon::epsilon_coeffs_from_phi(spec, *entry.phi, entry.alpha)))
                  : Json(nullptr);
    out.push_back(std::move(item));
  }
  return out;
}

Json balanced_json(const DomainSpec& spec) {
  const auto b = epsilon::balanced_check(spec);
  Json out;
  out["balanced"] = b.balanced;
  out["residual"] = b.residual.to_string();
  out["reindexing_consistent"] = b.reindexing_consistent;
  return out;
}

Json wallach_json(const DomainSpec& spec, bool& all_ok) {
  Json out = Json::array();
  all_ok = true;
  for (const auto& f : spec.factors) {
    const bool ok = domains::wallach_contains(f.params, f.mu);
    all_ok = all_ok && ok;
    Json item;
    item["factor"] = f.kind.label();
    item["mu"] = f.mu.to_string();
    item["contains_mu"] = ok;
    out.push_back(std::move(item));
  }
  return out;
}

double num(Real v) { return static_cast<double>(v); }

Json numeric_json(const RunConfig& config, const Rational& alpha, bool& failed, std::ostringstream& summary) {
  const DomainSpec& spec = config.spec;
  const Real tol = tolerance_or(config, 1e-4L);
  Json out;
  out["supported"] = numeric::supports_numeric(spec);
  if (!numeric::supports_numeric(spec)) {
    summary << "numeric checks: skipped (only ball and type I factors are supported)\n";
    return out;
  }
  out["alpha"] = alpha.to_string();
  out["samples"] = config.samples;
  out["seed"] = config.seed;
  out["tolerance"] = num(tol);

  auto record = [&](const char* name, bool passed) {
    summary << "  " << name << ": " << (passed ? "ok" : "FAILED") << "\n";
    if (!passed) failed = true;
  };
  summary << "numeric checks at alpha = " << alpha << ":\n";

  {
    numeric::SampleOptions opts;
    opts.margin = kHessianMargin;
    Real worst = 0;
    for (std::size_t i = 0; i < config.samples; ++i) {
      const auto p = numeric::sample_point(spec, config.seed, i, opts);
      worst = std::max(worst, numeric::monge_ampere_check_extrapolated(spec, p, kHessianStep).relative_error);
    }
    Json ma;
    ma["step"] = num(kHessianStep);
    ma["extrapolation"] = "richardson";
    ma["margin"] = num(kHessianMargin);
    ma["max_relative_error"] = num(worst);
    ma["passed"] = worst < tol;
    record("monge-ampere", worst < tol);
    out["monge_ampere"] = std::move(ma);
  }

  std::optional<epsilon::EpsilonClosedForm> closed;
  try {
    closed = epsilon::epsilon_coeffs(spec, alpha);
  } catch (const epsilon::NotPolynomial&) {
  }
  if (closed) {
    numeric::SampleOptions opts;
    opts.margin = kSeriesMargin;
    Real invariance = 0;
    Real kernel = 0;
    for (std::size_t i = 0; i < config.samples; ++i) {
      const auto p = numeric::sample_point(spec, config.seed, i, opts);
      invariance = std::max(invariance, numeric::epsilon_invariance_check(spec, p, alpha));
      const Real eps = closed->value(numeric::fiber_ratio(spec, p));
      const Real via_kernel = epsilon::epsilon_from_kernel(numeric::weighted_kernel(spec, alpha, p), alpha,
                                                           numeric::potential_eval(spec, p));
      kernel = std::max(kernel, std::fabs(via_kernel - eps) / std::fabs(eps));
    }
    Json inv;
    inv["max_relative_error"] = num(invariance);
    inv["passed"] = invariance < tol;
    record("invariance", invariance < tol);
    out["invariance"] = std::move(inv);
    Json ker;
    ker["max_relative_error"] = num(kernel);
    ker["passed"] = kernel < tol;
    record("kernel identity", kernel < tol);
    out["kernel_identity"] = std::move(ker);
  } else {
    out["invariance"] = nullptr;
    out["kernel_identity"] = nullptr;
  }

  const bool balls = std::all_of(spec.factors.begin(), spec.factors.end(),
                                 [](const domains::Factor& f) { return f.kind.type == CartanType::ball; });
  if (!balls) {
    out["diastasis"] = nullptr;
    out["boundedness"] = nullptr;
    return out;
  }

  {
    const Real beta = 3;
    Real max_value = 0;
    Real min_value = 1;
    Real diagonal = 0;
    std::size_t rejected = 0;
    for (std::size_t i = 0; i < config.samples; ++i) {
      const auto p1 = numeric::sample_point(spec, config.seed, 2 * i);
      const auto p2 = numeric::sample_point(spec, config.seed, 2 * i + 1);
      diagonal = std::max(diagonal, std::fabs(numeric::diastasis_check(spec, beta, p1, p1) - 1));
      try {
        const Real v = numeric::diastasis_check(spec, beta, p1, p2);
        max_value = std::max(max_value, v);
        min_value = std::min(min_value, v);
      } catch (const numeric::BranchCutError&) {
        ++rejected;
      }
    }
    const bool passed = min_value > 0 && max_value <= 1 + 1e-12L && diagonal <= 1e-12L;
    Json dia;
    dia["beta"] = num(beta);
    dia["min_value"] = num(min_value);
    dia["max_value"] = num(max_value);
    dia["diagonal_deviation"] = num(diagonal);
    dia["rejected"] = rejected;
    dia["passed"] = passed;
    record("diastasis", passed);
    out["diastasis"] = std::move(dia);
  }

  {
    const auto b = numeric::boundedness_sample(spec, config.samples, config.seed, alpha);
    Json bd;
    bd["max_cross"] = num(b.max_cross);
    bd["max_abs_x"] = num(b.max_abs_x);
    bd["max_abs_b"] = b.max_abs_b ? Json(num(*b.max_abs_b)) : Json(nullptr);
    bd["max_abs_c"] = b.max_abs_c ? Json(num(*b.max_abs_c)) : Json(nullptr);
    bd["rejected"] = b.rejected;
    bd["passed"] = b.bounded;
    record("boundedness", b.bounded);
    out["boundedness"] = std::move(bd);
  }
  return out;
}

std::string describe(const DomainSpec& spec) {
  std::ostringstream os;
  for (std::size_t i = 0; i < spec.factors.size(); ++i) {
    const auto& f = spec.factors[i];
    if (i > 0) os << " x ";
    os << f.kind.label() << "[mu=" << f.mu << ", nu=" << f.nu << "]";
  }
  os << " with d0=" << spec.fiber_dim;
  return os.str();
}

PolynomialityVerdict verdict_for(const RunConfig& config) {
  return config.symbolic ? epsilon::polynomiality_check(config.spec)
                         : epsilon::polynomiality_check(config.spec, config.alphas);
}

void run_catalog(RunResult& result) {
  Json rows = Json::array();
  for (const auto& entry : domains::catalog_listing(6)) {
    Json row;
    row["kind"] = entry.kind.label();
    row["r"] = entry.params.rank;
    row["a"] = entry.params.mult_a;
    row["b"] = entry.params.mult_b;
    row["d"] = entry.params.dim;
    row["p"] = entry.params.genus;
    rows.push_back(std::move(row));
  }
  result.report["catalog"] = std::move(rows);
  result.summary = std::to_string(result.report["catalog"].size()) + " catalog entries\n";
}

void run_spec_command(const RunConfig& config, RunResult& result) {
  const DomainSpec& spec = config.spec;
  std::ostringstream summary;
  for (const auto& a : config.alphas) epsilon::require_admissible_alpha(spec, a);

  Json& rep = result.report;
  rep["spec_echo"] = spec_to_json(spec);
  const Rational threshold = domains::alpha_threshold(spec);
  rep["alpha_threshold"] = threshold.to_string();
  summary << "domain: " << describe(spec) << "\n";
  summary << "alpha must exceed " << threshold << "\n";

  switch (config.command) {
    case Command::report:
    case Command::polynomiality: {
      const auto verdict = verdict_for(config);
      rep["verdict"] = verdict_json(verdict, config.symbolic);
      rep["phi_coefficients"] = phi_json(verdict, config.symbolic);
      summary << "verdict: " << epsilon::to_string(verdict.status) << "\n";
      if (verdict.phi) summary << "phi(x) = " << verdict.phi->to_string("x", "alpha") << "\n";
      if (verdict.witness) summary << "remainder: " << verdict.witness->to_string("x", "alpha") << "\n";
      if (config.command == Command::polynomiality) break;

      rep["epsilon_coefficients"] = epsilon_json(spec, verdict, config.symbolic);
      rep["balanced"] = balanced_json(spec);
      bool wallach_ok = true;
      rep["wallach"] = wallach_json(spec, wallach_ok);
      const auto uniform = config.symbolic ? verdict.status : epsilon::polynomiality_check(spec).status;
      const bool admissible = wallach_ok && uniform == epsilon::PolynomialityStatus::polynomial_all_alpha;
      rep["berezin_admissible"] = admissible;
      summary << "balanced: " << (rep["balanced"]["balanced"].get<bool>() ? "yes" : "no") << "\n";
      summary << "berezin admissible: " << (admissible ? "yes" : "no") << "\n";
      bool failed = false;
      rep["numeric_checks"] = numeric_json(config, default_alpha(config), failed, summary);
      if (failed) result.exit_code = exit_numeric_failure;
      break;
    }
    case Command::balanced: {
      rep["balanced"] = balanced_json(spec);
      summary << "balanced: " << (rep["balanced"]["balanced"].get<bool>() ? "yes" : "no") << "\n";
      if (!rep["balanced"]["balanced"].get<bool>()) {
        summary << "residual: " << rep["balanced"]["residual"].get<std::string>() << "\n";
      }
      break;
    }
    case Command::eval_epsilon: {
      const Rational& alpha = config.alphas.front();
      const Rational& s = *config.s;
      const long double tol = tolerance_or(config, 1e-9L);
      Json ev;
      ev["alpha"] = alpha.to_string();
      ev["s"] = s.to_string();
      const auto series = epsilon::epsilon_series(spec, alpha, s);
      std::optional<long double> closed_value;
      try {
        closed_value = epsilon::epsilon_coeffs(spec, alpha).value(s).to_long_double();
      } catch (const epsilon::NotPolynomial&) {
      }
      ev["closed_form"] = closed_value ? Json(num(*closed_value)) : Json(nullptr);
      Json sj;
      sj["value"] = num(series.value);
      sj["terms"] = series.terms;
      sj["last_term"] = num(series.last_term);
      sj["converged"] = series.converged;
      ev["series"] = std::move(sj);
      if (closed_value) {
        const long double diff = std::fabs(series.value - *closed_value);
        const bool agree = series.converged && diff <= tol * std::max(1.0L, std::fabs(*closed_value));
        ev["difference"] = num(diff);
        ev["agreement"] = agree;
        if (!agree) result.exit_code = exit_numeric_failure;
        summary << "epsilon = " << num(*closed_value) << " (closed form), " << num(series.value) << " (series, "
                << series.terms << " terms)\n";
      } else {
        ev["difference"] = nullptr;
        ev["agreement"] = nullptr;
        summary << "epsilon = " << num(series.value) << " (series, " << series.terms << " terms)\n";
      }
      rep["evaluation"] = std::move(ev);
      break;
    }
    case Command::verify_numeric: {
      if (!numeric::supports_numeric(spec)) {
        throw ConfigError("factors", "numeric checks support ball and type I factors only");
      }
      bool failed = false;
      rep["numeric_checks"] = numeric_json(config, default_alpha(config), failed, summary);
      if (failed) result.exit_code = exit_numeric_failure;
      break;
    }
    case Command::catalog: break;
  }
  result.summary = summary.str();
}

Json error_report(const std::string& kind, const std::string& message, const std::vector<ConfigIssue>& issues = {}) {
  Json out;
  out["error"] = kind;
  out["message"] = message;
  Json list = Json::array();
  for (const auto& issue : issues) {
    Json item;
    item["path"] = issue.path;
    item["message"] = issue.message;
    list.push_back(std::move(item));
  }
  out["issues"] = std::move(list);
  return out;
}

}  // namespace

RunResult run(const RunConfig& config) {
  RunResult result;
  try {
    validate_run(config);
    if (config.command == Command::catalog) {
      run_catalog(result);
    } else {
      run_spec_command(config, result);
    }
  } catch (const ConfigError& e) {
    result = {exit_invalid_input, error_report("invalid_input", e.what(), e.issues()),
              std::string("invalid input: ") + e.what() + "\n"};
  } catch (const epsilon::AlphaBelowThreshold& e) {
    result = {exit_alpha_below_threshold, error_report("alpha_below_threshold", e.what()),
              std::string("error: ") + e.what() + "\n"};
  } catch (const std::invalid_argument& e) {
    result = {exit_invalid_input, error_report("invalid_input", e.what()), std::string("invalid input: ") + e.what() + "\n"};
  } catch (const std::domain_error& e) {
    result = {exit_invalid_input, error_report("invalid_input", e.what()), std::string("error: ") + e.what() + "\n"};
  }
  return result;
}

void write_atomically(const std::filesystem::path& path, std::string_view content) {
  const auto dir = path.has_parent_path() ? path.parent_path() : std::filesystem::path(".");
  const auto tmp = dir / ("." + path.filename().string() + ".tmp." + std::to_string(::getpid()));
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string());
    out << content;
    out.flush();
    if (!out) {
      std::filesystem::remove(tmp);
      throw std::runtime_error("cannot write " + tmp.string());
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw std::runtime_error("cannot replace " + path.string() + ": " + ec.message());
  }
}

}  // namespace hartogs::cli
