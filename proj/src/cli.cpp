#include "igeo/cli.hpp"

#include <CLI11.hpp>
#include <chrono>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>
#include <utility>

#include "igeo/audit.hpp"
#include "igeo/charts.hpp"
#include "igeo/dynamics.hpp"
#include "igeo/errors.hpp"
#include "igeo/gradients.hpp"
#include "igeo/orlicz.hpp"

namespace igeo::cli {

namespace {

using json = nlohmann::json;

const json& section(const json& config, const char* name) {
  if (!config.contains(name) || !config.at(name).is_object()) {
    throw ConfigurationError(std::string("config needs an object \"") + name + "\"");
  }
  return config.at(name);
}

double number(const json& obj, const char* key) {
  if (!obj.contains(key) || !obj.at(key).is_number()) {
    throw ConfigurationError(std::string("config needs a number \"") + key + "\"");
  }
  return obj.at(key).get<double>();
}

std::vector<double> array(const json& obj, const char* key) {
  if (!obj.contains(key) || !obj.at(key).is_array()) {
    throw ConfigurationError(std::string("config needs an array \"") + key + "\"");
  }
  std::vector<double> v;
  for (const json& x : obj.at(key)) {
    if (!x.is_number()) throw ConfigurationError(std::string("\"") + key + "\" must hold numbers");
    v.push_back(x.get<double>());
  }
  return v;
}

std::size_t count_or(const json& obj, const char* key, std::size_t fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj.at(key).is_number_unsigned() || obj.at(key).get<std::size_t>() == 0) {
    throw ConfigurationError(std::string("\"") + key + "\" must be a positive integer");
  }
  return obj.at(key).get<std::size_t>();
}

bool flag_or(const json& obj, const char* key, bool fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj.at(key).is_boolean()) throw ConfigurationError(std::string("\"") + key + "\" must be a boolean");
  return obj.at(key).get<bool>();
}

StepPlan plan_of(const json& s) {
  return {number(s, "T"), number(s, "h"), count_or(s, "record_every", 1)};
}

FiniteSpace space_of(const json& config) { return FiniteSpace(array(config, "space")); }

Density initial_of(const json& config, const FiniteSpace& space) {
  std::vector<double> v = array(config, "initial");
  if (v.size() != space.size()) throw DimensionError("\"initial\" and \"space\" differ in length");
  return Density(space, std::move(v));
}

RandomVariable variable_of(const json& obj, const char* key, const FiniteSpace& space) {
  std::vector<double> v = array(obj, key);
  if (v.size() != space.size()) {
    throw DimensionError(std::string("\"") + key + "\" and \"space\" differ in length");
  }
  return RandomVariable(space, std::move(v));
}

class Csv {
 public:
  explicit Csv(std::ostream& out) : out_(out) { out_.precision(17); }

  void header(const std::vector<std::string>& names) {
    for (std::size_t i = 0; i < names.size(); ++i) out_ << (i ? "," : "") << names[i];
    out_ << '\n';
  }
  void row(const std::vector<double>& values) {
    for (std::size_t i = 0; i < values.size(); ++i) out_ << (i ? "," : "") << values[i];
    out_ << '\n';
  }

 private:
  std::ostream& out_;
};

std::vector<std::string> indexed(const std::string& stem, std::size_t n) {
  std::vector<std::string> names;
  for (std::size_t i = 1; i <= n; ++i) names.push_back(stem + std::to_string(i));
  return names;
}

void append(std::vector<double>& row, std::span<const double> values) {
  row.insert(row.end(), values.begin(), values.end());
}

void cmd_geodesic(const json& config, std::ostream& out) {
  const FiniteSpace space = space_of(config);
  const Density p = initial_of(config, space);
  const json& s = section(config, "geodesic");
  if (!s.contains("kind") || !s.at("kind").is_string()) throw ConfigurationError("geodesic needs \"kind\"");
  const std::string kind = s.at("kind").get<std::string>();
  const std::vector<double> times = array(s, "times");
  if (times.empty()) throw ConfigurationError("geodesic needs at least one time");
  double lo = times.front(), hi = times.front();
  for (double t : times) {
    lo = std::min(lo, t);
    hi = std::max(hi, t);
  }

  SmoothCurve curve;
  bool exponential = true;
  if (kind == "exponential") {
    const FiberElement u = center(variable_of(s, "direction", space), p, FiberKind::exponential);
    curve = exp_geodesic_curve(p, u, {lo - 1.0, hi + 1.0});
  } else if (kind == "mixture") {
    std::vector<double> target = array(s, "target");
    if (target.size() != space.size()) throw DimensionError("\"target\" and \"space\" differ in length");
    curve = mix_geodesic_curve(p, Density(space, std::move(target)), {lo - 1.0, hi + 1.0});
    exponential = false;
  } else {
    throw ConfigurationError("geodesic kind must be exponential or mixture, got '" + kind + "'");
  }

  Csv csv(out);
  std::vector<std::string> names{"t"};
  for (const std::string& n : indexed("q_", space.size())) names.push_back(n);
  names.push_back("entropy");
  names.push_back("acceleration_residual");
  csv.header(names);
  for (double t : times) {
    const Density q = curve.eval(t);
    const FiberElement acc = exponential ? e_acceleration(curve, t) : m_acceleration(curve, t);
    std::vector<double> row{t};
    append(row, q.values());
    row.push_back(entropy(q));
    row.push_back(acc.rv().max_abs());
    csv.row(row);
  }
}

void cmd_entropy_flow(const json& config, std::ostream& out) {
  const FiniteSpace space = space_of(config);
  const Density q0 = initial_of(config, space);
  const json& s = section(config, "entropy_flow");
  const bool ascent = flag_or(s, "ascent", true);
  const FlowResult flow = entropy_flow_numeric(q0, plan_of(s), ascent);

  Csv csv(out);
  std::vector<std::string> names{"t"};
  for (const std::string& n : indexed("q_", space.size())) names.push_back(n);
  names.push_back("entropy");
  names.push_back("closed_form_gap");
  csv.header(names);
  for (std::size_t k = 0; k < flow.size(); ++k) {
    const double t = flow.times[k];
    // Descent is the time reversal of ascent.
    const Density exact = entropy_flow_closed(q0, ascent ? t : -t);
    double gap = 0.0;
    for (std::size_t i = 0; i < space.size(); ++i) {
      gap = std::max(gap, std::abs(flow.densities[k][i] - exact[i]));
    }
    std::vector<double> row{t};
    append(row, flow.densities[k].values());
    row.push_back(entropy(flow.densities[k]));
    row.push_back(gap);
    csv.row(row);
  }
}

void cmd_sir(const json& config, std::ostream& out) {
  const FiniteSpace space = space_of(config);
  if (space.size() != 3) throw DimensionError("sir needs a space of three points");
  const Density p0 = initial_of(config, space);
  const json& s = section(config, "sir");
  const FlowResult flow = sir_flow(p0, number(s, "beta"), number(s, "gamma"), plan_of(s));

  Csv csv(out);
  csv.header({"t", "S", "I", "R", "mass_residual", "mass_drift"});
  const std::vector<double>& residual = flow.monitors.at("mass_residual");
  const std::vector<double>& drift = flow.monitors.at("mass_drift");
  for (std::size_t k = 0; k < flow.size(); ++k) {
    const Density& p = flow.densities[k];
    std::vector<double> row{flow.times[k]};
    for (std::size_t i = 0; i < 3; ++i) row.push_back(p[i] * space.weight(i));
    row.push_back(residual[k]);
    row.push_back(drift[k]);
    csv.row(row);
  }
}

HamiltonianSpec hamiltonian_of(const std::string& name) {
  if (name == "quadratic") return quadratic_hamiltonian();
  if (name == "conjugate_cumulant") return conjugate_cumulant_hamiltonian();
  if (name == "legendre_cumulant") return legendre_hamiltonian(cumulant_lagrangian());
  throw ConfigurationError("unknown hamiltonian '" + name +
                           "' (quadratic, conjugate_cumulant, legendre_cumulant)");
}

void cmd_hamilton(const json& config, std::ostream& out) {
  const FiniteSpace space = space_of(config);
  const Density q0 = initial_of(config, space);
  const json& s = section(config, "hamilton");
  const std::string name =
      s.contains("hamiltonian") ? s.at("hamiltonian").get<std::string>() : "quadratic";
  const FiberElement eta0 = center(variable_of(s, "momentum", space), q0, FiberKind::mixture);
  const FlowResult flow = hamilton_flow(hamiltonian_of(name), q0, eta0, plan_of(s));

  Csv csv(out);
  std::vector<std::string> names{"t"};
  for (const std::string& n : indexed("q_", space.size())) names.push_back(n);
  for (const std::string& n : indexed("eta_", space.size())) names.push_back(n);
  names.push_back("energy");
  csv.header(names);
  const std::vector<double>& energy = flow.monitors.at("energy");
  for (std::size_t k = 0; k < flow.size(); ++k) {
    std::vector<double> row{flow.times[k]};
    append(row, flow.densities[k].values());
    append(row, flow.fibers[k].values());
    row.push_back(energy[k]);
    csv.row(row);
  }
}

void cmd_maxent(const json& config, std::ostream& out) {
  const FiniteSpace space = space_of(config);
  const Density p = initial_of(config, space);
  const json& s = section(config, "maxent");
  const MaxEntropy sol = constrained_max_entropy(variable_of(s, "f", space), number(s, "b"), p);

  Csv csv(out);
  std::vector<std::string> names{"theta", "constraint_residual", "iterations"};
  for (const std::string& n : indexed("q_", space.size())) names.push_back(n);
  csv.header(names);
  std::vector<double> row{sol.theta, sol.residual, static_cast<double>(sol.iterations)};
  append(row, sol.q.values());
  csv.row(row);
}

void cmd_norm(const json& config, std::ostream& out) {
  const FiniteSpace space = space_of(config);
  const json& s = section(config, "norm");
  const RandomVariable f = variable_of(s, "f", space);
  if (!s.contains("young") || !s.at("young").is_array()) {
    throw ConfigurationError("norm needs an array \"young\" of Young function names");
  }
  std::vector<YoungPair> kinds;
  for (const json& y : s.at("young")) {
    if (!y.is_string()) throw ConfigurationError("\"young\" entries must be strings");
    kinds.push_back(YoungPair::parse(y.get<std::string>()));
  }

  out.precision(17);
  out << "young,luxemburg_norm,modular_at_norm\n";
  for (const YoungPair& Y : kinds) {
    const double rho = luxemburg_norm(f, Y);
    out << Y.name() << ',' << rho << ',' << (rho > 0.0 ? modular(f, Y, rho) : 0.0) << '\n';
  }
}

int cmd_check(const json& config, std::uint64_t seed, std::ostream& out, std::ostream& err) {
  // A bundled measure is validated so a broken config cannot pass silently.
  if (config.contains("space")) {
    const FiniteSpace space = space_of(config);
    if (config.contains("initial")) initial_of(config, space);
  }
  const auto start = std::chrono::steady_clock::now();
  const std::vector<audit::CriterionResult> results = audit::run_all(seed);
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  int passed = 0;
  out << "check.seed=" << seed << '\n';
  for (const audit::CriterionResult& r : results) {
    out << audit::format(r, false);
    passed += r.passed() ? 1 : 0;
    err << "criterion." << r.id << ".seconds=" << r.seconds << '\n';
  }
  const bool ok = passed == static_cast<int>(results.size());
  out << "check.passed=" << passed << '\n';
  out << "check.failed=" << static_cast<int>(results.size()) - passed << '\n';
  out << "check.status=" << (ok ? "pass" : "fail") << '\n';
  err << "check.seconds=" << seconds << '\n';
  return ok ? kSuccess : kCheckFailure;
}

}  // namespace

int execute(std::string_view command, std::string_view config_text,
            std::optional<std::uint64_t> seed, std::ostream& out, std::ostream& err) {
  try {
    const json config = json::parse(config_text);
    if (!config.is_object()) throw ConfigurationError("config must be a JSON object");
    if (!seed && config.contains("seed")) {
      if (!config.at("seed").is_number_unsigned()) throw ConfigurationError("\"seed\" must be an unsigned integer");
      seed = config.at("seed").get<std::uint64_t>();
    }
    if (command == "geodesic") cmd_geodesic(config, out);
    else if (command == "entropy-flow") cmd_entropy_flow(config, out);
    else if (command == "sir") cmd_sir(config, out);
    else if (command == "hamilton") cmd_hamilton(config, out);
    else if (command == "maxent") cmd_maxent(config, out);
    else if (command == "norm") cmd_norm(config, out);
    else if (command == "check") return cmd_check(config, seed.value_or(audit::kDefaultSeed), out, err);
    else throw ConfigurationError("unknown command '" + std::string(command) + "'");
    return kSuccess;
  } catch (const json::exception& e) {
    err << "config error: " << e.what() << '\n';
    return kInputFailure;
  } catch (const InputError& e) {
    err << "input error: " << e.what() << '\n';
    return kInputFailure;
  } catch (const NumericError& e) {
    err << "numeric error: " << e.what() << '\n';
    return kNumericFailure;
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Finite-sample information geometry: flows, solvers and the property audit", "igeo"};
  app.require_subcommand(1);
  std::string config_path;
  std::string out_path;
  std::uint64_t seed = 0;
  std::vector<CLI::App*> commands;
  const std::pair<const char*, const char*> specs[] = {
      {"geodesic", "exponential or mixture geodesic sampled at given times"},
      {"entropy-flow", "entropy gradient flow against its closed form"},
      {"sir", "SIR model as a flow of densities on three points"},
      {"hamilton", "Hamilton equations on the full bundle"},
      {"maxent", "maximum entropy under one expectation constraint"},
      {"norm", "Luxemburg norms for a list of Young functions"},
      {"check", "property audit of criteria 1-13"},
  };
  for (const auto& [name, description] : specs) {
    CLI::App* sub = app.add_subcommand(name, description);
    sub->add_option("--config", config_path, "JSON config file")->required();
    sub->add_option("--out", out_path, "output file (default stdout)");
    sub->add_option("--seed", seed, "seed for randomized audits");
    commands.push_back(sub);
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return kInputFailure;
  }

  const CLI::App* chosen = app.get_subcommands().front();
  std::optional<std::uint64_t> seed_flag;
  if (chosen->count("--seed") > 0) seed_flag = seed;

  std::ifstream in(config_path);
  if (!in) {
    err << "cannot read config '" << config_path << "'\n";
    return kInputFailure;
  }
  std::stringstream text;
  text << in.rdbuf();

  if (out_path.empty()) return execute(chosen->get_name(), text.str(), seed_flag, out, err);
  std::ostringstream buffer;
  const int code = execute(chosen->get_name(), text.str(), seed_flag, buffer, err);
  std::ofstream file(out_path);
  if (!file) {
    err << "cannot write '" << out_path << "'\n";
    return kInputFailure;
  }
  file << buffer.str();
  return code;
}

}  // namespace igeo::cli
