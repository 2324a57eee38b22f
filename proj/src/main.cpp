// Command-line runner: figure sweeps, verification suites, config template.
#include <cctype>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "eswap/errors.hpp"
#include "eswap/sweep.hpp"

namespace {

using eswap::ConfigError;

constexpr const char* kSeedEnvVar = "ESWAP_SEED";

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitConfig = 2;
constexpr int kExitVerifyFailed = 3;
constexpr int kExitIo = 4;

// Values a sweep subcommand can receive from the config file or from flags.
// Unset fields fall back to built-in defaults.
struct SweepOverrides {
  std::optional<double> q_min;
  std::optional<double> q_max;
  std::optional<int> q_steps;
  std::optional<long long> shots;
  std::optional<std::uint64_t> seed;
  std::optional<double> eps01;
  std::optional<double> eps10;
  std::optional<std::string> mode;
  std::optional<std::string> prep;
  std::optional<std::string> out;
  std::optional<std::string> format;
  std::optional<int> threads;
};

std::string trim(const std::string& s) {
  std::size_t a = 0;
  std::size_t b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

template <typename T>
T parse_number(const std::string& text, const std::string& where) {
  const std::string t = trim(text);
  T value{};
  if constexpr (std::is_floating_point_v<T>) {
    try {
      std::size_t used = 0;
      value = static_cast<T>(std::stod(t, &used));
      if (used != t.size()) throw std::invalid_argument(t);
    } catch (const std::exception&) {
      throw ConfigError(where + ": expected a number, got '" + t + "'");
    }
  } else {
    auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
    if (ec != std::errc() || ptr != t.data() + t.size()) {
      throw ConfigError(where + ": expected an integer, got '" + t + "'");
    }
  }
  return value;
}

// Flat key = value file; '#' starts a comment; blank lines ignored.
SweepOverrides parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  SweepOverrides cfg;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string stripped = trim(line);
    if (stripped.empty()) continue;
    const std::size_t eq = stripped.find('=');
    const std::string where = path + ":" + std::to_string(lineno);
    if (eq == std::string::npos) {
      throw ConfigError(where + ": expected 'key = value', got '" + stripped + "'");
    }
    const std::string key = trim(stripped.substr(0, eq));
    const std::string value = trim(stripped.substr(eq + 1));
    if (key.empty()) throw ConfigError(where + ": empty key");
    if (key == "q_min") {
      cfg.q_min = parse_number<double>(value, where + " (q_min)");
    } else if (key == "q_max") {
      cfg.q_max = parse_number<double>(value, where + " (q_max)");
    } else if (key == "q_steps") {
      cfg.q_steps = parse_number<int>(value, where + " (q_steps)");
    } else if (key == "shots") {
      cfg.shots = parse_number<long long>(value, where + " (shots)");
    } else if (key == "seed") {
      cfg.seed = parse_number<std::uint64_t>(value, where + " (seed)");
    } else if (key == "noise_eps01") {
      cfg.eps01 = parse_number<double>(value, where + " (noise_eps01)");
    } else if (key == "noise_eps10") {
      cfg.eps10 = parse_number<double>(value, where + " (noise_eps10)");
    } else if (key == "mode") {
      cfg.mode = value;
    } else if (key == "prep") {
      cfg.prep = value;
    } else if (key == "out") {
      cfg.out = value;
    } else if (key == "format") {
      cfg.format = value;
    } else if (key == "threads") {
      cfg.threads = parse_number<int>(value, where + " (threads)");
    } else {
      throw ConfigError(where + ": unknown key '" + key + "'");
    }
  }
  return cfg;
}

std::vector<eswap::Mode> parse_mode_list(const std::string& text) {
  std::vector<eswap::Mode> modes;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const std::string name = trim(item);
    if (name.empty()) continue;
    modes.push_back(eswap::mode_from_string(name));
  }
  if (modes.empty()) throw ConfigError("mode list is empty");
  return modes;
}

std::optional<std::uint64_t> seed_from_environment() {
  const char* raw = std::getenv(kSeedEnvVar);
  if (raw == nullptr || *raw == '\0') return std::nullopt;
  return parse_number<std::uint64_t>(raw, std::string("environment variable ") + kSeedEnvVar);
}

// One sweep subcommand (fig1 or fig2): flag wiring plus precedence
// resolution (flags > config file > seed environment variable > defaults).
struct SweepCommand {
  CLI::App* cmd = nullptr;
  bool is_fig2 = false;

  std::string config_path;
  double q_min = 0.0;
  double q_max = 1.0;
  int q_steps = eswap::kDefaultQSteps;
  long long shots = eswap::kDefaultShots;
  std::uint64_t seed = eswap::kDefaultSeed;
  double eps01 = eswap::kDefaultEps01;
  double eps10 = eswap::kDefaultEps10;
  std::string mode = "theory,ideal_sim,noisy_sim";
  std::string prep = "hadamard";
  std::string out = "-";
  std::string format = "csv";
  int threads = 0;

  CLI::Option* o_qmin = nullptr;
  CLI::Option* o_qmax = nullptr;
  CLI::Option* o_qsteps = nullptr;
  CLI::Option* o_shots = nullptr;
  CLI::Option* o_seed = nullptr;
  CLI::Option* o_eps01 = nullptr;
  CLI::Option* o_eps10 = nullptr;
  CLI::Option* o_mode = nullptr;
  CLI::Option* o_prep = nullptr;
  CLI::Option* o_out = nullptr;
  CLI::Option* o_format = nullptr;
  CLI::Option* o_threads = nullptr;

  void attach(CLI::App& app, const std::string& name, const std::string& help, bool fig2) {
    is_fig2 = fig2;
    cmd = app.add_subcommand(name, help);
    cmd->add_option("--config", config_path,
                    "Key = value config file; flags override file values");
    o_qmin = cmd->add_option("--q-min", q_min, "Lower end of the q grid");
    o_qmax = cmd->add_option("--q-max", q_max, "Upper end of the q grid");
    o_qsteps = cmd->add_option("--q-steps", q_steps, "Number of evenly spaced q points");
    o_shots = cmd->add_option("--shots", shots, "Shots per measurement setting");
    o_seed = cmd->add_option("--seed", seed, "Base RNG seed");
    o_eps01 = cmd->add_option("--noise-eps01", eps01, "P(read 1 | prepared 0), noisy mode");
    o_eps10 = cmd->add_option("--noise-eps10", eps10, "P(read 0 | prepared 1), noisy mode");
    o_mode = cmd->add_option("--mode", mode,
                             "Comma-separated subset of theory,ideal_sim,noisy_sim");
    if (!fig2) {
      o_prep = cmd->add_option("--prep", prep, "Pair preparation: hadamard or computational");
    }
    o_out = cmd->add_option("--out", out, "Output path, or - for stdout");
    o_format = cmd->add_option("--format", format, "Output format: csv or json");
    o_threads = cmd->add_option("--threads", threads, "Worker threads (0 = auto)");
  }

  struct Resolved {
    eswap::SweepConfig config;
    std::string out;
    std::string format;
  };

  Resolved resolve() const {
    double rq_min = 0.0;
    double rq_max = 1.0;
    int rq_steps = eswap::kDefaultQSteps;
    Resolved r;
    r.out = "-";
    r.format = "csv";
    std::string r_mode = "theory,ideal_sim,noisy_sim";
    std::string r_prep = "hadamard";

    if (const auto env_seed = seed_from_environment()) r.config.seed = *env_seed;

    if (!config_path.empty()) {
      const SweepOverrides file = parse_config_file(config_path);
      if (file.q_min) rq_min = *file.q_min;
      if (file.q_max) rq_max = *file.q_max;
      if (file.q_steps) rq_steps = *file.q_steps;
      if (file.shots) r.config.shots = *file.shots;
      if (file.seed) r.config.seed = *file.seed;
      if (file.eps01) r.config.eps01 = *file.eps01;
      if (file.eps10) r.config.eps10 = *file.eps10;
      if (file.mode) r_mode = *file.mode;
      if (file.prep) r_prep = *file.prep;
      if (file.out) r.out = *file.out;
      if (file.format) r.format = *file.format;
      if (file.threads) r.config.threads = *file.threads;
    }

    if (o_qmin->count() > 0) rq_min = q_min;
    if (o_qmax->count() > 0) rq_max = q_max;
    if (o_qsteps->count() > 0) rq_steps = q_steps;
    if (o_shots->count() > 0) r.config.shots = shots;
    if (o_seed->count() > 0) r.config.seed = seed;
    if (o_eps01->count() > 0) r.config.eps01 = eps01;
    if (o_eps10->count() > 0) r.config.eps10 = eps10;
    if (o_mode->count() > 0) r_mode = mode;
    if (o_prep != nullptr && o_prep->count() > 0) r_prep = prep;
    if (o_out->count() > 0) r.out = out;
    if (o_format->count() > 0) r.format = format;
    if (o_threads->count() > 0) r.config.threads = threads;

    if (rq_steps < 1) throw ConfigError("q_steps must be >= 1");
    if (!(rq_min >= 0.0 && rq_max <= 1.0 && rq_min <= rq_max)) {
      throw ConfigError("q grid bounds must satisfy 0 <= q_min <= q_max <= 1");
    }
    r.config.q_values = eswap::default_q_grid(rq_steps, rq_min, rq_max);
    r.config.modes = parse_mode_list(r_mode);
    if (is_fig2) {
      r.config.preparation = eswap::Preparation::Hadamard;
      r.config.p_rule = eswap::PRule::OneMinusQ;
    } else {
      r.config.preparation = eswap::preparation_from_string(r_prep);
      r.config.p_rule = eswap::PRule::EqualQ;
    }
    if (r.format != "csv" && r.format != "json") {
      throw ConfigError("format must be csv or json, got '" + r.format + "'");
    }
    return r;
  }
};

const char* kConfigTemplate = R"(# Sweep configuration. Flags override values set here.

# Evenly spaced q grid. Endpoints are clamped to [0.03, 0.97] whenever a
# finite-shot mode is requested; theory-only sweeps keep the full range.
q_min = 0.0
q_max = 1.0
q_steps = 21

# Shots per measurement setting (also used per calibration column).
shots = 8192

# Base RNG seed. The ESWAP_SEED environment variable replaces this default
# when set; an explicit seed (here or via --seed) takes precedence over it.
seed = 1234

# Readout flip probabilities for the noisy mode, each in [0, 0.5).
# eps01 = P(read 1 | prepared 0), eps10 = P(read 0 | prepared 1).
noise_eps01 = 0.02
noise_eps10 = 0.04

# Comma-separated subset of: theory, ideal_sim, noisy_sim
mode = theory,ideal_sim,noisy_sim

# Pair preparation for fig1 (fig2 always uses hadamard with p = 1 - q):
# hadamard or computational.
prep = hadamard

# Output destination ("-" means stdout) and format (csv or json).
out = -
format = csv

# Worker threads; 0 picks the hardware concurrency.
threads = 0
)";

int run_sweep(const SweepCommand& sc) {
  const SweepCommand::Resolved r = sc.resolve();
  const std::vector<eswap::FigureRow> rows =
      sc.is_fig2 ? eswap::run_fig2(r.config) : eswap::run_fig1(r.config);
  eswap::emit(rows, r.format, r.out);
  return kExitOk;
}

int run_verify_command(const std::string& suite, int trials, std::uint64_t seed) {
  const std::vector<eswap::VerifySuiteResult> results = eswap::run_verify(suite, trials, seed);
  bool all_passed = true;
  for (const auto& r : results) {
    all_passed = all_passed && r.passed;
    std::ostringstream line;
    line.setf(std::ios::scientific);
    line.precision(3);
    line << (r.passed ? "PASS" : "FAIL") << "  " << r.suite << ": max deviation "
         << r.max_deviation << " (tolerance " << r.tolerance << ", worst seed "
         << r.worst_seed << ") — " << r.detail;
    std::cout << line.str() << '\n';
  }
  if (!std::cout.flush()) throw eswap::IoError("failed writing to standard output");
  return all_passed ? kExitOk : kExitVerifyFailed;
}

int write_template(const std::string& path) {
  if (path == "-") {
    std::cout << kConfigTemplate;
    if (!std::cout.flush()) throw eswap::IoError("failed writing to standard output");
    return kExitOk;
  }
  std::ofstream out(path);
  if (!out) throw eswap::IoError("cannot open '" + path + "' for writing");
  out << kConfigTemplate;
  out.flush();
  if (!out) throw eswap::IoError("failed writing '" + path + "'");
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Entanglement-swapping sweep runner: figure data, verification suites"};
  app.require_subcommand(1);

  SweepCommand fig1;
  fig1.attach(app, "fig1",
              "Pre-measurement sweep: local coherence, predictability, pair concurrence",
              /*fig2=*/false);
  SweepCommand fig2;
  fig2.attach(app, "fig2",
              "Full swapping sweep: post-selected concurrences and outcome statistics",
              /*fig2=*/true);

  std::string suite = "all";
  int trials = 1000;
  std::uint64_t verify_seed = eswap::kDefaultSeed;
  CLI::App* verify = app.add_subcommand("verify", "Run a property-check suite");
  verify->add_option("--suite", suite,
                     "ccr, swap_oracle, probabilities, special_cases, mitigation, or all");
  verify->add_option("--trials", trials, "Randomized trials per suite");
  CLI::Option* o_verify_seed = verify->add_option("--seed", verify_seed, "Base RNG seed");

  std::string template_out = "-";
  CLI::App* tmpl =
      app.add_subcommand("emit-config-template", "Write an annotated config file template");
  tmpl->add_option("--out", template_out, "Output path, or - for stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (fig1.cmd->parsed()) return run_sweep(fig1);
    if (fig2.cmd->parsed()) return run_sweep(fig2);
    if (verify->parsed()) {
      if (o_verify_seed->count() == 0) {
        if (const auto env_seed = seed_from_environment()) verify_seed = *env_seed;
      }
      return run_verify_command(suite, trials, verify_seed);
    }
    if (tmpl->parsed()) return write_template(template_out);
  } catch (const eswap::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const eswap::UnknownSuiteError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const eswap::IoError& e) {
    std::cerr << "io error: " << e.what() << '\n';
    return kExitIo;
  } catch (const eswap::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
