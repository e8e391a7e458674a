#include "wnc/cli.hpp"

#include <fmt/format.h>

#include <CLI11.hpp>
#include <algorithm>
#include <charconv>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <json.hpp>

#include "wnc/units.hpp"

namespace wnc::cli {
namespace {

// Every setting, in the order it is echoed into the sidecar.
const std::vector<std::string> kKeys = {
    "A",      "sigma_w2", "sigma_z2", "p0",       "p0_grid",  "h",        "sigma_h2",      "ac",
    "x0",     "T",        "replicas", "burn_in",  "seed",     "noiseless", "schemes",      "m0",
    "realizations", "rayleigh_gain", "g_common", "k_common",
};

using Settings = std::map<std::string, std::string>;

Settings defaults_for(const std::string& command) {
  Settings s{
      {"A", "1.5"},         {"sigma_w2", "0.1"}, {"sigma_z2", "-40 dBm"}, {"p0", "20 dBm"},
      {"T", "500"},         {"replicas", "1000"}, {"burn_in", "0"},        {"seed", "1"},
      {"x0", "0"},          {"noiseless", "false"},
      {"h", "0.01"},        {"sigma_h2", "1e-4,4e-4"},
      {"ac", "0.5,0.9,1.01"}, {"schemes", "15:11:4,7:4:8,15:11:8,7:4:4"},
      {"m0", "2,5,10"},     {"realizations", "10000"}, {"rayleigh_gain", "1e-4"},
      {"p0_grid", "0:2:30 dBm"}, {"g_common", ""}, {"k_common", ""},
  };
  if (command == "trace") {
    s["x0"] = "5";
  } else if (command == "multi-slow" || command == "verify") {
    s["h"] = "0.01,0.02";
    s["p0_grid"] = "0:1:30 dBm";
  } else if (command == "multi-fast") {
    s["p0_grid"] = "0:1:30 dBm";
  } else if (command == "select-sweep") {
    s["A"] = "1.1";
    s["p0_grid"] = "-10:2:30 dBm";
  }
  if (command == "verify") {
    // A common G giving an intermediate identical-actuator budget for the
    // default pair, and the K that zeroes E_i for H = 0.01.
    s["g_common"] = "142";
    s["k_common"] = "-0.11180339887498948";
  }
  return s;
}

double to_double(const std::string& key, const std::string& text) {
  double v = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  while (first < last && *first == ' ') ++first;
  while (last > first && last[-1] == ' ') --last;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || first == last) {
    throw ConfigError(fmt::format("{}: expected a number, got '{}'", key, text));
  }
  return v;
}

std::uint64_t to_count(const std::string& key, const std::string& text) {
  const double v = to_double(key, text);
  if (!(v >= 0.0) || v != static_cast<double>(static_cast<std::uint64_t>(v))) {
    throw ConfigError(fmt::format("{}: expected a non-negative integer, got '{}'", key, text));
  }
  return static_cast<std::uint64_t>(v);
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, sep)) out.push_back(item);
  return out;
}

std::vector<double> to_list(const std::string& key, const std::string& text) {
  std::vector<double> out;
  for (const auto& item : split(text, ',')) out.push_back(to_double(key, item));
  if (out.empty()) throw ConfigError(key + ": empty list");
  return out;
}

double to_power(const std::string& key, const std::string& text) {
  try {
    return parse_power(text);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(fmt::format("{}: {}", key, e.what()));
  }
}

bool to_bool(const std::string& key, const std::string& text) {
  if (text == "true" || text == "1" || text == "on" || text == "yes") return true;
  if (text == "false" || text == "0" || text == "off" || text == "no") return false;
  throw ConfigError(fmt::format("{}: expected true or false, got '{}'", key, text));
}

std::vector<CodingScheme> to_schemes(const std::string& text) {
  std::vector<CodingScheme> out;
  for (const auto& item : split(text, ',')) {
    const auto parts = split(item, ':');
    if (parts.size() != 3) throw ConfigError(fmt::format("schemes: expected N:K:L, got '{}'", item));
    try {
      out.emplace_back(static_cast<int>(to_count("schemes", parts[0])), static_cast<int>(to_count("schemes", parts[1])),
                       static_cast<int>(to_count("schemes", parts[2])));
    } catch (const std::invalid_argument& e) {
      throw ConfigError(fmt::format("schemes: {}", e.what()));
    }
  }
  return out;
}

ExperimentKind kind_for(const std::string& command) {
  if (command == "trace") return ExperimentKind::trace;
  if (command == "compare") return ExperimentKind::single_compare;
  if (command == "multi-slow") return ExperimentKind::multi_slow_sweep;
  if (command == "multi-fast") return ExperimentKind::multi_fast_sweep;
  if (command == "select-sweep") return ExperimentKind::selection_sweep;
  return ExperimentKind::multi_slow_sweep;  // verify: reads the slow multi-plant fields
}

ExperimentSpec build_spec(const std::string& command, const Settings& s) {
  ExperimentSpec spec;
  spec.kind = kind_for(command);
  try {
    spec.plant = PlantParams(to_double("A", s.at("A")), to_double("sigma_w2", s.at("sigma_w2")));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(fmt::format("A/sigma_w2: {}", e.what()));
  }
  spec.sigma_z2 = to_power("sigma_z2", s.at("sigma_z2"));
  spec.p0 = to_power("p0", s.at("p0"));
  try {
    spec.p0_grid = parse_power_grid(s.at("p0_grid"));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(fmt::format("p0_grid: {}", e.what()));
  }
  spec.h = to_list("h", s.at("h"));
  spec.sigma_h2 = to_list("sigma_h2", s.at("sigma_h2"));
  spec.closed_loop = to_list("ac", s.at("ac"));
  spec.x0 = to_double("x0", s.at("x0"));
  spec.horizon = to_count("T", s.at("T"));
  spec.replicas = to_count("replicas", s.at("replicas"));
  spec.burn_in = to_count("burn_in", s.at("burn_in"));
  spec.seed = to_count("seed", s.at("seed"));
  spec.noiseless = to_bool("noiseless", s.at("noiseless"));
  spec.schemes = to_schemes(s.at("schemes"));
  spec.m0.clear();
  for (double m : to_list("m0", s.at("m0"))) {
    if (m < 1 || m != static_cast<int>(m)) throw ConfigError("m0: plant counts must be positive integers");
    spec.m0.push_back(static_cast<int>(m));
  }
  spec.realizations = to_count("realizations", s.at("realizations"));
  spec.rayleigh_mean_gain = to_double("rayleigh_gain", s.at("rayleigh_gain"));
  if (!s.at("g_common").empty()) spec.g_common = to_double("g_common", s.at("g_common"));
  if (!s.at("k_common").empty()) spec.k_common = to_double("k_common", s.at("k_common"));
  if (spec.g_common && !(*spec.g_common > 0.0)) throw ConfigError("g_common: must be positive");
  if (spec.k_common && !(*spec.k_common < 0.0)) throw ConfigError("k_common: must be negative");

  if (command != "verify") {
    try {
      validate(spec);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  }
  return spec;
}

std::string join(const std::vector<std::string>& parts) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += ',';
    out += parts[i];
  }
  return out;
}

}  // namespace

RunConfig parse_config(const std::vector<std::string>& args, std::ostream& out) {
  CLI::App app{"Coding-free wireless control: designs, sweeps and baselines", "wnc"};
  app.set_config("--config", "", "TOML/INI file of key = value settings (flags take precedence)");
  app.set_help_flag("--help", "print this help and exit");
  app.require_subcommand(1);

  const std::vector<std::pair<std::string, std::string>> subcommands = {
      {"trace", "state and running cost for fixed closed-loop parameters"},
      {"compare", "coding-free vs coded baseline cost over a power grid"},
      {"multi-slow", "optimal multi-plant allocation under slow fading"},
      {"multi-fast", "optimal multi-plant allocation under fast fading"},
      {"select-sweep", "average number of selected plants under Rayleigh fading"},
      {"verify", "closed forms against brute-force oracles"},
  };
  for (const auto& [name, help] : subcommands) app.add_subcommand(name, help)->fallthrough();

  std::map<std::string, std::vector<std::string>> raw;
  const auto add = [&](const std::string& key, const std::string& flags, const std::string& help) {
    app.add_option(flags, raw[key], help)->delimiter(',')->allow_extra_args(false);
  };
  add("A", "--A,--a", "open-loop gain, |A| > 1");
  add("sigma_w2", "--sigma-w2,--sigma_w2", "plant disturbance variance");
  add("sigma_z2", "--sigma-z2,--sigma_z2", "actuator noise power with unit, e.g. '-40 dBm'");
  add("p0", "--p0,--P0", "power limit for trace, with unit");
  add("p0_grid", "--p0-grid,--p0_grid", "power grid with one unit: '0,10,20 dBm' or '0:2:30 dBm'");
  add("h", "--h", "slow-fading channel magnitudes, comma separated");
  add("sigma_h2", "--sigma-h2,--sigma_h2", "fast-fading channel variances, comma separated");
  add("ac", "--ac", "closed-loop parameters for trace");
  add("x0", "--x0", "initial state");
  add("T", "--T,--horizon", "symbols per control process");
  add("replicas", "--replicas", "Monte-Carlo replicas");
  add("burn_in", "--burn-in,--burn_in", "symbols skipped before averaging");
  add("seed", "--seed", "root seed");
  add("noiseless", "--noiseless", "trace without disturbance and actuator noise (true/false)");
  add("schemes", "--schemes", "coded baselines as N:K:L, comma separated");
  add("m0", "--m0", "plant counts for select-sweep");
  add("realizations", "--realizations", "channel realizations for select-sweep");
  add("rayleigh_gain", "--rayleigh-gain,--rayleigh_gain", "Rayleigh mean power gain");
  add("g_common", "--g-common,--g_common", "common actuator factor (identical-actuator design)");
  add("k_common", "--k-common,--k_common", "common controller factor, < 0 (identical-controller design)");

  unsigned threads = 0;
  std::string output;
  bool quiet = false;
  app.add_option("--threads", threads, "worker threads, 0 = all cores (does not change results)");
  app.add_option("--out,-o", output, "CSV path, '-' for stdout (default <command>.csv)");
  app.add_flag("--quiet,-q", quiet, "no summary table");

  std::vector<std::string> argv_tail(args.size() > 1 ? args.begin() + 1 : args.end(), args.end());
  std::reverse(argv_tail.begin(), argv_tail.end());
  try {
    app.parse(argv_tail);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return {};
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return {};
  } catch (const CLI::ParseError& e) {
    throw ConfigError(e.what());
  }

  RunConfig config;
  for (const auto* sub : app.get_subcommands()) config.command = sub->get_name();
  Settings settings = defaults_for(config.command);
  for (const auto& [key, values] : raw) {
    if (!values.empty()) settings[key] = join(values);
  }
  config.spec = build_spec(config.command, settings);
  config.spec.threads = threads;
  config.output = output.empty() ? config.command + ".csv" : output;
  config.quiet = quiet;
  config.effective.emplace_back("command", config.command);
  for (const auto& key : kKeys) config.effective.emplace_back(key, settings.at(key));
  return config;
}

SweepResult run(const RunConfig& config) {
  if (config.command == "verify") throw std::logic_error("verify produces no sweep");
  return run_experiment(config.spec);
}

std::string config_hash(const RunConfig& config) {
  std::uint64_t h = 1469598103934665603ull;
  const auto mix = [&](const std::string& s) {
    for (unsigned char c : s) {
      h ^= c;
      h *= 1099511628211ull;
    }
    h ^= 0xff;
    h *= 1099511628211ull;
  };
  for (const auto& [k, v] : config.effective) {
    mix(k);
    mix(v);
  }
  return fmt::format("{:016x}", h);
}

void emit_csv(const SweepResult& result, const std::string& path, const RunConfig& config) {
  if (result.rows.empty()) throw std::runtime_error("refusing to write an empty result to " + path);
  {
    std::ofstream csv(path, std::ios::binary);
    if (!csv) throw std::runtime_error("cannot open " + path + " for writing");
    write_csv(result, csv);
    if (!csv) throw std::runtime_error("write failed: " + path);
  }
  nlohmann::ordered_json meta;
  meta["command"] = config.command;
  meta["seed"] = config.spec.seed;
  meta["replicas"] = config.spec.replicas;
  meta["config_hash"] = config_hash(config);
  for (const auto& [k, v] : config.effective) meta["config"][k] = v;
  for (const auto& [k, v] : result.metadata) meta["metadata"][k] = v;
  const std::string meta_path = path + ".meta.json";
  std::ofstream side(meta_path, std::ios::binary);
  if (!side) throw std::runtime_error("cannot open " + meta_path + " for writing");
  side << meta.dump(2) << '\n';
  if (!side) throw std::runtime_error("write failed: " + meta_path);
}

bool all_infeasible(const RunConfig& config, const SweepResult& result) {
  std::string column;
  if (config.command == "compare") column = "J_free_pred";
  if (config.command == "multi-slow" || config.command == "multi-fast") column = "Jpred_total";
  if (column.empty()) return false;
  for (std::size_t r = 0; r < result.rows.size(); ++r) {
    if (result.at(r, column).state() != CellState::infeasible) return false;
  }
  return true;
}

int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig config;
  try {
    config = parse_config(args, out);
  } catch (const ConfigError& e) {
    err << "wnc: " << e.what() << "\n";
    return kUsage;
  }
  if (config.command.empty()) return kOk;

  try {
    if (config.command == "verify") return run_verify(config, out) ? kOk : kVerifyFailed;

    const SweepResult result = run(config);
    if (config.output == "-") {
      write_csv(result, out);
    } else {
      emit_csv(result, config.output, config);
      if (!config.quiet) {
        write_summary(result, out);
        out << "wrote " << config.output << " and " << config.output << ".meta.json\n";
      }
    }
    if (all_infeasible(config, result)) {
      err << "wnc: no grid point admits coding-free control\n";
      return kInfeasible;
    }
    return kOk;
  } catch (const InfeasibleError& e) {
    err << "wnc: infeasible: " << e.what() << "\n";
    return kInfeasible;
  } catch (const std::invalid_argument& e) {
    err << "wnc: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "wnc: " << e.what() << "\n";
    return kUsage;
  }
}

}  // namespace wnc::cli
