// Copyright 2026 The rankgame Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end for the rankgame shared library. Talks to the
// core exclusively through the C API in rankgame.h.
//
// Exit codes: 0 success (or AllZeroPNE), 2 input error, 3 NoPNE,
// 4 NotStabilizable, 1 internal error.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rankgame.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitInput = 2;
constexpr int kExitNoPne = 3;
constexpr int kExitNotStabilizable = 4;

int exit_code_for(rg_status status) {
  switch (status) {
    case RG_OK:
      return kExitOk;
    case RG_ERROR_INVALID_ARGUMENT:
    case RG_ERROR_PARSE:
    case RG_ERROR_DATA:
    case RG_ERROR_PRECONDITION:
      return kExitInput;
    case RG_ERROR_NOT_STABILIZABLE:
      return kExitNotStabilizable;
    case RG_ERROR_INTERNAL:
      return kExitInternal;
  }
  return kExitInternal;
}

int report_failure(rg_status status) {
  std::cerr << "error: " << rg_last_error() << "\n";
  return exit_code_for(status);
}

bool read_file(const std::string& path, std::string& out) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  std::ostringstream buffer;
  buffer << in.rdbuf();
  out = buffer.str();
  return true;
}

// Writes atomically: a temp file in the same directory, then rename.
int write_output(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    return kExitOk;
  }
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      std::cerr << "error: cannot open '" << tmp << "' for writing\n";
      return kExitInput;
    }
    out << content;
    if (!out.good()) {
      std::cerr << "error: failed writing '" << tmp << "'\n";
      return kExitInternal;
    }
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    std::cerr << "error: cannot rename '" << tmp << "' to '" << path << "'\n";
    std::remove(tmp.c_str());
    return kExitInternal;
  }
  return kExitOk;
}

struct GameHandle {
  rg_game* game = nullptr;
  ~GameHandle() { rg_game_free(game); }
};

int load_game(const std::string& path, bool lenient, GameHandle& handle) {
  std::string text;
  if (!read_file(path, text)) {
    std::cerr << "error: cannot read config '" << path << "'\n";
    return kExitInput;
  }
  const rg_status status =
      rg_game_from_json(text.c_str(), lenient ? 1 : 0, &handle.game);
  if (status != RG_OK) return report_failure(status);
  return kExitOk;
}

struct OwnedString {
  char* value = nullptr;
  ~OwnedString() { rg_string_free(value); }
  std::string str() const { return value == nullptr ? "" : value; }
};

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

bool parse_double(const std::string& text, double& out) {
  try {
    size_t used = 0;
    out = std::stod(text, &used);
    return used == text.size();
  } catch (...) {
    return false;
  }
}

// Grid specs: either "a,b,c" or "start:stop:step" (inclusive).
bool parse_grid(const std::string& spec, std::vector<double>& out) {
  out.clear();
  if (spec.find(':') != std::string::npos) {
    double parts[3];
    size_t begin = 0;
    for (int i = 0; i < 3; ++i) {
      const size_t end = spec.find(':', begin);
      const bool last = i == 2;
      if (last != (end == std::string::npos)) return false;
      const std::string token =
          spec.substr(begin, last ? std::string::npos : end - begin);
      if (!parse_double(token, parts[i])) return false;
      begin = end + 1;
    }
    const double start = parts[0], stop = parts[1], step = parts[2];
    if (!(step > 0.0) || stop < start) return false;
    const int count = static_cast<int>((stop - start) / step + 1e-9) + 1;
    for (int k = 0; k < count; ++k) out.push_back(start + k * step);
    return true;
  }
  size_t begin = 0;
  while (begin <= spec.size()) {
    size_t end = spec.find(',', begin);
    if (end == std::string::npos) end = spec.size();
    double v = 0.0;
    if (!parse_double(spec.substr(begin, end - begin), v)) return false;
    out.push_back(v);
    if (end == spec.size()) break;
    begin = end + 1;
  }
  return !out.empty();
}

int run_fit(const std::string& csv_path, const std::optional<double>& lower,
            const std::optional<double>& upper,
            const std::optional<double>& chance_level, bool estimate_upper,
            const std::string& output) {
  std::string csv;
  if (!read_file(csv_path, csv)) {
    std::cerr << "error: cannot read '" << csv_path << "'\n";
    return kExitInput;
  }
  std::string options = "{";
  bool first = true;
  const auto append = [&](const std::string& key, const std::string& value) {
    if (!first) options += ',';
    options += "\"" + key + "\":" + value;
    first = false;
  };
  if (lower.has_value()) append("lower", format_double(*lower));
  if (upper.has_value()) append("upper", format_double(*upper));
  if (chance_level.has_value()) {
    append("chance_level", format_double(*chance_level));
  }
  if (estimate_upper) append("estimate_upper", "true");
  options += "}";

  OwnedString report;
  const rg_status status =
      rg_fit_trajectories(csv.c_str(), options.c_str(), &report.value);
  if (status != RG_OK) return report_failure(status);
  return write_output(output, report.str() + "\n");
}

int run_analyze(const std::string& config_path, bool lenient,
                bool assume_regular, const std::string& output) {
  GameHandle handle;
  const int rc = load_game(config_path, lenient, handle);
  if (rc != kExitOk) return rc;
  int all_zero = 0;
  OwnedString report;
  const rg_status status = rg_analyze(
      handle.game, assume_regular ? 1 : 0, &all_zero, &report.value);
  if (status != RG_OK) return report_failure(status);
  const int write_rc = write_output(output, report.str() + "\n");
  if (write_rc != kExitOk) return write_rc;
  return all_zero != 0 ? kExitOk : kExitNoPne;
}

int run_threshold(const std::string& config_path,
                  const std::vector<std::string>& pair_stats,
                  bool rule_of_thumb_only, bool lenient,
                  const std::string& output) {
  if (!pair_stats.empty()) {
    double e_req0 = 0.0, gamma = 0.0, rho = 0.0;
    bool have_e = false, have_g = false, have_r = false;
    for (const auto& token : pair_stats) {
      const size_t eq = token.find('=');
      if (eq == std::string::npos) {
        std::cerr << "error: --pair-stats expects key=value tokens\n";
        return kExitInput;
      }
      const std::string key = token.substr(0, eq);
      double value = 0.0;
      if (!parse_double(token.substr(eq + 1), value)) {
        std::cerr << "error: --pair-stats: bad number in '" << token << "'\n";
        return kExitInput;
      }
      if (key == "e_req0") {
        e_req0 = value;
        have_e = true;
      } else if (key == "gamma") {
        gamma = value;
        have_g = true;
      } else if (key == "rho") {
        rho = value;
        have_r = true;
      } else {
        std::cerr << "error: --pair-stats: unknown key '" << key << "'\n";
        return kExitInput;
      }
    }
    if (!have_e || !have_g || !have_r) {
      std::cerr << "error: --pair-stats needs e_req0=, gamma= and rho=\n";
      return kExitInput;
    }
    OwnedString report;
    const rg_status status =
        rg_rule_of_thumb(e_req0, gamma, rho, &report.value);
    if (status != RG_OK) return report_failure(status);
    return write_output(output, report.str() + "\n");
  }

  if (config_path.empty()) {
    std::cerr << "error: threshold needs a config path or --pair-stats\n";
    return kExitInput;
  }
  GameHandle handle;
  const int rc = load_game(config_path, lenient, handle);
  if (rc != kExitOk) return rc;
  int all_stabilizable = 1;
  OwnedString report;
  const rg_status status =
      rg_threshold(handle.game, rule_of_thumb_only ? 1 : 0,
                   &all_stabilizable, &report.value);
  if (status != RG_OK && status != RG_ERROR_NOT_STABILIZABLE) {
    return report_failure(status);
  }
  const int write_rc = write_output(output, report.str() + "\n");
  if (write_rc != kExitOk) return write_rc;
  if (status == RG_ERROR_NOT_STABILIZABLE) {
    std::cerr << "error: " << rg_last_error() << "\n";
    return kExitNotStabilizable;
  }
  return kExitOk;
}

int run_simulate(const std::string& config_path, const std::string& start,
                 const std::string& mover_rule, double grid_step,
                 int max_steps, unsigned seed, bool lenient,
                 const std::string& output) {
  GameHandle handle;
  const int rc = load_game(config_path, lenient, handle);
  if (rc != kExitOk) return rc;

  std::string start_json;
  if (start == "zero" || start == "random") {
    start_json = "\"" + start + "\"";
  } else {
    std::vector<double> efforts;
    if (!parse_grid(start, efforts) || start.find(':') != std::string::npos) {
      std::cerr << "error: --start must be zero, random, or a comma list\n";
      return kExitInput;
    }
    start_json = "[";
    for (size_t i = 0; i < efforts.size(); ++i) {
      if (i > 0) start_json += ',';
      start_json += format_double(efforts[i]);
    }
    start_json += "]";
  }
  const std::string options =
      "{\"start\":" + start_json + ",\"mover_rule\":\"" + mover_rule +
      "\",\"grid_step\":" + format_double(grid_step) +
      ",\"max_steps\":" + std::to_string(max_steps) +
      ",\"seed\":" + std::to_string(seed) + "}";

  OwnedString trace;
  const rg_status status =
      rg_simulate(handle.game, options.c_str(), &trace.value);
  if (status != RG_OK) return report_failure(status);
  return write_output(output, trace.str());
}

int run_curve(const std::string& config_path, const std::string& grid_spec,
              bool lenient, const std::string& output) {
  GameHandle handle;
  const int rc = load_game(config_path, lenient, handle);
  if (rc != kExitOk) return rc;
  std::vector<double> grid;
  if (!parse_grid(grid_spec, grid)) {
    std::cerr << "error: --tbt-grid must be 'a,b,c' or 'start:stop:step'\n";
    return kExitInput;
  }
  OwnedString csv;
  const rg_status status =
      rg_climbing_curve(handle.game, grid.data(), grid.size(), &csv.value);
  if (status != RG_OK) return report_failure(status);
  return write_output(output, csv.str());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stackelberg ranking-game analysis for benchmark leaderboards"};
  app.set_version_flag("--version", std::string(rg_version()));
  app.require_subcommand(1);

  // fit
  auto* fit = app.add_subcommand(
      "fit", "Fit power-law score curves from trajectory CSV data");
  std::string fit_csv, fit_output;
  std::optional<double> fit_lower, fit_upper, fit_chance;
  bool fit_estimate_upper = false;
  fit->add_option("csv", fit_csv, "Trajectory CSV (model_id,steps,score)")
      ->required();
  fit->add_option("--lower", fit_lower, "Lower asymptote (default: chance level or 0)");
  fit->add_option("--upper", fit_upper, "Upper asymptote (default: 1)");
  fit->add_option("--chance-level", fit_chance,
                  "Task chance level; fallback for --lower");
  fit->add_flag("--estimate-upper", fit_estimate_upper,
                "Grid-search the upper asymptote per model");
  fit->add_option("-o,--output", fit_output, "Output path (default: stdout)");

  // analyze
  auto* analyze = app.add_subcommand(
      "analyze", "Equilibrium verdict for the induced follower game");
  std::string analyze_config, analyze_output;
  bool analyze_lenient = false, analyze_assume_regular = false;
  analyze->add_option("config", analyze_config, "Game config JSON")->required();
  analyze->add_flag("--lenient", analyze_lenient,
                    "Ignore unknown config fields");
  analyze->add_flag("--assume-regular", analyze_assume_regular,
                    "Skip the sampled score-regularity precheck");
  analyze->add_option("-o,--output", analyze_output,
                      "Output path (default: stdout)");

  // threshold
  auto* threshold = app.add_subcommand(
      "threshold", "Stabilizing tune-before-test threshold");
  std::string threshold_config, threshold_output;
  std::vector<std::string> threshold_pair_stats;
  bool threshold_rot_only = false, threshold_lenient = false;
  threshold->add_option("config", threshold_config, "Game config JSON");
  threshold->add_option("--pair-stats", threshold_pair_stats,
                        "Standalone inputs: e_req0=X gamma=Y rho=Z")
      ->expected(3);
  threshold->add_flag("--rule-of-thumb-only", threshold_rot_only,
                      "Skip the exact bisection");
  threshold->add_flag("--lenient", threshold_lenient,
                      "Ignore unknown config fields");
  threshold->add_option("-o,--output", threshold_output,
                        "Output path (default: stdout)");

  // simulate
  auto* simulate = app.add_subcommand(
      "simulate", "Best-response dynamics on an effort grid");
  std::string sim_config, sim_output, sim_start = "zero",
              sim_rule = "round-robin";
  double sim_step = 0.01;
  int sim_max_steps = 10000;
  unsigned sim_seed = 0;
  bool sim_lenient = false;
  simulate->add_option("config", sim_config, "Game config JSON")->required();
  simulate->add_option("--start", sim_start,
                       "zero | random | comma list of efforts");
  simulate->add_option("--mover-rule", sim_rule,
                       "round-robin | best-gain-first")
      ->check(CLI::IsMember({"round-robin", "best-gain-first"}));
  simulate->add_option("--grid-step", sim_step, "Effort grid step");
  simulate->add_option("--max-steps", sim_max_steps, "Maximum moves");
  simulate->add_option("--seed", sim_seed,
                       "Seed for random starts (dynamics are deterministic)");
  simulate->add_flag("--lenient", sim_lenient, "Ignore unknown config fields");
  simulate->add_option("-o,--output", sim_output,
                       "Output path (default: stdout)");

  // curve
  auto* curve = app.add_subcommand(
      "curve", "Leaderboard-climbing cost over a TbT grid");
  std::string curve_config, curve_grid, curve_output;
  bool curve_lenient = false;
  curve->add_option("config", curve_config, "Game config JSON")->required();
  curve->add_option("--tbt-grid", curve_grid,
                    "Grid spec: 'a,b,c' or 'start:stop:step'")
      ->required();
  curve->add_flag("--lenient", curve_lenient, "Ignore unknown config fields");
  curve->add_option("-o,--output", curve_output,
                    "Output path (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kExitInput;
  }

  if (fit->parsed()) {
    return run_fit(fit_csv, fit_lower, fit_upper, fit_chance,
                   fit_estimate_upper, fit_output);
  }
  if (analyze->parsed()) {
    return run_analyze(analyze_config, analyze_lenient,
                       analyze_assume_regular, analyze_output);
  }
  if (threshold->parsed()) {
    return run_threshold(threshold_config, threshold_pair_stats,
                         threshold_rot_only, threshold_lenient,
                         threshold_output);
  }
  if (simulate->parsed()) {
    return run_simulate(sim_config, sim_start, sim_rule, sim_step,
                        sim_max_steps, sim_seed, sim_lenient, sim_output);
  }
  if (curve->parsed()) {
    return run_curve(curve_config, curve_grid, curve_lenient, curve_output);
  }
  return kExitInput;
}
