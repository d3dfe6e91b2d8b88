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

#include "rankgame.h"

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "rankgame/config.hpp"
#include "rankgame/equilibrium.hpp"
#include "rankgame/errors.hpp"
#include "rankgame/fitting.hpp"
#include "rankgame/reports.hpp"
#include "rankgame/tbt_designer.hpp"

struct rg_game {
  rankgame::GameConfig config;
};

namespace {

thread_local std::string g_last_error;

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out != nullptr) {
    std::memcpy(out, s.c_str(), s.size() + 1);
  }
  return out;
}

rg_status fail(rg_status status, const std::string& message) {
  g_last_error = message;
  return status;
}

template <typename F>
rg_status guarded(F&& body) {
  try {
    const rg_status status = body();
    if (status == RG_OK) g_last_error.clear();
    return status;
  } catch (const rankgame::ParseError& e) {
    return fail(RG_ERROR_PARSE, e.what());
  } catch (const rankgame::DataError& e) {
    return fail(RG_ERROR_DATA, e.what());
  } catch (const rankgame::PreconditionError& e) {
    return fail(RG_ERROR_PRECONDITION, e.what());
  } catch (const rankgame::ValidationError& e) {
    return fail(RG_ERROR_INVALID_ARGUMENT, e.what());
  } catch (const std::exception& e) {
    return fail(RG_ERROR_INTERNAL, e.what());
  } catch (...) {
    return fail(RG_ERROR_INTERNAL, "unknown error");
  }
}

nlohmann::json parse_options(const char* options_json) {
  if (options_json == nullptr || *options_json == '\0') {
    return nlohmann::json::object();
  }
  try {
    nlohmann::json options = nlohmann::json::parse(options_json);
    if (!options.is_object()) {
      throw rankgame::ParseError("options: top level must be an object");
    }
    return options;
  } catch (const nlohmann::json::parse_error& e) {
    throw rankgame::ParseError(std::string("options: invalid JSON: ") +
                               e.what());
  }
}

double number_option(const nlohmann::json& options, const char* key,
                     double fallback) {
  const auto it = options.find(key);
  if (it == options.end() || it->is_null()) return fallback;
  if (!it->is_number()) {
    throw rankgame::ParseError(std::string("options: '") + key +
                               "' must be a number");
  }
  return it->get<double>();
}

}  // namespace

extern "C" {

const char* rg_version(void) { return "0.1.0"; }

const char* rg_last_error(void) { return g_last_error.c_str(); }

void rg_string_free(char* s) { std::free(s); }

rg_status rg_game_from_json(const char* config_json, int lenient,
                            rg_game** out_game) {
  return guarded([&]() -> rg_status {
    if (config_json == nullptr || out_game == nullptr) {
      return fail(RG_ERROR_INVALID_ARGUMENT, "null argument");
    }
    *out_game = new rg_game{
        rankgame::load_game_config(config_json, lenient != 0)};
    return RG_OK;
  });
}

void rg_game_free(rg_game* game) { delete game; }

int rg_game_num_players(const rg_game* game) {
  return game == nullptr ? 0 : game->config.game.num_players();
}

rg_status rg_game_to_json(const rg_game* game, char** out_json) {
  return guarded([&]() -> rg_status {
    if (game == nullptr || out_json == nullptr) {
      return fail(RG_ERROR_INVALID_ARGUMENT, "null argument");
    }
    *out_json = copy_string(rankgame::save_game_config(game->config));
    return RG_OK;
  });
}

rg_status rg_analyze(const rg_game* game, int assume_regular,
                     int* out_is_all_zero_pne, char** out_report_json) {
  return guarded([&]() -> rg_status {
    if (game == nullptr || out_report_json == nullptr) {
      return fail(RG_ERROR_INVALID_ARGUMENT, "null argument");
    }
    const rankgame::EquilibriumVerdict verdict =
        rankgame::pne_verdict(game->config.game, assume_regular != 0);
    if (out_is_all_zero_pne != nullptr) {
      *out_is_all_zero_pne =
          verdict.status == rankgame::PneStatus::kAllZeroPne ? 1 : 0;
    }
    *out_report_json = copy_string(
        rankgame::verdict_to_json(verdict, game->config.player_ids));
    return RG_OK;
  });
}

rg_status rg_threshold(const rg_game* game, int rule_of_thumb_only,
                       int* out_all_stabilizable, char** out_report_json) {
  return guarded([&]() -> rg_status {
    if (game == nullptr || out_report_json == nullptr) {
      return fail(RG_ERROR_INVALID_ARGUMENT, "null argument");
    }
    rankgame::ThresholdOptions options;
    options.rule_of_thumb_only = rule_of_thumb_only != 0;
    const rankgame::ThresholdReport report =
        rankgame::stabilizing_threshold(game->config.game, options);
    std::optional<rankgame::OptimalTbt> designer;
    if (game->config.designer.has_value() && report.exact &&
        report.all_stabilizable) {
      designer = rankgame::optimal_tbt(game->config.game,
                                       *game->config.designer);
    }
    if (out_all_stabilizable != nullptr) {
      *out_all_stabilizable = report.all_stabilizable ? 1 : 0;
    }
    *out_report_json = copy_string(rankgame::threshold_to_json(
        report, designer, game->config.player_ids));
    if (report.exact && !report.all_stabilizable) {
      return fail(RG_ERROR_NOT_STABILIZABLE,
                  "some adjacent pair admits no finite stabilizing TbT level");
    }
    return RG_OK;
  });
}

rg_status rg_rule_of_thumb(double e_req_zero, double gamma, double rho,
                           char** out_report_json) {
  return guarded([&]() -> rg_status {
    if (out_report_json == nullptr) {
      return fail(RG_ERROR_INVALID_ARGUMENT, "null argument");
    }
    const rankgame::RuleOfThumb rule =
        rankgame::rule_of_thumb_threshold(e_req_zero, gamma, rho);
    *out_report_json = copy_string(
        rankgame::rule_of_thumb_to_json(e_req_zero, gamma, rho, rule));
    return RG_OK;
  });
}

rg_status rg_climbing_curve(const rg_game* game, const double* tbt_grid,
                            size_t grid_len, char** out_csv) {
  return guarded([&]() -> rg_status {
    if (game == nullptr || out_csv == nullptr ||
        (tbt_grid == nullptr && grid_len > 0)) {
      return fail(RG_ERROR_INVALID_ARGUMENT, "null argument");
    }
    if (grid_len == 0) {
      return fail(RG_ERROR_INVALID_ARGUMENT, "curve: empty tbt grid");
    }
    const rankgame::ClimbingCostCurve curve = rankgame::climbing_cost_curve(
        game->config.game, std::span<const double>(tbt_grid, grid_len));
    *out_csv = copy_string(rankgame::curve_to_csv(curve));
    return RG_OK;
  });
}

rg_status rg_simulate(const rg_game* game, const char* options_json,
                      char** out_trace_csv) {
  return guarded([&]() -> rg_status {
    if (game == nullptr || out_trace_csv == nullptr) {
      return fail(RG_ERROR_INVALID_ARGUMENT, "null argument");
    }
    const nlohmann::json options = parse_options(options_json);
    const rankgame::GameInstance& g = game->config.game;

    const double grid_step = number_option(options, "grid_step", 0.01);
    const double max_steps_raw = number_option(options, "max_steps", 10000);
    if (!(max_steps_raw >= 1.0 && max_steps_raw <= 1e9)) {
      throw rankgame::ParseError("options: max_steps must lie in [1, 1e9]");
    }
    const int max_steps = static_cast<int>(max_steps_raw);
    const auto rule_it = options.find("mover_rule");
    rankgame::MoverRule rule = rankgame::MoverRule::kRoundRobin;
    if (rule_it != options.end() && !rule_it->is_null()) {
      const std::string name = rule_it->get<std::string>();
      if (name == "round-robin") {
        rule = rankgame::MoverRule::kRoundRobin;
      } else if (name == "best-gain-first") {
        rule = rankgame::MoverRule::kBestGainFirst;
      } else {
        throw rankgame::ParseError(
            "options: mover_rule must be round-robin or best-gain-first");
      }
    }

    std::vector<double> start(static_cast<size_t>(g.num_players()), 0.0);
    const auto start_it = options.find("start");
    if (start_it != options.end() && !start_it->is_null()) {
      if (start_it->is_string()) {
        const std::string mode = start_it->get<std::string>();
        if (mode == "random") {
          // The seed drives only this draw; the dynamics are deterministic.
          const auto seed = static_cast<unsigned>(
              number_option(options, "seed", 0.0));
          std::mt19937 rng(seed);
          const double span = g.rewards().values().front() -
                              g.rewards().values().back();
          const double limit = std::max(g.cost().inverse(span), grid_step);
          for (auto& e : start) {
            e = limit * (static_cast<double>(rng()) / 4294967296.0);
          }
        } else if (mode != "zero") {
          throw rankgame::ParseError(
              "options: start must be \"zero\", \"random\" or an array");
        }
      } else if (start_it->is_array()) {
        if (static_cast<int>(start_it->size()) != g.num_players()) {
          throw rankgame::ParseError(
              "options: start array must list one effort per player");
        }
        for (size_t i = 0; i < start.size(); ++i) {
          if (!(*start_it)[i].is_number()) {
            throw rankgame::ParseError(
                "options: start array must contain numbers");
          }
          start[i] = (*start_it)[i].get<double>();
        }
      } else {
        throw rankgame::ParseError(
            "options: start must be \"zero\", \"random\" or an array");
      }
    }

    const rankgame::DynamicsTrace trace = rankgame::best_response_dynamics(
        g, rankgame::EffortProfile(start), rule, grid_step, max_steps);
    *out_trace_csv = copy_string(
        rankgame::trace_to_csv(trace, game->config.player_ids));
    return RG_OK;
  });
}

rg_status rg_fit_trajectories(const char* csv_text, const char* options_json,
                              char** out_report_json) {
  return guarded([&]() -> rg_status {
    if (csv_text == nullptr || out_report_json == nullptr) {
      return fail(RG_ERROR_INVALID_ARGUMENT, "null argument");
    }
    const nlohmann::json options = parse_options(options_json);
    const rankgame::TrajectoryDataset dataset =
        rankgame::parse_trajectory_csv(csv_text);

    const double chance = number_option(options, "chance_level", 0.0);
    const double lower = number_option(options, "lower", chance);
    const double upper = number_option(options, "upper", 1.0);
    const auto estimate_it = options.find("estimate_upper");
    const bool estimate_upper =
        estimate_it != options.end() && estimate_it->is_boolean() &&
        estimate_it->get<bool>();

    std::vector<std::string> warnings;
    std::vector<rankgame::FitReportModel> models;
    models.reserve(dataset.models.size());
    for (const auto& model : dataset.models) {
      rankgame::FitReportModel entry;
      try {
        if (estimate_upper) {
          double max_score = 0.0;
          for (const auto& s : model.samples) {
            max_score = std::max(max_score, s.score);
          }
          std::vector<double> candidates;
          const int grid_points = 20;
          for (int k = 1; k <= grid_points; ++k) {
            candidates.push_back(max_score + (1.0 - max_score) *
                                                 static_cast<double>(k) /
                                                 grid_points);
          }
          const rankgame::UpperEstimate estimate =
              rankgame::estimate_upper_asymptote(model.samples, lower,
                                                 candidates);
          entry.fit = estimate.best_fit;
          entry.upper_profile = estimate.profile;
          if (estimate.low_confidence) {
            warnings.push_back("model '" + model.id +
                               "': low-confidence upper-asymptote estimate "
                               "(best R^2 below 0.5)");
          }
        } else {
          entry.fit = rankgame::fit_trajectory(model.samples, lower, upper);
        }
      } catch (const rankgame::DataError& e) {
        throw rankgame::DataError(
            "model '" + model.id + "': " + e.what(), e.rows());
      }
      entry.fit.id = model.id;
      if (!entry.fit.accepted) {
        warnings.push_back("model '" + model.id +
                           "': fit rejected: " + entry.fit.diagnostic);
      }
      if (entry.fit.clamped_rows > 0) {
        warnings.push_back("model '" + model.id + "': " +
                           std::to_string(entry.fit.clamped_rows) +
                           " observation(s) clamped inside (lower, upper)");
      }
      models.push_back(std::move(entry));
    }

    // Order models strongest first. Without an explicit capability proxy
    // the fitted baseline score stands in for capability.
    std::stable_sort(models.begin(), models.end(),
                     [](const rankgame::FitReportModel& a,
                        const rankgame::FitReportModel& b) {
                       const double ba = a.fit.predict(0.0);
                       const double bb = b.fit.predict(0.0);
                       if (ba != bb) return ba > bb;
                       return a.fit.id < b.fit.id;
                     });

    std::vector<rankgame::FitReportPair> pairs;
    for (size_t i = 0; i + 1 < models.size(); ++i) {
      const auto& hi = models[i].fit;
      const auto& lo = models[i + 1].fit;
      if (!hi.accepted || !lo.accepted) {
        warnings.push_back("pair (" + hi.id + ", " + lo.id +
                           "): skipped, a fit was rejected");
        continue;
      }
      rankgame::FitReportPair pair;
      pair.upper_id = hi.id;
      pair.lower_id = lo.id;
      pair.stats = rankgame::pair_statistics(hi, lo);
      try {
        pair.slope_ratio_at_zero = rankgame::slope_ratio(hi, lo, 0.0, 1e-3);
      } catch (const rankgame::ValidationError& e) {
        pair.warnings.push_back(e.what());
      }
      if (pair.stats.inversion_warning) {
        pair.warnings.push_back(
            "fitted baselines are inverted (the weaker model starts ahead); "
            "catch-up effort reported as 0");
      }
      pairs.push_back(std::move(pair));
    }

    *out_report_json = copy_string(
        rankgame::fit_report_to_json(models, pairs, warnings));
    return RG_OK;
  });
}

}  // extern "C"
