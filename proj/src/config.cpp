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

#include "rankgame/config.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <set>

#include <json.hpp>

#include "rankgame/errors.hpp"
#include "rankgame/reports.hpp"

namespace rankgame {

namespace {

using nlohmann::json;

void reject_unknown_keys(const json& node, const std::set<std::string>& allowed,
                         const std::string& path, bool lenient) {
  if (lenient) return;
  for (const auto& [key, value] : node.items()) {
    (void)value;
    if (allowed.find(key) == allowed.end()) {
      throw ParseError("config: unknown field '" + path + key +
                       "' (pass lenient to ignore)");
    }
  }
}

const json& require(const json& node, const std::string& key,
                    const std::string& path) {
  const auto it = node.find(key);
  if (it == node.end()) {
    throw ParseError("config: missing field '" + path + key + "'");
  }
  return *it;
}

double require_number(const json& node, const std::string& key,
                      const std::string& path) {
  const json& value = require(node, key, path);
  if (!value.is_number()) {
    throw ParseError("config: field '" + path + key + "' must be a number");
  }
  return value.get<double>();
}

std::vector<double> require_number_array(const json& node,
                                         const std::string& key,
                                         const std::string& path) {
  const json& value = require(node, key, path);
  if (!value.is_array() || value.empty()) {
    throw ParseError("config: field '" + path + key +
                     "' must be a nonempty array of numbers");
  }
  std::vector<double> out;
  out.reserve(value.size());
  for (const auto& item : value) {
    if (!item.is_number()) {
      throw ParseError("config: field '" + path + key +
                       "' must contain only numbers");
    }
    out.push_back(item.get<double>());
  }
  return out;
}

CostModel parse_cost(const json& node, const std::string& path, bool lenient) {
  if (!node.is_object()) {
    throw ParseError("config: '" + path + "' must be an object");
  }
  const json& family_node = require(node, "family", path);
  if (!family_node.is_string()) {
    throw ParseError("config: '" + path + "family' must be a string");
  }
  const std::string family = family_node.get<std::string>();
  try {
    if (family == "linear") {
      reject_unknown_keys(node, {"family", "kappa"}, path, lenient);
      return CostModel::linear(require_number(node, "kappa", path));
    }
    if (family == "power") {
      reject_unknown_keys(node, {"family", "a", "p"}, path, lenient);
      return CostModel::power(require_number(node, "a", path),
                              require_number(node, "p", path));
    }
    if (family == "piecewise") {
      reject_unknown_keys(node, {"family", "knots", "slopes"}, path, lenient);
      return CostModel::piecewise_linear(
          require_number_array(node, "knots", path),
          require_number_array(node, "slopes", path));
    }
  } catch (const ValidationError& e) {
    throw ParseError("config: '" + path + "': " + e.what());
  }
  throw ParseError("config: '" + path + "family' must be one of linear, "
                   "power, piecewise");
}

RewardScheme parse_rewards(const json& node, int n, const std::string& path,
                           bool lenient) {
  if (!node.is_object()) {
    throw ParseError("config: '" + path + "' must be an object");
  }
  const json& scheme_node = require(node, "scheme", path);
  if (!scheme_node.is_string()) {
    throw ParseError("config: '" + path + "scheme' must be a string");
  }
  const std::string scheme = scheme_node.get<std::string>();
  try {
    if (scheme == "winner_take_all") {
      reject_unknown_keys(node, {"scheme", "reward"}, path, lenient);
      return RewardScheme::winner_take_all(
          n, require_number(node, "reward", path));
    }
    if (scheme == "top_k") {
      reject_unknown_keys(node, {"scheme", "k", "reward"}, path, lenient);
      const double k = require_number(node, "k", path);
      return RewardScheme::top_k(n, static_cast<int>(k),
                                 require_number(node, "reward", path));
    }
    if (scheme == "decay") {
      reject_unknown_keys(node, {"scheme", "reward", "ratio"}, path, lenient);
      return RewardScheme::geometric_decay(
          n, require_number(node, "reward", path),
          require_number(node, "ratio", path));
    }
    if (scheme == "explicit") {
      reject_unknown_keys(node, {"scheme", "values"}, path, lenient);
      auto values = require_number_array(node, "values", path);
      if (static_cast<int>(values.size()) != n) {
        throw ParseError("config: '" + path +
                         "values' must list one reward per player");
      }
      return RewardScheme(std::move(values));
    }
  } catch (const ValidationError& e) {
    throw ParseError("config: '" + path + "': " + e.what());
  }
  throw ParseError("config: '" + path + "scheme' must be one of "
                   "winner_take_all, top_k, decay, explicit");
}

}  // namespace

GameConfig load_game_config(const std::string& json_text, bool lenient) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("config: invalid JSON: ") + e.what());
  }
  if (!root.is_object()) {
    throw ParseError("config: top level must be an object");
  }
  reject_unknown_keys(
      root, {"players", "weights", "cost", "rewards", "tbt", "designer"}, "",
      lenient);

  const json& players_node = require(root, "players", "");
  if (!players_node.is_array() || players_node.size() < 2) {
    throw ParseError("config: 'players' must list at least two players");
  }

  std::vector<double> weights;
  if (root.contains("weights")) {
    weights = require_number_array(root, "weights", "");
  }

  std::vector<std::string> ids;
  std::vector<double> thetas;
  std::vector<ScoreParams> params;
  std::set<std::string> seen_ids;
  for (size_t i = 0; i < players_node.size(); ++i) {
    const std::string path = "players[" + std::to_string(i) + "].";
    const json& player = players_node[i];
    if (!player.is_object()) {
      throw ParseError("config: players[" + std::to_string(i) +
                       "] must be an object");
    }
    reject_unknown_keys(player, {"id", "theta", "theta_vector", "score"},
                        path, lenient);
    const json& id_node = require(player, "id", path);
    if (!id_node.is_string() || id_node.get<std::string>().empty()) {
      throw ParseError("config: '" + path + "id' must be a nonempty string");
    }
    const std::string id = id_node.get<std::string>();
    if (!seen_ids.insert(id).second) {
      throw ParseError("config: duplicate player id '" + id + "'");
    }
    ids.push_back(id);

    const bool has_theta = player.contains("theta");
    const bool has_vector = player.contains("theta_vector");
    if (has_theta == has_vector) {
      throw ParseError("config: '" + path +
                       "' must have exactly one of theta, theta_vector");
    }
    if (has_theta) {
      thetas.push_back(require_number(player, "theta", path));
    } else {
      if (weights.empty()) {
        throw ParseError("config: '" + path +
                         "theta_vector' requires a top-level 'weights' array");
      }
      auto vec = require_number_array(player, "theta_vector", path);
      try {
        thetas.push_back(project_capability(weights, vec));
      } catch (const ValidationError& e) {
        throw ParseError("config: '" + path + "theta_vector': " + e.what());
      }
    }

    const json& score = require(player, "score", path);
    if (!score.is_object()) {
      throw ParseError("config: '" + path + "score' must be an object");
    }
    const std::string spath = path + "score.";
    reject_unknown_keys(score, {"alpha", "beta", "lower", "upper"}, spath,
                        lenient);
    ScoreParams p;
    p.alpha = require_number(score, "alpha", spath);
    p.beta = require_number(score, "beta", spath);
    p.lower = require_number(score, "lower", spath);
    p.upper = require_number(score, "upper", spath);
    try {
      p.validate();
    } catch (const ValidationError& e) {
      throw ParseError("config: '" + spath + "': " + e.what());
    }
    params.push_back(p);
  }

  const double tbt = require_number(root, "tbt", "");
  const int n = static_cast<int>(ids.size());

  std::optional<DesignerPrefs> designer;
  if (root.contains("designer")) {
    const json& d = require(root, "designer", "");
    if (!d.is_object()) {
      throw ParseError("config: 'designer' must be an object");
    }
    reject_unknown_keys(d, {"ranking_reward", "tbt_cost"}, "designer.",
                        lenient);
    const double reward = require_number(d, "ranking_reward", "designer.");
    if (!(reward > 0.0)) {
      throw ParseError("config: 'designer.ranking_reward' must be positive");
    }
    designer = DesignerPrefs{
        reward, parse_cost(require(d, "tbt_cost", "designer."),
                           "designer.tbt_cost.", lenient)};
  }

  try {
    GameInstance game(CapabilityProfile(std::move(thetas)),
                      ScoreModel(std::move(params)),
                      parse_cost(require(root, "cost", ""), "cost.", lenient),
                      parse_rewards(require(root, "rewards", ""), n,
                                    "rewards.", lenient),
                      tbt);
    return GameConfig{std::move(ids), std::move(game), std::move(designer)};
  } catch (const ValidationError& e) {
    throw ParseError(std::string("config: ") + e.what());
  }
}

namespace {

void write_cost(JsonWriter& w, const std::string& key, const CostModel& cost) {
  w.begin_object(key);
  w.field("family", cost.family_name());
  if (cost.is_linear()) {
    w.field("kappa", cost.as_linear().kappa);
  } else if (cost.is_power()) {
    w.field("a", cost.as_power().a);
    w.field("p", cost.as_power().p);
  } else {
    const auto& pw = cost.as_piecewise();
    w.begin_array("knots");
    for (double k : pw.knots) w.element(k);
    w.end_array();
    w.begin_array("slopes");
    for (double s : pw.slopes) w.element(s);
    w.end_array();
  }
  w.end_object();
}

}  // namespace

std::string save_game_config(const GameConfig& config) {
  const GameInstance& game = config.game;
  JsonWriter w;
  w.begin_object();
  w.begin_array("players");
  for (int i = 0; i < game.num_players(); ++i) {
    const ScoreParams& p = game.scores().params(i);
    w.object_in_array();
    w.field("id", config.player_ids[static_cast<size_t>(i)]);
    w.field("theta", game.capabilities().theta(i));
    w.begin_object("score");
    w.field("alpha", p.alpha);
    w.field("beta", p.beta);
    w.field("lower", p.lower);
    w.field("upper", p.upper);
    w.end_object();
    w.end_object();
  }
  w.end_array();
  write_cost(w, "cost", game.cost());
  w.begin_object("rewards");
  w.field("scheme", "explicit");
  w.begin_array("values");
  for (double r : game.rewards().values()) w.element(r);
  w.end_array();
  w.end_object();
  w.field("tbt", game.tbt());
  if (config.designer.has_value()) {
    w.begin_object("designer");
    w.field("ranking_reward", config.designer->ranking_reward);
    write_cost(w, "tbt_cost", config.designer->tbt_cost);
    w.end_object();
  }
  w.end_object();
  return w.str();
}

namespace {

bool parse_double_field(const std::string& field, double& out) {
  const char* begin = field.data();
  const char* end = begin + field.size();
  const auto result = std::from_chars(begin, end, out);
  return result.ec == std::errc() && result.ptr == end;
}

}  // namespace

TrajectoryDataset parse_trajectory_csv(const std::string& csv_text) {
  TrajectoryDataset dataset;
  std::map<std::string, size_t> index_by_id;
  std::vector<int> bad_rows;
  std::string bad_detail;

  size_t pos = 0;
  int line_no = 0;
  bool saw_header = false;
  int data_rows = 0;
  while (pos <= csv_text.size()) {
    size_t eol = csv_text.find('\n', pos);
    if (eol == std::string::npos) eol = csv_text.size();
    std::string line = csv_text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) {
      if (pos > csv_text.size()) break;
      continue;
    }
    if (line[0] == '#') continue;
    if (!saw_header) {
      if (line != "model_id,steps,score") {
        throw ParseError(
            "trajectory csv: line " + std::to_string(line_no) +
            ": expected header 'model_id,steps,score'");
      }
      saw_header = true;
      continue;
    }

    const size_t c1 = line.find(',');
    const size_t c2 = c1 == std::string::npos ? std::string::npos
                                              : line.find(',', c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos ||
        line.find(',', c2 + 1) != std::string::npos) {
      bad_rows.push_back(line_no);
      if (bad_detail.empty()) bad_detail = "expected 3 comma-separated fields";
      continue;
    }
    const std::string id = line.substr(0, c1);
    const std::string steps_str = line.substr(c1 + 1, c2 - c1 - 1);
    const std::string score_str = line.substr(c2 + 1);
    double steps = 0.0, score = 0.0;
    if (id.empty()) {
      bad_rows.push_back(line_no);
      if (bad_detail.empty()) bad_detail = "empty model_id";
      continue;
    }
    if (!parse_double_field(steps_str, steps) || !(steps >= 0.0)) {
      bad_rows.push_back(line_no);
      if (bad_detail.empty()) bad_detail = "steps must be a nonnegative number";
      continue;
    }
    if (!parse_double_field(score_str, score) ||
        !(score >= 0.0 && score <= 1.0)) {
      bad_rows.push_back(line_no);
      if (bad_detail.empty()) bad_detail = "score must lie in [0, 1]";
      continue;
    }

    auto [it, inserted] = index_by_id.emplace(id, dataset.models.size());
    if (inserted) {
      dataset.models.push_back(ModelTrajectory{id, std::nullopt, {}});
    }
    dataset.models[it->second].samples.push_back({steps, score});
    ++data_rows;
    if (pos > csv_text.size()) break;
  }

  if (!saw_header && data_rows == 0 && bad_rows.empty()) {
    throw DataError("trajectory csv: no rows");
  }
  if (!bad_rows.empty()) {
    std::string rows;
    for (size_t i = 0; i < bad_rows.size() && i < 10; ++i) {
      if (i > 0) rows += ", ";
      rows += std::to_string(bad_rows[i]);
    }
    if (bad_rows.size() > 10) rows += ", ...";
    throw DataError("trajectory csv: malformed row(s) at line(s) " + rows +
                        " (" + bad_detail + ")",
                    bad_rows);
  }
  if (data_rows == 0) {
    throw DataError("trajectory csv: no rows");
  }
  dataset.validate();
  return dataset;
}

}  // namespace rankgame
