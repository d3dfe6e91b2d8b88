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

#ifndef RANKGAME_REPORTS_HPP
#define RANKGAME_REPORTS_HPP

#include <optional>
#include <string>
#include <vector>

#include "rankgame/equilibrium.hpp"
#include "rankgame/fitting.hpp"
#include "rankgame/tbt_designer.hpp"

namespace rankgame {

/// Numbers in reports are printed with 12 significant digits so that equal
/// inputs produce byte-identical outputs.
std::string format_number(double value);

/// Minimal deterministic JSON emitter: keys appear in insertion order and
/// doubles go through format_number.
class JsonWriter {
 public:
  JsonWriter& begin_object();
  JsonWriter& end_object();
  JsonWriter& begin_array(const std::string& key);
  JsonWriter& begin_array();  ///< anonymous (inside an array)
  JsonWriter& end_array();
  JsonWriter& begin_object(const std::string& key);
  JsonWriter& object_in_array();

  JsonWriter& field(const std::string& key, double value);
  JsonWriter& field(const std::string& key, int value);
  JsonWriter& field(const std::string& key, bool value);
  JsonWriter& field(const std::string& key, const std::string& value);
  JsonWriter& field(const std::string& key, const char* value);
  JsonWriter& null_field(const std::string& key);
  JsonWriter& field(const std::string& key, const std::optional<double>& value);

  JsonWriter& element(double value);
  JsonWriter& element(const std::string& value);

  std::string str() const { return out_; }

 private:
  void comma();
  void write_key(const std::string& key);
  void write_string(const std::string& value);

  std::string out_;
  bool need_comma_ = false;
};

std::string verdict_to_json(const EquilibriumVerdict& verdict,
                            const std::vector<std::string>& player_ids);

std::string threshold_to_json(const ThresholdReport& report,
                              const std::optional<OptimalTbt>& designer,
                              const std::vector<std::string>& player_ids);

std::string rule_of_thumb_to_json(double e_req_zero, double gamma, double rho,
                                  const RuleOfThumb& rule);

/// Fit report rows: per-model fits plus adjacent-pair statistics. Models
/// appear in the order given (strongest first).
struct FitReportModel {
  FitEntry fit;
  /// (candidate upper, R^2) profile when the asymptote was grid-searched.
  std::vector<std::pair<double, double>> upper_profile;
};

struct FitReportPair {
  std::string upper_id;
  std::string lower_id;
  PairStats stats;
  std::optional<double> slope_ratio_at_zero;
  std::vector<std::string> warnings;
};

std::string fit_report_to_json(const std::vector<FitReportModel>& models,
                               const std::vector<FitReportPair>& pairs,
                               const std::vector<std::string>& warnings);

std::string curve_to_csv(const ClimbingCostCurve& curve);

std::string trace_to_csv(const DynamicsTrace& trace,
                         const std::vector<std::string>& player_ids);

}  // namespace rankgame

#endif  // RANKGAME_REPORTS_HPP
