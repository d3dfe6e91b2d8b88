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

#include "rankgame/reports.hpp"

#include <cmath>
#include <cstdio>

namespace rankgame {

std::string format_number(double value) {
  if (std::isnan(value)) return "null";
  if (std::isinf(value)) return value > 0 ? "\"inf\"" : "\"-inf\"";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", value);
  return buf;
}

void JsonWriter::comma() {
  if (need_comma_) out_ += ',';
  need_comma_ = false;
}

void JsonWriter::write_key(const std::string& key) {
  comma();
  write_string(key);
  out_ += ':';
}

void JsonWriter::write_string(const std::string& value) {
  out_ += '"';
  for (char c : value) {
    switch (c) {
      case '"': out_ += "\\\""; break;
      case '\\': out_ += "\\\\"; break;
      case '\n': out_ += "\\n"; break;
      case '\r': out_ += "\\r"; break;
      case '\t': out_ += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", c);
          out_ += buf;
        } else {
          out_ += c;
        }
    }
  }
  out_ += '"';
}

JsonWriter& JsonWriter::begin_object() {
  comma();
  out_ += '{';
  return *this;
}

JsonWriter& JsonWriter::begin_object(const std::string& key) {
  write_key(key);
  out_ += '{';
  return *this;
}

JsonWriter& JsonWriter::object_in_array() {
  comma();
  out_ += '{';
  return *this;
}

JsonWriter& JsonWriter::end_object() {
  out_ += '}';
  need_comma_ = true;
  return *this;
}

JsonWriter& JsonWriter::begin_array(const std::string& key) {
  write_key(key);
  out_ += '[';
  return *this;
}

JsonWriter& JsonWriter::begin_array() {
  comma();
  out_ += '[';
  return *this;
}

JsonWriter& JsonWriter::end_array() {
  out_ += ']';
  need_comma_ = true;
  return *this;
}

JsonWriter& JsonWriter::field(const std::string& key, double value) {
  write_key(key);
  out_ += format_number(value);
  need_comma_ = true;
  return *this;
}

JsonWriter& JsonWriter::field(const std::string& key, int value) {
  write_key(key);
  out_ += std::to_string(value);
  need_comma_ = true;
  return *this;
}

JsonWriter& JsonWriter::field(const std::string& key, bool value) {
  write_key(key);
  out_ += value ? "true" : "false";
  need_comma_ = true;
  return *this;
}

JsonWriter& JsonWriter::field(const std::string& key,
                              const std::string& value) {
  write_key(key);
  write_string(value);
  need_comma_ = true;
  return *this;
}

JsonWriter& JsonWriter::field(const std::string& key, const char* value) {
  return field(key, std::string(value));
}

JsonWriter& JsonWriter::null_field(const std::string& key) {
  write_key(key);
  out_ += "null";
  need_comma_ = true;
  return *this;
}

JsonWriter& JsonWriter::field(const std::string& key,
                              const std::optional<double>& value) {
  if (value.has_value()) return field(key, *value);
  return null_field(key);
}

JsonWriter& JsonWriter::element(double value) {
  comma();
  out_ += format_number(value);
  need_comma_ = true;
  return *this;
}

JsonWriter& JsonWriter::element(const std::string& value) {
  comma();
  write_string(value);
  need_comma_ = true;
  return *this;
}

namespace {

void write_warnings(JsonWriter& w, const std::vector<std::string>& warnings) {
  w.begin_array("warnings");
  for (const auto& warning : warnings) w.element(warning);
  w.end_array();
}

}  // namespace

std::string verdict_to_json(const EquilibriumVerdict& verdict,
                            const std::vector<std::string>& player_ids) {
  JsonWriter w;
  w.begin_object();
  w.field("kind", "equilibrium_verdict");
  w.field("status", verdict.status == PneStatus::kAllZeroPne ? "AllZeroPNE"
                                                             : "NoPNE");
  w.field("tbt", verdict.tbt);
  w.begin_array("records");
  for (const auto& rec : verdict.records) {
    w.object_in_array();
    w.field("rank", rec.rank);
    if (static_cast<size_t>(rec.rank) <= player_ids.size()) {
      w.field("player", player_ids[static_cast<size_t>(rec.rank - 1)]);
    }
    w.field("reachable", rec.effort_required.has_value());
    w.field("effort_required", rec.effort_required);
    w.field("cost_required", rec.cost_required);
    w.field("reward_gap", rec.reward_gap);
    w.field("profitable", rec.profitable);
    w.field("marginal", rec.marginal);
    w.end_object();
  }
  w.end_array();
  w.field("any_marginal", verdict.any_marginal());
  w.end_object();
  return w.str();
}

std::string threshold_to_json(const ThresholdReport& report,
                              const std::optional<OptimalTbt>& designer,
                              const std::vector<std::string>& player_ids) {
  JsonWriter w;
  w.begin_object();
  w.field("kind", "threshold_report");
  w.field("mode", report.exact ? "exact" : "rule_of_thumb_only");
  w.begin_array("pairs");
  for (const auto& pair : report.pairs) {
    w.object_in_array();
    w.field("rank", pair.rank);
    if (static_cast<size_t>(pair.rank) <= player_ids.size()) {
      w.field("player", player_ids[static_cast<size_t>(pair.rank - 1)]);
    }
    if (report.exact) {
      w.field("stabilizable", pair.stabilizable);
    }
    if (report.exact && pair.stabilizable) {
      w.field("delta_star", pair.delta_star);
    } else {
      w.null_field("delta_star");
    }
    w.field("reward_gap", pair.reward_gap);
    w.field("e_req_zero", pair.e_req_zero);
    w.field("gamma", pair.gamma);
    w.field("rho", pair.rho);
    w.field("lambda", pair.lambda);
    if (pair.rule.has_value()) {
      w.field("rule_of_thumb", pair.rule->conservative);
      w.field("rule_of_thumb_simplified", pair.rule->simplified);
    } else {
      w.null_field("rule_of_thumb");
      w.null_field("rule_of_thumb_simplified");
    }
    w.field("marginal", pair.marginal);
    w.end_object();
  }
  w.end_array();
  if (report.exact) {
    w.field("all_stabilizable", report.all_stabilizable);
  }
  if (report.exact && report.all_stabilizable) {
    w.field("global_delta_star", report.global_delta_star);
  } else {
    w.null_field("global_delta_star");
  }
  if (designer.has_value()) {
    w.begin_object("designer");
    w.field("delta_star", designer->delta_star);
    w.field("utility", designer->utility);
    w.end_object();
  }
  std::vector<std::string> warnings = report.warnings;
  if (designer.has_value()) {
    warnings.insert(warnings.end(), designer->warnings.begin(),
                    designer->warnings.end());
  }
  write_warnings(w, warnings);
  w.end_object();
  return w.str();
}

std::string rule_of_thumb_to_json(double e_req_zero, double gamma, double rho,
                                  const RuleOfThumb& rule) {
  JsonWriter w;
  w.begin_object();
  w.field("kind", "rule_of_thumb");
  w.field("e_req_zero", e_req_zero);
  w.field("gamma", gamma);
  w.field("rho", rho);
  w.field("lambda", rho / e_req_zero);
  w.field("rule_of_thumb", rule.conservative);
  w.field("rule_of_thumb_simplified", rule.simplified);
  w.end_object();
  return w.str();
}

std::string fit_report_to_json(const std::vector<FitReportModel>& models,
                               const std::vector<FitReportPair>& pairs,
                               const std::vector<std::string>& warnings) {
  JsonWriter w;
  w.begin_object();
  w.field("kind", "fit_report");
  w.begin_array("models");
  for (const auto& model : models) {
    const FitEntry& fit = model.fit;
    w.object_in_array();
    w.field("id", fit.id);
    w.field("accepted", fit.accepted);
    w.field("alpha", fit.alpha);
    w.field("beta", fit.beta);
    w.field("lower", fit.lower);
    w.field("upper", fit.upper);
    w.field("r_squared", fit.r_squared);
    w.field("baseline_score", fit.predict(0.0));
    w.field("n_samples", static_cast<int>(fit.residuals.size()));
    w.field("clamped_rows", fit.clamped_rows);
    double max_abs_residual = 0.0;
    for (double r : fit.residuals) {
      max_abs_residual = std::max(max_abs_residual, std::abs(r));
    }
    w.field("max_abs_residual", max_abs_residual);
    if (!fit.diagnostic.empty()) {
      w.field("diagnostic", fit.diagnostic);
    }
    if (!model.upper_profile.empty()) {
      w.begin_array("upper_profile");
      for (const auto& [candidate, r2] : model.upper_profile) {
        w.begin_array();
        w.element(candidate);
        w.element(r2);
        w.end_array();
      }
      w.end_array();
    }
    w.end_object();
  }
  w.end_array();
  w.begin_array("pairs");
  for (const auto& pair : pairs) {
    w.object_in_array();
    w.field("upper_id", pair.upper_id);
    w.field("lower_id", pair.lower_id);
    w.field("e_req_zero", pair.stats.e_req_zero);
    w.field("gamma", pair.stats.gamma);
    w.field("lambda", pair.stats.lambda);
    w.field("inversion_warning", pair.stats.inversion_warning);
    w.field("slope_ratio_at_zero", pair.slope_ratio_at_zero);
    write_warnings(w, pair.warnings);
    w.end_object();
  }
  w.end_array();
  write_warnings(w, warnings);
  w.end_object();
  return w.str();
}

std::string curve_to_csv(const ClimbingCostCurve& curve) {
  std::string out = "tbt,min_effort,argmin_rank,saturated\n";
  for (const auto& point : curve.points) {
    out += format_number(point.tbt);
    out += ',';
    if (point.min_effort.has_value()) {
      out += format_number(*point.min_effort);
      out += ',';
      out += std::to_string(point.argmin_rank);
      out += ",0\n";
    } else {
      out += ",,1\n";
    }
  }
  return out;
}

std::string trace_to_csv(const DynamicsTrace& trace,
                         const std::vector<std::string>& player_ids) {
  std::string out;
  out += "# rankgame best-response dynamics trace\n";
  out += "# terminal=";
  switch (trace.outcome) {
    case DynamicsOutcome::kFixedPoint: out += "FixedPoint"; break;
    case DynamicsOutcome::kCycleDetected: out += "CycleDetected"; break;
    case DynamicsOutcome::kExhausted: out += "Exhausted"; break;
  }
  out += '\n';
  if (trace.outcome == DynamicsOutcome::kCycleDetected) {
    out += "# cycle_period=" + std::to_string(trace.cycle_period) + '\n';
    out += "# first_return_step=" + std::to_string(trace.first_return_step) +
           '\n';
  }
  out += "# final_profile=";
  for (size_t i = 0; i < trace.final_profile.size(); ++i) {
    if (i > 0) out += ' ';
    out += format_number(trace.final_profile[i]);
  }
  out += '\n';
  out += "step,mover,player,old_effort,new_effort,utility_gain\n";
  int step = 1;
  for (const auto& s : trace.steps) {
    out += std::to_string(step++);
    out += ',';
    out += std::to_string(s.mover + 1);
    out += ',';
    if (static_cast<size_t>(s.mover) < player_ids.size()) {
      out += player_ids[static_cast<size_t>(s.mover)];
    }
    out += ',';
    out += format_number(s.old_effort);
    out += ',';
    out += format_number(s.new_effort);
    out += ',';
    out += format_number(s.utility_gain);
    out += '\n';
  }
  return out;
}

}  // namespace rankgame
