// Copyright 2026 The nerkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//
// Machine-readable (JSON) report writers. Split out of eval.hpp so that
// translation units without JSON needs stay light.

#ifndef NERKIT_REPORT_HPP_
#define NERKIT_REPORT_HPP_

#include <string>
#include <vector>

#include <json.hpp>

#include "nerkit/diagnostics.hpp"
#include "nerkit/eval.hpp"
#include "nerkit/gazetteer.hpp"
#include "nerkit/version.hpp"

namespace nerkit::report {

inline nlohmann::json to_json(const eval::ClassScore& s) {
  return nlohmann::json{
      {"precision", s.precision},     {"recall", s.recall},
      {"f_score", s.f},               {"found", s.found},
      {"gold", s.gold},               {"correct", s.correct},
      {"correct_gold", s.correct_gold}};
}

inline nlohmann::json to_json(const eval::EvalReport& report) {
  nlohmann::json classes = nlohmann::json::array();
  for (const auto& [cls, s] : report.per_class) {
    nlohmann::json row = to_json(s);
    row["label"] = cls;
    classes.push_back(std::move(row));
  }
  return nlohmann::json{{"version", NERKIT_VERSION},
                        {"mode", report.mode},
                        {"classes", std::move(classes)},
                        {"micro", to_json(report.micro)}};
}

inline nlohmann::json to_json(
    const std::vector<gaz::SourceContribution>& contributions) {
  nlohmann::json sources = nlohmann::json::array();
  for (const gaz::SourceContribution& c : contributions) {
    sources.push_back(nlohmann::json{{"source_id", c.source_id},
                                     {"matches", c.match_count},
                                     {"fuzzy_matches", c.fuzzy_match_count}});
  }
  return nlohmann::json{{"version", NERKIT_VERSION},
                        {"sources", std::move(sources)}};
}

inline nlohmann::json to_json(const diag::TagDistribution& dist) {
  nlohmann::json tags = nlohmann::json::array();
  for (const auto& [label, count] : dist.per_tag) {
    tags.push_back(nlohmann::json{{"label", label}, {"count", count}});
  }
  return nlohmann::json{{"version", NERKIT_VERSION},
                        {"tags", std::move(tags)},
                        {"untagged", dist.untagged},
                        {"total", dist.total}};
}

inline nlohmann::json to_json(const diag::TagCountDelta& d) {
  return nlohmann::json{{"count_a", d.count_a},
                        {"count_b", d.count_b},
                        {"delta", d.delta},
                        {"delta_percent", d.delta_percent}};
}

inline nlohmann::json to_json(const diag::TagCountComparison& cmp) {
  nlohmann::json classes = nlohmann::json::array();
  for (const auto& [label, d] : cmp.per_class) {
    nlohmann::json row = to_json(d);
    row["label"] = label;
    classes.push_back(std::move(row));
  }
  return nlohmann::json{{"version", NERKIT_VERSION},
                        {"classes", std::move(classes)},
                        {"total", to_json(cmp.total)}};
}

}  // namespace nerkit::report

#endif  // NERKIT_REPORT_HPP_
