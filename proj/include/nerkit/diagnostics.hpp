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
// Diagnostic protocols: name-list template testing across positional
// contexts, tag-count comparison between text-quality versions, and
// unrecognition-rate analysis of correctly vs incorrectly tagged words.

#ifndef NERKIT_DIAGNOSTICS_HPP_
#define NERKIT_DIAGNOSTICS_HPP_

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "nerkit/corpus.hpp"
#include "nerkit/errors.hpp"
#include "nerkit/eval.hpp"
#include "nerkit/morpho.hpp"

namespace nerkit::diag {

enum class TemplatePosition { None, Beginning, Middle, End };

inline TemplatePosition template_position_from(std::string_view s) {
  if (s == "none") return TemplatePosition::None;
  if (s == "beginning") return TemplatePosition::Beginning;
  if (s == "middle") return TemplatePosition::Middle;
  if (s == "end") return TemplatePosition::End;
  throw ConfigError("unknown template position '" + std::string(s) + "'");
}

/// Carrier sentences with `{}` marking the name slot. The defaults embed
/// the name in a predicative pseudo sentence ("X on mukava juttu").
struct CarrierSet {
  std::string beginning = "{} on mukava juttu .";
  std::string middle = "Tänään {} on mukava juttu .";
  std::string end = "Mukava juttu on {} .";
};

struct WrappedName {
  std::vector<corpus::Token> tokens;
  std::size_t name_start = 0;  // token range the name occupies
  std::size_t name_end = 0;
};

/// Embeds a name (possibly multiword) at the requested clause position
/// of the carrier sentence; position None yields the bare name.
inline WrappedName wrap_template(const std::string& name,
                                 TemplatePosition position,
                                 const CarrierSet& carriers = {}) {
  if (name.empty()) throw ConfigError("cannot wrap an empty name");
  std::string sentence;
  switch (position) {
    case TemplatePosition::None:
      sentence = name;
      break;
    case TemplatePosition::Beginning:
      sentence = carriers.beginning;
      break;
    case TemplatePosition::Middle:
      sentence = carriers.middle;
      break;
    case TemplatePosition::End:
      sentence = carriers.end;
      break;
  }
  if (position != TemplatePosition::None) {
    auto slot = sentence.find("{}");
    if (slot == std::string::npos) {
      throw ConfigError("carrier sentence lacks a {} slot");
    }
    sentence = sentence.substr(0, slot) + name + sentence.substr(slot + 2);
  }
  WrappedName out;
  std::istringstream words(sentence);
  std::string word;
  std::size_t index = 0;
  std::optional<std::size_t> name_start;
  std::istringstream name_words(name);
  std::vector<std::string> name_parts;
  while (name_words >> word) name_parts.push_back(word);
  std::vector<std::string> parts;
  while (words >> word) parts.push_back(word);
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (!name_start && i + name_parts.size() <= parts.size()) {
      bool here = true;
      for (std::size_t k = 0; k < name_parts.size(); ++k) {
        if (parts[i + k] != name_parts[k]) {
          here = false;
          break;
        }
      }
      if (here) name_start = i;
    }
    out.tokens.push_back(corpus::Token{parts[i], index++, 0});
  }
  out.name_start = name_start.value_or(0);
  out.name_end = out.name_start + (name_parts.empty() ? 0 : name_parts.size() - 1);
  return out;
}

struct TagDistribution {
  std::map<std::string, std::size_t> per_tag;
  std::size_t untagged = 0;
  std::size_t total = 0;
};

using Tagger = std::function<std::vector<corpus::AnnotatedToken>(
    const std::vector<corpus::Token>&)>;

/// Wraps each name at the position, tags the sentence, and records the
/// label covering the name's tokens (or untagged). Tag counts plus
/// untagged always sum to the list length.
inline TagDistribution tag_distribution(const std::vector<std::string>& names,
                                        TemplatePosition position,
                                        const Tagger& tagger,
                                        const CarrierSet& carriers = {}) {
  TagDistribution dist;
  for (const std::string& name : names) {
    WrappedName wrapped = wrap_template(name, position, carriers);
    std::vector<corpus::AnnotatedToken> tagged = tagger(wrapped.tokens);
    std::string label;
    for (std::size_t i = wrapped.name_start;
         i <= wrapped.name_end && i < tagged.size(); ++i) {
      if (!tagged[i].tag.is_outside()) {
        label = tagged[i].tag.label;
        break;
      }
    }
    if (label.empty()) {
      ++dist.untagged;
    } else {
      ++dist.per_tag[label];
    }
    ++dist.total;
  }
  return dist;
}

struct TagCountDelta {
  std::size_t count_a = 0;
  std::size_t count_b = 0;
  long long delta = 0;      // b - a
  double delta_percent = 0.0;  // relative to a; 0 when a == 0
};

struct TagCountComparison {
  std::map<std::string, TagCountDelta> per_class;
  TagCountDelta total;
};

/// Tags both texts and reports per-class and total entity counts with
/// absolute and percentage deltas.
inline TagCountComparison compare_tag_counts(
    const std::vector<corpus::Token>& text_a,
    const std::vector<corpus::Token>& text_b, const Tagger& tagger) {
  auto count = [&](const std::vector<corpus::Token>& text) {
    std::map<std::string, std::size_t> per_class;
    for (const corpus::EntitySpan& s :
         corpus::spans_from_tags(tagger(text))) {
      ++per_class[s.label];
    }
    return per_class;
  };
  const auto a = count(text_a);
  const auto b = count(text_b);
  TagCountComparison out;
  std::set<std::string> labels;
  for (const auto& [l, n] : a) labels.insert(l);
  for (const auto& [l, n] : b) labels.insert(l);
  for (const std::string& label : labels) {
    TagCountDelta d;
    d.count_a = a.count(label) ? a.at(label) : 0;
    d.count_b = b.count(label) ? b.at(label) : 0;
    d.delta = static_cast<long long>(d.count_b) -
              static_cast<long long>(d.count_a);
    d.delta_percent = d.count_a == 0
                          ? 0.0
                          : 100.0 * static_cast<double>(d.delta) /
                                static_cast<double>(d.count_a);
    out.total.count_a += d.count_a;
    out.total.count_b += d.count_b;
    out.per_class[label] = d;
  }
  out.total.delta = static_cast<long long>(out.total.count_b) -
                    static_cast<long long>(out.total.count_a);
  out.total.delta_percent =
      out.total.count_a == 0
          ? 0.0
          : 100.0 * static_cast<double>(out.total.delta) /
                static_cast<double>(out.total.count_a);
  return out;
}

struct UnrecognitionRow {
  std::size_t right_tokens = 0;
  std::size_t right_unrecognized = 0;
  std::size_t wrong_tokens = 0;
  std::size_t wrong_unrecognized = 0;

  double right_rate() const {
    return right_tokens == 0 ? 0.0
                             : 100.0 * static_cast<double>(right_unrecognized) /
                                   static_cast<double>(right_tokens);
  }
  double wrong_rate() const {
    return wrong_tokens == 0 ? 0.0
                             : 100.0 * static_cast<double>(wrong_unrecognized) /
                                   static_cast<double>(wrong_tokens);
  }
};

/// Partitions predicted entity tokens into correctly vs incorrectly
/// tagged (loose criterion with merged locations) and reports per-class
/// word unrecognition rates for each partition. An empty prediction set
/// yields an empty table.
inline std::map<std::string, UnrecognitionRow> unrecognition_by_correctness(
    const std::vector<corpus::AnnotatedToken>& gold,
    const std::vector<corpus::AnnotatedToken>& pred,
    const morpho::MorphLexicon& lexicon,
    const eval::TagMapping& mapping = eval::merge_locations()) {
  eval::detail::check_aligned(gold, pred, false);
  const auto gold_entities = eval::detail::loose_entities(gold, mapping);
  const auto pred_entities = eval::detail::loose_entities(pred, mapping);
  std::map<std::string, UnrecognitionRow> out;
  // flat position of (snippet, index)
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> pos_of;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    pos_of[{pred[i].token.snippet_id, pred[i].token.index}] = i;
  }
  for (const auto& p : pred_entities) {
    bool correct = false;
    for (const auto& g : gold_entities) {
      if (eval::detail::overlaps(p, g)) {
        correct = true;
        break;
      }
    }
    UnrecognitionRow& row = out[p.label];
    for (std::size_t i = p.start; i <= p.end; ++i) {
      auto it = pos_of.find({p.snippet, i});
      if (it == pos_of.end()) continue;
      const bool known =
          lexicon.find(pred[it->second].token.surface) != nullptr;
      if (correct) {
        ++row.right_tokens;
        if (!known) ++row.right_unrecognized;
      } else {
        ++row.wrong_tokens;
        if (!known) ++row.wrong_unrecognized;
      }
    }
  }
  return out;
}

}  // namespace nerkit::diag

#endif  // NERKIT_DIAGNOSTICS_HPP_
