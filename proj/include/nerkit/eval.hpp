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
// Scoring of predicted against gold annotations.
//
// Strict mode counts (label x boundary-position) tag classes: `<Ent/>`,
// `<Ent>` and `</Ent>` are three separate classes and a prediction is
// correct only when the gold token carries the identical tag. A
// conventional whole-span exact-match mode is available separately.
// Loose mode first maps labels through a TagMapping, erases boundary
// positions, and credits any-overlap hits at entity granularity.

#ifndef NERKIT_EVAL_HPP_
#define NERKIT_EVAL_HPP_

#include <cmath>
#include <cstddef>
#include <cstdio>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "nerkit/corpus.hpp"
#include "nerkit/errors.hpp"
#include "nerkit/version.hpp"

namespace nerkit::eval {

/// F-score, 2PR/(R+P), on percent inputs; 0 when both are 0.
inline double f_score(double p, double r) {
  if (p + r == 0.0) return 0.0;
  return 2.0 * p * r / (p + r);
}

/// Label merging for loose evaluation. Unmapped labels pass through;
/// a label mapped to an empty target is dropped.
class TagMapping {
 public:
  TagMapping() = default;

  void map(std::string from, std::string to) {
    pairs_[std::move(from)] = std::move(to);
  }
  void drop(std::string from) { pairs_[std::move(from)] = std::nullopt; }

  /// nullopt = dropped; otherwise the merged label.
  std::optional<std::string> apply(const std::string& label) const {
    auto it = pairs_.find(label);
    if (it == pairs_.end()) return label;
    return it->second;
  }

 private:
  std::map<std::string, std::optional<std::string>> pairs_;
};

/// The usual location merge: the three general location categories
/// join into EnamexLocXxx, street names stay distinct, everything else
/// passes through; eight labels become six.
inline TagMapping merge_locations() {
  TagMapping m;
  m.map("EnamexLocGpl", "EnamexLocXxx");
  m.map("EnamexLocPpl", "EnamexLocXxx");
  m.map("EnamexLocXxx", "EnamexLocXxx");
  return m;
}

struct ClassCounts {
  std::size_t found = 0;         // predicted
  std::size_t gold = 0;          // in the reference
  std::size_t correct = 0;       // credited toward precision
  std::size_t correct_gold = 0;  // credited toward recall (== correct in
                                 // strict mode; may differ under loose
                                 // any-overlap crediting)
};

struct EvalCounts {
  std::map<std::string, ClassCounts> per_class;

  /// Counts merge by componentwise addition.
  void merge(const EvalCounts& other) {
    for (const auto& [cls, c] : other.per_class) {
      ClassCounts& mine = per_class[cls];
      mine.found += c.found;
      mine.gold += c.gold;
      mine.correct += c.correct;
      mine.correct_gold += c.correct_gold;
    }
  }
};

struct ClassScore {
  double precision = 0.0;  // percent
  double recall = 0.0;
  double f = 0.0;
  std::size_t found = 0;
  std::size_t gold = 0;
  std::size_t correct = 0;
  std::size_t correct_gold = 0;
};

inline ClassScore score_of(const ClassCounts& c) {
  ClassScore s;
  s.found = c.found;
  s.gold = c.gold;
  s.correct = c.correct;
  s.correct_gold = c.correct_gold;
  s.precision = c.found == 0 ? 0.0
                             : 100.0 * static_cast<double>(c.correct) /
                                   static_cast<double>(c.found);
  s.recall = c.gold == 0 ? 0.0
                         : 100.0 * static_cast<double>(c.correct_gold) /
                               static_cast<double>(c.gold);
  s.f = f_score(s.precision, s.recall);
  return s;
}

/// Pools found/gold/correct over all classes, then applies the P/R/F
/// formulas once (micro-averaging).
inline ClassScore micro_average(const EvalCounts& counts) {
  ClassCounts total;
  for (const auto& [cls, c] : counts.per_class) {
    total.found += c.found;
    total.gold += c.gold;
    total.correct += c.correct;
    total.correct_gold += c.correct_gold;
  }
  return score_of(total);
}

struct EvalReport {
  std::string mode;  // "strict", "strict-span" or "loose"
  EvalCounts counts;
  std::map<std::string, ClassScore> per_class;
  ClassScore micro;

  static EvalReport from_counts(EvalCounts counts, std::string mode) {
    EvalReport r;
    r.mode = std::move(mode);
    r.counts = std::move(counts);
    for (const auto& [cls, c] : r.counts.per_class) {
      r.per_class[cls] = score_of(c);
    }
    r.micro = micro_average(r.counts);
    return r;
  }
};

namespace detail {

inline void check_aligned(const std::vector<corpus::AnnotatedToken>& gold,
                          const std::vector<corpus::AnnotatedToken>& pred,
                          bool require_same_surfaces) {
  if (gold.size() != pred.size()) {
    throw AlignmentError("gold has " + std::to_string(gold.size()) +
                         " tokens, prediction has " +
                         std::to_string(pred.size()));
  }
  for (std::size_t i = 0; i < gold.size(); ++i) {
    if (gold[i].token.snippet_id != pred[i].token.snippet_id ||
        gold[i].token.index != pred[i].token.index) {
      throw AlignmentError("snippet structure differs at token " +
                           std::to_string(i + 1));
    }
    if (require_same_surfaces &&
        gold[i].token.surface != pred[i].token.surface) {
      throw AlignmentError("surface mismatch at token " +
                           std::to_string(i + 1) + ": '" +
                           gold[i].token.surface + "' vs '" +
                           pred[i].token.surface + "'");
    }
  }
}

}  // namespace detail

/// Strict exact-match scoring over (label x boundary-position) classes.
/// A predicted tag is correct when the gold tag at the same token is
/// identical. Classes with found == gold == 0 never appear.
inline EvalReport score_strict(const std::vector<corpus::AnnotatedToken>& gold,
                               const std::vector<corpus::AnnotatedToken>& pred,
                               bool require_same_surfaces = true) {
  detail::check_aligned(gold, pred, require_same_surfaces);
  EvalCounts counts;
  for (std::size_t i = 0; i < gold.size(); ++i) {
    const corpus::BoundaryTag& g = gold[i].tag;
    const corpus::BoundaryTag& p = pred[i].tag;
    if (!p.is_outside()) counts.per_class[corpus::to_string(p)].found += 1;
    if (!g.is_outside()) counts.per_class[corpus::to_string(g)].gold += 1;
    if (!p.is_outside() && p == g) {
      ClassCounts& c = counts.per_class[corpus::to_string(p)];
      c.correct += 1;
      c.correct_gold += 1;
    }
  }
  return EvalReport::from_counts(std::move(counts), "strict");
}

/// Conventional whole-span exact match: a predicted entity is correct
/// when an identical gold span (same label and boundaries) exists.
inline EvalReport score_strict_spans(
    const std::vector<corpus::AnnotatedToken>& gold,
    const std::vector<corpus::AnnotatedToken>& pred,
    bool require_same_surfaces = true) {
  detail::check_aligned(gold, pred, require_same_surfaces);
  const auto gold_spans = corpus::spans_from_tags(gold);
  const auto pred_spans = corpus::spans_from_tags(pred);
  EvalCounts counts;
  for (const corpus::EntitySpan& s : pred_spans) {
    counts.per_class[s.label].found += 1;
  }
  for (const corpus::EntitySpan& s : gold_spans) {
    counts.per_class[s.label].gold += 1;
  }
  for (const corpus::EntitySpan& p : pred_spans) {
    for (const corpus::EntitySpan& g : gold_spans) {
      if (p == g) {
        ClassCounts& c = counts.per_class[p.label];
        c.correct += 1;
        c.correct_gold += 1;
        break;
      }
    }
  }
  return EvalReport::from_counts(std::move(counts), "strict-span");
}

namespace detail {

struct LooseEntity {
  std::string label;
  std::size_t snippet = 0;
  std::size_t start = 0;  // inclusive snippet-local token range
  std::size_t end = 0;
};

/// After mapping and boundary erasure an entity is a maximal run of
/// adjacent same-label tokens within one snippet.
inline std::vector<LooseEntity> loose_entities(
    const std::vector<corpus::AnnotatedToken>& tokens,
    const TagMapping& mapping) {
  std::vector<LooseEntity> out;
  std::optional<LooseEntity> open;
  for (const corpus::AnnotatedToken& at : tokens) {
    std::optional<std::string> label;
    if (!at.tag.is_outside()) label = mapping.apply(at.tag.label);
    if (open && label && open->label == *label &&
        open->snippet == at.token.snippet_id &&
        open->end + 1 == at.token.index) {
      open->end = at.token.index;
      continue;
    }
    if (open) {
      out.push_back(*open);
      open.reset();
    }
    if (label) {
      open = LooseEntity{*label, at.token.snippet_id, at.token.index,
                         at.token.index};
    }
  }
  if (open) out.push_back(*open);
  return out;
}

inline bool overlaps(const LooseEntity& a, const LooseEntity& b) {
  return a.snippet == b.snippet && a.label == b.label && a.start <= b.end &&
         b.start <= a.end;
}

}  // namespace detail

/// Loose scoring: any same-label marking overlapping a gold entity is a
/// hit, regardless of boundaries. found and gold count entities; a
/// predicted entity is correct when it overlaps any gold entity of the
/// same merged label and a gold entity is recalled when overlapped by
/// any same-label prediction.
inline EvalReport score_loose(const std::vector<corpus::AnnotatedToken>& gold,
                              const std::vector<corpus::AnnotatedToken>& pred,
                              const TagMapping& mapping = {},
                              bool require_same_surfaces = true) {
  detail::check_aligned(gold, pred, require_same_surfaces);
  const auto gold_entities = detail::loose_entities(gold, mapping);
  const auto pred_entities = detail::loose_entities(pred, mapping);
  EvalCounts counts;
  for (const auto& e : pred_entities) counts.per_class[e.label].found += 1;
  for (const auto& e : gold_entities) counts.per_class[e.label].gold += 1;
  for (const auto& p : pred_entities) {
    for (const auto& g : gold_entities) {
      if (detail::overlaps(p, g)) {
        counts.per_class[p.label].correct += 1;
        break;
      }
    }
  }
  for (const auto& g : gold_entities) {
    for (const auto& p : pred_entities) {
      if (detail::overlaps(g, p)) {
        counts.per_class[g.label].correct_gold += 1;
        break;
      }
    }
  }
  return EvalReport::from_counts(std::move(counts), "loose");
}

/// Two-decimal display value, round half up.
inline double round2(double v) { return std::floor(v * 100.0 + 0.5) / 100.0; }

namespace detail {

inline std::string fmt2(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", round2(v));
  return buf;
}

}  // namespace detail

/// Text report: per-class lines `label P R F found gold` (tab-separated,
/// sorted by class name), then a MICRO line.
inline void write_text_report(const EvalReport& report, std::ostream& out) {
  for (const auto& [cls, s] : report.per_class) {
    out << cls << '\t' << detail::fmt2(s.precision) << '\t'
        << detail::fmt2(s.recall) << '\t' << detail::fmt2(s.f) << '\t'
        << s.found << '\t' << s.gold << '\n';
  }
  out << "MICRO\t" << detail::fmt2(report.micro.precision) << '\t'
      << detail::fmt2(report.micro.recall) << '\t'
      << detail::fmt2(report.micro.f) << '\t' << report.micro.found << '\t'
      << report.micro.gold << '\n';
}

inline std::string text_report(const EvalReport& report) {
  std::ostringstream out;
  write_text_report(report, out);
  return out.str();
}

}  // namespace nerkit::eval

#endif  // NERKIT_EVAL_HPP_
