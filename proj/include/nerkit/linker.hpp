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
// Entity-linking pipeline: lemmatize with guessing, look up against
// gazetteers, filter person/place conflicts conditionally on place size,
// optionally fall back to fuzzy matching. Person-name linking against a
// file-based name authority runs separately and tolerates leading
// initials.

#ifndef NERKIT_LINKER_HPP_
#define NERKIT_LINKER_HPP_

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "nerkit/corpus.hpp"
#include "nerkit/errors.hpp"
#include "nerkit/gazetteer.hpp"
#include "nerkit/morpho.hpp"
#include "nerkit/unicode.hpp"

namespace nerkit::linker {

struct LinkerConfig {
  unsigned fuzzy_max_dist = 0;  // 0 disables fuzzy matching
  // Default placement applies the fuzzy budget to the registry lookup in
  // the query phase. The alternative moves it into lexical processing:
  // an unknown surface is matched against lexicon forms within the
  // budget before guessing, which survives OCR damage in suffixes that
  // breaks the guesser; the registry lookup then stays exact.
  bool fuzzy_in_lexical = false;
  bool person_filter_enabled = true;
  std::uint64_t size_threshold = 50000;  // places at or above stay places
  bool wv_normalize = false;
  std::size_t guess_min_suffix = 3;
};

enum class FilterReason { None, PersonMorph, PersonPattern };

struct LinkCandidate {
  corpus::EntitySpan span;  // snippet-local token range
  std::vector<gaz::FuzzyHit> matches;
  bool is_person = false;
  bool filtered = false;
  FilterReason reason = FilterReason::None;
  bool retained_by_size = false;  // person context overridden by place size
};

/// Case-normalized first/last name lists.
class NameAuthority {
 public:
  NameAuthority() = default;

  void add_first(std::string_view name) {
    first_.insert(uni::casefold(name));
  }
  void add_last(std::string_view name) { last_.insert(uni::casefold(name)); }

  bool is_first(std::string_view name) const {
    return first_.count(uni::casefold(name)) > 0;
  }
  bool is_last(std::string_view name) const {
    return last_.count(uni::casefold(name)) > 0;
  }
  bool empty() const { return first_.empty() && last_.empty(); }

  /// Authority file: TSV columns name, kind (`first`|`last`).
  static NameAuthority load(std::istream& in) {
    NameAuthority out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (line.empty() || line[0] == '#') continue;
      auto tab = line.find('\t');
      if (tab == std::string::npos) {
        throw DataError("authority row needs 2 columns", line_no);
      }
      std::string name = line.substr(0, tab);
      std::string kind = line.substr(tab + 1);
      if (kind == "first") {
        out.add_first(name);
      } else if (kind == "last") {
        out.add_last(name);
      } else {
        throw DataError("unknown name kind '" + kind + "'", line_no);
      }
    }
    return out;
  }

  static NameAuthority load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open authority file '" + path + "'");
    return load(in);
  }

 private:
  std::set<std::string> first_;
  std::set<std::string> last_;
};

namespace detail {

inline bool is_initial(std::string_view surface) {
  if (surface.size() < 2 || surface.back() != '.') return false;
  std::u32string cps = uni::decode_utf8(surface.substr(0, surface.size() - 1));
  return cps.size() == 1 && uni::is_upper(cps[0]);
}

/// The lemma used for gazetteer lookup: the disambiguated analysis when
/// the word is known; for unknown words either a bounded-distance match
/// against lexicon forms (fuzzy-in-lexical placement) or the
/// suffix-analogy guess.
inline std::string lookup_lemma(const std::string& surface,
                                const morpho::MorphLexicon& lexicon,
                                const LinkerConfig& config) {
  const std::string form =
      config.wv_normalize ? morpho::normalize_historical(surface) : surface;
  auto analyses = morpho::analyze(form, lexicon);
  if (!analyses.empty()) return morpho::disambiguate(analyses).lemma;
  if (config.fuzzy_in_lexical && config.fuzzy_max_dist > 0) {
    unsigned best_dist = config.fuzzy_max_dist + 1;
    const std::string* best = nullptr;
    for (const auto& [rev, known] : lexicon.suffix_index()) {
      unsigned d = gaz::levenshtein(form, known);
      if (d < best_dist || (d == best_dist && best && known < *best)) {
        best_dist = d;
        best = &known;
      }
    }
    if (best) return morpho::disambiguate(*lexicon.find(*best)).lemma;
  }
  return morpho::guess(form, lexicon, config.guess_min_suffix).lemma;
}

inline std::uint64_t best_match_size(const LinkCandidate& cand) {
  unsigned best_dist = 0;
  bool have = false;
  std::uint64_t size = 0;
  for (const gaz::FuzzyHit& hit : cand.matches) {
    if (!have || hit.distance < best_dist) {
      have = true;
      best_dist = hit.distance;
      size = hit.entry->size.value_or(0);
    } else if (hit.distance == best_dist) {
      size = std::max(size, hit.entry->size.value_or(0));
    }
  }
  return size;
}

}  // namespace detail

inline void filter_person_conflicts(std::vector<LinkCandidate>& candidates,
                                    const std::vector<corpus::Token>& tokens,
                                    const morpho::MorphLexicon& lexicon,
                                    const LinkerConfig& config,
                                    const NameAuthority* authority = nullptr);

/// Links place names token by token: normalize, analyze (guessing when
/// unknown), exact lookup of the lemma, then fuzzy fallback when enabled
/// and the exact lookup came back empty, then the person-conflict filter
/// when enabled. Adjacent matched tokens whose joined surfaces form a
/// registry-known multiword variant merge into one candidate. OCR
/// garbage yields no candidate, never a failure.
inline std::vector<LinkCandidate> link_places(
    const std::vector<corpus::Token>& tokens,
    const morpho::MorphLexicon& lexicon, const gaz::GazetteerIndex& index,
    const LinkerConfig& config, const NameAuthority* authority = nullptr) {
  if (config.fuzzy_max_dist > index.max_dist_ceiling()) {
    throw ConfigError("fuzzy_max_dist above the gazetteer ceiling");
  }
  std::vector<LinkCandidate> out;
  std::vector<std::optional<std::size_t>> candidate_at(tokens.size());

  auto place_hits = [](std::vector<gaz::FuzzyHit> hits) {
    std::vector<gaz::FuzzyHit> kept;
    for (gaz::FuzzyHit& h : hits) {
      if (h.entry->entity_class == gaz::EntityClass::Place) {
        kept.push_back(std::move(h));
      }
    }
    return kept;
  };

  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const std::string lemma =
        detail::lookup_lemma(tokens[i].surface, lexicon, config);
    std::vector<gaz::FuzzyHit> hits;
    for (const gaz::ExactHit& h : index.lookup_exact(lemma)) {
      hits.push_back(gaz::FuzzyHit{h.entry, h.variant, 0});
    }
    hits = place_hits(std::move(hits));
    if (hits.empty() && config.fuzzy_max_dist > 0 &&
        !config.fuzzy_in_lexical) {
      hits = place_hits(index.lookup_fuzzy(lemma, config.fuzzy_max_dist));
    }
    if (hits.empty()) continue;
    LinkCandidate cand;
    cand.span = corpus::EntitySpan{"", tokens[i].index, tokens[i].index,
                                   tokens[i].snippet_id};
    cand.matches = std::move(hits);
    candidate_at[i] = out.size();
    out.push_back(std::move(cand));
  }

  // Merge adjacent matched tokens that form a known multiword variant
  // ("New" + "York" when the registry knows "New York").
  std::vector<LinkCandidate> merged;
  std::size_t i = 0;
  while (i < tokens.size()) {
    if (!candidate_at[i]) {
      ++i;
      continue;
    }
    std::size_t run_end = i;
    while (run_end + 1 < tokens.size() && candidate_at[run_end + 1] &&
           tokens[run_end + 1].snippet_id == tokens[i].snippet_id) {
      ++run_end;
    }
    std::size_t pos = i;
    while (pos <= run_end) {
      bool merged_here = false;
      for (std::size_t len = std::min<std::size_t>(3, run_end - pos + 1);
           len >= 2; --len) {
        std::string joined = tokens[pos].surface;
        for (std::size_t k = 1; k < len; ++k) {
          joined += ' ';
          joined += tokens[pos + k].surface;
        }
        auto exact = index.lookup_exact(joined);
        std::vector<gaz::FuzzyHit> hits;
        for (const gaz::ExactHit& h : exact) {
          if (h.entry->entity_class == gaz::EntityClass::Place) {
            hits.push_back(gaz::FuzzyHit{h.entry, h.variant, 0});
          }
        }
        if (hits.empty()) continue;
        LinkCandidate cand;
        cand.span = corpus::EntitySpan{"", tokens[pos].index,
                                       tokens[pos + len - 1].index,
                                       tokens[pos].snippet_id};
        cand.matches = std::move(hits);
        merged.push_back(std::move(cand));
        pos += len;
        merged_here = true;
        break;
      }
      if (!merged_here) {
        merged.push_back(out[*candidate_at[pos]]);
        ++pos;
      }
    }
    i = run_end + 1;
  }
  filter_person_conflicts(merged, tokens, lexicon, config, authority);
  return merged;
}

/// Marks place candidates that look like person names: (a) the
/// morphological analyzer gives the surface a person name class, or (b)
/// the preceding token is a single initial with a period, or a
/// capitalized first-name-like word precedes this capitalized word.
/// A candidate whose best-matched place is at least `size_threshold`
/// big stays a place regardless.
inline void filter_person_conflicts(std::vector<LinkCandidate>& candidates,
                                    const std::vector<corpus::Token>& tokens,
                                    const morpho::MorphLexicon& lexicon,
                                    const LinkerConfig& config,
                                    const NameAuthority* authority) {
  if (!config.person_filter_enabled) return;
  // (snippet, index) -> flat position
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> pos_of;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    pos_of[{tokens[i].snippet_id, tokens[i].index}] = i;
  }
  for (LinkCandidate& cand : candidates) {
    if (cand.is_person) continue;
    auto it = pos_of.find({cand.span.snippet_id, cand.span.start});
    if (it == pos_of.end()) continue;
    const std::size_t flat = it->second;
    const std::string& surface = tokens[flat].surface;

    FilterReason reason = FilterReason::None;
    const std::string analyzed_form = config.wv_normalize
                                          ? morpho::normalize_historical(surface)
                                          : surface;
    for (const morpho::MorphAnalysis& a :
         morpho::analyze(analyzed_form, lexicon)) {
      if (a.name_class == morpho::NameClass::Person) {
        reason = FilterReason::PersonMorph;
        break;
      }
    }
    if (reason == FilterReason::None && flat > 0 &&
        tokens[flat - 1].snippet_id == tokens[flat].snippet_id &&
        uni::starts_uppercase(surface)) {
      const std::string& prev = tokens[flat - 1].surface;
      const bool initial = detail::is_initial(prev);
      const bool first_like =
          uni::starts_uppercase(prev) && !detail::is_initial(prev) &&
          (authority && !authority->empty() ? authority->is_first(prev)
                                            : true);
      if (initial || first_like) reason = FilterReason::PersonPattern;
    }
    if (reason == FilterReason::None) continue;
    if (detail::best_match_size(cand) >= config.size_threshold) {
      cand.retained_by_size = true;
      continue;
    }
    cand.filtered = true;
    cand.reason = reason;
  }
}

/// Person linking against the name authority: every maximal run of
/// capitalized words all known as first or last names becomes a person
/// candidate; any number of leading single-letter initials joins the
/// span. Initial-bearing candidates carry no strong identifier, so
/// matches stay empty.
inline std::vector<LinkCandidate> link_persons(
    const std::vector<corpus::Token>& tokens, const NameAuthority& authority) {
  std::vector<LinkCandidate> out;
  std::size_t i = 0;
  auto name_like = [&](const corpus::Token& t) {
    return uni::starts_uppercase(t.surface) && !detail::is_initial(t.surface) &&
           (authority.is_first(t.surface) || authority.is_last(t.surface));
  };
  while (i < tokens.size()) {
    if (!name_like(tokens[i])) {
      ++i;
      continue;
    }
    std::size_t start = i;
    std::size_t end = i;
    while (end + 1 < tokens.size() &&
           tokens[end + 1].snippet_id == tokens[start].snippet_id &&
           name_like(tokens[end + 1])) {
      ++end;
    }
    // absorb leading initials within the snippet
    while (start > 0 &&
           tokens[start - 1].snippet_id == tokens[start].snippet_id &&
           detail::is_initial(tokens[start - 1].surface)) {
      --start;
    }
    LinkCandidate cand;
    cand.is_person = true;
    cand.span = corpus::EntitySpan{"", tokens[start].index, tokens[end].index,
                                   tokens[start].snippet_id};
    out.push_back(std::move(cand));
    i = end + 1;
  }
  return out;
}

/// Renders unfiltered candidates as boundary tags. A retained place wins
/// a collision with a person candidate; otherwise the person wins.
inline std::vector<corpus::AnnotatedToken> candidates_to_tags(
    const std::vector<LinkCandidate>& places,
    const std::vector<LinkCandidate>& persons,
    const std::vector<corpus::Token>& tokens,
    const std::string& place_label = "EnamexLocPpl",
    const std::string& person_label = "EnamexPrsHum") {
  auto overlap = [](const corpus::EntitySpan& a, const corpus::EntitySpan& b) {
    return a.snippet_id == b.snippet_id && a.start <= b.end &&
           b.start <= a.end;
  };
  std::vector<corpus::EntitySpan> spans;
  std::vector<const LinkCandidate*> kept_places;
  for (const LinkCandidate& p : places) {
    if (p.filtered) continue;
    bool drop = false;
    if (!p.retained_by_size) {
      for (const LinkCandidate& person : persons) {
        if (overlap(p.span, person.span)) {
          drop = true;
          break;
        }
      }
    }
    if (!drop) kept_places.push_back(&p);
  }
  for (const LinkCandidate* p : kept_places) {
    corpus::EntitySpan s = p->span;
    s.label = place_label;
    spans.push_back(std::move(s));
  }
  for (const LinkCandidate& person : persons) {
    bool drop = false;
    for (const LinkCandidate* p : kept_places) {
      if (overlap(person.span, p->span)) {
        drop = true;
        break;
      }
    }
    if (drop) continue;
    corpus::EntitySpan s = person.span;
    s.label = person_label;
    spans.push_back(std::move(s));
  }
  return corpus::tags_from_spans(spans, tokens);
}

}  // namespace nerkit::linker

#endif  // NERKIT_LINKER_HPP_
