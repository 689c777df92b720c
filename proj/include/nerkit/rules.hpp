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
// The rule-based tagging engine: a line-oriented rule DSL compiled to
// token-sequence patterns, leftmost-longest non-overlapping matching,
// and two-phase application that resolves place/person ambiguity (phase
// 1 fixes person readings in personal-name contexts, phase 2 tags the
// remaining place candidates).
//
// Rule file grammar:
//   rule <id> phase=<1|2> label=<Label> : <atom> <atom> ...
// atoms:
//   "literal"      surface equals the quoted text
//   CAP            first codepoint is an uppercase letter
//   CASE(a|b|...)  disambiguated case tag is one of the listed ones
//   GAZ(place|person-first|person-last)
//                  lexical class from the morph lexicon or gazetteer
//   SUFFIX(text)   surface ends with text
//   NUM            digits, optionally with a trailing period
//   PUNCT(c)       surface is the single punctuation token c (, ( or ))
// any atom may be wrapped CTX(...) to consume a context token that stays
// outside the labeled span. `#` starts a comment line.

#ifndef NERKIT_RULES_HPP_
#define NERKIT_RULES_HPP_

#include <algorithm>
#include <cstddef>
#include <istream>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "nerkit/corpus.hpp"
#include "nerkit/errors.hpp"
#include "nerkit/gazetteer.hpp"
#include "nerkit/morpho.hpp"
#include "nerkit/unicode.hpp"

namespace nerkit::rules {

enum class AtomKind {
  Literal,
  Capitalized,
  MorphCase,
  GazClass,
  Suffix,
  Number,
  TokenClass
};

struct PatternAtom {
  AtomKind kind = AtomKind::Literal;
  std::string text;                  // Literal / Suffix / TokenClass payload
  std::set<std::string> case_tags;   // MorphCase payload
  gaz::EntityClass gaz_class = gaz::EntityClass::Place;  // GazClass payload
  bool context_only = false;
};

struct PatternRule {
  std::string id;
  std::vector<PatternAtom> atoms;
  std::string action_label;
  int phase = 2;
  int priority = 0;  // file order; lower wins ties
};

struct RuleSet {
  std::vector<PatternRule> rules;

  std::vector<const PatternRule*> phase(int p) const {
    std::vector<const PatternRule*> out;
    for (const PatternRule& r : rules) {
      if (r.phase == p) out.push_back(&r);
    }
    return out;
  }
};

struct MatchSpan {
  std::size_t start = 0;  // first non-context token, inclusive
  std::size_t end = 0;    // last non-context token, inclusive
  std::string label;
  std::string rule_id;

  bool operator==(const MatchSpan&) const = default;
};

/// A token prepared for matching: the surface plus its disambiguated (or
/// guessed) analysis and the lexical class flags rules test against.
struct TokenView {
  std::string surface;
  morpho::MorphAnalysis analysis;
  bool capitalized = false;
  bool is_number = false;
  bool lex_place = false;         // morph place class or place gazetteer hit
  bool lex_person_first = false;  // morph person class or gazetteer hit
  bool lex_person_last = false;
};

/// Builds TokenViews for one snippet. Lexical class flags consider every
/// lexicon analysis of the surface (an ambiguous word keeps both its
/// place and person readings visible to rules) and, when an index is
/// given, exact gazetteer hits of the surface and of its lemma.
inline std::vector<TokenView> prepare_tokens(
    const std::vector<corpus::Token>& tokens,
    const morpho::MorphLexicon& lexicon,
    const gaz::GazetteerIndex* index = nullptr, bool wv_normalize = false,
    std::size_t guess_min_suffix = 3) {
  std::vector<TokenView> out;
  out.reserve(tokens.size());
  for (const corpus::Token& t : tokens) {
    TokenView v;
    v.surface = t.surface;
    const std::string lookup_surface =
        wv_normalize ? morpho::normalize_historical(t.surface) : t.surface;
    auto analyses = morpho::analyze(lookup_surface, lexicon);
    if (analyses.empty()) {
      v.analysis = morpho::guess(lookup_surface, lexicon, guess_min_suffix);
    } else {
      v.analysis = morpho::disambiguate(analyses);
      for (const morpho::MorphAnalysis& a : analyses) {
        if (a.name_class == morpho::NameClass::Place) v.lex_place = true;
        if (a.name_class == morpho::NameClass::Person) {
          v.lex_person_first = true;
          v.lex_person_last = true;
        }
      }
    }
    v.capitalized = uni::starts_uppercase(t.surface);
    v.is_number = !t.surface.empty();
    for (std::size_t i = 0; i < t.surface.size(); ++i) {
      char c = t.surface[i];
      if (c >= '0' && c <= '9') continue;
      if (c == '.' && i + 1 == t.surface.size() && i > 0) continue;
      v.is_number = false;
      break;
    }
    if (index) {
      for (const std::string& form : {lookup_surface, v.analysis.lemma}) {
        for (const gaz::ExactHit& hit : index->lookup_exact(form)) {
          switch (hit.entry->entity_class) {
            case gaz::EntityClass::Place:
              v.lex_place = true;
              break;
            case gaz::EntityClass::PersonFirst:
              v.lex_person_first = true;
              break;
            case gaz::EntityClass::PersonLast:
              v.lex_person_last = true;
              break;
          }
        }
        if (form == v.analysis.lemma) break;  // avoid a duplicate lookup
      }
    }
    out.push_back(std::move(v));
  }
  return out;
}

inline bool atom_matches(const PatternAtom& atom, const TokenView& token) {
  switch (atom.kind) {
    case AtomKind::Literal:
      return token.surface == atom.text;
    case AtomKind::Capitalized:
      return token.capitalized;
    case AtomKind::MorphCase:
      return !token.analysis.case_tag.empty() &&
             atom.case_tags.count(token.analysis.case_tag) > 0;
    case AtomKind::GazClass:
      switch (atom.gaz_class) {
        case gaz::EntityClass::Place:
          return token.lex_place;
        case gaz::EntityClass::PersonFirst:
          return token.lex_person_first;
        case gaz::EntityClass::PersonLast:
          return token.lex_person_last;
      }
      return false;
    case AtomKind::Suffix:
      return token.surface.size() >= atom.text.size() &&
             token.surface.compare(token.surface.size() - atom.text.size(),
                                   atom.text.size(), atom.text) == 0;
    case AtomKind::Number:
      return token.is_number;
    case AtomKind::TokenClass:
      return token.surface == atom.text;
  }
  return false;
}

namespace detail {

inline PatternAtom parse_atom(std::string_view text, std::size_t line_no) {
  PatternAtom atom;
  if (text.size() >= 5 && text.substr(0, 4) == "CTX(" && text.back() == ')') {
    atom = parse_atom(text.substr(4, text.size() - 5), line_no);
    atom.context_only = true;
    return atom;
  }
  if (text.size() >= 2 && text.front() == '"' && text.back() == '"') {
    atom.kind = AtomKind::Literal;
    atom.text = std::string(text.substr(1, text.size() - 2));
    if (atom.text.empty()) throw DataError("empty literal atom", line_no);
    return atom;
  }
  if (text == "CAP") {
    atom.kind = AtomKind::Capitalized;
    return atom;
  }
  if (text == "NUM") {
    atom.kind = AtomKind::Number;
    return atom;
  }
  if (text.size() > 6 && text.substr(0, 5) == "CASE(" && text.back() == ')') {
    atom.kind = AtomKind::MorphCase;
    std::string payload(text.substr(5, text.size() - 6));
    std::size_t pos = 0;
    while (true) {
      auto bar = payload.find('|', pos);
      std::string tag = payload.substr(pos, bar - pos);
      if (tag.empty()) throw DataError("empty case tag in CASE(...)", line_no);
      atom.case_tags.insert(tag);
      if (bar == std::string::npos) break;
      pos = bar + 1;
    }
    return atom;
  }
  if (text.size() > 5 && text.substr(0, 4) == "GAZ(" && text.back() == ')') {
    atom.kind = AtomKind::GazClass;
    atom.gaz_class =
        gaz::entity_class_from(text.substr(4, text.size() - 5), line_no);
    return atom;
  }
  if (text.size() > 8 && text.substr(0, 7) == "SUFFIX(" && text.back() == ')') {
    atom.kind = AtomKind::Suffix;
    atom.text = std::string(text.substr(7, text.size() - 8));
    return atom;
  }
  if (text.size() == 8 && text.substr(0, 6) == "PUNCT(" && text.back() == ')') {
    char c = text[6];
    if (c != ',' && c != '(' && c != ')') {
      throw DataError("PUNCT accepts only , ( or )", line_no);
    }
    atom.kind = AtomKind::TokenClass;
    atom.text = std::string(1, c);
    return atom;
  }
  throw DataError("unknown atom '" + std::string(text) + "'", line_no);
}

}  // namespace detail

/// Compiles a rule file. Priorities equal file order; duplicate ids and
/// labels outside the tag set are compile errors carrying line numbers.
inline RuleSet compile_ruleset(std::istream& in,
                               const corpus::TagSet& tags = {}) {
  RuleSet out;
  std::set<std::string> seen_ids;
  std::string line;
  std::size_t line_no = 0;
  int priority = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view rest = line;
    while (!rest.empty() && (rest.front() == ' ' || rest.front() == '\t')) {
      rest.remove_prefix(1);
    }
    if (rest.empty() || rest.front() == '#') continue;
    std::istringstream fields{std::string(rest)};
    std::string kw, id, phase_kv, label_kv, colon;
    fields >> kw >> id >> phase_kv >> label_kv >> colon;
    if (kw != "rule" || id.empty() || phase_kv.substr(0, 6) != "phase=" ||
        label_kv.substr(0, 6) != "label=" || colon != ":") {
      throw DataError(
          "expected 'rule <id> phase=<1|2> label=<Label> : <atoms>'", line_no);
    }
    PatternRule rule;
    rule.id = id;
    if (!seen_ids.insert(id).second) {
      throw DataError("duplicate rule id '" + id + "'", line_no);
    }
    std::string phase_text = phase_kv.substr(6);
    if (phase_text == "1") {
      rule.phase = 1;
    } else if (phase_text == "2") {
      rule.phase = 2;
    } else {
      throw DataError("phase must be 1 or 2", line_no);
    }
    rule.action_label = label_kv.substr(6);
    if (!tags.contains(rule.action_label)) {
      throw DataError("unknown label '" + rule.action_label + "'", line_no);
    }
    std::string atom_text;
    bool all_context = true;
    while (fields >> atom_text) {
      PatternAtom atom = detail::parse_atom(atom_text, line_no);
      all_context = all_context && atom.context_only;
      rule.atoms.push_back(std::move(atom));
    }
    if (rule.atoms.empty()) {
      throw DataError("rule '" + id + "' has no atoms", line_no);
    }
    if (all_context) {
      throw DataError("rule '" + id + "' has only context atoms", line_no);
    }
    rule.priority = priority++;
    out.rules.push_back(std::move(rule));
  }
  return out;
}

inline RuleSet compile_ruleset(std::string_view text,
                               const corpus::TagSet& tags = {}) {
  std::istringstream in{std::string(text)};
  return compile_ruleset(in, tags);
}

namespace detail {

/// Tries `rule` at `pos`; on success fills consumed length and the
/// non-context sub-range (offsets relative to pos).
inline bool try_match(const PatternRule& rule,
                      const std::vector<TokenView>& tokens, std::size_t pos,
                      std::size_t& consumed, std::size_t& first_core,
                      std::size_t& last_core) {
  if (pos + rule.atoms.size() > tokens.size()) return false;
  bool have_core = false;
  for (std::size_t k = 0; k < rule.atoms.size(); ++k) {
    if (!atom_matches(rule.atoms[k], tokens[pos + k])) return false;
    if (!rule.atoms[k].context_only) {
      if (!have_core) first_core = k;
      last_core = k;
      have_core = true;
    }
  }
  consumed = rule.atoms.size();
  return have_core;
}

/// A match plus the full token range it consumed (context atoms
/// included).
struct ConsumedMatch {
  MatchSpan span;
  std::size_t consumed_start = 0;
  std::size_t consumed_len = 0;
};

inline std::vector<ConsumedMatch> scan_leftmost_longest(
    const std::vector<TokenView>& tokens,
    const std::vector<const PatternRule*>& phase_rules) {
  std::vector<ConsumedMatch> out;
  std::size_t pos = 0;
  while (pos < tokens.size()) {
    const PatternRule* best = nullptr;
    std::size_t best_len = 0, best_first = 0, best_last = 0;
    for (const PatternRule* rule : phase_rules) {
      std::size_t consumed = 0, first_core = 0, last_core = 0;
      if (!detail::try_match(*rule, tokens, pos, consumed, first_core,
                             last_core)) {
        continue;
      }
      if (!best || consumed > best_len ||
          (consumed == best_len && rule->priority < best->priority)) {
        best = rule;
        best_len = consumed;
        best_first = first_core;
        best_last = last_core;
      }
    }
    if (!best) {
      ++pos;
      continue;
    }
    out.push_back(ConsumedMatch{
        MatchSpan{pos + best_first, pos + best_last, best->action_label,
                  best->id},
        pos, best_len});
    pos += best_len;
  }
  return out;
}

}  // namespace detail

/// Leftmost-longest non-overlapping matching of one phase's rules.
/// Scanning left to right, the longest match at the first matching
/// position is taken; among equal-length matches the lowest priority
/// number (earliest in the rule file) wins. All matched tokens including
/// context atoms are consumed; the labeled span excludes the context
/// atoms.
inline std::vector<MatchSpan> match_leftmost_longest(
    const std::vector<TokenView>& tokens,
    const std::vector<const PatternRule*>& phase_rules) {
  std::vector<MatchSpan> out;
  for (detail::ConsumedMatch& m :
       detail::scan_leftmost_longest(tokens, phase_rules)) {
    out.push_back(std::move(m.span));
  }
  return out;
}

/// Two runs of distinct rule phases in succession: phase-1 matches are
/// fixed first and their tokens consumed; phase 2 runs on the remaining
/// contiguous segments. Canonically phase 1 tags lexical place names in
/// personal-name contexts as persons and phase 2 tags what remains as
/// places.
inline std::vector<MatchSpan> apply_two_pass(
    const std::vector<TokenView>& tokens, const RuleSet& ruleset) {
  std::vector<MatchSpan> result;
  std::vector<bool> consumed(tokens.size(), false);

  for (detail::ConsumedMatch& m :
       detail::scan_leftmost_longest(tokens, ruleset.phase(1))) {
    for (std::size_t k = 0; k < m.consumed_len; ++k) {
      consumed[m.consumed_start + k] = true;
    }
    result.push_back(std::move(m.span));
  }

  // Phase 2 over each maximal unconsumed segment.
  const auto phase2 = ruleset.phase(2);
  std::size_t seg_start = 0;
  while (seg_start < tokens.size()) {
    if (consumed[seg_start]) {
      ++seg_start;
      continue;
    }
    std::size_t seg_end = seg_start;
    while (seg_end < tokens.size() && !consumed[seg_end]) ++seg_end;
    std::vector<TokenView> segment(tokens.begin() + seg_start,
                                   tokens.begin() + seg_end);
    for (MatchSpan m : match_leftmost_longest(segment, phase2)) {
      m.start += seg_start;
      m.end += seg_start;
      result.push_back(std::move(m));
    }
    seg_start = seg_end;
  }
  std::sort(result.begin(), result.end(),
            [](const MatchSpan& a, const MatchSpan& b) {
              return a.start < b.start;
            });
  return result;
}

/// In a multi-word name only the last part inflects freely; preceding
/// capitalized words must be nominative or genitive. Returns the
/// [first, last] sub-range of a maximal capitalized run after dropping
/// leading words in other case forms.
inline std::pair<std::size_t, std::size_t> structural_boundary_trim(
    const std::vector<TokenView>& run) {
  if (run.empty()) throw ConfigError("empty capitalized run");
  std::size_t first = 0;
  const std::size_t last = run.size() - 1;
  while (first < last) {
    const std::string& c = run[first].analysis.case_tag;
    if (c.empty() || c == "nom" || c == "gen") break;
    ++first;
  }
  return {first, last};
}

enum class TriggerKind { Corporation, Person };

struct TriggerLexicons {
  std::set<std::string> corp_verbs;  // lemmas or surfaces
  std::set<std::string> party_abbrevs;

  /// TSV columns: word, kind (`corp-verb`|`party`); `#` comments.
  static TriggerLexicons load(std::istream& in) {
    TriggerLexicons out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (line.empty() || line[0] == '#') continue;
      auto tab = line.find('\t');
      if (tab == std::string::npos) {
        throw DataError("trigger row needs 2 columns", line_no);
      }
      std::string word = line.substr(0, tab);
      std::string kind = line.substr(tab + 1);
      if (kind == "corp-verb") {
        out.corp_verbs.insert(word);
      } else if (kind == "party") {
        out.party_abbrevs.insert(word);
      } else {
        throw DataError("unknown trigger kind '" + kind + "'", line_no);
      }
    }
    return out;
  }
};

struct TriggerAnnotation {
  std::size_t trigger_pos = 0;  // token index of the trigger itself
  std::size_t run_start = 0;    // preceding capitalized run
  std::size_t run_end = 0;
  TriggerKind kind = TriggerKind::Corporation;
};

/// Marks positions where a following-context trigger licenses a label
/// for the preceding capitalized run: a corporation verb, a trailing
/// comma- or parenthesis-separated numerical age, or a party
/// abbreviation.
inline std::vector<TriggerAnnotation> context_trigger_match(
    const std::vector<TokenView>& tokens, const TriggerLexicons& triggers) {
  std::vector<TriggerAnnotation> out;
  auto run_before = [&](std::size_t pos, std::size_t& start,
                        std::size_t& end) {
    if (pos == 0 || !tokens[pos - 1].capitalized) return false;
    end = pos - 1;
    start = end;
    while (start > 0 && tokens[start - 1].capitalized) --start;
    return true;
  };
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    std::size_t rs = 0, re = 0;
    const TokenView& t = tokens[i];
    if ((triggers.corp_verbs.count(t.surface) ||
         triggers.corp_verbs.count(t.analysis.lemma)) &&
        run_before(i, rs, re)) {
      out.push_back(TriggerAnnotation{i, rs, re, TriggerKind::Corporation});
      continue;
    }
    if (triggers.party_abbrevs.count(t.surface) && run_before(i, rs, re)) {
      out.push_back(TriggerAnnotation{i, rs, re, TriggerKind::Person});
      continue;
    }
    // ", 45" after a capitalized run
    if (t.surface == "," && i + 1 < tokens.size() &&
        tokens[i + 1].is_number && run_before(i, rs, re)) {
      out.push_back(TriggerAnnotation{i, rs, re, TriggerKind::Person});
      continue;
    }
    // "( 45 )" after a capitalized run
    if (t.surface == "(" && i + 2 < tokens.size() &&
        tokens[i + 1].is_number && tokens[i + 2].surface == ")" &&
        run_before(i, rs, re)) {
      out.push_back(TriggerAnnotation{i, rs, re, TriggerKind::Person});
    }
  }
  return out;
}

/// MatchSpans of one snippet rendered as boundary tags.
inline std::vector<corpus::AnnotatedToken> spans_to_tags(
    const std::vector<MatchSpan>& spans,
    const std::vector<corpus::Token>& tokens) {
  std::vector<corpus::EntitySpan> entity_spans;
  for (const MatchSpan& m : spans) {
    entity_spans.push_back(corpus::EntitySpan{
        m.label, tokens.at(m.start).index, tokens.at(m.end).index,
        tokens.at(m.start).snippet_id});
  }
  return corpus::tags_from_spans(entity_spans, tokens);
}

}  // namespace nerkit::rules

#endif  // NERKIT_RULES_HPP_
