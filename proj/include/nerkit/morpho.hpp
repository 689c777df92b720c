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
// Pluggable morphological analysis backed by a plain TSV lexicon:
// lookup, most-probable-analysis disambiguation, suffix-analogy guessing
// for out-of-vocabulary words, and historical w/v normalization.

#ifndef NERKIT_MORPHO_HPP_
#define NERKIT_MORPHO_HPP_

#include <algorithm>
#include <cassert>
#include <cstddef>
#include <fstream>
#include <istream>
#include <sstream>
#include <string>
#include <string_view>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "nerkit/corpus.hpp"
#include "nerkit/errors.hpp"

namespace nerkit::morpho {

enum class NameClass { None, Place, Person };

struct MorphAnalysis {
  std::string lemma;
  std::string pos;
  std::string case_tag;  // empty when not applicable
  NameClass name_class = NameClass::None;
  double frequency_weight = 0.0;
  bool guessed = false;

  bool operator==(const MorphAnalysis&) const = default;
};

/// Immutable after load; all lookups are pure.
class MorphLexicon {
 public:
  MorphLexicon() = default;

  void add(std::string surface, MorphAnalysis analysis) {
    entries_[surface].push_back(std::move(analysis));
    std::string rev(surface.rbegin(), surface.rend());
    suffix_index_.push_back({std::move(rev), std::move(surface)});
    sorted_ = false;
  }

  /// Lexicon file: TSV columns surface, lemma, pos, case_tag (`-`),
  /// name_class (`place`|`person`|`-`), frequency_weight; `#` comments.
  static MorphLexicon load(std::istream& in) {
    MorphLexicon lex;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (line.empty() || line[0] == '#') continue;
      std::vector<std::string> cols;
      std::size_t pos = 0;
      while (true) {
        auto tab = line.find('\t', pos);
        cols.push_back(line.substr(pos, tab - pos));
        if (tab == std::string::npos) break;
        pos = tab + 1;
      }
      if (cols.size() != 6) {
        throw DataError("lexicon row needs 6 columns, got " +
                            std::to_string(cols.size()),
                        line_no);
      }
      MorphAnalysis a;
      a.lemma = cols[1];
      a.pos = cols[2];
      a.case_tag = cols[3] == "-" ? "" : cols[3];
      if (cols[4] == "place") {
        a.name_class = NameClass::Place;
      } else if (cols[4] == "person") {
        a.name_class = NameClass::Person;
      } else if (cols[4] == "-") {
        a.name_class = NameClass::None;
      } else {
        throw DataError("unknown name_class '" + cols[4] + "'", line_no);
      }
      try {
        a.frequency_weight = std::stod(cols[5]);
      } catch (const std::exception&) {
        throw DataError("bad frequency_weight '" + cols[5] + "'", line_no);
      }
      if (a.frequency_weight < 0) {
        throw DataError("negative frequency_weight", line_no);
      }
      lex.add(cols[0], std::move(a));
    }
    lex.finish();
    return lex;
  }

  static MorphLexicon load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open lexicon file '" + path + "'");
    return load(in);
  }

  void finish() {
    std::sort(suffix_index_.begin(), suffix_index_.end());
    suffix_index_.erase(
        std::unique(suffix_index_.begin(), suffix_index_.end()),
        suffix_index_.end());
    sorted_ = true;
  }

  const std::vector<MorphAnalysis>* find(std::string_view surface) const {
    auto it = entries_.find(std::string(surface));
    return it == entries_.end() ? nullptr : &it->second;
  }

  std::size_t size() const { return entries_.size(); }

  // (reversed surface, surface), sorted by reversed form
  const std::vector<std::pair<std::string, std::string>>& suffix_index()
      const {
    return suffix_index_;
  }
  bool sorted() const { return sorted_; }

 private:
  std::unordered_map<std::string, std::vector<MorphAnalysis>> entries_;
  std::vector<std::pair<std::string, std::string>> suffix_index_;
  bool sorted_ = false;
};

/// All lexicon analyses of `surface`; empty when unknown.
inline std::vector<MorphAnalysis> analyze(std::string_view surface,
                                          const MorphLexicon& lexicon) {
  const auto* found = lexicon.find(surface);
  return found ? *found : std::vector<MorphAnalysis>{};
}

/// The analysis with maximal frequency_weight; ties broken by
/// lexicographic lemma order, then pos order.
inline MorphAnalysis disambiguate(const std::vector<MorphAnalysis>& analyses) {
  if (analyses.empty()) {
    throw ConfigError("disambiguate requires a non-empty analysis set");
  }
  const MorphAnalysis* best = &analyses[0];
  for (const MorphAnalysis& a : analyses) {
    if (a.frequency_weight > best->frequency_weight) {
      best = &a;
    } else if (a.frequency_weight == best->frequency_weight) {
      if (std::tie(a.lemma, a.pos) < std::tie(best->lemma, best->pos)) {
        best = &a;
      }
    }
  }
  return *best;
}

namespace detail {

inline std::size_t common_suffix_len(std::string_view a, std::string_view b) {
  std::size_t n = 0;
  while (n < a.size() && n < b.size() &&
         a[a.size() - 1 - n] == b[b.size() - 1 - n]) {
    ++n;
  }
  return n;
}

inline std::size_t common_prefix_len(std::string_view a, std::string_view b) {
  std::size_t n = 0;
  while (n < a.size() && n < b.size() && a[n] == b[n]) ++n;
  return n;
}

}  // namespace detail

/// Guesses an analysis for an out-of-vocabulary surface by analogy with
/// the lexicon entry sharing the longest common suffix (>= min_suffix).
/// The guessed lemma applies the entry's surface->lemma tail change to
/// the unknown word. Falls back to an unknown-word analysis.
inline MorphAnalysis guess(std::string_view surface,
                           const MorphLexicon& lexicon,
                           std::size_t min_suffix = 3) {
  assert(lexicon.find(surface) == nullptr && "guess called on a known word");
  MorphAnalysis unknown;
  unknown.lemma = std::string(surface);
  unknown.pos = "unknown";
  unknown.guessed = true;
  if (!lexicon.sorted() || lexicon.suffix_index().empty() || surface.empty()) {
    return unknown;
  }
  const auto& idx = lexicon.suffix_index();
  std::string rev(surface.rbegin(), surface.rend());
  auto it = std::lower_bound(
      idx.begin(), idx.end(), rev,
      [](const auto& row, const std::string& key) { return row.first < key; });
  // The best suffix match is adjacent to the insertion point; scan both
  // neighbours and keep the longest (ties: lexicographically smallest
  // surface, which the sorted index yields by preferring the left side).
  std::size_t best_len = 0;
  const std::string* best_surface = nullptr;
  auto consider = [&](const std::pair<std::string, std::string>& row) {
    if (row.second == surface) return;  // not an analogy, the word itself
    std::size_t len = detail::common_prefix_len(row.first, rev);
    if (len > best_len ||
        (len == best_len && best_surface && row.second < *best_surface)) {
      best_len = len;
      best_surface = &row.second;
    }
  };
  if (it != idx.end()) consider(*it);
  if (it != idx.begin()) consider(*std::prev(it));
  if (best_len < min_suffix || !best_surface) return unknown;

  MorphAnalysis base = disambiguate(*lexicon.find(*best_surface));
  MorphAnalysis out = base;
  out.guessed = true;
  out.frequency_weight = 0.0;
  // Transfer the surface->lemma tail rewrite onto the unknown word.
  std::size_t keep = detail::common_prefix_len(*best_surface, base.lemma);
  std::string_view entry_tail =
      std::string_view(*best_surface).substr(keep);
  std::string_view lemma_tail = std::string_view(base.lemma).substr(keep);
  if (entry_tail.size() <= surface.size() &&
      surface.substr(surface.size() - entry_tail.size()) == entry_tail) {
    out.lemma = std::string(surface.substr(0, surface.size() - entry_tail.size())) +
                std::string(lemma_tail);
  } else {
    out.lemma = std::string(surface);
  }
  return out;
}

/// 19th-century orthography wrote v as w; neutralize it. Idempotent and
/// length-preserving.
inline std::string normalize_historical(std::string_view surface) {
  std::string out(surface);
  for (char& c : out) {
    if (c == 'w') c = 'v';
    if (c == 'W') c = 'V';
  }
  return out;
}

/// Fraction of tokens the lexicon recognizes; the proxy for OCR quality.
inline double recognition_rate(const std::vector<corpus::Token>& tokens,
                               const MorphLexicon& lexicon) {
  if (tokens.empty()) {
    throw ConfigError("recognition rate undefined for an empty sequence");
  }
  std::size_t known = 0;
  for (const corpus::Token& t : tokens) {
    if (lexicon.find(t.surface)) ++known;
  }
  return static_cast<double>(known) / static_cast<double>(tokens.size());
}

}  // namespace nerkit::morpho

#endif  // NERKIT_MORPHO_HPP_
