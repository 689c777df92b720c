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
// Multi-source name registries with provenance, merged indexing, and
// exact plus bounded-edit-distance lookup. The fuzzy structure is a
// codepoint trie over all normalized variants, searched with a banded
// edit-distance row so that a lookup touches only the prefixes still
// reachable within the distance budget.

#ifndef NERKIT_GAZETTEER_HPP_
#define NERKIT_GAZETTEER_HPP_

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "nerkit/errors.hpp"
#include "nerkit/morpho.hpp"
#include "nerkit/unicode.hpp"

namespace nerkit::gaz {

enum class EntityClass { Place, PersonFirst, PersonLast };

inline const char* to_string(EntityClass c) {
  switch (c) {
    case EntityClass::Place:
      return "place";
    case EntityClass::PersonFirst:
      return "person-first";
    case EntityClass::PersonLast:
      return "person-last";
  }
  return "place";
}

inline EntityClass entity_class_from(std::string_view s, std::size_t line = 0) {
  if (s == "place") return EntityClass::Place;
  if (s == "person-first") return EntityClass::PersonFirst;
  if (s == "person-last") return EntityClass::PersonLast;
  throw DataError("unknown entity_class '" + std::string(s) + "'", line);
}

struct GazetteerEntry {
  std::string canonical;
  std::vector<std::string> variants;  // canonical always included
  EntityClass entity_class = EntityClass::Place;
  std::optional<std::uint64_t> size;  // population or importance proxy
  std::string source_id;
  std::optional<std::string> external_id;
  std::optional<std::pair<double, double>> coordinates;  // lat, lon degrees
};

/// Textbook Levenshtein distance (insert/delete/substitute, unit costs)
/// over codepoints.
inline unsigned levenshtein(std::string_view a, std::string_view b) {
  std::u32string ua = uni::decode_utf8(a);
  std::u32string ub = uni::decode_utf8(b);
  std::vector<unsigned> row(ub.size() + 1);
  for (std::size_t j = 0; j <= ub.size(); ++j) row[j] = static_cast<unsigned>(j);
  for (std::size_t i = 1; i <= ua.size(); ++i) {
    unsigned diag = row[0];
    row[0] = static_cast<unsigned>(i);
    for (std::size_t j = 1; j <= ub.size(); ++j) {
      unsigned sub = diag + (ua[i - 1] == ub[j - 1] ? 0u : 1u);
      diag = row[j];
      row[j] = std::min({row[j] + 1, row[j - 1] + 1, sub});
    }
  }
  return row[ub.size()];
}

struct FuzzyHit {
  const GazetteerEntry* entry = nullptr;
  std::string variant;  // original (un-normalized) matched variant
  unsigned distance = 0;
};

struct ExactHit {
  const GazetteerEntry* entry = nullptr;
  std::string variant;
};

/// Normalization applied to variants and queries before any comparison:
/// case-folding, optionally preceded by historical w/v substitution.
inline std::string normalize_form(std::string_view s, bool wv_normalize) {
  return uni::casefold(wv_normalize ? morpho::normalize_historical(s) : std::string(s));
}

/// Immutable after build; lookups are pure.
class GazetteerIndex {
 public:
  static constexpr unsigned kDefaultCeiling = 3;

  GazetteerIndex() = default;

  unsigned max_dist_ceiling() const { return ceiling_; }
  bool wv_normalize() const { return wv_; }
  const std::vector<GazetteerEntry>& entries() const { return entries_; }
  const std::vector<std::string>& sources() const { return sources_; }

  std::vector<ExactHit> lookup_exact(std::string_view form) const {
    std::vector<ExactHit> out;
    auto it = exact_.find(normalize_form(form, wv_));
    if (it == exact_.end()) return out;
    // one hit per entry, reporting the smallest matched variant
    std::map<std::uint32_t, std::string> per_entry;
    for (const auto& [entry_id, variant_id] : it->second) {
      const std::string& v = variant_texts_[variant_id];
      auto found = per_entry.find(entry_id);
      if (found == per_entry.end() || v < found->second) {
        per_entry[entry_id] = v;
      }
    }
    for (const auto& [entry_id, variant] : per_entry) {
      out.push_back(ExactHit{&entries_[entry_id], variant});
    }
    return out;
  }

  std::vector<FuzzyHit> lookup_fuzzy(std::string_view form,
                                     unsigned max_dist) const {
    if (max_dist > ceiling_) {
      throw ConfigError("max_dist " + std::to_string(max_dist) +
                        " above the configured ceiling " +
                        std::to_string(ceiling_));
    }
    std::vector<FuzzyHit> out;
    if (max_dist == 0) {
      for (ExactHit& h : lookup_exact_mut(form)) {
        out.push_back(FuzzyHit{h.entry, std::move(h.variant), 0});
      }
      return out;
    }
    std::u32string query = uni::decode_utf8(normalize_form(form, wv_));
    // entry -> (distance, variant); keep minimal distance then smallest
    // variant text for determinism.
    std::map<std::uint32_t, std::pair<unsigned, std::string>> best;
    // one scratch row per trie depth, reused across the whole search
    std::vector<std::vector<unsigned>> rows(
        max_depth_ + 2, std::vector<unsigned>(query.size() + 1));
    for (std::size_t j = 0; j <= query.size(); ++j) {
      rows[0][j] = static_cast<unsigned>(j);
    }
    search_node(root_, query, 0, rows, max_dist, best);
    for (const auto& [entry_id, hit] : best) {
      out.push_back(FuzzyHit{&entries_[entry_id], hit.second, hit.first});
    }
    return out;
  }

  /// Builds the index over a snapshot of `entries`. Construction is
  /// order-independent: entries are sorted before the structures are
  /// filled, so permuted inputs answer identically.
  static GazetteerIndex build(std::vector<GazetteerEntry> entries,
                              bool wv_normalize = false,
                              unsigned ceiling = kDefaultCeiling) {
    GazetteerIndex idx;
    idx.wv_ = wv_normalize;
    idx.ceiling_ = ceiling;
    std::sort(entries.begin(), entries.end(),
              [](const GazetteerEntry& a, const GazetteerEntry& b) {
                return std::tie(a.canonical, a.source_id, a.entity_class) <
                       std::tie(b.canonical, b.source_id, b.entity_class);
              });
    idx.entries_ = std::move(entries);
    idx.root_ = idx.new_node();
    for (std::uint32_t e = 0; e < idx.entries_.size(); ++e) {
      const GazetteerEntry& entry = idx.entries_[e];
      if (std::find(idx.sources_.begin(), idx.sources_.end(),
                    entry.source_id) == idx.sources_.end()) {
        idx.sources_.push_back(entry.source_id);
      }
      for (const std::string& variant : entry.variants) {
        std::string norm = normalize_form(variant, idx.wv_);
        std::uint32_t vid = idx.intern_variant(variant);
        idx.exact_[norm].push_back({e, vid});
        idx.insert_trie(uni::decode_utf8(norm), e, vid);
      }
    }
    for (auto& [norm, hits] : idx.exact_) {
      std::sort(hits.begin(), hits.end());
      hits.erase(std::unique(hits.begin(), hits.end()), hits.end());
    }
    std::sort(idx.sources_.begin(), idx.sources_.end());
    return idx;
  }

 private:
  struct TrieNode {
    // sorted by codepoint; small fan-out in practice
    std::vector<std::pair<char32_t, std::uint32_t>> children;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> terminals;  // entry, variant
  };

  std::vector<ExactHit> lookup_exact_mut(std::string_view form) const {
    return lookup_exact(form);
  }

  std::uint32_t new_node() {
    nodes_.push_back(TrieNode{});
    return static_cast<std::uint32_t>(nodes_.size() - 1);
  }

  std::uint32_t intern_variant(const std::string& text) {
    auto it = variant_ids_.find(text);
    if (it != variant_ids_.end()) return it->second;
    variant_texts_.push_back(text);
    std::uint32_t id = static_cast<std::uint32_t>(variant_texts_.size() - 1);
    variant_ids_.emplace(text, id);
    return id;
  }

  void insert_trie(const std::u32string& word, std::uint32_t entry_id,
                   std::uint32_t variant_id) {
    max_depth_ = std::max(max_depth_, word.size());
    std::uint32_t node = root_;
    for (char32_t c : word) {
      std::size_t off;
      bool present;
      {
        const auto& children = nodes_[node].children;
        auto it = std::lower_bound(
            children.begin(), children.end(), c,
            [](const auto& child, char32_t key) { return child.first < key; });
        off = static_cast<std::size_t>(it - children.begin());
        present = it != children.end() && it->first == c;
        if (present) node = it->second;
      }
      if (!present) {
        std::uint32_t next = new_node();  // may reallocate nodes_
        nodes_[node].children.insert(nodes_[node].children.begin() + off,
                                     {c, next});
        node = next;
      }
    }
    auto& terms = nodes_[node].terminals;
    auto pair = std::make_pair(entry_id, variant_id);
    if (std::find(terms.begin(), terms.end(), pair) == terms.end()) {
      terms.push_back(pair);
      std::sort(terms.begin(), terms.end());
    }
  }

  void search_node(
      std::uint32_t node, const std::u32string& query, std::size_t depth,
      std::vector<std::vector<unsigned>>& rows, unsigned max_dist,
      std::map<std::uint32_t, std::pair<unsigned, std::string>>& best) const {
    const std::vector<unsigned>& row = rows[depth];
    const unsigned dist_here = row[query.size()];
    if (dist_here <= max_dist) {
      for (const auto& [entry_id, variant_id] : nodes_[node].terminals) {
        const std::string& text = variant_texts_[variant_id];
        auto it = best.find(entry_id);
        if (it == best.end() || dist_here < it->second.first ||
            (dist_here == it->second.first && text < it->second.second)) {
          best[entry_id] = {dist_here, text};
        }
      }
    }
    for (const auto& [cp, child] : nodes_[node].children) {
      std::vector<unsigned>& next = rows[depth + 1];
      next[0] = row[0] + 1;
      unsigned row_min = next[0];
      for (std::size_t j = 1; j <= query.size(); ++j) {
        unsigned ins = next[j - 1] + 1;
        unsigned del = row[j] + 1;
        unsigned sub = row[j - 1] + (query[j - 1] == cp ? 0u : 1u);
        next[j] = std::min({ins, del, sub});
        row_min = std::min(row_min, next[j]);
      }
      // prune: every extension of this prefix stays above the budget
      if (row_min <= max_dist) {
        search_node(child, query, depth + 1, rows, max_dist, best);
      }
    }
  }

  std::vector<GazetteerEntry> entries_;
  std::vector<std::string> sources_;
  std::unordered_map<std::string,
                     std::vector<std::pair<std::uint32_t, std::uint32_t>>>
      exact_;
  std::vector<TrieNode> nodes_;
  std::uint32_t root_ = 0;
  std::size_t max_depth_ = 0;
  std::vector<std::string> variant_texts_;
  std::unordered_map<std::string, std::uint32_t> variant_ids_;
  bool wv_ = false;
  unsigned ceiling_ = kDefaultCeiling;
};

/// Registry file: UTF-8 TSV with columns canonical, pipe-separated
/// variants, entity_class, size (`-` unknown), external_id (`-` allowed),
/// latitude, longitude (both `-` allowed); `#` comments ignored.
/// Duplicate canonical rows within one file merge their variant sets.
inline std::vector<GazetteerEntry> load_source(std::istream& in,
                                               const std::string& source_id) {
  std::vector<GazetteerEntry> out;
  std::unordered_map<std::string, std::size_t> by_canonical;
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
    if (cols.size() != 7) {
      throw DataError("registry row needs 7 columns, got " +
                          std::to_string(cols.size()),
                      line_no);
    }
    GazetteerEntry e;
    e.canonical = cols[0];
    if (e.canonical.empty()) throw DataError("empty canonical form", line_no);
    e.variants.push_back(e.canonical);
    if (!cols[1].empty() && cols[1] != "-") {
      std::size_t vpos = 0;
      while (true) {
        auto bar = cols[1].find('|', vpos);
        std::string v = cols[1].substr(vpos, bar - vpos);
        if (!v.empty() &&
            std::find(e.variants.begin(), e.variants.end(), v) ==
                e.variants.end()) {
          e.variants.push_back(v);
        }
        if (bar == std::string::npos) break;
        vpos = bar + 1;
      }
    }
    e.entity_class = entity_class_from(cols[2], line_no);
    if (cols[3] != "-") {
      try {
        long long v = std::stoll(cols[3]);
        if (v < 0) throw std::out_of_range("negative");
        e.size = static_cast<std::uint64_t>(v);
      } catch (const std::exception&) {
        throw DataError("bad size '" + cols[3] + "'", line_no);
      }
    }
    if (cols[4] != "-") e.external_id = cols[4];
    if (cols[5] != "-" || cols[6] != "-") {
      if (cols[5] == "-" || cols[6] == "-") {
        throw DataError("latitude/longitude must both be given or '-'",
                        line_no);
      }
      try {
        e.coordinates = {std::stod(cols[5]), std::stod(cols[6])};
      } catch (const std::exception&) {
        throw DataError("bad coordinates", line_no);
      }
    }
    e.source_id = source_id;
    auto it = by_canonical.find(e.canonical);
    if (it == by_canonical.end()) {
      by_canonical.emplace(e.canonical, out.size());
      out.push_back(std::move(e));
    } else {
      GazetteerEntry& prev = out[it->second];
      for (std::string& v : e.variants) {
        if (std::find(prev.variants.begin(), prev.variants.end(), v) ==
            prev.variants.end()) {
          prev.variants.push_back(std::move(v));
        }
      }
      if (!prev.size && e.size) prev.size = e.size;
      if (!prev.external_id && e.external_id) prev.external_id = e.external_id;
      if (!prev.coordinates && e.coordinates) prev.coordinates = e.coordinates;
    }
  }
  return out;
}

inline std::vector<GazetteerEntry> load_source_file(
    const std::string& path, const std::string& source_id) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open registry file '" + path + "'");
  return load_source(in, source_id);
}

inline GazetteerIndex build_index(std::vector<GazetteerEntry> entries,
                                  bool wv_normalize = false,
                                  unsigned ceiling =
                                      GazetteerIndex::kDefaultCeiling) {
  return GazetteerIndex::build(std::move(entries), wv_normalize, ceiling);
}

/// One row of a query-result log: `name` matched in `source_id` at edit
/// distance `distance` (0 for an exact hit).
struct QueryRecord {
  std::string name;
  std::string source_id;
  unsigned distance = 0;
};

struct SourceContribution {
  std::string source_id;
  std::size_t match_count = 0;        // distinct names matched exactly
  std::size_t fuzzy_match_count = 0;  // distinct names matched at any distance
};

/// Per-source counts of distinct matched names. A name found in k
/// sources increments k counters; fuzzy counts subsume exact ones.
inline std::vector<SourceContribution> source_contributions(
    const std::vector<QueryRecord>& log) {
  std::map<std::string, std::pair<std::vector<std::string>,
                                  std::vector<std::string>>>
      names;  // source -> (exact names, any-distance names)
  for (const QueryRecord& r : log) {
    auto& [exact, fuzzy] = names[r.source_id];
    if (r.distance == 0 &&
        std::find(exact.begin(), exact.end(), r.name) == exact.end()) {
      exact.push_back(r.name);
    }
    if (std::find(fuzzy.begin(), fuzzy.end(), r.name) == fuzzy.end()) {
      fuzzy.push_back(r.name);
    }
  }
  std::vector<SourceContribution> out;
  for (const auto& [source, pair] : names) {
    out.push_back(
        SourceContribution{source, pair.first.size(), pair.second.size()});
  }
  return out;
}

/// Contract for registries reachable over a network: rows come back in
/// registry-file shape; failures surface as LookupError, never as empty
/// result sets. One task at a time per connection.
class RemoteRegistry {
 public:
  virtual ~RemoteRegistry() = default;
  virtual std::vector<GazetteerEntry> query(std::string_view form,
                                            unsigned max_dist) = 0;
};

/// Adapter exposing a local index through the remote-registry contract.
class LocalRegistryClient final : public RemoteRegistry {
 public:
  explicit LocalRegistryClient(const GazetteerIndex* index) : index_(index) {}

  std::vector<GazetteerEntry> query(std::string_view form,
                                    unsigned max_dist) override {
    if (!index_) throw LookupError("registry connection lost", true);
    std::vector<GazetteerEntry> out;
    for (const FuzzyHit& hit : index_->lookup_fuzzy(form, max_dist)) {
      out.push_back(*hit.entry);
    }
    return out;
  }

 private:
  const GazetteerIndex* index_;
};

}  // namespace nerkit::gaz

#endif  // NERKIT_GAZETTEER_HPP_
