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
// Annotated token-per-line corpora.
//
// File format (UTF-8, LF):
//   one record per line:  surface TAB tag
//   tag is `O`, `<Label/>` (one-word entity), `<Label>` (first or interior
//   word of a multiword entity) or `</Label>` (last word);
//   a single blank line terminates a snippet; a trailing blank line is
//   accepted on input but never written, so serialize(parse(f)) == f for
//   canonical files.

#ifndef NERKIT_CORPUS_HPP_
#define NERKIT_CORPUS_HPP_

#include <algorithm>
#include <cstddef>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "nerkit/errors.hpp"

namespace nerkit::corpus {

enum class BoundaryPosition { Outside, Unit, Begin, End };

struct BoundaryTag {
  BoundaryPosition position = BoundaryPosition::Outside;
  std::string label;  // empty iff Outside

  static BoundaryTag outside() { return {}; }
  static BoundaryTag unit(std::string l) {
    return {BoundaryPosition::Unit, std::move(l)};
  }
  static BoundaryTag begin(std::string l) {
    return {BoundaryPosition::Begin, std::move(l)};
  }
  static BoundaryTag end(std::string l) {
    return {BoundaryPosition::End, std::move(l)};
  }
  bool is_outside() const { return position == BoundaryPosition::Outside; }
  bool operator==(const BoundaryTag&) const = default;
};

struct Token {
  std::string surface;
  std::size_t index = 0;       // position within the snippet, from 0
  std::size_t snippet_id = 0;  // 0-based snippet ordinal

  bool operator==(const Token&) const = default;
};

struct AnnotatedToken {
  Token token;
  BoundaryTag tag;

  bool operator==(const AnnotatedToken&) const = default;
};

/// A contiguous labeled token range; `start`/`end` are snippet-local
/// inclusive indices. The unit of strict scoring.
struct EntitySpan {
  std::string label;
  std::size_t start = 0;
  std::size_t end = 0;
  std::size_t snippet_id = 0;

  bool operator==(const EntitySpan&) const = default;
};

class TagSet {
 public:
  TagSet() : labels_(default_labels()) {}
  explicit TagSet(std::vector<std::string> labels)
      : labels_(std::move(labels)) {}

  static std::vector<std::string> default_labels() {
    return {"EnamexPrsHum", "EnamexLocXxx", "EnamexLocGpl", "EnamexLocPpl",
            "EnamexLocStr", "EnamexOrgEdu", "EnamexOrgCrp", "TimexTmeDat"};
  }

  bool contains(std::string_view label) const {
    return std::find(labels_.begin(), labels_.end(), label) != labels_.end();
  }
  const std::vector<std::string>& labels() const { return labels_; }

 private:
  std::vector<std::string> labels_;
};

inline std::string to_string(const BoundaryTag& tag) {
  switch (tag.position) {
    case BoundaryPosition::Outside:
      return "O";
    case BoundaryPosition::Unit:
      return "<" + tag.label + "/>";
    case BoundaryPosition::Begin:
      return "<" + tag.label + ">";
    case BoundaryPosition::End:
      return "</" + tag.label + ">";
  }
  return "O";
}

inline BoundaryTag parse_tag(std::string_view text, const TagSet& tags,
                             std::size_t line = 0) {
  if (text == "O") return BoundaryTag::outside();
  BoundaryTag out;
  if (text.size() >= 4 && text.front() == '<' &&
      text.substr(text.size() - 2) == "/>") {
    out.position = BoundaryPosition::Unit;
    out.label = std::string(text.substr(1, text.size() - 3));
  } else if (text.size() >= 4 && text.substr(0, 2) == "</" &&
             text.back() == '>') {
    out.position = BoundaryPosition::End;
    out.label = std::string(text.substr(2, text.size() - 3));
  } else if (text.size() >= 3 && text.front() == '<' && text.back() == '>') {
    out.position = BoundaryPosition::Begin;
    out.label = std::string(text.substr(1, text.size() - 2));
  } else {
    throw DataError("malformed tag '" + std::string(text) + "'", line);
  }
  if (out.label.empty() || !tags.contains(out.label)) {
    throw DataError("unknown label '" + out.label + "'", line);
  }
  return out;
}

namespace detail {

inline bool has_whitespace(std::string_view s) {
  return s.find_first_of(" \t\r\n\v\f") != std::string_view::npos;
}

}  // namespace detail

/// Parses an annotated corpus. Tokens come back grouped into snippets in
/// input order, with snippet-local indices assigned from 0. Every
/// rejection names the offending line.
inline std::vector<AnnotatedToken> parse_annotated(std::istream& in,
                                                   const TagSet& tags = {}) {
  std::vector<AnnotatedToken> out;
  std::string line;
  std::size_t line_no = 0;
  std::size_t snippet = 0;
  std::size_t index = 0;
  bool snippet_open = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) {
      if (!snippet_open) {
        throw DataError("blank line terminates an empty snippet", line_no);
      }
      ++snippet;
      index = 0;
      snippet_open = false;
      continue;
    }
    const auto tab = line.find('\t');
    if (tab == std::string::npos || line.find('\t', tab + 1) != std::string::npos) {
      throw DataError("expected 'surface<TAB>tag'", line_no);
    }
    std::string surface = line.substr(0, tab);
    std::string tag_text = line.substr(tab + 1);
    if (surface.empty() || detail::has_whitespace(surface)) {
      throw DataError("bad surface field", line_no);
    }
    AnnotatedToken at;
    at.token = Token{std::move(surface), index++, snippet};
    at.tag = parse_tag(tag_text, tags, line_no);
    out.push_back(std::move(at));
    snippet_open = true;
  }
  return out;
}

inline std::vector<AnnotatedToken> parse_annotated(std::string_view text,
                                                   const TagSet& tags = {}) {
  std::istringstream in{std::string(text)};
  return parse_annotated(in, tags);
}

inline void serialize_annotated(const std::vector<AnnotatedToken>& tokens,
                                std::ostream& out) {
  std::size_t prev_snippet = 0;
  bool first = true;
  for (const AnnotatedToken& at : tokens) {
    if (!first && at.token.snippet_id != prev_snippet) out << '\n';
    out << at.token.surface << '\t' << to_string(at.tag) << '\n';
    prev_snippet = at.token.snippet_id;
    first = false;
  }
}

inline std::string serialize_annotated(
    const std::vector<AnnotatedToken>& tokens) {
  std::ostringstream out;
  serialize_annotated(tokens, out);
  return out.str();
}

/// Lenient token reader for unannotated input: accepts bare `surface`
/// lines as well as annotated records (whose tag column is ignored).
inline std::vector<Token> parse_tokens(std::istream& in) {
  std::vector<Token> out;
  std::string line;
  std::size_t line_no = 0;
  std::size_t snippet = 0;
  std::size_t index = 0;
  bool snippet_open = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) {
      if (snippet_open) {
        ++snippet;
        index = 0;
        snippet_open = false;
      }
      continue;
    }
    const auto tab = line.find('\t');
    std::string surface =
        tab == std::string::npos ? line : line.substr(0, tab);
    if (surface.empty() || detail::has_whitespace(surface)) {
      throw DataError("bad surface field", line_no);
    }
    out.push_back(Token{std::move(surface), index++, snippet});
    snippet_open = true;
  }
  return out;
}

inline std::vector<Token> tokens_of(const std::vector<AnnotatedToken>& ats) {
  std::vector<Token> out;
  out.reserve(ats.size());
  for (const AnnotatedToken& at : ats) out.push_back(at.token);
  return out;
}

/// Decodes boundary tags into entity spans. Interior tokens of a
/// multiword entity carry the Begin-form tag, so a well-formed entity is
/// either Unit or Begin..Begin*..End with one label throughout.
inline std::vector<EntitySpan> spans_from_tags(
    const std::vector<AnnotatedToken>& tokens) {
  std::vector<EntitySpan> out;
  bool open = false;
  EntitySpan cur;
  std::size_t record = 0;   // 1-based line of the record in canonical layout
  std::size_t prev_snippet = 0;
  bool first = true;
  auto close_check = [&](std::size_t at_record) {
    if (open) {
      throw BoundaryError("entity '" + cur.label + "' left unclosed",
                          at_record);
    }
  };
  for (const AnnotatedToken& at : tokens) {
    if (!first && at.token.snippet_id != prev_snippet) {
      close_check(record);
      ++record;  // the separating blank line
    }
    ++record;
    prev_snippet = at.token.snippet_id;
    first = false;
    switch (at.tag.position) {
      case BoundaryPosition::Outside:
        close_check(record);
        break;
      case BoundaryPosition::Unit:
        close_check(record);
        out.push_back(EntitySpan{at.tag.label, at.token.index, at.token.index,
                                 at.token.snippet_id});
        break;
      case BoundaryPosition::Begin:
        if (open) {
          if (cur.label != at.tag.label) {
            throw BoundaryError("label mismatch inside entity '" + cur.label +
                                    "'",
                                record);
          }
          cur.end = at.token.index;  // interior token
        } else {
          open = true;
          cur = EntitySpan{at.tag.label, at.token.index, at.token.index,
                           at.token.snippet_id};
        }
        break;
      case BoundaryPosition::End:
        if (!open) {
          throw BoundaryError("End tag without preceding Begin", record);
        }
        if (cur.label != at.tag.label) {
          throw BoundaryError("End label '" + at.tag.label +
                                  "' does not match Begin label '" +
                                  cur.label + "'",
                              record);
        }
        cur.end = at.token.index;
        out.push_back(cur);
        open = false;
        break;
    }
  }
  close_check(record);
  return out;
}

/// Inverse of spans_from_tags on its image. Spans must be non-overlapping
/// and lie within their snippet's token range.
inline std::vector<AnnotatedToken> tags_from_spans(
    const std::vector<EntitySpan>& spans, const std::vector<Token>& tokens) {
  std::vector<AnnotatedToken> out;
  out.reserve(tokens.size());
  for (const Token& t : tokens) {
    out.push_back(AnnotatedToken{t, BoundaryTag::outside()});
  }
  // snippet_id -> position of (snippet, index) in `tokens`
  auto locate = [&](std::size_t snippet, std::size_t index) -> std::size_t {
    for (std::size_t i = 0; i < tokens.size(); ++i) {
      if (tokens[i].snippet_id == snippet && tokens[i].index == index) {
        return i;
      }
    }
    throw DataError("span outside token range (snippet " +
                    std::to_string(snippet) + ", token " +
                    std::to_string(index) + ")");
  };
  std::vector<EntitySpan> sorted = spans;
  std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) {
    return std::tie(a.snippet_id, a.start) < std::tie(b.snippet_id, b.start);
  });
  for (std::size_t s = 0; s < sorted.size(); ++s) {
    const EntitySpan& span = sorted[s];
    if (span.start > span.end) {
      throw DataError("span with start > end");
    }
    if (s > 0 && sorted[s - 1].snippet_id == span.snippet_id &&
        sorted[s - 1].end >= span.start) {
      throw DataError("overlapping spans in snippet " +
                      std::to_string(span.snippet_id));
    }
    for (std::size_t i = span.start; i <= span.end; ++i) {
      std::size_t pos = locate(span.snippet_id, i);
      if (!out[pos].tag.is_outside()) {
        throw DataError("overlapping spans in snippet " +
                        std::to_string(span.snippet_id));
      }
      if (span.start == span.end) {
        out[pos].tag = BoundaryTag::unit(span.label);
      } else if (i == span.end) {
        out[pos].tag = BoundaryTag::end(span.label);
      } else {
        out[pos].tag = BoundaryTag::begin(span.label);
      }
    }
  }
  return out;
}

/// Regroups a flat token sequence into snippets of at most `max_len`
/// tokens. When gold spans are supplied (indexed by flat position, with
/// snippet_id 0), a split is deferred past any span it would cut.
inline std::vector<Token> split_snippets(
    const std::vector<Token>& tokens, std::size_t max_len,
    const std::vector<EntitySpan>* gold = nullptr) {
  if (max_len == 0) throw ConfigError("max_len must be positive");
  std::vector<Token> out;
  out.reserve(tokens.size());
  std::size_t snippet = 0;
  std::size_t index = 0;
  std::size_t count_in_snippet = 0;
  std::size_t deferred_until = 0;  // flat index the current snippet must reach
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (count_in_snippet >= max_len && i >= deferred_until) {
      ++snippet;
      index = 0;
      count_in_snippet = 0;
    }
    if (gold) {
      for (const EntitySpan& span : *gold) {
        if (span.start <= i && i <= span.end && span.end + 1 > deferred_until) {
          deferred_until = span.end + 1;
        }
      }
    }
    out.push_back(Token{tokens[i].surface, index++, snippet});
    ++count_in_snippet;
  }
  return out;
}

}  // namespace nerkit::corpus

#endif  // NERKIT_CORPUS_HPP_
