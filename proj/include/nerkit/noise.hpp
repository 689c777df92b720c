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
// Deterministic OCR-noise simulation: single-character errors down to a
// target word-accuracy level, adjacent word swaps, and hyphenation
// splits. All randomness flows from the seed; identical (input, config)
// gives identical output.

#ifndef NERKIT_NOISE_HPP_
#define NERKIT_NOISE_HPP_

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "nerkit/corpus.hpp"
#include "nerkit/errors.hpp"
#include "nerkit/morpho.hpp"
#include "nerkit/unicode.hpp"

namespace nerkit::noise {

enum class CharOp { Substitute, Delete, Insert };

struct NoiseConfig {
  double target_word_accuracy = 1.0;
  std::vector<CharOp> char_ops = {CharOp::Substitute, CharOp::Delete,
                                  CharOp::Insert};
  double word_swap_rate = 0.0;
  double hyphen_split_rate = 0.0;
  std::uint64_t seed = 0;
};

namespace detail {

inline void check_rate(double v, const char* what) {
  if (v < 0.0 || v > 1.0) {
    throw ConfigError(std::string(what) + " must lie in [0, 1]");
  }
}

// Explicit modulo reduction; std::uniform_int_distribution is not
// byte-stable across standard libraries.
inline std::uint64_t below(std::mt19937_64& rng, std::uint64_t n) {
  return n == 0 ? 0 : rng() % n;
}

inline double unit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * (1.0 / 9007199254740992.0);
}

inline const std::u32string& edit_alphabet() {
  static const std::u32string alphabet =
      U"abcdefghijklmnopqrstuvwxyzäö";
  return alphabet;
}

/// One random single-character edit at codepoint level.
inline std::string corrupt_once(const std::string& surface,
                                const std::vector<CharOp>& ops,
                                std::mt19937_64& rng) {
  std::u32string cps = uni::decode_utf8(surface);
  if (cps.empty()) return surface;
  std::vector<CharOp> usable = ops;
  if (cps.size() == 1) {
    usable.erase(std::remove(usable.begin(), usable.end(), CharOp::Delete),
                 usable.end());
  }
  if (usable.empty()) usable.push_back(CharOp::Substitute);
  CharOp op = usable[below(rng, usable.size())];
  const std::u32string& alphabet = edit_alphabet();
  switch (op) {
    case CharOp::Substitute: {
      std::size_t pos = below(rng, cps.size());
      std::size_t ai = below(rng, alphabet.size());
      if (alphabet[ai] == cps[pos]) ai = (ai + 1) % alphabet.size();
      cps[pos] = alphabet[ai];
      break;
    }
    case CharOp::Delete:
      cps.erase(cps.begin() + below(rng, cps.size()));
      break;
    case CharOp::Insert: {
      std::size_t pos = below(rng, cps.size() + 1);
      cps.insert(cps.begin() + pos, alphabet[below(rng, alphabet.size())]);
      break;
    }
  }
  return uni::encode_utf8(cps);
}

}  // namespace detail

/// Corrupts uniformly chosen lexicon-known tokens (without replacement,
/// one single-character edit each) until the recognition rate first
/// falls to or below the target. Deterministic given the seed.
inline std::vector<corpus::Token> inject_char_errors(
    const std::vector<corpus::Token>& tokens, const NoiseConfig& config,
    const morpho::MorphLexicon& lexicon) {
  detail::check_rate(config.target_word_accuracy, "target_word_accuracy");
  if (tokens.empty()) return {};
  const double current = morpho::recognition_rate(tokens, lexicon);
  if (config.target_word_accuracy > current) {
    throw ConfigError("target word accuracy above the current rate");
  }
  std::vector<corpus::Token> out = tokens;
  std::mt19937_64 rng(config.seed);
  std::vector<std::size_t> known;
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (lexicon.find(out[i].surface)) known.push_back(i);
  }
  std::size_t known_count = known.size();
  const double n = static_cast<double>(out.size());
  while (!known.empty() &&
         static_cast<double>(known_count) / n > config.target_word_accuracy) {
    std::size_t pick = detail::below(rng, known.size());
    std::size_t idx = known[pick];
    known.erase(known.begin() + pick);
    out[idx].surface =
        detail::corrupt_once(out[idx].surface, config.char_ops, rng);
    if (!lexicon.find(out[idx].surface)) --known_count;
  }
  return out;
}

/// Adjacent-pair swaps at word_swap_rate within each snippet. Surfaces
/// are unchanged, so the surface multiset is preserved.
inline std::vector<corpus::Token> inject_word_order_errors(
    const std::vector<corpus::Token>& tokens, const NoiseConfig& config) {
  detail::check_rate(config.word_swap_rate, "word_swap_rate");
  std::vector<corpus::Token> out = tokens;
  std::mt19937_64 rng(config.seed);
  std::size_t i = 0;
  while (i + 1 < out.size()) {
    if (out[i].snippet_id != out[i + 1].snippet_id) {
      ++i;
      continue;
    }
    if (detail::unit(rng) < config.word_swap_rate) {
      std::swap(out[i].surface, out[i + 1].surface);
      i += 2;
    } else {
      ++i;
    }
  }
  return out;
}

/// Splits selected tokens of length >= 4 codepoints into two tokens with
/// a trailing hyphen on the first part, the way column breaks split
/// words. Token indices are rebuilt per snippet.
inline std::vector<corpus::Token> inject_hyphenation_splits(
    const std::vector<corpus::Token>& tokens, const NoiseConfig& config) {
  detail::check_rate(config.hyphen_split_rate, "hyphen_split_rate");
  std::vector<corpus::Token> out;
  out.reserve(tokens.size());
  std::mt19937_64 rng(config.seed);
  std::size_t index = 0;
  std::size_t snippet = tokens.empty() ? 0 : tokens[0].snippet_id;
  for (const corpus::Token& t : tokens) {
    if (t.snippet_id != snippet) {
      snippet = t.snippet_id;
      index = 0;
    }
    std::u32string cps = uni::decode_utf8(t.surface);
    if (cps.size() >= 4 && detail::unit(rng) < config.hyphen_split_rate) {
      std::size_t cut = 1 + detail::below(rng, cps.size() - 1);
      std::string head = uni::encode_utf8(cps.substr(0, cut)) + "-";
      std::string tail = uni::encode_utf8(cps.substr(cut));
      out.push_back(corpus::Token{std::move(head), index++, snippet});
      out.push_back(corpus::Token{std::move(tail), index++, snippet});
    } else {
      out.push_back(corpus::Token{t.surface, index++, snippet});
    }
  }
  return out;
}

}  // namespace nerkit::noise

#endif  // NERKIT_NOISE_HPP_
