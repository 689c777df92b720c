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
// Minimal UTF-8 helpers. Decoding is lenient: an invalid byte becomes the
// codepoint 0xDC00|byte (a value valid decoding never yields), so OCR
// garbage round-trips byte-exactly through decode/encode. Case handling
// covers ASCII, Latin-1, Latin Extended-A, Greek and Cyrillic, which is
// what mixed Finnish/Swedish newspaper text needs.

#ifndef NERKIT_UNICODE_HPP_
#define NERKIT_UNICODE_HPP_

#include <string>
#include <string_view>

namespace nerkit::uni {

inline std::u32string decode_utf8(std::string_view in) {
  std::u32string out;
  out.reserve(in.size());
  std::size_t i = 0;
  const auto bad = [&](unsigned char b) { out.push_back(0xDC00u | b); };
  while (i < in.size()) {
    unsigned char b0 = static_cast<unsigned char>(in[i]);
    if (b0 < 0x80) {
      out.push_back(b0);
      ++i;
      continue;
    }
    int len = 0;
    char32_t cp = 0;
    if ((b0 & 0xE0) == 0xC0) {
      len = 2;
      cp = b0 & 0x1F;
    } else if ((b0 & 0xF0) == 0xE0) {
      len = 3;
      cp = b0 & 0x0F;
    } else if ((b0 & 0xF8) == 0xF0) {
      len = 4;
      cp = b0 & 0x07;
    } else {
      bad(b0);
      ++i;
      continue;
    }
    if (i + len > in.size()) {
      bad(b0);
      ++i;
      continue;
    }
    bool ok = true;
    char32_t acc = cp;
    for (int k = 1; k < len; ++k) {
      unsigned char bk = static_cast<unsigned char>(in[i + k]);
      if ((bk & 0xC0) != 0x80) {
        ok = false;
        break;
      }
      acc = (acc << 6) | (bk & 0x3F);
    }
    // Reject overlong forms and surrogates so encode(decode(x)) == x.
    if (ok) {
      if ((len == 2 && acc < 0x80) || (len == 3 && acc < 0x800) ||
          (len == 4 && acc < 0x10000) || acc > 0x10FFFF ||
          (acc >= 0xD800 && acc <= 0xDFFF)) {
        ok = false;
      }
    }
    if (!ok) {
      bad(b0);
      ++i;
      continue;
    }
    out.push_back(acc);
    i += len;
  }
  return out;
}

inline void append_utf8(std::string& out, char32_t cp) {
  if (cp >= 0xDC00 && cp <= 0xDCFF) {  // escaped invalid byte
    out.push_back(static_cast<char>(cp & 0xFF));
  } else if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

inline std::string encode_utf8(std::u32string_view in) {
  std::string out;
  out.reserve(in.size());
  for (char32_t cp : in) append_utf8(out, cp);
  return out;
}

inline bool is_upper(char32_t c) {
  if (c >= U'A' && c <= U'Z') return true;
  if (c >= 0xC0 && c <= 0xDE && c != 0xD7) return true;  // Latin-1 À..Þ
  if (c >= 0x100 && c <= 0x137) return (c % 2) == 0;     // Latin Ext-A pairs
  if (c >= 0x139 && c <= 0x148) return (c % 2) == 1;
  if (c >= 0x14A && c <= 0x177) return (c % 2) == 0;
  if (c == 0x178 || c == 0x179 || c == 0x17B || c == 0x17D) return true;
  if (c >= 0x391 && c <= 0x3A9 && c != 0x3A2) return true;  // Greek Α..Ω
  if (c >= 0x400 && c <= 0x42F) return true;                // Cyrillic
  return false;
}

inline char32_t to_lower(char32_t c) {
  if (c >= U'A' && c <= U'Z') return c + 0x20;
  if (c >= 0xC0 && c <= 0xDE && c != 0xD7) return c + 0x20;
  if (c >= 0x100 && c <= 0x137 && (c % 2) == 0) return c + 1;
  if (c >= 0x139 && c <= 0x148 && (c % 2) == 1) return c + 1;
  if (c >= 0x14A && c <= 0x177 && (c % 2) == 0) return c + 1;
  if (c == 0x178) return 0xFF;
  if (c == 0x179 || c == 0x17B || c == 0x17D) return c + 1;
  if (c >= 0x391 && c <= 0x3A9 && c != 0x3A2) return c + 0x20;
  if (c >= 0x410 && c <= 0x42F) return c + 0x20;
  if (c >= 0x400 && c <= 0x40F) return c + 0x50;
  return c;
}

/// Lower-cases every codepoint; invalid bytes pass through unchanged.
inline std::string casefold(std::string_view s) {
  std::u32string cps = decode_utf8(s);
  for (char32_t& c : cps) c = to_lower(c);
  return encode_utf8(cps);
}

/// True when the first codepoint is an uppercase letter.
inline bool starts_uppercase(std::string_view s) {
  std::u32string cps = decode_utf8(s);
  return !cps.empty() && is_upper(cps[0]);
}

}  // namespace nerkit::uni

#endif  // NERKIT_UNICODE_HPP_
