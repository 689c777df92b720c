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

#include <random>
#include <string>

#include <catch2/catch_amalgamated.hpp>

#include "nerkit/unicode.hpp"

using namespace nerkit;

TEST_CASE("decode/encode round-trips arbitrary byte strings") {
  // OCR output contains broken multi-byte sequences; they must survive
  // a decode/encode cycle byte-exactly.
  std::mt19937_64 rng(19);
  for (int round = 0; round < 500; ++round) {
    std::string bytes;
    std::size_t len = rng() % 24;
    for (std::size_t i = 0; i < len; ++i) {
      bytes.push_back(static_cast<char>(rng() & 0xFF));
    }
    CHECK(uni::encode_utf8(uni::decode_utf8(bytes)) == bytes);
  }
}

TEST_CASE("valid sequences decode to their codepoints") {
  auto cps = uni::decode_utf8("Väinö");
  REQUIRE(cps.size() == 5);
  CHECK(cps[1] == 0xE4);  // ä
  CHECK(cps[4] == 0xF6);  // ö
}

TEST_CASE("case classification covers the newspaper alphabets") {
  CHECK(uni::starts_uppercase("Helsinki"));
  CHECK(uni::starts_uppercase("Åbo"));
  CHECK(uni::starts_uppercase("Ähtäri"));
  CHECK(uni::starts_uppercase("Öljymäki"));
  CHECK_FALSE(uni::starts_uppercase("helsinki"));
  CHECK_FALSE(uni::starts_uppercase("ähtäri"));
  CHECK_FALSE(uni::starts_uppercase("123"));
  CHECK_FALSE(uni::starts_uppercase(""));
}

TEST_CASE("casefold lowers Latin letters and leaves the rest alone") {
  CHECK(uni::casefold("HELSINKI") == "helsinki");
  CHECK(uni::casefold("Åbo") == "åbo");
  CHECK(uni::casefold("VÄINÖ") == "väinö");
  CHECK(uni::casefold("x-3,7") == "x-3,7");

  std::mt19937_64 rng(23);
  for (int round = 0; round < 200; ++round) {
    std::string bytes;
    for (int i = 0; i < 12; ++i) {
      bytes.push_back(static_cast<char>(rng() & 0xFF));
    }
    auto once = uni::casefold(bytes);
    CHECK(uni::casefold(once) == once);
  }
}
