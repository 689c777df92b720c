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

#include <algorithm>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include "nerkit/gazetteer.hpp"

using namespace nerkit;
using gaz::GazetteerEntry;
using gaz::GazetteerIndex;

namespace {

// Test-local textbook Levenshtein, independent of the library path.
unsigned reference_levenshtein(const std::u32string& a,
                               const std::u32string& b) {
  std::vector<std::vector<unsigned>> d(a.size() + 1,
                                       std::vector<unsigned>(b.size() + 1));
  for (std::size_t i = 0; i <= a.size(); ++i) d[i][0] = i;
  for (std::size_t j = 0; j <= b.size(); ++j) d[0][j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    for (std::size_t j = 1; j <= b.size(); ++j) {
      d[i][j] = std::min({d[i - 1][j] + 1, d[i][j - 1] + 1,
                          d[i - 1][j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1)});
    }
  }
  return d[a.size()][b.size()];
}

unsigned reference_levenshtein(std::string_view a, std::string_view b) {
  return reference_levenshtein(uni::decode_utf8(a), uni::decode_utf8(b));
}

std::vector<GazetteerEntry> fixture_entries() {
  std::istringstream pnr(
      "Helsinki\tHelsingfors\tplace\t600000\tpnr:1\t60.17\t24.94\n"
      "Tampere\t-\tplace\t200000\tpnr:2\t61.50\t23.76\n"
      "Vaasa\tNikolainkaupunki|Wasa\tplace\t60000\tpnr:3\t-\t-\n"
      "Virtamaa\t-\tplace\t120\t-\t-\t-\n");
  std::istringstream geo(
      "New York\t-\tplace\t3400000\tgeo:5128581\t40.71\t-74.00\n"
      "Tukholma\tStockholm\tplace\t300000\tgeo:2673730\t-\t-\n"
      "Helsinki\t-\tplace\t600000\tgeo:658225\t-\t-\n");
  auto entries = gaz::load_source(pnr, "pnr");
  auto more = gaz::load_source(geo, "geonames");
  entries.insert(entries.end(), more.begin(), more.end());
  return entries;
}

}  // namespace

TEST_CASE("load_source parses registry rows with provenance") {
  SECTION("empty file") {
    std::istringstream in("");
    CHECK(gaz::load_source(in, "x").empty());
  }
  SECTION("a full row") {
    std::istringstream in("Tampere\t-\tplace\t200000\tpnr:2\t61.50\t23.76\n");
    auto entries = gaz::load_source(in, "pnr");
    REQUIRE(entries.size() == 1);
    CHECK(entries[0].canonical == "Tampere");
    CHECK(entries[0].entity_class == gaz::EntityClass::Place);
    CHECK(entries[0].size == 200000);
    CHECK(entries[0].source_id == "pnr");
    CHECK(entries[0].external_id == "pnr:2");
    REQUIRE(entries[0].coordinates.has_value());
    CHECK(entries[0].coordinates->first == Catch::Approx(61.50));
  }
  SECTION("duplicate canonical rows merge their variants") {
    std::istringstream in(
        "Vaasa\tWasa\tplace\t60000\t-\t-\t-\n"
        "Vaasa\tNikolainkaupunki\tplace\t-\t-\t-\t-\n");
    auto entries = gaz::load_source(in, "pnr");
    REQUIRE(entries.size() == 1);
    CHECK(entries[0].variants.size() == 3);
    CHECK(entries[0].size == 60000);
  }
  SECTION("malformed rows carry line numbers") {
    std::istringstream in("Vaasa\tonly\tthree\n");
    try {
      gaz::load_source(in, "pnr");
      FAIL("expected DataError");
    } catch (const DataError& e) {
      CHECK(e.line() == 1);
    }
  }
}

TEST_CASE("build_index answers exact lookups over all variants") {
  auto index = gaz::build_index(fixture_entries());
  SECTION("canonical and variant forms are findable") {
    CHECK(index.lookup_exact("Helsinki").size() == 2);  // pnr + geonames
    CHECK(index.lookup_exact("Helsingfors").size() == 1);
    CHECK(index.lookup_exact("Nikolainkaupunki").size() == 1);
  }
  SECTION("absent names return the empty set") {
    CHECK(index.lookup_exact("Atlantis").empty());
  }
  SECTION("lookups are case-normalized") {
    auto upper = index.lookup_exact("HELSINKI");
    auto plain = index.lookup_exact("Helsinki");
    REQUIRE(upper.size() == plain.size());
    for (std::size_t i = 0; i < upper.size(); ++i) {
      CHECK(upper[i].entry == plain[i].entry);
    }
  }
  SECTION("empty index answers nothing") {
    auto empty = gaz::build_index({});
    CHECK(empty.lookup_exact("Helsinki").empty());
    CHECK(empty.lookup_fuzzy("Helsinki", 2).empty());
  }
}

TEST_CASE("index answers are independent of input order") {
  auto entries = fixture_entries();
  auto index_a = gaz::build_index(entries);
  std::mt19937_64 rng(5);
  for (int round = 0; round < 10; ++round) {
    std::shuffle(entries.begin(), entries.end(), rng);
    auto index_b = gaz::build_index(entries);
    for (const char* q :
         {"Helsinki", "Helsingfors", "Helsiuki", "Tampere", "Vasa", "zz"}) {
      auto a = index_b.lookup_fuzzy(q, 2);
      auto b = index_a.lookup_fuzzy(q, 2);
      REQUIRE(a.size() == b.size());
      for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].entry->canonical == b[i].entry->canonical);
        CHECK(a[i].entry->source_id == b[i].entry->source_id);
        CHECK(a[i].variant == b[i].variant);
        CHECK(a[i].distance == b[i].distance);
      }
    }
  }
}

TEST_CASE("lookup_fuzzy finds OCR-distorted forms") {
  auto index = gaz::build_index(fixture_entries());
  SECTION("single substitution at distance 1") {
    auto hits = index.lookup_fuzzy("Helsiuki", 1);
    REQUIRE(hits.size() == 2);  // both Helsinki entries
    CHECK(hits[0].distance == 1);
    CHECK(reference_levenshtein("helsiuki", "helsinki") == 1);
  }
  SECTION("beyond max_dist stays empty") {
    CHECK(reference_levenshtein("helsxuki", "helsinki") == 2);
    CHECK(index.lookup_fuzzy("Helsxuki", 1).empty());
    CHECK_FALSE(index.lookup_fuzzy("Helsxuki", 2).empty());
  }
  SECTION("distance 0 equals lookup_exact") {
    for (const char* q : {"Helsinki", "Wasa", "Tukholma", "absent"}) {
      auto fuzzy = index.lookup_fuzzy(q, 0);
      auto exact = index.lookup_exact(q);
      REQUIRE(fuzzy.size() == exact.size());
      for (std::size_t i = 0; i < fuzzy.size(); ++i) {
        CHECK(fuzzy[i].entry == exact[i].entry);
        CHECK(fuzzy[i].variant == exact[i].variant);
        CHECK(fuzzy[i].distance == 0);
      }
    }
  }
  SECTION("requests above the ceiling are configuration errors") {
    CHECK_THROWS_AS(index.lookup_fuzzy("Helsinki", 4), ConfigError);
  }
}

TEST_CASE("fuzzy results match a brute-force scan and grow with distance") {
  std::mt19937_64 rng(17);
  // deterministic pseudo-Finnish word list
  auto word = [&rng]() {
    static const std::string alphabet = "aehiklmnoprstuvy";
    std::string w;
    std::size_t len = 3 + rng() % 8;
    for (std::size_t i = 0; i < len; ++i) {
      w.push_back(alphabet[rng() % alphabet.size()]);
    }
    w[0] = static_cast<char>(w[0] - 'a' + 'A');
    return w;
  };
  std::vector<GazetteerEntry> entries;
  std::set<std::string> seen;
  while (entries.size() < 500) {
    std::string w = word();
    if (!seen.insert(w).second) continue;
    GazetteerEntry e;
    e.canonical = w;
    e.variants = {w};
    e.source_id = "gen";
    entries.push_back(std::move(e));
  }
  auto index = gaz::build_index(entries);
  for (int round = 0; round < 300; ++round) {
    std::string q = word();
    std::vector<std::set<std::string>> by_dist;
    for (unsigned d = 0; d <= 2; ++d) {
      std::set<std::string> got;
      for (const auto& hit : index.lookup_fuzzy(q, d)) {
        got.insert(hit.entry->canonical);
        CHECK(hit.distance ==
              reference_levenshtein(uni::casefold(q),
                                    uni::casefold(hit.variant)));
      }
      std::set<std::string> expected;
      for (const auto& e : entries) {
        if (reference_levenshtein(uni::casefold(q),
                                  uni::casefold(e.canonical)) <= d) {
          expected.insert(e.canonical);
        }
      }
      REQUIRE(got == expected);
      by_dist.push_back(std::move(got));
    }
    // monotonicity: results(d) subset of results(d+1)
    for (unsigned d = 0; d + 1 < by_dist.size(); ++d) {
      CHECK(std::includes(by_dist[d + 1].begin(), by_dist[d + 1].end(),
                          by_dist[d].begin(), by_dist[d].end()));
    }
  }
}

TEST_CASE("levenshtein equals the textbook definition on random pairs") {
  std::mt19937_64 rng(23);
  auto word = [&rng]() {
    static const std::u32string alphabet = U"abcäö";
    std::u32string w;
    std::size_t len = rng() % 8;
    for (std::size_t i = 0; i < len; ++i) {
      w.push_back(alphabet[rng() % alphabet.size()]);
    }
    return uni::encode_utf8(w);
  };
  for (int i = 0; i < 500; ++i) {
    std::string a = word(), b = word();
    CHECK(gaz::levenshtein(a, b) == reference_levenshtein(a, b));
    CHECK(gaz::levenshtein(a, b) == gaz::levenshtein(b, a));
  }
}

TEST_CASE("source_contributions counts distinct names per source") {
  SECTION("no results -> empty") {
    CHECK(gaz::source_contributions({}).empty());
  }
  SECTION("a name found in two sources credits both once") {
    std::vector<gaz::QueryRecord> log{
        {"Helsinki", "pnr", 0},
        {"Helsinki", "geonames", 0},
        {"Helsinki", "pnr", 0},  // duplicate
    };
    auto contributions = gaz::source_contributions(log);
    REQUIRE(contributions.size() == 2);
    for (const auto& c : contributions) {
      CHECK(c.match_count == 1);
      CHECK(c.fuzzy_match_count == 1);
    }
  }
  SECTION("fuzzy counts subsume exact counts") {
    std::mt19937_64 rng(29);
    for (int round = 0; round < 50; ++round) {
      std::vector<gaz::QueryRecord> log;
      std::size_t n = rng() % 40;
      for (std::size_t i = 0; i < n; ++i) {
        log.push_back({"name" + std::to_string(rng() % 10),
                       rng() % 2 ? "pnr" : "sapo",
                       static_cast<unsigned>(rng() % 3)});
      }
      for (const auto& c : gaz::source_contributions(log)) {
        CHECK(c.fuzzy_match_count >= c.match_count);
      }
    }
  }
}

TEST_CASE("local registry client honours the remote contract") {
  auto index = gaz::build_index(fixture_entries());
  gaz::LocalRegistryClient client(&index);
  gaz::RemoteRegistry& remote = client;
  auto rows = remote.query("Helsiuki", 1);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].canonical == "Helsinki");

  gaz::LocalRegistryClient broken(nullptr);
  CHECK_THROWS_AS(broken.query("Helsinki", 1), LookupError);
  try {
    broken.query("Helsinki", 1);
  } catch (const LookupError& e) {
    CHECK(e.retryable());
  }
}
