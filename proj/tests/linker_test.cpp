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

#include <cstdint>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include "nerkit/corpus.hpp"
#include "nerkit/gazetteer.hpp"
#include "nerkit/linker.hpp"
#include "nerkit/morpho.hpp"

using namespace nerkit;
using corpus::Token;
using linker::LinkCandidate;
using linker::LinkerConfig;
using linker::NameAuthority;

namespace {

morpho::MorphLexicon fixture_lexicon() {
  std::istringstream in(
      "Helsinki\tHelsinki\tpropn\tnom\tplace\t9\n"
      "Helsingissä\tHelsinki\tpropn\tine\tplace\t6\n"
      "Tampere\tTampere\tpropn\tnom\tplace\t8\n"
      "Vaasa\tVaasa\tpropn\tnom\tplace\t6\n"
      "Vaasassa\tVaasa\tpropn\tine\tplace\t4\n"
      "Lahti\tLahti\tpropn\tnom\tplace\t5\n"
      "Lahti\tLahti\tpropn\tnom\tperson\t3\n"
      "Juho\tJuho\tpropn\tnom\tperson\t6\n"
      "asuu\tasua\tverb\t-\t-\t5\n"
      "ja\tja\tconj\t-\t-\t9\n");
  return morpho::MorphLexicon::load(in);
}

gaz::GazetteerIndex fixture_index(bool wv = false) {
  std::istringstream pnr(
      "Helsinki\tHelsingfors\tplace\t600000\tpnr:1\t-\t-\n"
      "Tampere\t-\tplace\t200000\tpnr:2\t-\t-\n"
      "Vaasa\tWasa\tplace\t60000\tpnr:3\t-\t-\n"
      "Virtamaa\t-\tplace\t120\t-\t-\t-\n"
      "Lahti\t-\tplace\t4000\tpnr:4\t-\t-\n");
  std::istringstream geo("New York\t-\tplace\t3400000\tgeo:1\t-\t-\n");
  auto entries = gaz::load_source(pnr, "pnr");
  auto more = gaz::load_source(geo, "geonames");
  entries.insert(entries.end(), more.begin(), more.end());
  return gaz::build_index(std::move(entries), wv);
}

std::vector<Token> toks(std::initializer_list<const char*> surfaces) {
  std::vector<Token> out;
  std::size_t i = 0;
  for (const char* s : surfaces) out.push_back(Token{s, i++, 0});
  return out;
}

}  // namespace

TEST_CASE("link_places pipeline: analyze, lemma lookup, fuzzy fallback") {
  auto lex = fixture_lexicon();
  auto index = fixture_index();
  LinkerConfig config;
  config.person_filter_enabled = false;

  SECTION("registry member links at distance 0") {
    auto cands = linker::link_places(toks({"Helsinki"}), lex, index, config);
    REQUIRE(cands.size() == 1);
    REQUIRE(cands[0].matches.size() == 1);
    CHECK(cands[0].matches[0].distance == 0);
    CHECK(cands[0].matches[0].entry->canonical == "Helsinki");
  }
  SECTION("inflected form links through its lemma") {
    auto cands = linker::link_places(toks({"Helsingissä"}), lex, index,
                                     config);
    REQUIRE(cands.size() == 1);
    CHECK(cands[0].matches[0].entry->canonical == "Helsinki");
  }
  SECTION("token absent everywhere yields nothing with fuzzy off") {
    CHECK(linker::link_places(toks({"Qqxyz"}), lex, index, config).empty());
  }
  SECTION("OCR distortion links through fuzzy fallback") {
    config.fuzzy_max_dist = 1;
    auto cands = linker::link_places(toks({"Helsiuki"}), lex, index, config);
    REQUIRE(cands.size() == 1);
    REQUIRE(!cands[0].matches.empty());
    CHECK(cands[0].matches[0].entry->canonical == "Helsinki");
    CHECK(cands[0].matches[0].distance == 1);
  }
  SECTION("candidate sets grow with the fuzzy budget") {
    auto texts = toks({"Helsiuki", "Tampere", "asuu", "Vaasa", "Lahit"});
    std::size_t previous = 0;
    for (unsigned d = 0; d <= 2; ++d) {
      config.fuzzy_max_dist = d;
      auto cands = linker::link_places(texts, lex, index, config);
      CHECK(cands.size() >= previous);
      previous = cands.size();
    }
  }
  SECTION("adjacent tokens merge into a known multiword variant") {
    auto cands =
        linker::link_places(toks({"New", "York"}), lex, index, config);
    // Neither token links alone; the pair matches only via the joined form.
    REQUIRE(cands.size() == 0);
    config.fuzzy_max_dist = 0;
    // Give both halves their own hits so the merge path can see a run.
    std::istringstream extra(
        "New\t-\tplace\t-\t-\t-\t-\nYork\t-\tplace\t-\t-\t-\t-\n"
        "New York\t-\tplace\t3400000\tgeo:1\t-\t-\n");
    auto entries = gaz::load_source(extra, "geonames");
    auto index2 = gaz::build_index(std::move(entries));
    auto merged =
        linker::link_places(toks({"New", "York"}), lex, index2, config);
    REQUIRE(merged.size() == 1);
    CHECK(merged[0].span.start == 0);
    CHECK(merged[0].span.end == 1);
    CHECK(merged[0].matches[0].entry->canonical == "New York");
  }
}

TEST_CASE("person-conflict filter is conditional on place size") {
  auto lex = fixture_lexicon();
  auto index = fixture_index();
  NameAuthority authority;
  authority.add_first("Juho");
  authority.add_last("Virtamaa");
  authority.add_last("Lahti");

  LinkerConfig config;
  config.person_filter_enabled = true;
  config.size_threshold = 50000;

  SECTION("big city in a person pattern is retained") {
    auto tokens = toks({"Juho", "Tampere"});
    auto cands = linker::link_places(tokens, lex, index, config);
    linker::filter_person_conflicts(cands, tokens, lex, config, &authority);
    REQUIRE(cands.size() == 1);
    CHECK_FALSE(cands[0].filtered);
    CHECK(cands[0].retained_by_size);
  }
  SECTION("small place after an initial is filtered as a person pattern") {
    auto tokens = toks({"I.", "Virtamaa"});
    auto cands = linker::link_places(tokens, lex, index, config);
    linker::filter_person_conflicts(cands, tokens, lex, config, &authority);
    REQUIRE(cands.size() == 1);
    CHECK(cands[0].filtered);
    CHECK(cands[0].reason == linker::FilterReason::PersonPattern);
  }
  SECTION("morphological person reading filters a small place") {
    auto tokens = toks({"Lahti"});
    auto cands = linker::link_places(tokens, lex, index, config);
    linker::filter_person_conflicts(cands, tokens, lex, config, &authority);
    REQUIRE(cands.size() == 1);
    CHECK(cands[0].filtered);
    CHECK(cands[0].reason == linker::FilterReason::PersonMorph);
  }
  SECTION("filter disabled leaves every candidate unfiltered") {
    config.person_filter_enabled = false;
    auto tokens = toks({"I.", "Virtamaa", "Lahti"});
    auto cands = linker::link_places(tokens, lex, index, config);
    linker::filter_person_conflicts(cands, tokens, lex, config, &authority);
    for (const auto& c : cands) CHECK_FALSE(c.filtered);
  }
  SECTION("threshold 0 retains everything") {
    config.size_threshold = 0;
    auto tokens = toks({"I.", "Virtamaa"});
    auto cands = linker::link_places(tokens, lex, index, config);
    linker::filter_person_conflicts(cands, tokens, lex, config, &authority);
    REQUIRE(cands.size() == 1);
    CHECK_FALSE(cands[0].filtered);
  }
  SECTION("an unreachable threshold filters every person-pattern place") {
    config.size_threshold = std::numeric_limits<std::uint64_t>::max();
    for (const char* place : {"Tampere", "Virtamaa"}) {
      auto tokens = toks({"Juho", place});
      auto cands = linker::link_places(tokens, lex, index, config);
      linker::filter_person_conflicts(cands, tokens, lex, config, &authority);
      REQUIRE(cands.size() == 1);
      CHECK(cands[0].filtered);
      CHECK(cands[0].reason == linker::FilterReason::PersonPattern);
    }
  }
}

TEST_CASE("link_persons matches authority names with leading initials") {
  NameAuthority authority;
  authority.add_first("Matti");
  authority.add_last("Virtanen");
  authority.add_last("Lastname");

  SECTION("initials join the person span") {
    auto cands = linker::link_persons(toks({"A.", "B.", "Lastname"}),
                                      authority);
    REQUIRE(cands.size() == 1);
    CHECK(cands[0].span.start == 0);
    CHECK(cands[0].span.end == 2);
    CHECK(cands[0].matches.empty());  // no strong identifier
  }
  SECTION("lowercase authority words are not candidates") {
    NameAuthority lower;
    lower.add_last("virtanen");
    CHECK(linker::link_persons(toks({"virtanen"}), lower).empty());
  }
  SECTION("first + last name forms one two-token candidate") {
    auto cands =
        linker::link_persons(toks({"Matti", "Virtanen", "asuu"}), authority);
    REQUIRE(cands.size() == 1);
    CHECK(cands[0].span.start == 0);
    CHECK(cands[0].span.end == 1);
  }
}

TEST_CASE("candidates_to_tags renders boundary tags and resolves overlaps") {
  auto lex = fixture_lexicon();
  auto index = fixture_index();
  NameAuthority authority;
  authority.add_first("Juho");
  authority.add_last("Tampere");
  authority.add_last("Virtamaa");

  SECTION("no candidates -> all outside") {
    auto tokens = toks({"ja", "asuu"});
    auto tagged = linker::candidates_to_tags({}, {}, tokens);
    for (const auto& at : tagged) CHECK(at.tag.is_outside());
  }
  SECTION("one-token place becomes a unit tag") {
    auto tokens = toks({"Helsinki"});
    LinkerConfig config;
    auto cands = linker::link_places(tokens, lex, index, config);
    auto tagged = linker::candidates_to_tags(cands, {}, tokens);
    CHECK(tagged[0].tag == corpus::BoundaryTag::unit("EnamexLocPpl"));
  }
  SECTION("two-token person becomes begin+end tags") {
    auto tokens = toks({"Juho", "Virtamaa"});
    auto persons = linker::link_persons(tokens, authority);
    auto tagged = linker::candidates_to_tags({}, persons, tokens);
    CHECK(tagged[0].tag == corpus::BoundaryTag::begin("EnamexPrsHum"));
    CHECK(tagged[1].tag == corpus::BoundaryTag::end("EnamexPrsHum"));
  }
  SECTION("a size-retained place beats an overlapping person candidate") {
    auto tokens = toks({"Juho", "Tampere"});
    LinkerConfig config;
    auto places = linker::link_places(tokens, lex, index, config);
    linker::filter_person_conflicts(places, tokens, lex, config, &authority);
    auto persons = linker::link_persons(tokens, authority);
    REQUIRE(persons.size() == 1);  // Juho Tampere looks like a person
    auto tagged = linker::candidates_to_tags(places, persons, tokens);
    CHECK(tagged[1].tag == corpus::BoundaryTag::unit("EnamexLocPpl"));
    CHECK(tagged[0].tag.is_outside());
  }
  SECTION("a filtered place loses to the person candidate") {
    auto tokens = toks({"Juho", "Virtamaa"});
    LinkerConfig config;
    auto places = linker::link_places(tokens, lex, index, config);
    linker::filter_person_conflicts(places, tokens, lex, config, &authority);
    auto persons = linker::link_persons(tokens, authority);
    auto tagged = linker::candidates_to_tags(places, persons, tokens);
    CHECK(tagged[0].tag == corpus::BoundaryTag::begin("EnamexPrsHum"));
    CHECK(tagged[1].tag == corpus::BoundaryTag::end("EnamexPrsHum"));
  }
}

TEST_CASE("fuzzy placement inside lexical processing recovers bad suffixes") {
  auto lex = fixture_lexicon();
  auto index = fixture_index();
  // OCR damage in the inflectional suffix: the guesser finds no usable
  // analogy and the guessed lemma is unlinkable, so query-phase fuzzing
  // fails; matching against lexicon forms first recovers the lemma.
  auto tokens = toks({"Helsingisrä"});

  LinkerConfig query_phase;
  query_phase.fuzzy_max_dist = 1;
  query_phase.person_filter_enabled = false;
  CHECK(linker::link_places(tokens, lex, index, query_phase).empty());

  LinkerConfig lexical = query_phase;
  lexical.fuzzy_in_lexical = true;
  auto cands = linker::link_places(tokens, lex, index, lexical);
  REQUIRE(cands.size() == 1);
  CHECK(cands[0].matches[0].entry->canonical == "Helsinki");
  CHECK(cands[0].matches[0].distance == 0);  // registry lookup stayed exact
}

TEST_CASE("w/v normalization recovers historical spellings") {
  auto lex = fixture_lexicon();

  SECTION("with normalization enabled Waasa finds Vaasa") {
    auto index = fixture_index(true);
    LinkerConfig config;
    config.wv_normalize = true;
    auto cands = linker::link_places(toks({"Waasa"}), lex, index, config);
    REQUIRE(cands.size() == 1);
    CHECK(cands[0].matches[0].entry->canonical == "Vaasa");
  }
  SECTION("without normalization the w-spelling misses") {
    auto index = fixture_index(false);
    LinkerConfig config;
    auto cands = linker::link_places(toks({"Waasa"}), lex, index, config);
    CHECK(cands.empty());
  }
}

TEST_CASE("pipeline is deterministic") {
  auto lex = fixture_lexicon();
  auto index = fixture_index();
  NameAuthority authority;
  authority.add_first("Juho");
  authority.add_last("Lahti");
  LinkerConfig config;
  config.fuzzy_max_dist = 1;
  auto tokens =
      toks({"Juho", "Lahti", "asuu", "Helsingissä", "ja", "Tamperee"});
  auto run = [&]() {
    auto places = linker::link_places(tokens, lex, index, config);
    linker::filter_person_conflicts(places, tokens, lex, config, &authority);
    auto persons = linker::link_persons(tokens, authority);
    return corpus::serialize_annotated(
        linker::candidates_to_tags(places, persons, tokens));
  };
  auto first = run();
  for (int i = 0; i < 10; ++i) CHECK(run() == first);
}
