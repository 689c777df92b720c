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
// Command-line front end: tag, link, eval, gazetteer build|query|stats,
// noise, diag namelist|compare|unrec. Reports go to standard output,
// diagnostics to the error stream; file outputs only via explicit flags.
// Exit codes: 0 success, 1 usage/configuration error, 2 data error.

#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "nerkit/nerkit.hpp"
#include "nerkit/report.hpp"

namespace {

using namespace nerkit;

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open input file '" + path + "'");
  return in;
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot open output file '" + path + "'");
  out << content;
}

corpus::TagSet load_tagset(const std::string& path) {
  if (path.empty()) return corpus::TagSet{};
  std::ifstream in = open_input(path);
  std::vector<std::string> labels;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line[0] != '#') labels.push_back(line);
  }
  if (labels.empty()) throw DataError("tag set file '" + path + "' is empty");
  return corpus::TagSet{std::move(labels)};
}

// `id=path`, or a bare path whose stem becomes the source id.
std::pair<std::string, std::string> split_source_spec(
    const std::string& spec) {
  auto eq = spec.find('=');
  if (eq != std::string::npos) {
    return {spec.substr(0, eq), spec.substr(eq + 1)};
  }
  auto slash = spec.find_last_of('/');
  std::string stem = slash == std::string::npos ? spec : spec.substr(slash + 1);
  auto dot = stem.find_last_of('.');
  if (dot != std::string::npos) stem = stem.substr(0, dot);
  return {stem, spec};
}

std::vector<gaz::GazetteerEntry> load_sources(
    const std::vector<std::string>& specs) {
  std::vector<gaz::GazetteerEntry> entries;
  for (const std::string& spec : specs) {
    auto [id, path] = split_source_spec(spec);
    auto batch = gaz::load_source_file(path, id);
    entries.insert(entries.end(), batch.begin(), batch.end());
  }
  return entries;
}

std::vector<std::vector<corpus::Token>> group_snippets(
    const std::vector<corpus::Token>& tokens) {
  std::vector<std::vector<corpus::Token>> out;
  for (const corpus::Token& t : tokens) {
    if (out.empty() || out.back().back().snippet_id != t.snippet_id) {
      out.push_back({});
    }
    out.back().push_back(t);
  }
  return out;
}

struct TaggerBundle {
  morpho::MorphLexicon lexicon;
  std::optional<gaz::GazetteerIndex> index;
  rules::RuleSet ruleset;
  bool wv = false;

  std::vector<corpus::AnnotatedToken> tag(
      const std::vector<corpus::Token>& tokens) const {
    std::vector<corpus::AnnotatedToken> out;
    for (const auto& snippet : group_snippets(tokens)) {
      auto views = rules::prepare_tokens(
          snippet, lexicon, index ? &*index : nullptr, wv);
      auto tagged =
          rules::spans_to_tags(rules::apply_two_pass(views, ruleset), snippet);
      out.insert(out.end(), tagged.begin(), tagged.end());
    }
    return out;
  }
};

TaggerBundle make_tagger(const std::string& rules_path,
                         const std::string& lexicon_path,
                         const std::vector<std::string>& gazetteer_specs,
                         const std::string& tagset_path, bool wv) {
  TaggerBundle bundle;
  bundle.wv = wv;
  bundle.lexicon = morpho::MorphLexicon::load_file(lexicon_path);
  if (!gazetteer_specs.empty()) {
    bundle.index = gaz::build_index(load_sources(gazetteer_specs), wv);
  }
  std::ifstream rules_in = open_input(rules_path);
  bundle.ruleset = rules::compile_ruleset(rules_in, load_tagset(tagset_path));
  return bundle;
}

// --- tag ------------------------------------------------------------------

int cmd_tag(const std::string& rules_path, const std::string& lexicon_path,
            const std::vector<std::string>& gazetteer_specs,
            const std::string& tagset_path, bool wv, const std::string& input,
            const std::string& output) {
  TaggerBundle tagger =
      make_tagger(rules_path, lexicon_path, gazetteer_specs, tagset_path, wv);
  std::ifstream in = open_input(input);
  auto tokens = corpus::parse_tokens(in);
  write_output(output, corpus::serialize_annotated(tagger.tag(tokens)));
  return 0;
}

// --- link -----------------------------------------------------------------

int cmd_link(const std::vector<std::string>& gazetteer_specs,
             const std::string& authority_path, const std::string& lexicon_path,
             const linker::LinkerConfig& config, bool persons,
             const std::string& input, const std::string& output,
             const std::string& report_json, const std::string& query_log) {
  auto lexicon = morpho::MorphLexicon::load_file(lexicon_path);
  auto index =
      gaz::build_index(load_sources(gazetteer_specs), config.wv_normalize);
  std::optional<linker::NameAuthority> authority;
  if (!authority_path.empty()) {
    authority = linker::NameAuthority::load_file(authority_path);
  }
  std::ifstream in = open_input(input);
  auto tokens = corpus::parse_tokens(in);

  std::vector<corpus::AnnotatedToken> all_tagged;
  std::vector<gaz::QueryRecord> log;
  for (const auto& snippet : group_snippets(tokens)) {
    auto places = linker::link_places(snippet, lexicon, index, config,
                                      authority ? &*authority : nullptr);
    std::vector<linker::LinkCandidate> person_cands;
    if (persons) {
      person_cands = linker::link_persons(snippet, *authority);
    }
    for (const auto& cand : places) {
      for (const auto& match : cand.matches) {
        log.push_back(gaz::QueryRecord{match.entry->canonical,
                                       match.entry->source_id,
                                       match.distance});
      }
    }
    auto tagged =
        linker::candidates_to_tags(places, person_cands, snippet);
    all_tagged.insert(all_tagged.end(), tagged.begin(), tagged.end());
  }
  write_output(output, corpus::serialize_annotated(all_tagged));
  if (!query_log.empty()) {
    std::ostringstream rows;
    for (const auto& r : log) {
      rows << r.name << '\t' << r.source_id << '\t' << r.distance << '\n';
    }
    write_output(query_log, rows.str());
  }
  if (!report_json.empty()) {
    write_output(report_json,
                 report::to_json(gaz::source_contributions(log)).dump(2) +
                     "\n");
  }
  return 0;
}

// --- eval -----------------------------------------------------------------

int cmd_eval(const std::string& mode, bool merge_locations, bool span_level,
             const std::string& gold_path, const std::string& pred_path,
             const std::string& tagset_path, const std::string& report_json) {
  corpus::TagSet tags = load_tagset(tagset_path);
  std::ifstream gold_in = open_input(gold_path);
  std::ifstream pred_in = open_input(pred_path);
  auto gold = corpus::parse_annotated(gold_in, tags);
  auto pred = corpus::parse_annotated(pred_in, tags);
  eval::EvalReport report;
  if (mode == "strict") {
    report = span_level ? eval::score_strict_spans(gold, pred)
                        : eval::score_strict(gold, pred);
  } else if (mode == "loose") {
    report = eval::score_loose(gold, pred,
                               merge_locations ? eval::merge_locations()
                                               : eval::TagMapping{});
  } else {
    throw ConfigError("mode must be strict or loose");
  }
  eval::write_text_report(report, std::cout);
  if (!report_json.empty()) {
    write_output(report_json, report::to_json(report).dump(2) + "\n");
  }
  return 0;
}

// --- gazetteer -------------------------------------------------------------

// Snapshot: registry columns with a leading source_id column.
int cmd_gazetteer_build(const std::vector<std::string>& specs,
                        const std::string& out_path) {
  auto entries = load_sources(specs);
  auto index = gaz::build_index(entries);  // sorted, deduplicated order
  std::ostringstream out;
  for (const gaz::GazetteerEntry& e : index.entries()) {
    out << e.source_id << '\t' << e.canonical << '\t';
    bool first = true;
    for (const std::string& v : e.variants) {
      if (!first) out << '|';
      out << v;
      first = false;
    }
    out << '\t' << gaz::to_string(e.entity_class) << '\t';
    if (e.size) {
      out << *e.size;
    } else {
      out << '-';
    }
    out << '\t' << (e.external_id ? *e.external_id : "-") << '\t';
    if (e.coordinates) {
      out << e.coordinates->first << '\t' << e.coordinates->second;
    } else {
      out << "-\t-";
    }
    out << '\n';
  }
  write_output(out_path, out.str());
  return 0;
}

std::vector<gaz::GazetteerEntry> load_snapshot(const std::string& path) {
  std::ifstream in = open_input(path);
  std::vector<gaz::GazetteerEntry> entries;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    auto tab = line.find('\t');
    if (tab == std::string::npos) {
      throw DataError("snapshot row needs a source_id column", line_no);
    }
    std::istringstream row(line.substr(tab + 1));
    auto batch = gaz::load_source(row, line.substr(0, tab));
    entries.insert(entries.end(), batch.begin(), batch.end());
  }
  return entries;
}

int cmd_gazetteer_query(const std::vector<std::string>& specs,
                        const std::string& snapshot, const std::string& query,
                        unsigned dist, bool wv) {
  std::vector<gaz::GazetteerEntry> entries;
  if (!snapshot.empty()) {
    entries = load_snapshot(snapshot);
  }
  auto more = load_sources(specs);
  entries.insert(entries.end(), more.begin(), more.end());
  auto index = gaz::build_index(std::move(entries), wv);
  for (const gaz::FuzzyHit& hit : index.lookup_fuzzy(query, dist)) {
    std::cout << hit.entry->canonical << '\t' << hit.variant << '\t'
              << gaz::to_string(hit.entry->entity_class) << '\t'
              << hit.entry->source_id << '\t' << hit.distance << '\t'
              << (hit.entry->external_id ? *hit.entry->external_id : "-")
              << '\n';
  }
  return 0;
}

int cmd_gazetteer_stats(const std::string& log_path) {
  std::ifstream in = open_input(log_path);
  std::vector<gaz::QueryRecord> log;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream row(line);
    gaz::QueryRecord r;
    std::string dist;
    if (!std::getline(row, r.name, '\t') ||
        !std::getline(row, r.source_id, '\t') || !std::getline(row, dist)) {
      throw DataError("query log row needs 3 columns", line_no);
    }
    try {
      r.distance = static_cast<unsigned>(std::stoul(dist));
    } catch (const std::exception&) {
      throw DataError("bad distance '" + dist + "'", line_no);
    }
    log.push_back(std::move(r));
  }
  for (const auto& c : gaz::source_contributions(log)) {
    std::cout << c.source_id << '\t' << c.match_count << '\t'
              << c.fuzzy_match_count << '\n';
  }
  return 0;
}

// --- noise ------------------------------------------------------------------

noise::NoiseConfig read_noise_config(const std::string& path) {
  noise::NoiseConfig config;
  if (path.empty()) return config;
  std::ifstream in = open_input(path);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw DataError("expected key=value", line_no);
    }
    std::string key = line.substr(0, eq);
    std::string value = line.substr(eq + 1);
    try {
      if (key == "target_word_accuracy") {
        config.target_word_accuracy = std::stod(value);
      } else if (key == "word_swap_rate") {
        config.word_swap_rate = std::stod(value);
      } else if (key == "hyphen_split_rate") {
        config.hyphen_split_rate = std::stod(value);
      } else if (key == "seed") {
        config.seed = std::stoull(value);
      } else if (key == "char_ops") {
        config.char_ops.clear();
        std::istringstream ops(value);
        std::string op;
        while (std::getline(ops, op, ',')) {
          if (op == "substitute") {
            config.char_ops.push_back(noise::CharOp::Substitute);
          } else if (op == "delete") {
            config.char_ops.push_back(noise::CharOp::Delete);
          } else if (op == "insert") {
            config.char_ops.push_back(noise::CharOp::Insert);
          } else {
            throw DataError("unknown char op '" + op + "'", line_no);
          }
        }
      } else {
        throw DataError("unknown config key '" + key + "'", line_no);
      }
    } catch (const DataError&) {
      throw;
    } catch (const std::exception&) {
      throw DataError("bad value for '" + key + "'", line_no);
    }
  }
  return config;
}

void validate_rates(const noise::NoiseConfig& config) {
  auto in_unit = [](double v) { return v >= 0.0 && v <= 1.0; };
  if (!in_unit(config.target_word_accuracy) ||
      !in_unit(config.word_swap_rate) || !in_unit(config.hyphen_split_rate)) {
    throw ConfigError("rates must lie in [0, 1]");
  }
}

int cmd_noise(const noise::NoiseConfig& config,
              const std::string& lexicon_path, const std::string& input,
              const std::string& output) {
  validate_rates(config);
  std::ifstream in = open_input(input);
  auto tokens = corpus::parse_tokens(in);
  if (config.target_word_accuracy < 1.0) {
    if (lexicon_path.empty()) {
      throw ConfigError("character errors need --lexicon to steer accuracy");
    }
    auto lexicon = morpho::MorphLexicon::load_file(lexicon_path);
    tokens = noise::inject_char_errors(tokens, config, lexicon);
  }
  if (config.word_swap_rate > 0.0) {
    tokens = noise::inject_word_order_errors(tokens, config);
  }
  if (config.hyphen_split_rate > 0.0) {
    tokens = noise::inject_hyphenation_splits(tokens, config);
  }
  std::ostringstream out;
  std::size_t prev_snippet = tokens.empty() ? 0 : tokens[0].snippet_id;
  for (const corpus::Token& t : tokens) {
    if (t.snippet_id != prev_snippet) out << '\n';
    out << t.surface << '\n';
    prev_snippet = t.snippet_id;
  }
  write_output(output, out.str());
  return 0;
}

// --- diag -------------------------------------------------------------------

diag::CarrierSet read_carriers(const std::string& path) {
  diag::CarrierSet carriers;
  if (path.empty()) return carriers;
  std::ifstream in = open_input(path);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) throw DataError("expected key=value", line_no);
    std::string key = line.substr(0, eq);
    std::string value = line.substr(eq + 1);
    if (key == "beginning") {
      carriers.beginning = value;
    } else if (key == "middle") {
      carriers.middle = value;
    } else if (key == "end") {
      carriers.end = value;
    } else {
      throw DataError("unknown carrier key '" + key + "'", line_no);
    }
  }
  return carriers;
}

std::vector<std::string> read_names(const std::string& path) {
  std::ifstream in = open_input(path);
  std::vector<std::string> names;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty()) names.push_back(line);
  }
  return names;
}

int cmd_diag_namelist(const std::string& names_path,
                      const std::string& position_text,
                      const std::string& rules_path,
                      const std::string& lexicon_path,
                      const std::vector<std::string>& gazetteer_specs,
                      const std::string& tagset_path,
                      const std::string& carriers_path, bool wv,
                      const std::string& report_json) {
  auto names = read_names(names_path);
  auto position = diag::template_position_from(position_text);
  auto carriers = read_carriers(carriers_path);
  if (rules_path.empty()) {
    // wrap-only mode: one carrier sentence per name
    std::ostringstream out;
    for (const std::string& name : names) {
      auto wrapped = diag::wrap_template(name, position, carriers);
      for (std::size_t i = 0; i < wrapped.tokens.size(); ++i) {
        if (i) out << ' ';
        out << wrapped.tokens[i].surface;
      }
      out << '\n';
    }
    std::cout << out.str();
    return 0;
  }
  TaggerBundle tagger = make_tagger(rules_path, lexicon_path, gazetteer_specs,
                                    tagset_path, wv);
  auto dist = diag::tag_distribution(
      names, position,
      [&tagger](const std::vector<corpus::Token>& tokens) {
        return tagger.tag(tokens);
      },
      carriers);
  for (const auto& [tag, count] : dist.per_tag) {
    std::cout << tag << '\t' << count << '\n';
  }
  std::cout << "untagged\t" << dist.untagged << '\n';
  std::cout << "total\t" << dist.total << '\n';
  if (!report_json.empty()) {
    write_output(report_json, report::to_json(dist).dump(2) + "\n");
  }
  return 0;
}

int cmd_diag_compare(const std::string& a_path, const std::string& b_path,
                     const std::string& rules_path,
                     const std::string& lexicon_path,
                     const std::vector<std::string>& gazetteer_specs,
                     const std::string& tagset_path, bool wv,
                     const std::string& report_json) {
  TaggerBundle tagger = make_tagger(rules_path, lexicon_path, gazetteer_specs,
                                    tagset_path, wv);
  std::ifstream a_in = open_input(a_path);
  std::ifstream b_in = open_input(b_path);
  auto a = corpus::parse_tokens(a_in);
  auto b = corpus::parse_tokens(b_in);
  auto cmp = diag::compare_tag_counts(
      a, b, [&tagger](const std::vector<corpus::Token>& tokens) {
        return tagger.tag(tokens);
      });
  char buf[64];
  for (const auto& [label, d] : cmp.per_class) {
    std::snprintf(buf, sizeof(buf), "%.2f", eval::round2(d.delta_percent));
    std::cout << label << '\t' << d.count_a << '\t' << d.count_b << '\t'
              << d.delta << '\t' << buf << '\n';
  }
  std::snprintf(buf, sizeof(buf), "%.2f", eval::round2(cmp.total.delta_percent));
  std::cout << "TOTAL\t" << cmp.total.count_a << '\t' << cmp.total.count_b
            << '\t' << cmp.total.delta << '\t' << buf << '\n';
  if (!report_json.empty()) {
    write_output(report_json, report::to_json(cmp).dump(2) + "\n");
  }
  return 0;
}

int cmd_diag_unrec(const std::string& gold_path, const std::string& pred_path,
                   const std::string& lexicon_path,
                   const std::string& tagset_path) {
  corpus::TagSet tags = load_tagset(tagset_path);
  std::ifstream gold_in = open_input(gold_path);
  std::ifstream pred_in = open_input(pred_path);
  auto gold = corpus::parse_annotated(gold_in, tags);
  auto pred = corpus::parse_annotated(pred_in, tags);
  auto lexicon = morpho::MorphLexicon::load_file(lexicon_path);
  auto table = diag::unrecognition_by_correctness(gold, pred, lexicon);
  char buf[64];
  for (const auto& [label, row] : table) {
    std::snprintf(buf, sizeof(buf), "%.2f\t%.2f",
                  eval::round2(row.right_rate()),
                  eval::round2(row.wrong_rate()));
    std::cout << label << '\t' << buf << '\t' << row.right_tokens << '\t'
              << row.wrong_tokens << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"named-entity tagging, linking and evaluation for noisy text"};
  app.set_version_flag("--version", std::string("nerkit ") + NERKIT_VERSION);
  app.require_subcommand(1);

  // tag
  auto* tag = app.add_subcommand("tag", "rule-based tagging");
  std::string tag_rules, tag_lexicon, tag_tagset, tag_input, tag_output = "-";
  std::vector<std::string> tag_gazetteers;
  bool tag_wv = false;
  tag->add_option("--rules", tag_rules)->required();
  tag->add_option("--lexicon", tag_lexicon)->required();
  tag->add_option("--gazetteer", tag_gazetteers, "id=path (repeatable)");
  tag->add_option("--tagset", tag_tagset);
  tag->add_flag("--wv", tag_wv, "normalize historical w to v");
  tag->add_option("-i,--input", tag_input)->required();
  tag->add_option("-o,--output", tag_output);

  // link
  auto* link = app.add_subcommand("link", "gazetteer entity linking");
  std::string link_authority, link_lexicon, link_input, link_output = "-";
  std::string link_report, link_log;
  std::vector<std::string> link_gazetteers;
  unsigned link_fuzzy = 0;
  std::uint64_t link_threshold = 50000;
  bool link_no_filter = false, link_wv = false, link_persons = false;
  bool link_fuzzy_lexical = false;
  link->add_option("--gazetteer", link_gazetteers, "id=path (repeatable)")
      ->required();
  link->add_option("--authority", link_authority);
  link->add_option("--lexicon", link_lexicon)->required();
  link->add_option("--fuzzy", link_fuzzy, "maximum edit distance");
  link->add_flag("--fuzzy-lexical", link_fuzzy_lexical,
                 "apply the fuzzy budget to lexicon forms instead of the "
                 "registry query");
  link->add_option("--size-threshold", link_threshold);
  link->add_flag("--no-person-filter", link_no_filter);
  link->add_flag("--wv", link_wv);
  link->add_flag("--persons", link_persons, "link persons via the authority");
  link->add_option("-i,--input", link_input)->required();
  link->add_option("-o,--output", link_output);
  link->add_option("--report-json", link_report);
  link->add_option("--query-log", link_log);

  // eval
  auto* evalc = app.add_subcommand("eval", "score predictions against gold");
  std::string eval_mode = "strict", eval_gold, eval_pred, eval_tagset,
              eval_report;
  bool eval_merge = false, eval_span = false;
  evalc->add_option("--mode", eval_mode, "strict|loose");
  evalc->add_flag("--merge-locations", eval_merge);
  evalc->add_flag("--span-level", eval_span,
                  "whole-span exact match instead of per-boundary tags");
  evalc->add_option("--gold", eval_gold)->required();
  evalc->add_option("--pred", eval_pred)->required();
  evalc->add_option("--tagset", eval_tagset);
  evalc->add_option("--report-json", eval_report);

  // gazetteer
  auto* gz = app.add_subcommand("gazetteer", "registry operations");
  gz->require_subcommand(1);
  auto* gz_build = gz->add_subcommand("build", "merge sources into a snapshot");
  std::vector<std::string> build_sources;
  std::string build_out = "-";
  gz_build->add_option("--source", build_sources, "id=path (repeatable)")
      ->required();
  gz_build->add_option("--out", build_out);
  auto* gz_query = gz->add_subcommand("query", "exact or fuzzy lookup");
  std::vector<std::string> query_sources;
  std::string query_snapshot, query_text;
  unsigned query_dist = 0;
  bool query_wv = false;
  gz_query->add_option("--source", query_sources, "id=path (repeatable)");
  gz_query->add_option("--snapshot", query_snapshot);
  gz_query->add_option("--query", query_text)->required();
  gz_query->add_option("--dist", query_dist);
  gz_query->add_flag("--wv", query_wv);
  auto* gz_stats = gz->add_subcommand("stats", "per-source contributions");
  std::string stats_log;
  gz_stats->add_option("--log", stats_log)->required();

  // noise
  auto* noisec = app.add_subcommand("noise", "inject OCR-style noise");
  std::string noise_config_path, noise_lexicon, noise_input,
      noise_output = "-";
  std::string noise_ops;
  double noise_target = 1.0, noise_swap = 0.0, noise_hyphen = 0.0;
  std::uint64_t noise_seed = 0;
  noisec->add_option("--config", noise_config_path, "key=value config file");
  noisec->add_option("--lexicon", noise_lexicon);
  auto* opt_target =
      noisec->add_option("--target-accuracy", noise_target);
  auto* opt_ops = noisec->add_option(
      "--char-ops", noise_ops, "comma list of substitute,delete,insert");
  auto* opt_swap = noisec->add_option("--swap-rate", noise_swap);
  auto* opt_hyphen = noisec->add_option("--hyphen-rate", noise_hyphen);
  auto* opt_seed = noisec->add_option("--seed", noise_seed);
  noisec->add_option("-i,--input", noise_input)->required();
  noisec->add_option("-o,--output", noise_output);

  // diag
  auto* dg = app.add_subcommand("diag", "diagnostic protocols");
  dg->require_subcommand(1);
  auto* dg_names = dg->add_subcommand("namelist", "positional-context test");
  std::string names_path, names_position = "none", names_rules, names_lexicon,
              names_tagset, names_carriers, names_report;
  std::vector<std::string> names_gazetteers;
  bool names_wv = false;
  dg_names->add_option("--names", names_path)->required();
  dg_names->add_option("--position", names_position,
                       "none|beginning|middle|end");
  dg_names->add_option("--rules", names_rules);
  dg_names->add_option("--lexicon", names_lexicon);
  dg_names->add_option("--gazetteer", names_gazetteers);
  dg_names->add_option("--tagset", names_tagset);
  dg_names->add_option("--carriers", names_carriers);
  dg_names->add_flag("--wv", names_wv);
  dg_names->add_option("--report-json", names_report);
  auto* dg_cmp = dg->add_subcommand("compare", "tag counts across versions");
  std::string cmp_a, cmp_b, cmp_rules, cmp_lexicon, cmp_tagset, cmp_report;
  std::vector<std::string> cmp_gazetteers;
  bool cmp_wv = false;
  dg_cmp->add_option("--a", cmp_a)->required();
  dg_cmp->add_option("--b", cmp_b)->required();
  dg_cmp->add_option("--rules", cmp_rules)->required();
  dg_cmp->add_option("--lexicon", cmp_lexicon)->required();
  dg_cmp->add_option("--gazetteer", cmp_gazetteers);
  dg_cmp->add_option("--tagset", cmp_tagset);
  dg_cmp->add_flag("--wv", cmp_wv);
  dg_cmp->add_option("--report-json", cmp_report);
  auto* dg_unrec =
      dg->add_subcommand("unrec", "unrecognition by tagging correctness");
  std::string unrec_gold, unrec_pred, unrec_lexicon, unrec_tagset;
  dg_unrec->add_option("--gold", unrec_gold)->required();
  dg_unrec->add_option("--pred", unrec_pred)->required();
  dg_unrec->add_option("--lexicon", unrec_lexicon)->required();
  dg_unrec->add_option("--tagset", unrec_tagset);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_name() == "CallForHelp" || e.get_name() == "CallForVersion" ||
        e.get_name() == "CallForAllHelp") {
      return app.exit(e);
    }
    app.exit(e);
    return 1;
  }

  try {
    if (*tag) {
      return cmd_tag(tag_rules, tag_lexicon, tag_gazetteers, tag_tagset,
                     tag_wv, tag_input, tag_output);
    }
    if (*link) {
      if (link_persons && link_authority.empty()) {
        std::cerr << "error: --persons requires --authority\n";
        return 1;
      }
      linker::LinkerConfig config;
      config.fuzzy_max_dist = link_fuzzy;
      config.fuzzy_in_lexical = link_fuzzy_lexical;
      config.person_filter_enabled = !link_no_filter;
      config.size_threshold = link_threshold;
      config.wv_normalize = link_wv;
      return cmd_link(link_gazetteers, link_authority, link_lexicon, config,
                      link_persons, link_input, link_output, link_report,
                      link_log);
    }
    if (*evalc) {
      return cmd_eval(eval_mode, eval_merge, eval_span, eval_gold, eval_pred,
                      eval_tagset, eval_report);
    }
    if (*gz) {
      if (*gz_build) return cmd_gazetteer_build(build_sources, build_out);
      if (*gz_query) {
        if (query_sources.empty() && query_snapshot.empty()) {
          std::cerr << "error: query needs --source or --snapshot\n";
          return 1;
        }
        return cmd_gazetteer_query(query_sources, query_snapshot, query_text,
                                   query_dist, query_wv);
      }
      if (*gz_stats) return cmd_gazetteer_stats(stats_log);
    }
    if (*noisec) {
      noise::NoiseConfig config = read_noise_config(noise_config_path);
      if (opt_target->count()) config.target_word_accuracy = noise_target;
      if (opt_swap->count()) config.word_swap_rate = noise_swap;
      if (opt_hyphen->count()) config.hyphen_split_rate = noise_hyphen;
      if (opt_seed->count()) config.seed = noise_seed;
      if (opt_ops->count()) {
        config.char_ops.clear();
        std::istringstream ops(noise_ops);
        std::string op;
        while (std::getline(ops, op, ',')) {
          if (op == "substitute") {
            config.char_ops.push_back(noise::CharOp::Substitute);
          } else if (op == "delete") {
            config.char_ops.push_back(noise::CharOp::Delete);
          } else if (op == "insert") {
            config.char_ops.push_back(noise::CharOp::Insert);
          } else {
            throw ConfigError("unknown char op '" + op + "'");
          }
        }
      }
      return cmd_noise(config, noise_lexicon, noise_input, noise_output);
    }
    if (*dg) {
      if (*dg_names) {
        return cmd_diag_namelist(names_path, names_position, names_rules,
                                 names_lexicon, names_gazetteers, names_tagset,
                                 names_carriers, names_wv, names_report);
      }
      if (*dg_cmp) {
        return cmd_diag_compare(cmp_a, cmp_b, cmp_rules, cmp_lexicon,
                                cmp_gazetteers, cmp_tagset, cmp_wv,
                                cmp_report);
      }
      if (*dg_unrec) {
        return cmd_diag_unrec(unrec_gold, unrec_pred, unrec_lexicon,
                              unrec_tagset);
      }
    }
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
