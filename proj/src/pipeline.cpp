// Copyright 2026 The dissbus Authors.
// Licensed under the Apache License, Version 2.0; see LICENSE.

#include "dissbus/pipeline.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <set>
#include <thread>

#include <httplib.h>

#include "dissbus/bagger.hpp"
#include "dissbus/label_service.hpp"
#include "dissbus/scorer.hpp"
#include "dissbus/strainer.hpp"
#include "dissbus/summarizer.hpp"
#include "dissbus/text.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace dissbus {

namespace {

const std::vector<std::pair<Stage, std::string_view>> kStageNames = {
    {Stage::Disintegrate, "disintegrate"}, {Stage::Summarize, "summarize"}, {Stage::Strain, "strain"},
    {Stage::Bag, "bag"},                   {Stage::Upcycle, "upcycle"},     {Stage::Score, "score"},
};

fs::path out_path(const PipelineConfig& c, const char* name) { return c.output_dir / name; }

std::string require(const PipelineConfig& c, const char* name, Stage producer) {
  const fs::path p = out_path(c, name);
  if (!fs::exists(p)) throw MissingStageError(producer, p.string() + " not found");
  return text::read_file(p);
}

fs::path require_input(const fs::path& p, const char* what) {
  if (p.empty()) throw ParameterError(std::string("config is missing paths.") + what);
  if (!fs::exists(p)) throw IoError(std::string(what) + " file not found: " + p.string());
  return p;
}

void hash_input(json& inputs, const char* name, const fs::path& p) {
  if (!p.empty() && fs::exists(p)) inputs[name] = sha256_file(p);
}

json write_manifest(const PipelineConfig& c, Stage stage, json inputs, json parameters,
                    const std::vector<const char*>& outputs, json counts) {
  json m;
  m["stage"] = std::string(to_string(stage));
  m["inputs"] = std::move(inputs);
  m["parameters"] = std::move(parameters);
  json outs = json::object();
  for (const char* name : outputs) outs[name] = sha256_file(out_path(c, name));
  m["outputs"] = std::move(outs);
  m["counts"] = std::move(counts);
  write_text_file(c.output_dir / (std::string(to_string(stage)) + ".manifest.json"), m.dump(2) + "\n");
  return m;
}

std::vector<Topic> topics_of(const PipelineConfig& c) { return load_topics(require_input(c.paths.topics, "topics")); }

CommonExpressionSet common_of(const PipelineConfig& c) {
  CommonExpressionSet common;
  common.cut_point = static_cast<std::uint64_t>(c.cut_point);
  for (const auto& [b, n] : parse_frequency_tsv(require(c, artifact::kCommon, Stage::Strain), artifact::kCommon).entries) {
    common.biterms.insert(b);
  }
  return common;
}

Tagger tagger_of(const PipelineConfig& c) {
  if (!c.paths.tagger_lexicon.empty()) return Tagger::load(require_input(c.paths.tagger_lexicon, "tagger_lexicon"));
  const fs::path bundled = fs::path(DISSBUS_DATA_DIR) / "tagger_lexicon.tsv";
  if (fs::exists(bundled)) return Tagger::load(bundled);
  return Tagger();
}

json run_disintegrate(const PipelineConfig& c) {
  const fs::path corpus_path = require_input(c.paths.corpus, "corpus");
  LoadResult loaded = load_reviews(corpus_path, format_from_extension(corpus_path));
  ParsedCorpus parses;
  if (!c.paths.parses.empty()) parses = load_parsed(require_input(c.paths.parses, "parses"));
  const SegmenterConfig seg = SegmenterConfig::load(c.paths.conjunctions, c.paths.subordinators, c.paths.abbreviations);
  const Tagger tagger = tagger_of(c);

  const std::vector<Clause> clauses = disintegrate_corpus(loaded.corpus, parses, tagger, seg, c.threads);

  std::string ids;
  for (const Review& r : loaded.corpus.reviews) ids += r.id + "\n";
  std::string lines;
  for (const Clause& cl : clauses) lines += clause_to_json(cl).dump() + "\n";
  std::string rejects;
  for (const RecordError& e : loaded.errors) {
    rejects += std::to_string(e.record) + "\t" + e.review_id + "\t" + e.message + "\n";
  }
  write_text_file(out_path(c, artifact::kReviews), ids);
  write_text_file(out_path(c, artifact::kClauses), lines);
  write_text_file(out_path(c, artifact::kRejects), rejects);

  std::size_t from_parses = 0;
  for (const Review& r : loaded.corpus.reviews) from_parses += parses.count(r.id);
  json inputs;
  hash_input(inputs, "corpus", corpus_path);
  hash_input(inputs, "parses", c.paths.parses);
  hash_input(inputs, "tagger_lexicon", c.paths.tagger_lexicon);
  hash_input(inputs, "conjunctions", c.paths.conjunctions);
  hash_input(inputs, "subordinators", c.paths.subordinators);
  hash_input(inputs, "abbreviations", c.paths.abbreviations);
  return write_manifest(c, Stage::Disintegrate, inputs, json::object(),
                        {artifact::kReviews, artifact::kClauses, artifact::kRejects},
                        {{"records_read", loaded.records_read},
                         {"reviews", loaded.corpus.reviews.size()},
                         {"rejected_records", loaded.errors.size()},
                         {"reviews_from_parses", from_parses},
                         {"clauses", clauses.size()}});
}

json run_summarize(const PipelineConfig& c) {
  require(c, artifact::kClauses, Stage::Disintegrate);
  std::vector<Clause> clauses = read_clauses(out_path(c, artifact::kClauses));
  const std::set<std::string> negations =
      c.paths.negations.empty() ? default_negations() : load_negations(require_input(c.paths.negations, "negations"));

  std::vector<BiTermOccurrence> occurrences;
  std::size_t negated = 0;
  std::size_t with_biterms = 0;
  for (Clause& cl : clauses) {
    cl.negated = detect_negation(cl, negations);
    negated += cl.negated ? 1 : 0;
    auto found = extract_biterms(cl);
    with_biterms += found.empty() ? 0 : 1;
    occurrences.insert(occurrences.end(), found.begin(), found.end());
  }
  write_text_file(out_path(c, artifact::kOccurrences), format_occurrences_tsv(occurrences));

  json inputs;
  inputs[artifact::kClauses] = sha256_file(out_path(c, artifact::kClauses));
  hash_input(inputs, "negations", c.paths.negations);
  return write_manifest(c, Stage::Summarize, inputs, json::object(), {artifact::kOccurrences},
                        {{"clauses", clauses.size()},
                         {"negated_clauses", negated},
                         {"clauses_with_biterms", with_biterms},
                         {"biterm_occurrences", occurrences.size()}});
}

json run_strain(const PipelineConfig& c) {
  const std::vector<BiTermOccurrence> occurrences =
      parse_occurrences_tsv(require(c, artifact::kOccurrences, Stage::Summarize));
  const FrequencyTable table = count_biterms(occurrences);
  const CommonExpressionSet common = strain(table, c.cut_point);
  FrequencyTable common_table;
  for (const BiTerm& b : common.biterms) common_table.entries[b] = table.count(b);
  const FrequencyTable rest = unstrained(table, common);

  write_text_file(out_path(c, artifact::kFrequency), format_frequency_tsv(table));
  write_text_file(out_path(c, artifact::kCommon), format_frequency_tsv(common_table));
  write_text_file(out_path(c, artifact::kUnstrained), format_frequency_tsv(rest));

  json inputs;
  inputs[artifact::kOccurrences] = sha256_file(out_path(c, artifact::kOccurrences));
  return write_manifest(c, Stage::Strain, inputs, {{"cut_point", c.cut_point}},
                        {artifact::kFrequency, artifact::kCommon, artifact::kUnstrained},
                        {{"biterm_occurrences", table.total_occurrences},
                         {"unique_biterms", table.entries.size()},
                         {"strained", common.biterms.size()},
                         {"unstrained", rest.entries.size()}});
}

json run_bag(const PipelineConfig& c) {
  const CommonExpressionSet common = common_of(c);
  const std::vector<Topic> topics = topics_of(c);
  fs::path source = c.paths.labels;
  if (source.empty() || !fs::exists(source)) {
    if (!source.empty()) throw IoError("labels file not found: " + source.string());
    source = c.journal_path();
    if (!fs::exists(source)) {
      throw IoError("labels required: set paths.labels or label the strained bi-terms with `dissbus serve`");
    }
  }
  std::vector<LabelRecord> labels;
  std::size_t stale = 0;
  for (LabelRecord& r : load_labels(source)) {
    if (common.contains(r.biterm)) {
      labels.push_back(std::move(r));
    } else {
      ++stale;
    }
  }
  const std::vector<TopicBag> bags = build_topic_bags(labels, topics);
  write_text_file(out_path(c, artifact::kBags), format_bags_tsv(bags));

  const auto active = active_labels(labels);
  std::size_t discarded = 0;
  for (const auto& [b, r] : active) discarded += r.discarded() ? 1 : 0;
  json sizes = json::object();
  std::size_t bagged = 0;
  for (const TopicBag& bag : bags) {
    sizes[bag.topic.id] = bag.size();
    bagged += bag.size();
  }
  json inputs;
  inputs[artifact::kCommon] = sha256_file(out_path(c, artifact::kCommon));
  inputs["labels"] = sha256_file(source);
  hash_input(inputs, "topics", c.paths.topics);
  return write_manifest(c, Stage::Bag, inputs, json::object(), {artifact::kBags},
                        {{"strained", common.biterms.size()},
                         {"labeled", active.size()},
                         {"bagged", bagged},
                         {"discarded", discarded},
                         {"unlabeled", common.biterms.size() - active.size()},
                         {"ignored_labels", stale},
                         {"bag_sizes", sizes}});
}

json run_upcycle(const PipelineConfig& c) {
  const std::vector<Topic> topics = topics_of(c);
  const std::vector<TopicBag> bags = parse_bags_tsv(require(c, artifact::kBags, Stage::Bag), topics);
  const FrequencyTable rest = parse_frequency_tsv(require(c, artifact::kUnstrained, Stage::Strain), artifact::kUnstrained);
  const Thesaurus thesaurus =
      Thesaurus::load(require_input(c.paths.thesaurus, "thesaurus"),
                      c.paths.categories.empty() ? fs::path() : require_input(c.paths.categories, "categories"));
  const ComparisonPlan plan{c.mode, c.total_sample, c.seed};
  const UpcycleResult result = upcycle(rest, bags, thesaurus, c.c1, c.c2, plan);

  write_text_file(out_path(c, artifact::kUpcycledBags), format_bags_tsv(result.bags));
  write_text_file(out_path(c, artifact::kAssignments), format_assignments_tsv(result.assignments));

  json params = {{"c1", c.c1}, {"c2", c.c2}, {"mode", std::string(to_string(c.mode))}};
  if (c.mode == ComparisonMode::Fractional) {
    params["m"] = c.total_sample;
    params["seed"] = c.seed;
  }
  json inputs;
  inputs[artifact::kBags] = sha256_file(out_path(c, artifact::kBags));
  inputs[artifact::kUnstrained] = sha256_file(out_path(c, artifact::kUnstrained));
  hash_input(inputs, "thesaurus", c.paths.thesaurus);
  hash_input(inputs, "categories", c.paths.categories);
  hash_input(inputs, "topics", c.paths.topics);
  return write_manifest(c, Stage::Upcycle, inputs, params, {artifact::kUpcycledBags, artifact::kAssignments},
                        {{"unstrained", result.assignments.size()},
                         {"assigned", result.assigned_count()},
                         {"unassigned", result.assignments.size() - result.assigned_count()},
                         {"added", result.added_count()}});
}

json run_score(const PipelineConfig& c) {
  const std::vector<Topic> topics = topics_of(c);
  const std::vector<TopicBag> bags = parse_bags_tsv(require(c, artifact::kUpcycledBags, Stage::Upcycle), topics);
  const FrequencyTable table = parse_frequency_tsv(require(c, artifact::kFrequency, Stage::Strain), artifact::kFrequency);
  const std::vector<Assignment> assignments =
      parse_assignments_tsv(require(c, artifact::kAssignments, Stage::Upcycle), table);
  const std::vector<BiTermOccurrence> occurrences =
      parse_occurrences_tsv(require(c, artifact::kOccurrences, Stage::Summarize));
  const std::vector<std::string> review_ids = text::split(require(c, artifact::kReviews, Stage::Disintegrate), '\n');
  const SentimentLexicon lexicon = SentimentLexicon::load(require_input(c.paths.lexicon, "lexicon"));

  const TopicIndex index = TopicIndex::build(bags, assignments, table);
  const std::vector<ClauseScore> scores = score_clauses(occurrences, index, lexicon);
  std::vector<std::string> ids;
  for (const std::string& id : review_ids) {
    if (!id.empty()) ids.push_back(id);
  }
  const std::vector<TopicScoreRow> rows = score_matrix(ids, scores, topics, c.tau);

  write_text_file(out_path(c, artifact::kClauseScores), format_clause_scores_tsv(scores));
  write_text_file(out_path(c, artifact::kMatrix), format_matrix_csv(rows, topics));

  std::size_t matched = 0;
  for (const BiTermOccurrence& o : occurrences) matched += index.find(o.biterm) != nullptr ? 1 : 0;
  std::size_t scored = 0;
  for (const ClauseScore& s : scores) scored += s.scored ? 1 : 0;
  json inputs;
  for (const char* name : {artifact::kUpcycledBags, artifact::kAssignments, artifact::kOccurrences,
                           artifact::kFrequency, artifact::kReviews}) {
    inputs[name] = sha256_file(out_path(c, name));
  }
  hash_input(inputs, "lexicon", c.paths.lexicon);
  hash_input(inputs, "topics", c.paths.topics);
  return write_manifest(c, Stage::Score, inputs, {{"tau", c.tau}}, {artifact::kClauseScores, artifact::kMatrix},
                        {{"reviews", rows.size()},
                         {"matched_occurrences", matched},
                         {"unmatched_occurrences", occurrences.size() - matched},
                         {"topic_clauses", scores.size()},
                         {"scored_clauses", scored}});
}

std::set<std::string> golden_lines(std::string_view data) {
  std::set<std::string> out;
  for (const std::string& line : text::split(data, '\n')) {
    if (!text::trim(line).empty() && line.front() != '#') out.insert(line);
  }
  return out;
}

GoldenResult compare(const std::string& name, const std::set<std::string>& expected,
                     const std::set<std::string>& actual) {
  GoldenResult r{name, expected == actual, ""};
  for (const std::string& l : expected) {
    if (!actual.count(l)) r.diff += "- " + l + "\n";
  }
  for (const std::string& l : actual) {
    if (!expected.count(l)) r.diff += "+ " + l + "\n";
  }
  return r;
}

std::string clause_ref(const std::string& line) {
  const auto cols = text::split(line, '\t');
  return cols.size() < 2 ? line : cols[0] + "\t" + cols[1];
}

}  // namespace

std::string_view to_string(Stage stage) {
  for (const auto& [s, name] : kStageNames) {
    if (s == stage) return name;
  }
  return "?";
}

Stage parse_stage(std::string_view name) {
  for (const auto& [s, n] : kStageNames) {
    if (n == name) return s;
  }
  throw ParameterError("unknown stage '" + std::string(name) + "'");
}

const std::vector<Stage>& all_stages() {
  static const std::vector<Stage> stages = {Stage::Disintegrate, Stage::Summarize, Stage::Strain,
                                            Stage::Bag,          Stage::Upcycle,   Stage::Score};
  return stages;
}

MissingStageError::MissingStageError(Stage required, const std::string& detail)
    : IoError(std::string(to_string(required)) + " required: run `dissbus " + std::string(to_string(required)) +
              "` first (" + detail + ")"),
      required_(required) {}

PipelineConfig PipelineConfig::load(const fs::path& path) {
  json j;
  try {
    j = json::parse(text::read_file(path));
  } catch (const json::parse_error& e) {
    throw ValidationError(path.string() + ": " + e.what());
  }
  return from_json(j, path.parent_path());
}

PipelineConfig PipelineConfig::from_json(const json& j, const fs::path& base) {
  if (!j.is_object()) throw ValidationError("config must be a JSON object");
  PipelineConfig c;
  const auto resolve = [&](const std::string& v) -> fs::path {
    if (v.empty()) return {};
    const fs::path p(v);
    return p.is_absolute() ? p : base / p;
  };
  try {
    if (j.contains("paths")) {
      const json& p = j.at("paths");
      const std::vector<std::pair<const char*, fs::path*>> fields = {
          {"corpus", &c.paths.corpus},
          {"parses", &c.paths.parses},
          {"tagger_lexicon", &c.paths.tagger_lexicon},
          {"lexicon", &c.paths.lexicon},
          {"thesaurus", &c.paths.thesaurus},
          {"categories", &c.paths.categories},
          {"negations", &c.paths.negations},
          {"conjunctions", &c.paths.conjunctions},
          {"subordinators", &c.paths.subordinators},
          {"abbreviations", &c.paths.abbreviations},
          {"topics", &c.paths.topics},
          {"labels", &c.paths.labels},
          {"journal", &c.paths.journal},
          {"goldens", &c.paths.goldens},
      };
      for (const auto& [key, target] : fields) {
        if (p.contains(key)) *target = resolve(p.at(key).get<std::string>());
      }
    }
    if (j.contains("output")) c.output_dir = resolve(j.at("output").get<std::string>());
    if (j.contains("cut_point")) c.cut_point = j.at("cut_point").get<long>();
    if (j.contains("c1")) c.c1 = j.at("c1").get<double>();
    if (j.contains("c2")) c.c2 = j.at("c2").get<long>();
    if (j.contains("mode")) c.mode = parse_comparison_mode(j.at("mode").get<std::string>());
    if (j.contains("m")) c.total_sample = j.at("m").get<long>();
    if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("tau")) c.tau = j.at("tau").get<double>();
    if (j.contains("port")) c.port = j.at("port").get<int>();
    if (j.contains("threads")) c.threads = j.at("threads").get<unsigned>();
  } catch (const json::exception& e) {
    throw ValidationError(std::string("config: ") + e.what());
  }
  return c;
}

void PipelineConfig::validate() const {
  if (cut_point < 1) throw ParameterError("cut point C must be >= 1");
  if (!(c1 > 0.0)) throw ParameterError("C1 must be > 0");
  if (c2 < 1) throw ParameterError("C2 must be >= 1");
  if (!(tau > 0.0)) throw ParameterError("tau must be > 0");
  if (mode == ComparisonMode::Fractional && total_sample < 1) {
    throw ParameterError("fractional comparison needs M >= 1");
  }
  if (port < 0 || port > 65535) throw ParameterError("port out of range");
}

fs::path PipelineConfig::journal_path() const { return paths.journal.empty() ? output_dir / "labels.jsonl" : paths.journal; }

std::string sha256_hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw IoError("sha256 failed");
  }
  std::string out;
  char buf[3];
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof(buf), "%02x", digest[i]);
    out += buf;
  }
  return out;
}

std::string sha256_file(const fs::path& path) { return sha256_hex(text::read_file(path)); }

json clause_to_json(const Clause& clause) {
  json tokens = json::array();
  for (const Token& t : clause.tokens) {
    tokens.push_back({t.surface, t.stem, std::string(to_string(t.pos)), t.space_after});
  }
  json pairs = json::array();
  for (const PairIndex& p : clause.pairs) pairs.push_back({p.dependent, p.head});
  return {{"review_id", clause.review_id},
          {"index", clause.index},
          {"text", clause.text},
          {"tokens", tokens},
          {"pairs", pairs}};
}

Clause clause_from_json(const json& j) {
  Clause c;
  try {
    c.review_id = j.at("review_id").get<std::string>();
    c.index = j.at("index").get<std::size_t>();
    c.text = j.at("text").get<std::string>();
    for (const json& t : j.at("tokens")) {
      const auto pos = parse_pos(t.at(2).get<std::string>());
      if (!pos) throw ValidationError("unknown POS tag " + t.at(2).dump());
      c.tokens.push_back({t.at(0).get<std::string>(), t.at(1).get<std::string>(), *pos, t.at(3).get<bool>()});
    }
    for (const json& p : j.at("pairs")) {
      const PairIndex pi{p.at(0).get<std::size_t>(), p.at(1).get<std::size_t>()};
      if (pi.dependent >= c.tokens.size() || pi.head >= c.tokens.size()) {
        throw ValidationError("pair index out of range");
      }
      c.pairs.push_back(pi);
    }
  } catch (const json::exception& e) {
    throw ValidationError(std::string("malformed clause record: ") + e.what());
  }
  return c;
}

std::vector<Clause> read_clauses(const fs::path& path) {
  std::vector<Clause> out;
  std::size_t line_no = 0;
  for (const std::string& line : text::split(text::read_file(path), '\n')) {
    ++line_no;
    if (text::trim(line).empty()) continue;
    try {
      out.push_back(clause_from_json(json::parse(line)));
    } catch (const json::parse_error& e) {
      throw ValidationError(path.string() + ":" + std::to_string(line_no) + ": " + e.what());
    } catch (const ValidationError& e) {
      throw ValidationError(path.string() + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

std::string format_occurrences_tsv(const std::vector<BiTermOccurrence>& occurrences) {
  std::string out;
  for (const BiTermOccurrence& o : occurrences) {
    out += o.review_id + '\t' + std::to_string(o.clause_index) + '\t' + o.biterm.key() + '\t' +
           (o.negated ? "1" : "0") + '\n';
  }
  return out;
}

std::vector<BiTermOccurrence> parse_occurrences_tsv(std::string_view data) {
  std::vector<BiTermOccurrence> out;
  std::size_t line_no = 0;
  for (const std::string& line : text::split(data, '\n')) {
    ++line_no;
    if (line.empty()) continue;
    const std::string where = std::string(artifact::kOccurrences) + ":" + std::to_string(line_no);
    const auto cols = text::split(line, '\t');
    if (cols.size() != 4) throw ValidationError(where + ": expected 4 columns");
    const auto b = BiTerm::from_key(cols[2]);
    if (!b) throw ValidationError(where + ": malformed bi-term key '" + cols[2] + "'");
    if (cols[3] != "0" && cols[3] != "1") throw ValidationError(where + ": negated must be 0 or 1");
    out.push_back({*b, cols[0], static_cast<std::size_t>(text::parse_long(cols[1], where + " clause index")),
                   cols[3] == "1"});
  }
  return out;
}

std::vector<Clause> disintegrate_corpus(const Corpus& corpus, const ParsedCorpus& parses, const Tagger& tagger,
                                        const SegmenterConfig& config, unsigned threads) {
  const std::size_t n = corpus.reviews.size();
  std::vector<std::vector<Clause>> slots(n);
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  const auto work = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        const Review& r = corpus.reviews[i];
        const auto it = parses.find(r.id);
        if (it != parses.end()) {
          slots[i] = segment(r, it->second, config);
        } else {
          slots[i] = segment(r, {tag_sentence(tagger, r.body)}, config);
        }
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(n, 1)));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(work);
  work();
  for (std::thread& t : pool) t.join();

  std::vector<Clause> out;
  for (std::size_t i = 0; i < n; ++i) {
    if (errors[i]) std::rethrow_exception(errors[i]);
    for (Clause& c : slots[i]) out.push_back(std::move(c));
  }
  return out;
}

json run_stage(Stage stage, const PipelineConfig& config) {
  config.validate();
  fs::create_directories(config.output_dir);
  switch (stage) {
    case Stage::Disintegrate:
      return run_disintegrate(config);
    case Stage::Summarize:
      return run_summarize(config);
    case Stage::Strain:
      return run_strain(config);
    case Stage::Bag:
      return run_bag(config);
    case Stage::Upcycle:
      return run_upcycle(config);
    case Stage::Score:
      return run_score(config);
  }
  throw ParameterError("unknown stage");
}

json FunnelCounts::to_json() const {
  return {{"reviews", reviews},
          {"rejected_records", rejected_records},
          {"clauses", clauses},
          {"biterm_occurrences", biterm_occurrences},
          {"unique_biterms", unique_biterms},
          {"strained", strained},
          {"bagged_manual", bagged_manual},
          {"upcycle_assigned", upcycle_assigned},
          {"upcycle_added", upcycle_added},
          {"matched_occurrences", matched_occurrences},
          {"unmatched_occurrences", unmatched_occurrences},
          {"scored_clauses", scored_clauses}};
}

FunnelCounts run_all(const PipelineConfig& config) {
  std::map<Stage, json> m;
  for (Stage s : all_stages()) m[s] = run_stage(s, config);
  FunnelCounts f;
  const auto get = [&](Stage s, const char* key) { return m[s]["counts"][key].get<std::size_t>(); };
  f.reviews = get(Stage::Disintegrate, "reviews");
  f.rejected_records = get(Stage::Disintegrate, "rejected_records");
  f.clauses = get(Stage::Disintegrate, "clauses");
  f.biterm_occurrences = get(Stage::Summarize, "biterm_occurrences");
  f.unique_biterms = get(Stage::Strain, "unique_biterms");
  f.strained = get(Stage::Strain, "strained");
  f.bagged_manual = get(Stage::Bag, "bagged");
  f.upcycle_assigned = get(Stage::Upcycle, "assigned");
  f.upcycle_added = get(Stage::Upcycle, "added");
  f.matched_occurrences = get(Stage::Score, "matched_occurrences");
  f.unmatched_occurrences = get(Stage::Score, "unmatched_occurrences");
  f.scored_clauses = get(Stage::Score, "scored_clauses");

  json report = {{"funnel", f.to_json()}};
  json upcycle_params = m[Stage::Upcycle]["parameters"];
  report["parameters"] = {{"cut_point", config.cut_point}, {"tau", config.tau}, {"upcycle", upcycle_params}};
  write_text_file(out_path(config, artifact::kReport), report.dump(2) + "\n");
  return f;
}

void serve_labeling(const PipelineConfig& config) {
  config.validate();
  const CommonExpressionSet common = common_of(config);
  const FrequencyTable table =
      parse_frequency_tsv(require(config, artifact::kFrequency, Stage::Strain), artifact::kFrequency);
  std::vector<BiTermOccurrence> occurrences =
      parse_occurrences_tsv(require(config, artifact::kOccurrences, Stage::Summarize));
  require(config, artifact::kClauses, Stage::Disintegrate);
  std::vector<Clause> clauses = read_clauses(out_path(config, artifact::kClauses));

  LabelStore store(topics_of(config), common, config.journal_path());
  LabelService service(store, table, std::move(occurrences), std::move(clauses));
  httplib::Server server;
  service.mount(server);
  if (!server.bind_to_port("0.0.0.0", config.port)) {
    throw IoError("cannot listen on port " + std::to_string(config.port) + " (already in use?)");
  }
  std::cerr << "labeling service on port " << config.port << ", journal " << config.journal_path().string() << "\n";
  server.listen_after_bind();
}

std::vector<GoldenResult> verify_goldens(const PipelineConfig& config) {
  const fs::path dir = config.paths.goldens;
  if (dir.empty() || !fs::is_directory(dir)) throw ParameterError("paths.goldens must name a directory");
  std::vector<GoldenResult> results;

  const fs::path disintegration = dir / "disintegration.tsv";
  if (fs::exists(disintegration)) {
    const auto expected = golden_lines(text::read_file(disintegration));
    std::set<std::string> reviews;
    for (const std::string& l : expected) reviews.insert(text::split(l, '\t')[0]);
    require(config, artifact::kClauses, Stage::Disintegrate);
    std::set<std::string> actual;
    for (const Clause& c : read_clauses(out_path(config, artifact::kClauses))) {
      if (!reviews.count(c.review_id)) continue;
      actual.insert(c.review_id + "\t" + std::to_string(c.index) + "\t" +
                    text::normalize_whitespace(text::to_lower(c.text)));
    }
    results.push_back(compare("disintegration", expected, actual));
  }

  const fs::path summarization = dir / "summarization.tsv";
  if (fs::exists(summarization)) {
    const auto expected = golden_lines(text::read_file(summarization));
    std::set<std::string> refs;
    for (const std::string& l : expected) refs.insert(clause_ref(l));
    std::set<std::string> actual;
    for (const std::string& l : text::split(require(config, artifact::kOccurrences, Stage::Summarize), '\n')) {
      if (l.empty() || !refs.count(clause_ref(l))) continue;
      const auto cols = text::split(l, '\t');
      actual.insert(cols[0] + "\t" + cols[1] + "\t" + cols[2]);
    }
    results.push_back(compare("summarization", expected, actual));
  }

  const fs::path scoring = dir / "scoring.tsv";
  if (fs::exists(scoring)) {
    const auto expected = golden_lines(text::read_file(scoring));
    std::set<std::string> refs;
    for (const std::string& l : expected) refs.insert(clause_ref(l));
    std::set<std::string> actual;
    for (const std::string& l : text::split(require(config, artifact::kClauseScores, Stage::Score), '\n')) {
      if (l.empty() || !refs.count(clause_ref(l))) continue;
      const auto cols = text::split(l, '\t');
      actual.insert(cols[0] + "\t" + cols[1] + "\t" + cols[2] + "\t" + cols[4]);
    }
    results.push_back(compare("scoring", expected, actual));
  }

  const fs::path matrix = dir / "matrix.csv";
  if (fs::exists(matrix)) {
    const std::string expected = text::read_file(matrix);
    const std::string actual = require(config, artifact::kMatrix, Stage::Score);
    GoldenResult r{"matrix", expected == actual, ""};
    if (!r.passed) {
      const auto e = text::split(expected, '\n');
      const auto a = text::split(actual, '\n');
      for (std::size_t i = 0; i < std::max(e.size(), a.size()); ++i) {
        const std::string el = i < e.size() ? e[i] : "";
        const std::string al = i < a.size() ? a[i] : "";
        if (el != al) r.diff += "line " + std::to_string(i + 1) + ":\n- " + el + "\n+ " + al + "\n";
      }
    }
    results.push_back(std::move(r));
  }
  if (results.empty()) throw ParameterError("no golden files found in " + dir.string());
  return results;
}

}  // namespace dissbus
