// Copyright 2026 The dissbus Authors.
// Licensed under the Apache License, Version 2.0; see LICENSE.

#include "dissbus/bagger.hpp"

#include <algorithm>
#include <chrono>
#include <ctime>
#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "dissbus/corpus.hpp"
#include "dissbus/text.hpp"

namespace dissbus {

namespace {

using nlohmann::json;

const Topic* find_topic(const std::vector<Topic>& topics, std::string_view id) {
  for (const Topic& t : topics) {
    if (t.id == id) return &t;
  }
  return nullptr;
}

BiTerm biterm_from_columns(const std::vector<std::string>& cols, const std::string& where) {
  const auto op = parse_pos(text::trim(cols[1]));
  const auto ep = parse_pos(text::trim(cols[3]));
  if (!op || !ep || !is_admissible(*op, *ep)) throw ValidationError(where + ": bad POS combination");
  return BiTerm{std::string(text::trim(cols[0])), *op, std::string(text::trim(cols[2])), *ep};
}

}  // namespace

std::string_view to_string(Provenance p) { return p == Provenance::Manual ? "manual" : "upcycled"; }

std::vector<BiTerm> TopicBag::member_list() const {
  std::vector<BiTerm> out;
  out.reserve(members.size());
  for (const auto& [b, _] : members) out.push_back(b);
  return out;
}

std::vector<Clause> clauses_for_biterm(const BiTerm& biterm, const std::vector<BiTermOccurrence>& occurrences,
                                       const std::vector<Clause>& clauses) {
  std::set<std::pair<std::string, std::size_t>> wanted;
  for (const auto& occ : occurrences) {
    if (occ.biterm == biterm) wanted.emplace(occ.review_id, occ.clause_index);
  }
  std::vector<Clause> out;
  if (wanted.empty()) return out;
  for (const Clause& c : clauses) {
    if (wanted.count({c.review_id, c.index})) out.push_back(c);
  }
  return out;
}

std::map<BiTerm, LabelRecord> active_labels(const std::vector<LabelRecord>& history) {
  std::vector<const LabelRecord*> ordered;
  ordered.reserve(history.size());
  for (const auto& r : history) ordered.push_back(&r);
  std::stable_sort(ordered.begin(), ordered.end(),
                   [](const LabelRecord* a, const LabelRecord* b) { return a->sequence < b->sequence; });
  std::map<BiTerm, LabelRecord> active;
  for (const LabelRecord* r : ordered) active.insert_or_assign(r->biterm, *r);
  return active;
}

std::vector<TopicBag> build_topic_bags(const std::vector<LabelRecord>& labels, const std::vector<Topic>& topics) {
  std::vector<TopicBag> bags;
  bags.reserve(topics.size());
  for (const Topic& t : topics) bags.push_back({t, {}});
  for (const LabelRecord& r : labels) {
    if (!r.discarded() && !find_topic(topics, r.decision)) {
      throw ValidationError("label for " + r.biterm.key() + " names unknown topic '" + r.decision + "'");
    }
  }
  for (const auto& [b, r] : active_labels(labels)) {
    if (r.discarded()) continue;
    for (TopicBag& bag : bags) {
      if (bag.topic.id == r.decision) bag.members.emplace(b, Provenance::Manual);
    }
  }
  if (!bags_disjoint(bags)) throw std::logic_error("latest-wins fold produced overlapping bags");
  return bags;
}

bool bags_disjoint(const std::vector<TopicBag>& bags) {
  std::set<BiTerm> seen;
  for (const TopicBag& bag : bags) {
    for (const auto& [b, _] : bag.members) {
      if (!seen.insert(b).second) return false;
    }
  }
  return true;
}

LabelStore::LabelStore(std::vector<Topic> topics, CommonExpressionSet common, std::filesystem::path journal,
                       Clock clock)
    : topics_(std::move(topics)), common_(std::move(common)), journal_(std::move(journal)), clock_(std::move(clock)) {
  validate_topics(topics_);
  if (!clock_) clock_ = utc_timestamp;
  if (!journal_.empty() && std::filesystem::exists(journal_)) history_ = read_journal(journal_);
}

void LabelStore::validate(const BiTerm& biterm, const std::string& decision) const {
  if (decision != kDiscard && !find_topic(topics_, decision)) {
    throw ValidationError("unknown topic '" + decision + "'");
  }
  if (!common_.contains(biterm)) {
    throw ValidationError("bi-term " + biterm.key() + " is not a strained common expression");
  }
}

LabelRecord LabelStore::record_label(const BiTerm& biterm, const std::string& decision, const std::string& labeler) {
  validate(biterm, decision);
  std::lock_guard lock(mutex_);
  LabelRecord record;
  record.biterm = biterm;
  record.decision = decision;
  record.labeler = labeler;
  record.timestamp = clock_();
  record.sequence = history_.empty() ? 1 : history_.back().sequence + 1;
  append_to_journal(record);
  history_.push_back(record);
  return record;
}

void LabelStore::append_to_journal(const LabelRecord& record) {
  if (journal_.empty()) return;
  if (journal_.has_parent_path()) std::filesystem::create_directories(journal_.parent_path());
  std::ofstream out(journal_, std::ios::binary | std::ios::app);
  if (!out) throw IoError("cannot append to journal " + journal_.string());
  out << label_to_json_line(record) << '\n';
  out.flush();
  if (!out) throw IoError("error while writing journal " + journal_.string());
}

std::vector<LabelRecord> LabelStore::history() const {
  std::lock_guard lock(mutex_);
  return history_;
}

std::map<BiTerm, LabelRecord> LabelStore::active() const {
  std::lock_guard lock(mutex_);
  return active_labels(history_);
}

std::optional<LabelRecord> LabelStore::decision_for(const BiTerm& biterm) const {
  const auto all = active();
  const auto it = all.find(biterm);
  if (it == all.end()) return std::nullopt;
  return it->second;
}

LabelProgress LabelStore::progress() const {
  LabelProgress p;
  for (const auto& [b, r] : active()) {
    if (!common_.contains(b)) continue;
    if (r.discarded()) {
      ++p.discarded;
    } else {
      ++p.labeled;
    }
  }
  p.remaining = common_.biterms.size() - p.labeled - p.discarded;
  return p;
}

std::optional<BiTerm> LabelStore::next_unlabeled(const std::vector<std::pair<BiTerm, std::uint64_t>>& ranked) const {
  const auto labeled = active();
  for (const auto& [b, _] : ranked) {
    if (common_.contains(b) && !labeled.count(b)) return b;
  }
  return std::nullopt;
}

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string label_to_json_line(const LabelRecord& record) {
  json j;
  j["seq"] = record.sequence;
  j["biterm_key"] = record.biterm.key();
  j["decision"] = record.decision;
  j["labeler"] = record.labeler;
  j["timestamp"] = record.timestamp;
  return j.dump();
}

LabelRecord label_from_json_line(std::string_view line) {
  json j;
  try {
    j = json::parse(line);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("malformed journal line: ") + e.what());
  }
  LabelRecord r;
  try {
    const auto b = BiTerm::from_key(j.at("biterm_key").get<std::string>());
    if (!b) throw ValidationError("bad biterm_key in journal");
    r.biterm = *b;
    r.decision = j.at("decision").get<std::string>();
    r.labeler = j.value("labeler", "");
    r.timestamp = j.value("timestamp", "");
    r.sequence = j.at("seq").get<std::uint64_t>();
  } catch (const json::exception& e) {
    throw ValidationError(std::string("malformed journal record: ") + e.what());
  }
  return r;
}

std::vector<LabelRecord> read_journal(const std::filesystem::path& path) {
  std::vector<LabelRecord> out;
  std::istringstream in(text::read_file(path));
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (text::trim(line).empty()) continue;
    try {
      out.push_back(label_from_json_line(line));
    } catch (const ValidationError& e) {
      throw ValidationError(path.string() + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  return out;
}

std::vector<LabelRecord> parse_labels_csv(std::string_view data, const std::string& labeler) {
  const auto rows = parse_csv(data);
  std::vector<LabelRecord> out;
  if (rows.empty()) return out;
  const std::vector<std::string> header{"object_stem", "object_pos", "evaluation_stem", "evaluation_pos", "decision"};
  std::vector<std::string> got;
  for (const auto& h : rows[0]) got.push_back(text::to_lower(text::trim(h)));
  if (got != header) {
    throw ValidationError("label CSV header must be object_stem,object_pos,evaluation_stem,evaluation_pos,decision");
  }
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto& row = rows[i];
    if (row.size() == 1 && text::trim(row[0]).empty()) continue;
    const std::string where = "label CSV row " + std::to_string(i + 1);
    if (row.size() != 5) throw ValidationError(where + ": expected 5 columns");
    LabelRecord r;
    r.biterm = biterm_from_columns(row, where);
    r.decision = std::string(text::trim(row[4]));
    r.labeler = labeler;
    r.sequence = out.size() + 1;
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<LabelRecord> import_labels_csv(const std::filesystem::path& path, const std::string& labeler) {
  return parse_labels_csv(text::read_file(path), labeler);
}

std::string format_labels_csv(const std::map<BiTerm, LabelRecord>& active) {
  std::vector<const LabelRecord*> rows;
  for (const auto& [_, r] : active) rows.push_back(&r);
  std::sort(rows.begin(), rows.end(),
            [](const LabelRecord* a, const LabelRecord* b) { return lexicographic_less(a->biterm, b->biterm); });
  std::string out = "object_stem,object_pos,evaluation_stem,evaluation_pos,decision\n";
  for (const LabelRecord* r : rows) {
    out += csv_escape(r->biterm.object_stem) + "," + std::string(to_string(r->biterm.object_pos)) + "," +
           csv_escape(r->biterm.evaluation_stem) + "," + std::string(to_string(r->biterm.evaluation_pos)) + "," +
           csv_escape(r->decision) + "\n";
  }
  return out;
}

std::vector<LabelRecord> load_labels(const std::filesystem::path& path) {
  const std::string ext = text::to_lower(path.extension().string());
  if (ext == ".csv") return import_labels_csv(path);
  if (ext == ".jsonl" || ext == ".json") return read_journal(path);
  throw ParameterError("labels file must be .csv or .jsonl: " + path.string());
}

std::string format_bags_tsv(const std::vector<TopicBag>& bags) {
  std::string out;
  for (const TopicBag& bag : bags) {
    std::vector<std::pair<BiTerm, Provenance>> members(bag.members.begin(), bag.members.end());
    std::sort(members.begin(), members.end(),
              [](const auto& a, const auto& b) { return lexicographic_less(a.first, b.first); });
    for (const auto& [b, prov] : members) {
      out += bag.topic.id + "\t" + b.object_stem + "\t" + std::string(to_string(b.object_pos)) + "\t" +
             b.evaluation_stem + "\t" + std::string(to_string(b.evaluation_pos)) + "\t" +
             std::string(to_string(prov)) + "\n";
    }
  }
  return out;
}

std::vector<TopicBag> parse_bags_tsv(std::string_view data, const std::vector<Topic>& topics) {
  std::vector<TopicBag> bags;
  for (const Topic& t : topics) bags.push_back({t, {}});
  std::istringstream in{std::string(data)};
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (text::trim(line).empty()) continue;
    const auto cols = text::split(line, '\t');
    const std::string where = "bags line " + std::to_string(lineno);
    if (cols.size() != 6) throw ValidationError(where + ": expected 6 columns");
    const std::vector<std::string> bt(cols.begin() + 1, cols.begin() + 5);
    const BiTerm b = biterm_from_columns(bt, where);
    const Provenance prov = cols[5] == "manual" ? Provenance::Manual : Provenance::Upcycled;
    auto it = std::find_if(bags.begin(), bags.end(), [&](const TopicBag& bag) { return bag.topic.id == cols[0]; });
    if (it == bags.end()) throw ValidationError(where + ": unknown topic '" + cols[0] + "'");
    it->members.emplace(b, prov);
  }
  return bags;
}

}  // namespace dissbus
