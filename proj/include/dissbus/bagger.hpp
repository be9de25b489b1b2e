// Copyright 2026 The dissbus Authors.
// Licensed under the Apache License, Version 2.0; see LICENSE.

#ifndef DISSBUS_BAGGER_HPP_
#define DISSBUS_BAGGER_HPP_

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "dissbus/strainer.hpp"
#include "dissbus/summarizer.hpp"
#include "dissbus/types.hpp"

namespace dissbus {

inline constexpr std::string_view kDiscard = "DISCARD";

struct LabelRecord {
  BiTerm biterm;
  std::string decision;  // topic id or DISCARD
  std::string labeler;
  std::string timestamp;  // ISO-8601 UTC
  std::uint64_t sequence = 0;

  bool discarded() const { return decision == kDiscard; }
};

enum class Provenance { Manual, Upcycled };

std::string_view to_string(Provenance p);

struct TopicBag {
  Topic topic;
  std::map<BiTerm, Provenance> members;

  std::size_t size() const { return members.size(); }
  bool contains(const BiTerm& b) const { return members.count(b) > 0; }
  std::vector<BiTerm> member_list() const;
};

// Every clause containing `biterm`, in corpus order (the order of `clauses`).
std::vector<Clause> clauses_for_biterm(const BiTerm& biterm, const std::vector<BiTermOccurrence>& occurrences,
                                       const std::vector<Clause>& clauses);

// Latest decision per bi-term, folded in sequence order.
std::map<BiTerm, LabelRecord> active_labels(const std::vector<LabelRecord>& history);

// One bag per topic in configuration order. Discarded bi-terms end up in no
// bag. Throws ValidationError when a label names an unknown topic.
std::vector<TopicBag> build_topic_bags(const std::vector<LabelRecord>& labels, const std::vector<Topic>& topics);

// Pairwise disjointness check across bags.
bool bags_disjoint(const std::vector<TopicBag>& bags);

struct LabelProgress {
  std::size_t labeled = 0;
  std::size_t discarded = 0;
  std::size_t remaining = 0;

  bool operator==(const LabelProgress&) const = default;
};

// Append-only label journal (JSONL) with latest-wins semantics. Writes are
// serialized through one mutex; the journal is replayed on open.
class LabelStore {
 public:
  using Clock = std::function<std::string()>;

  // `journal` may be empty for an in-memory store.
  LabelStore(std::vector<Topic> topics, CommonExpressionSet common, std::filesystem::path journal = {},
             Clock clock = {});

  LabelRecord record_label(const BiTerm& biterm, const std::string& decision, const std::string& labeler);

  std::vector<LabelRecord> history() const;
  std::map<BiTerm, LabelRecord> active() const;
  std::optional<LabelRecord> decision_for(const BiTerm& biterm) const;
  LabelProgress progress() const;
  // First strained bi-term in `ranked` order without an active decision.
  std::optional<BiTerm> next_unlabeled(const std::vector<std::pair<BiTerm, std::uint64_t>>& ranked) const;

  const std::vector<Topic>& topics() const { return topics_; }
  const CommonExpressionSet& common() const { return common_; }

 private:
  void append_to_journal(const LabelRecord& record);
  void validate(const BiTerm& biterm, const std::string& decision) const;

  std::vector<Topic> topics_;
  CommonExpressionSet common_;
  std::filesystem::path journal_;
  Clock clock_;
  mutable std::mutex mutex_;
  std::vector<LabelRecord> history_;
};

std::string utc_timestamp();

std::string label_to_json_line(const LabelRecord& record);
LabelRecord label_from_json_line(std::string_view line);
std::vector<LabelRecord> read_journal(const std::filesystem::path& path);

// Label CSV: header `object_stem,object_pos,evaluation_stem,evaluation_pos,decision`.
std::vector<LabelRecord> import_labels_csv(const std::filesystem::path& path, const std::string& labeler = "csv");
std::vector<LabelRecord> parse_labels_csv(std::string_view data, const std::string& labeler = "csv");
std::string format_labels_csv(const std::map<BiTerm, LabelRecord>& active);

// Journal (.jsonl) or CSV (.csv), chosen by extension.
std::vector<LabelRecord> load_labels(const std::filesystem::path& path);

// TSV `topic, object_stem, object_pos, evaluation_stem, evaluation_pos, provenance`.
std::string format_bags_tsv(const std::vector<TopicBag>& bags);
std::vector<TopicBag> parse_bags_tsv(std::string_view data, const std::vector<Topic>& topics);

}  // namespace dissbus

#endif  // DISSBUS_BAGGER_HPP_
