// Copyright 2026 The dissbus Authors.
// Licensed under the Apache License, Version 2.0; see LICENSE.

#ifndef DISSBUS_SCORER_HPP_
#define DISSBUS_SCORER_HPP_

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dissbus/bagger.hpp"
#include "dissbus/summarizer.hpp"
#include "dissbus/upcycler.hpp"

namespace dissbus {

inline constexpr double kDefaultTau = 0.25;

struct SentimentLexicon {
  std::map<std::string, double> entries;

  std::optional<double> valence(const std::string& stem) const;

  // TSV `stem<TAB>valence`, valence in [-1, 1].
  static SentimentLexicon load(const std::filesystem::path& path);
  static SentimentLexicon parse(std::string_view data, std::string_view source = "<lexicon>");
};

struct BiTermScore {
  double valence = 0.0;
  bool scored = false;
};

BiTermScore score_biterm(const BiTerm& biterm, const SentimentLexicon& lexicon);

struct ClauseScore {
  std::string review_id;
  std::size_t clause_index = 0;
  std::string topic;
  BiTerm biterm;
  double valence = 0.0;
  bool scored = false;
  bool negated = false;
};

// Sign flips when the occurrence is negated.
ClauseScore score_clause(const BiTermOccurrence& occurrence, const std::string& topic, const BiTermScore& score);

// Topic of each matched bi-term plus a rank used to pick a clause's primary
// bi-term: manual members first, then upcycled members, then bi-terms that
// were assigned a topic without entering a bag.
struct TopicIndex {
  struct Entry {
    std::string topic;
    int rank = 0;
    std::uint64_t count = 0;
  };
  std::map<BiTerm, Entry> entries;

  const Entry* find(const BiTerm& b) const;
  static TopicIndex build(const std::vector<TopicBag>& bags, const std::vector<Assignment>& assignments,
                          const FrequencyTable& table);
};

// One score per clause that holds at least one matched bi-term, in
// occurrence order.
std::vector<ClauseScore> score_clauses(const std::vector<BiTermOccurrence>& occurrences, const TopicIndex& index,
                                       const SentimentLexicon& lexicon);

struct TopicCell {
  std::size_t count = 0;
  double mean = 0.0;
  int likert = 0;

  bool operator==(const TopicCell&) const = default;
};

struct TopicScoreRow {
  std::string review_id;
  std::vector<TopicCell> cells;  // configuration order
};

// 1 below -tau, 3 above +tau, else 2. Throws ParameterError for tau <= 0.
int discretize(double mean, double tau);

TopicScoreRow aggregate(const std::string& review_id, const std::vector<ClauseScore>& scores,
                        const std::vector<Topic>& topics, double tau);

// One row per review id, in the order given.
std::vector<TopicScoreRow> score_matrix(const std::vector<std::string>& review_ids,
                                        const std::vector<ClauseScore>& scores, const std::vector<Topic>& topics,
                                        double tau);

std::string format_matrix_csv(const std::vector<TopicScoreRow>& rows, const std::vector<Topic>& topics);

// TSV `review_id, clause_index, topic, biterm_key, valence, scored, negated`.
std::string format_clause_scores_tsv(const std::vector<ClauseScore>& scores);

}  // namespace dissbus

#endif  // DISSBUS_SCORER_HPP_
