// Copyright 2026 The dissbus Authors.
// Licensed under the Apache License, Version 2.0; see LICENSE.

#include "dissbus/scorer.hpp"

#include "dissbus/corpus.hpp"
#include "dissbus/text.hpp"

namespace dissbus {

std::optional<double> SentimentLexicon::valence(const std::string& stem) const {
  const auto it = entries.find(stem);
  if (it == entries.end()) return std::nullopt;
  return it->second;
}

SentimentLexicon SentimentLexicon::load(const std::filesystem::path& path) {
  return parse(text::read_file(path), path.string());
}

SentimentLexicon SentimentLexicon::parse(std::string_view data, std::string_view source) {
  SentimentLexicon lex;
  std::size_t line_no = 0;
  for (const std::string& line : text::split(data, '\n')) {
    ++line_no;
    const std::string_view trimmed = text::trim(line);
    if (trimmed.empty() || trimmed.front() == '#') continue;
    const auto cols = text::split(trimmed, '\t');
    const std::string where = std::string(source) + ":" + std::to_string(line_no);
    if (cols.size() != 2) throw ValidationError(where + ": expected stem<TAB>valence");
    const double v = text::parse_double(text::trim(cols[1]), where + " valence");
    if (v < -1.0 || v > 1.0) throw ValidationError(where + ": valence outside [-1, 1]");
    lex.entries[text::to_lower(text::trim(cols[0]))] = v;
  }
  return lex;
}

BiTermScore score_biterm(const BiTerm& biterm, const SentimentLexicon& lexicon) {
  const auto v = lexicon.valence(biterm.evaluation_stem);
  if (!v) return {};
  return {*v, true};
}

ClauseScore score_clause(const BiTermOccurrence& occurrence, const std::string& topic, const BiTermScore& score) {
  ClauseScore c;
  c.review_id = occurrence.review_id;
  c.clause_index = occurrence.clause_index;
  c.topic = topic;
  c.biterm = occurrence.biterm;
  c.scored = score.scored;
  c.negated = occurrence.negated;
  c.valence = occurrence.negated ? -score.valence : score.valence;
  if (c.valence == 0.0) c.valence = 0.0;
  return c;
}

const TopicIndex::Entry* TopicIndex::find(const BiTerm& b) const {
  const auto it = entries.find(b);
  return it == entries.end() ? nullptr : &it->second;
}

TopicIndex TopicIndex::build(const std::vector<TopicBag>& bags, const std::vector<Assignment>& assignments,
                             const FrequencyTable& table) {
  TopicIndex index;
  for (const TopicBag& bag : bags) {
    for (const auto& [b, prov] : bag.members) {
      index.entries[b] = {bag.topic.id, prov == Provenance::Manual ? 0 : 1, table.count(b)};
    }
  }
  for (const Assignment& a : assignments) {
    if (!a.topic) continue;
    index.entries.emplace(a.biterm, Entry{*a.topic, 2, a.count});
  }
  return index;
}

std::vector<ClauseScore> score_clauses(const std::vector<BiTermOccurrence>& occurrences, const TopicIndex& index,
                                       const SentimentLexicon& lexicon) {
  std::vector<ClauseScore> out;
  std::size_t i = 0;
  while (i < occurrences.size()) {
    std::size_t j = i;
    const BiTermOccurrence* primary = nullptr;
    const TopicIndex::Entry* primary_entry = nullptr;
    while (j < occurrences.size() && occurrences[j].review_id == occurrences[i].review_id &&
           occurrences[j].clause_index == occurrences[i].clause_index) {
      const TopicIndex::Entry* e = index.find(occurrences[j].biterm);
      if (e != nullptr) {
        const bool better =
            primary == nullptr || e->rank < primary_entry->rank ||
            (e->rank == primary_entry->rank &&
             (e->count > primary_entry->count ||
              (e->count == primary_entry->count && lexicographic_less(occurrences[j].biterm, primary->biterm))));
        if (better) {
          primary = &occurrences[j];
          primary_entry = e;
        }
      }
      ++j;
    }
    if (primary != nullptr) {
      out.push_back(score_clause(*primary, primary_entry->topic, score_biterm(primary->biterm, lexicon)));
    }
    i = j;
  }
  return out;
}

int discretize(double mean, double tau) {
  if (!(tau > 0.0)) throw ParameterError("tau must be > 0");
  if (mean < -tau) return 1;
  if (mean > tau) return 3;
  return 2;
}

TopicScoreRow aggregate(const std::string& review_id, const std::vector<ClauseScore>& scores,
                        const std::vector<Topic>& topics, double tau) {
  if (!(tau > 0.0)) throw ParameterError("tau must be > 0");
  TopicScoreRow row;
  row.review_id = review_id;
  row.cells.resize(topics.size());
  std::vector<double> sums(topics.size(), 0.0);
  std::vector<std::size_t> scored(topics.size(), 0);
  for (const ClauseScore& s : scores) {
    for (std::size_t k = 0; k < topics.size(); ++k) {
      if (topics[k].id != s.topic) continue;
      ++row.cells[k].count;
      if (s.scored) {
        sums[k] += s.valence;
        ++scored[k];
      }
    }
  }
  for (std::size_t k = 0; k < topics.size(); ++k) {
    TopicCell& cell = row.cells[k];
    if (cell.count == 0) continue;
    cell.mean = scored[k] == 0 ? 0.0 : sums[k] / static_cast<double>(scored[k]);
    if (cell.mean == 0.0) cell.mean = 0.0;
    cell.likert = discretize(cell.mean, tau);
  }
  return row;
}

std::vector<TopicScoreRow> score_matrix(const std::vector<std::string>& review_ids,
                                        const std::vector<ClauseScore>& scores, const std::vector<Topic>& topics,
                                        double tau) {
  std::map<std::string, std::vector<ClauseScore>> by_review;
  for (const ClauseScore& s : scores) by_review[s.review_id].push_back(s);
  std::vector<TopicScoreRow> rows;
  rows.reserve(review_ids.size());
  static const std::vector<ClauseScore> kNone;
  for (const std::string& id : review_ids) {
    const auto it = by_review.find(id);
    rows.push_back(aggregate(id, it == by_review.end() ? kNone : it->second, topics, tau));
  }
  return rows;
}

std::string format_matrix_csv(const std::vector<TopicScoreRow>& rows, const std::vector<Topic>& topics) {
  std::string out = "review_id";
  for (const Topic& t : topics) out += "," + t.id + "_count," + t.id + "_mean," + t.id + "_likert";
  out += '\n';
  for (const TopicScoreRow& row : rows) {
    out += csv_escape(row.review_id);
    for (const TopicCell& c : row.cells) {
      out += ',' + std::to_string(c.count) + ',' + text::format_real(c.mean) + ',' + std::to_string(c.likert);
    }
    out += '\n';
  }
  return out;
}

std::string format_clause_scores_tsv(const std::vector<ClauseScore>& scores) {
  std::string out;
  for (const ClauseScore& s : scores) {
    out += s.review_id + '\t' + std::to_string(s.clause_index) + '\t' + s.topic + '\t' + s.biterm.key() + '\t' +
           text::format_real(s.valence) + '\t' + (s.scored ? "true" : "false") + '\t' +
           (s.negated ? "true" : "false") + '\n';
  }
  return out;
}

}  // namespace dissbus
