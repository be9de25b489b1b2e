// Copyright 2026 The dissbus Authors.
// Licensed under the Apache License, Version 2.0; see LICENSE.

#include "dissbus/segmenter.hpp"

#include <map>
#include <optional>

#include "dissbus/text.hpp"

namespace dissbus {

namespace {

const std::set<std::string> kDefaultCoordinators{"and", "but", "or", "so", "yet"};

const std::set<std::string> kDefaultSubordinators{"because", "before", "after",  "when",   "while",
                                                  "although", "though", "since", "unless", "if"};

const std::set<std::string> kDefaultAbbreviations{
    "dr.",   "mr.",   "mrs.",  "ms.",   "st.",   "jr.",  "sr.",   "prof.", "e.g.",  "i.e.",
    "etc.",  "vs.",   "approx.", "min.", "max.", "no.",  "ave.",  "blvd.", "rd.",   "mt.",
    "ft.",   "oz.",   "lb.",   "lbs.",  "hr.",   "hrs.", "mins.", "sec.",  "jan.",  "feb.",
    "mar.",  "apr.",  "jun.",  "jul.",  "aug.",  "sep.", "sept.", "oct.",  "nov.",  "dec.",
    "mon.",  "tue.",  "wed.",  "thu.",  "fri.",  "sat.", "sun.",  "a.m.",  "p.m.",  "u.s."};

class SentenceView {
 public:
  SentenceView(const std::vector<Token>& tokens, const SegmenterConfig& config)
      : tokens_(tokens), config_(config) {}

  std::string lower(std::size_t i) const { return text::normalize_word(tokens_[i].surface); }

  bool is_conjunction(std::size_t i) const {
    const Pos p = tokens_[i].pos;
    if (p != Pos::CC && p != Pos::IN) return false;
    const std::string w = lower(i);
    return config_.coordinators.count(w) > 0 || config_.subordinators.count(w) > 0;
  }

  bool is_coordinator(std::size_t i) const {
    return is_conjunction(i) && config_.coordinators.count(lower(i)) > 0;
  }

  bool is_subordinator(std::size_t i) const {
    return is_conjunction(i) && config_.subordinators.count(lower(i)) > 0;
  }

  bool is_comma(std::size_t i) const { return tokens_[i].pos == Pos::PUNCT && tokens_[i].surface == ","; }

  bool is_excluded_period(std::size_t i) const {
    if (tokens_[i].surface != "." || i == 0) return false;
    const Token& prev = tokens_[i - 1];
    if (prev.space_after) return false;
    // 3 . 50 split by an external tokenizer
    if (i + 1 < tokens_.size() && !tokens_[i].space_after && text::is_number(prev.surface) &&
        text::is_number(tokens_[i + 1].surface)) {
      return true;
    }
    return config_.abbreviations.count(text::normalize_word(prev.surface) + ".") > 0;
  }

  // Sentence-internal hard stop: . ! ? ; and runs of them.
  bool is_terminal(std::size_t i) const {
    const Token& t = tokens_[i];
    if (t.pos != Pos::PUNCT || t.surface.empty()) return false;
    for (char c : t.surface) {
      if (c != '.' && c != '!' && c != '?' && c != ';') return false;
    }
    return !is_excluded_period(i);
  }

  std::size_t span_start(std::size_t i) const {
    std::size_t s = i;
    while (s > 0 && !is_terminal(s - 1)) --s;
    return s;
  }

  std::size_t span_end(std::size_t i) const {
    std::size_t e = i + 1;
    while (e < tokens_.size() && !is_terminal(e)) ++e;
    return e;
  }

  bool is_subject_like(std::size_t i) const {
    return tokens_[i].pos == Pos::NN || (tokens_[i].pos != Pos::PUNCT && is_pronoun(lower(i)));
  }

  // Something that could hold a subject or predicate.
  bool has_content(std::size_t begin, std::size_t end) const {
    for (std::size_t i = begin; i < end; ++i) {
      if (tokens_[i].pos == Pos::VB || is_subject_like(i)) return true;
    }
    return false;
  }

  // Both a subject candidate and a verb.
  bool has_clause(std::size_t begin, std::size_t end) const {
    bool subject = false;
    bool verb = false;
    for (std::size_t i = begin; i < end; ++i) {
      if (is_subject_like(i)) subject = true;
      if (tokens_[i].pos == Pos::VB) verb = true;
    }
    return subject && verb;
  }

  // Nearest word around a comma, looking through punctuation and
  // coordinating conjunctions, without leaving the sentence span.
  std::optional<std::size_t> neighbour(std::size_t i, int step) const {
    const std::size_t lo = span_start(i);
    const std::size_t hi = span_end(i);
    std::ptrdiff_t j = static_cast<std::ptrdiff_t>(i) + step;
    while (j >= static_cast<std::ptrdiff_t>(lo) && j < static_cast<std::ptrdiff_t>(hi)) {
      const auto k = static_cast<std::size_t>(j);
      if (tokens_[k].pos != Pos::PUNCT && !is_coordinator(k)) return k;
      j += step;
    }
    return std::nullopt;
  }

  bool is_list_comma(std::size_t i) const {
    const auto left = neighbour(i, -1);
    const auto right = neighbour(i, +1);
    return left && right && tokens_[*left].pos == tokens_[*right].pos;
  }

  bool comma_identifier(std::size_t i) const {
    if (is_list_comma(i)) return false;
    if ((i > 0 && is_conjunction(i - 1)) || (i + 1 < tokens_.size() && is_conjunction(i + 1))) return false;
    // Only a comma closing an introductory subordinate clause splits:
    // "Before I ate dinner, I took a bus tour".
    const std::size_t start = span_start(i);
    std::size_t first = start;
    while (first < i && (tokens_[first].pos == Pos::PUNCT || is_coordinator(first))) ++first;
    if (first >= i || !is_subordinator(first)) return false;
    return has_clause(first + 1, i) && has_clause(i + 1, span_end(i));
  }

  bool conjunction_identifier(std::size_t i) const {
    const std::size_t start = span_start(i);
    const std::size_t end = span_end(i);
    if (is_subordinator(i)) return has_clause(start, i) && has_clause(i + 1, end);
    if (i > 0 && is_comma(i - 1) && is_list_comma(i - 1)) return false;
    return has_content(start, i) && has_content(i + 1, end);
  }

  const std::vector<Token>& tokens() const { return tokens_; }

 private:
  const std::vector<Token>& tokens_;
  const SegmenterConfig& config_;
};

std::set<std::string> load_or(const std::filesystem::path& path, const std::set<std::string>& fallback) {
  return path.empty() ? fallback : text::read_word_list(path);
}

}  // namespace

SegmenterConfig SegmenterConfig::defaults() {
  return {kDefaultCoordinators, kDefaultSubordinators, kDefaultAbbreviations};
}

SegmenterConfig SegmenterConfig::load(const std::filesystem::path& coordinators,
                                      const std::filesystem::path& subordinators,
                                      const std::filesystem::path& abbreviations) {
  return {load_or(coordinators, kDefaultCoordinators), load_or(subordinators, kDefaultSubordinators),
          load_or(abbreviations, kDefaultAbbreviations)};
}

std::vector<BoundaryCandidate> find_boundary_candidates(const std::vector<Token>& tokens,
                                                        const SegmenterConfig& config) {
  const SentenceView view(tokens, config);
  std::vector<BoundaryCandidate> out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (view.is_terminal(i) || view.is_comma(i)) {
      out.push_back({i, BoundaryKind::Punct, tokens[i].surface, false});
    } else if (view.is_conjunction(i)) {
      out.push_back({i, BoundaryKind::Conjunction, tokens[i].surface, view.is_subordinator(i)});
    }
  }
  return out;
}

bool is_clause_identifier(const BoundaryCandidate& candidate, const std::vector<Token>& tokens,
                          const SegmenterConfig& config) {
  const SentenceView view(tokens, config);
  const std::size_t i = candidate.position;
  if (i >= tokens.size()) return false;
  if (candidate.kind == BoundaryKind::Conjunction) return view.conjunction_identifier(i);
  if (view.is_terminal(i)) return true;
  if (view.is_comma(i)) return view.comma_identifier(i);
  return false;
}

SegmentResult segment_detailed(const Review& review, const std::vector<TaggedSentence>& sentences,
                               const SegmenterConfig& config) {
  SegmentResult result;
  std::size_t offset = 0;  // position of the sentence in the review token stream

  struct Pending {
    std::vector<std::size_t> members;  // sentence-local token indices
  };

  for (const TaggedSentence& sentence : sentences) {
    const auto& tokens = sentence.tokens;
    std::vector<bool> identifier(tokens.size(), false);
    for (const auto& c : find_boundary_candidates(tokens, config)) {
      identifier[c.position] = is_clause_identifier(c, tokens, config);
    }

    // Clause membership of each sentence token, for re-indexing parser pairs.
    std::map<std::size_t, std::pair<std::size_t, std::size_t>> placement;
    const std::size_t clauses_before = result.clauses.size();

    Pending current;
    const auto close = [&]() {
      if (current.members.empty()) return;
      bool has_word = false;
      for (std::size_t m : current.members) {
        if (tokens[m].pos != Pos::PUNCT) has_word = true;
      }
      if (!has_word) {
        // Stray punctuation ("wow. .") joins the previous clause.
        if (result.clauses.empty()) {
          for (std::size_t m : current.members) result.dropped.emplace_back(offset + m, tokens[m]);
        } else {
          Clause& prev = result.clauses.back();
          for (std::size_t m : current.members) {
            placement[m] = {result.clauses.size() - 1, prev.tokens.size()};
            prev.tokens.push_back(tokens[m]);
          }
          prev.text = join_tokens(prev.tokens);
        }
        current.members.clear();
        return;
      }
      Clause clause;
      clause.review_id = review.id;
      clause.index = result.clauses.size();
      for (std::size_t m : current.members) {
        placement[m] = {clause.index, clause.tokens.size()};
        clause.tokens.push_back(tokens[m]);
      }
      clause.text = join_tokens(clause.tokens);
      result.clauses.push_back(std::move(clause));
      current.members.clear();
    };

    for (std::size_t i = 0; i < tokens.size(); ++i) {
      if (!identifier[i]) {
        current.members.push_back(i);
        continue;
      }
      if (tokens[i].pos == Pos::PUNCT) {
        current.members.push_back(i);
        close();
        continue;
      }
      close();
      // "but, well worth it": a conjunction followed by punctuation opens
      // the next clause instead of vanishing.
      if (i + 1 < tokens.size() && tokens[i + 1].pos == Pos::PUNCT) {
        current.members.push_back(i);
      } else {
        result.dropped.emplace_back(offset + i, tokens[i]);
      }
    }
    close();

    if (sentence.parsed) {
      for (const DependencyPair& p : sentence.pairs) {
        const auto d = placement.find(p.dependent);
        const auto h = placement.find(p.head);
        if (d == placement.end() || h == placement.end()) continue;
        if (d->second.first != h->second.first) continue;
        result.clauses[d->second.first].pairs.push_back({d->second.second, h->second.second});
      }
    } else {
      for (std::size_t c = clauses_before; c < result.clauses.size(); ++c) {
        Clause& clause = result.clauses[c];
        for (const DependencyPair& p : derive_pairs(clause.tokens)) clause.pairs.push_back({p.dependent, p.head});
      }
    }
    offset += tokens.size();
  }
  return result;
}

std::vector<Clause> segment(const Review& review, const std::vector<TaggedSentence>& sentences,
                            const SegmenterConfig& config) {
  return segment_detailed(review, sentences, config).clauses;
}

}  // namespace dissbus
