// Copyright 2026 The dissbus Authors.
// Licensed under the Apache License, Version 2.0; see LICENSE.

#include "dissbus/summarizer.hpp"

#include <algorithm>

#include "dissbus/text.hpp"

namespace dissbus {

std::string BiTerm::key() const {
  return object_stem + ":" + std::string(to_string(object_pos)) + ":" + evaluation_stem + ":" +
         std::string(to_string(evaluation_pos));
}

std::optional<BiTerm> BiTerm::from_key(std::string_view key) {
  const auto parts = text::split(key, ':');
  if (parts.size() != 4 || parts[0].empty() || parts[2].empty()) return std::nullopt;
  const auto op = parse_pos(parts[1]);
  const auto ep = parse_pos(parts[3]);
  if (!op || !ep || !is_admissible(*op, *ep)) return std::nullopt;
  return BiTerm{parts[0], *op, parts[2], *ep};
}

bool lexicographic_less(const BiTerm& a, const BiTerm& b) {
  if (a.object_stem != b.object_stem) return a.object_stem < b.object_stem;
  if (a.object_pos != b.object_pos) return to_string(a.object_pos) < to_string(b.object_pos);
  if (a.evaluation_stem != b.evaluation_stem) return a.evaluation_stem < b.evaluation_stem;
  return to_string(a.evaluation_pos) < to_string(b.evaluation_pos);
}

bool is_admissible(Pos object_pos, Pos evaluation_pos) {
  if (object_pos == Pos::NN) {
    return evaluation_pos == Pos::ADJ || evaluation_pos == Pos::VB || evaluation_pos == Pos::RB;
  }
  if (object_pos == Pos::VB) return evaluation_pos == Pos::ADJ || evaluation_pos == Pos::RB;
  return false;
}

std::set<std::string> default_negations() {
  return {"not",   "never", "no",     "neither", "nor",    "don't", "doesn't", "didn't", "won't",
          "can't", "isn't", "wasn't", "aren't",  "weren't", "without", "n't"};
}

std::set<std::string> load_negations(const std::filesystem::path& path) {
  return path.empty() ? default_negations() : text::read_word_list(path);
}

bool detect_negation(const Clause& clause, const std::set<std::string>& negations) {
  return std::any_of(clause.tokens.begin(), clause.tokens.end(),
                     [&](const Token& t) { return negations.count(text::normalize_word(t.surface)) > 0; });
}

std::optional<BiTerm> biterm_from_pair(const Token& a, const Token& b) {
  const auto orient = [](const Token& object, const Token& evaluation) -> std::optional<BiTerm> {
    if (!is_admissible(object.pos, evaluation.pos)) return std::nullopt;
    if (object.stem.empty() || evaluation.stem.empty()) return std::nullopt;
    return BiTerm{object.stem, object.pos, evaluation.stem, evaluation.pos};
  };
  // (NN, VB) in either order puts the noun in object position.
  if (a.pos == Pos::NN) return orient(a, b);
  if (b.pos == Pos::NN) return orient(b, a);
  if (a.pos == Pos::VB && b.pos != Pos::VB) return orient(a, b);
  if (b.pos == Pos::VB && a.pos != Pos::VB) return orient(b, a);
  return std::nullopt;
}

std::vector<BiTermOccurrence> extract_biterms(const Clause& clause, const std::vector<DependencyPair>& pairs) {
  std::vector<BiTermOccurrence> out;
  std::set<BiTerm> seen;
  for (const DependencyPair& p : pairs) {
    auto b = biterm_from_pair(p.word1, p.word2);
    if (!b || !seen.insert(*b).second) continue;
    out.push_back({std::move(*b), clause.review_id, clause.index, clause.negated});
  }
  return out;
}

std::vector<BiTermOccurrence> extract_biterms(const Clause& clause) {
  std::vector<DependencyPair> pairs;
  pairs.reserve(clause.pairs.size());
  for (const PairIndex& p : clause.pairs) {
    if (p.dependent >= clause.tokens.size() || p.head >= clause.tokens.size()) continue;
    pairs.push_back({clause.tokens[p.dependent], clause.tokens[p.head], "", p.dependent, p.head});
  }
  return extract_biterms(clause, pairs);
}

}  // namespace dissbus
