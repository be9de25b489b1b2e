// Copyright 2026 The dissbus Authors.
// Licensed under the Apache License, Version 2.0; see LICENSE.

#ifndef DISSBUS_SUMMARIZER_HPP_
#define DISSBUS_SUMMARIZER_HPP_

#include <compare>
#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "dissbus/parse.hpp"
#include "dissbus/stemmer.hpp"
#include "dissbus/types.hpp"

namespace dissbus {

// (object word, evaluation word). The object is the noun or verb the
// clause talks about; the evaluation word describes or predicates it.
struct BiTerm {
  std::string object_stem;
  Pos object_pos = Pos::NN;
  std::string evaluation_stem;
  Pos evaluation_pos = Pos::ADJ;

  auto operator<=>(const BiTerm&) const = default;
  bool operator==(const BiTerm&) const = default;

  // "food:NN:good:ADJ"; stable identifier used in files and URLs.
  std::string key() const;
  static std::optional<BiTerm> from_key(std::string_view key);
};

// Text order over (object_stem, object_pos, evaluation_stem, evaluation_pos)
// with tags compared by name; used wherever output order must be stable.
bool lexicographic_less(const BiTerm& a, const BiTerm& b);

// True for the five admissible (object, evaluation) tag combinations:
// (NN,ADJ) (NN,VB) (NN,RB) (VB,ADJ) (VB,RB).
bool is_admissible(Pos object_pos, Pos evaluation_pos);

struct BiTermOccurrence {
  BiTerm biterm;
  std::string review_id;
  std::size_t clause_index = 0;
  bool negated = false;

  bool operator==(const BiTermOccurrence&) const = default;
};

std::set<std::string> default_negations();
std::set<std::string> load_negations(const std::filesystem::path& path);

bool detect_negation(const Clause& clause, const std::set<std::string>& negations);

// Orients one dependency pair into a bi-term, or nullopt when the tags are
// not one of the five combinations.
std::optional<BiTerm> biterm_from_pair(const Token& a, const Token& b);

// Uses the clause's own pairs.
std::vector<BiTermOccurrence> extract_biterms(const Clause& clause);
std::vector<BiTermOccurrence> extract_biterms(const Clause& clause, const std::vector<DependencyPair>& pairs);

}  // namespace dissbus

#endif  // DISSBUS_SUMMARIZER_HPP_
