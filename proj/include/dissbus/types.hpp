// Copyright 2026 The dissbus Authors.
// Licensed under the Apache License, Version 2.0; see LICENSE.

#ifndef DISSBUS_TYPES_HPP_
#define DISSBUS_TYPES_HPP_

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace dissbus {

// Errors map onto the CLI exit codes: validation 1, I/O 2, parameter 3.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParameterError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Coarse tagset. Penn tags collapse JJ*->ADJ, RB*->RB, NN*->NN, VB*->VB.
enum class Pos { NN, VB, ADJ, RB, IN, DT, CC, PUNCT, UH, OTHER };

std::string_view to_string(Pos pos);
std::optional<Pos> parse_pos(std::string_view name);

struct Token {
  std::string surface;
  std::string stem;  // lowercase
  Pos pos = Pos::OTHER;
  bool space_after = true;

  bool operator==(const Token&) const = default;
};

struct Review {
  std::string id;
  std::string title;
  std::string body;
  std::optional<int> rating;
  std::optional<std::string> date;

  bool operator==(const Review&) const = default;
};

struct Corpus {
  std::vector<Review> reviews;

  bool operator==(const Corpus&) const = default;
};

// Index-based head/dependent pair local to one token sequence.
struct PairIndex {
  std::size_t dependent = 0;
  std::size_t head = 0;

  bool operator==(const PairIndex&) const = default;
};

struct Clause {
  std::string review_id;
  std::size_t index = 0;
  std::vector<Token> tokens;
  std::string text;
  bool negated = false;
  // Dependency pairs whose endpoints both fall inside this clause,
  // re-indexed into `tokens`.
  std::vector<PairIndex> pairs;
};

struct Topic {
  std::string id;
  std::string label;
  double weight = 1.0;

  bool operator==(const Topic&) const = default;
};

// Renders tokens back to text, honouring space_after.
std::string join_tokens(const std::vector<Token>& tokens);

}  // namespace dissbus

#endif  // DISSBUS_TYPES_HPP_
