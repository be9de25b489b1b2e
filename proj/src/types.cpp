// Copyright 2026 The dissbus Authors.
// Licensed under the Apache License, Version 2.0; see LICENSE.

#include "dissbus/types.hpp"

#include <array>
#include <utility>

namespace dissbus {

namespace {

constexpr std::array<std::pair<Pos, std::string_view>, 10> kPosNames{{
    {Pos::NN, "NN"},
    {Pos::VB, "VB"},
    {Pos::ADJ, "ADJ"},
    {Pos::RB, "RB"},
    {Pos::IN, "IN"},
    {Pos::DT, "DT"},
    {Pos::CC, "CC"},
    {Pos::PUNCT, "PUNCT"},
    {Pos::UH, "UH"},
    {Pos::OTHER, "OTHER"},
}};

}  // namespace

std::string_view to_string(Pos pos) {
  for (const auto& [p, name] : kPosNames) {
    if (p == pos) return name;
  }
  return "OTHER";
}

std::optional<Pos> parse_pos(std::string_view name) {
  for (const auto& [p, n] : kPosNames) {
    if (n == name) return p;
  }
  return std::nullopt;
}

std::string join_tokens(const std::vector<Token>& tokens) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    out += tokens[i].surface;
    if (i + 1 < tokens.size() && tokens[i].space_after) out.push_back(' ');
  }
  return out;
}

}  // namespace dissbus
