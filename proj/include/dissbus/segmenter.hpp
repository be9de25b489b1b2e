// Copyright 2026 The dissbus Authors.
// Licensed under the Apache License, Version 2.0; see LICENSE.

#ifndef DISSBUS_SEGMENTER_HPP_
#define DISSBUS_SEGMENTER_HPP_

#include <filesystem>
#include <set>
#include <string>
#include <vector>

#include "dissbus/parse.hpp"
#include "dissbus/types.hpp"

namespace dissbus {

struct SegmenterConfig {
  // Coordinating conjunctions: split when both sides carry a noun, verb or
  // pronoun.
  std::set<std::string> coordinators;
  // Subordinating conjunctions: split only between two subject+predicate
  // sides; also open introductory clauses whose closing comma splits.
  std::set<std::string> subordinators;
  // Abbreviations including their final period ("dr.", "e.g.").
  std::set<std::string> abbreviations;

  static SegmenterConfig defaults();
  // Each path may be empty to keep the default list.
  static SegmenterConfig load(const std::filesystem::path& coordinators,
                              const std::filesystem::path& subordinators,
                              const std::filesystem::path& abbreviations);
};

enum class BoundaryKind { Punct, Conjunction };

struct BoundaryCandidate {
  std::size_t position = 0;
  BoundaryKind kind = BoundaryKind::Punct;
  std::string surface;
  bool subordinating = false;

  bool operator==(const BoundaryCandidate&) const = default;
};

std::vector<BoundaryCandidate> find_boundary_candidates(const std::vector<Token>& tokens,
                                                        const SegmenterConfig& config);

bool is_clause_identifier(const BoundaryCandidate& candidate, const std::vector<Token>& tokens,
                          const SegmenterConfig& config);

struct SegmentResult {
  std::vector<Clause> clauses;
  // Tokens belonging to no clause (dropped conjunctions, leading stray
  // punctuation), with their position in the review token stream.
  std::vector<std::pair<std::size_t, Token>> dropped;
};

SegmentResult segment_detailed(const Review& review, const std::vector<TaggedSentence>& sentences,
                               const SegmenterConfig& config);

std::vector<Clause> segment(const Review& review, const std::vector<TaggedSentence>& sentences,
                            const SegmenterConfig& config);

}  // namespace dissbus

#endif  // DISSBUS_SEGMENTER_HPP_
