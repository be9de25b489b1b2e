// Copyright 2026 The dissbus Authors.
// Licensed under the Apache License, Version 2.0; see LICENSE.

#ifndef DISSBUS_STRAINER_HPP_
#define DISSBUS_STRAINER_HPP_

#include <cstdint>
#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "dissbus/summarizer.hpp"

namespace dissbus {

struct FrequencyTable {
  std::map<BiTerm, std::uint64_t> entries;
  std::uint64_t total_occurrences = 0;

  std::uint64_t count(const BiTerm& b) const;
  // Merges another shard; counting is a commutative monoid.
  void merge(const FrequencyTable& other);
  // Entries sorted by count descending, then by bi-term.
  std::vector<std::pair<BiTerm, std::uint64_t>> ranked() const;

  bool operator==(const FrequencyTable&) const = default;
};

struct CommonExpressionSet {
  std::set<BiTerm> biterms;
  std::uint64_t cut_point = 1;

  bool contains(const BiTerm& b) const { return biterms.count(b) > 0; }
};

FrequencyTable count_biterms(const std::vector<BiTermOccurrence>& occurrences);

// {b : count(b) >= cut_point}. Throws ParameterError for cut_point < 1.
CommonExpressionSet strain(const FrequencyTable& table, long cut_point);

// Entries of `table` that did not survive straining.
FrequencyTable unstrained(const FrequencyTable& table, const CommonExpressionSet& common);

// TSV rows `object_stem, object_pos, evaluation_stem, evaluation_pos, count`
// ranked as in FrequencyTable::ranked(); no header.
std::string format_frequency_tsv(const FrequencyTable& table);
FrequencyTable parse_frequency_tsv(std::string_view data, std::string_view source = "<tsv>");

void write_text_file(const std::filesystem::path& path, std::string_view contents);

}  // namespace dissbus

#endif  // DISSBUS_STRAINER_HPP_
