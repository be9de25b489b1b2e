// Copyright 2026 The dissbus Authors.
// Licensed under the Apache License, Version 2.0; see LICENSE.

#include "dissbus/strainer.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "dissbus/text.hpp"

namespace dissbus {

std::uint64_t FrequencyTable::count(const BiTerm& b) const {
  const auto it = entries.find(b);
  return it == entries.end() ? 0 : it->second;
}

void FrequencyTable::merge(const FrequencyTable& other) {
  for (const auto& [b, n] : other.entries) entries[b] += n;
  total_occurrences += other.total_occurrences;
}

std::vector<std::pair<BiTerm, std::uint64_t>> FrequencyTable::ranked() const {
  std::vector<std::pair<BiTerm, std::uint64_t>> out(entries.begin(), entries.end());
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return lexicographic_less(a.first, b.first);
  });
  return out;
}

FrequencyTable count_biterms(const std::vector<BiTermOccurrence>& occurrences) {
  FrequencyTable table;
  for (const auto& occ : occurrences) {
    ++table.entries[occ.biterm];
    ++table.total_occurrences;
  }
  return table;
}

CommonExpressionSet strain(const FrequencyTable& table, long cut_point) {
  if (cut_point < 1) throw ParameterError("cut-point C must be >= 1, got " + std::to_string(cut_point));
  CommonExpressionSet out;
  out.cut_point = static_cast<std::uint64_t>(cut_point);
  for (const auto& [b, n] : table.entries) {
    if (n >= out.cut_point) out.biterms.insert(b);
  }
  return out;
}

FrequencyTable unstrained(const FrequencyTable& table, const CommonExpressionSet& common) {
  FrequencyTable out;
  for (const auto& [b, n] : table.entries) {
    if (common.contains(b)) continue;
    out.entries.emplace(b, n);
    out.total_occurrences += n;
  }
  return out;
}

std::string format_frequency_tsv(const FrequencyTable& table) {
  std::string out;
  for (const auto& [b, n] : table.ranked()) {
    out += b.object_stem;
    out += '\t';
    out += to_string(b.object_pos);
    out += '\t';
    out += b.evaluation_stem;
    out += '\t';
    out += to_string(b.evaluation_pos);
    out += '\t';
    out += std::to_string(n);
    out += '\n';
  }
  return out;
}

FrequencyTable parse_frequency_tsv(std::string_view data, std::string_view source) {
  FrequencyTable table;
  std::istringstream in{std::string(data)};
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (text::trim(line).empty()) continue;
    const auto cols = text::split(line, '\t');
    const auto where = std::string(source) + ":" + std::to_string(lineno);
    if (cols.size() != 5) throw ValidationError(where + ": expected 5 columns");
    const auto op = parse_pos(cols[1]);
    const auto ep = parse_pos(cols[3]);
    if (!op || !ep || !is_admissible(*op, *ep)) throw ValidationError(where + ": bad POS combination");
    const long n = text::parse_long(cols[4], where);
    if (n < 1) throw ValidationError(where + ": count must be >= 1");
    const BiTerm b{cols[0], *op, cols[2], *ep};
    if (!table.entries.emplace(b, static_cast<std::uint64_t>(n)).second) {
      throw ValidationError(where + ": duplicate bi-term " + b.key());
    }
    table.total_occurrences += static_cast<std::uint64_t>(n);
  }
  return table;
}

void write_text_file(const std::filesystem::path& path, std::string_view contents) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw IoError("error while writing " + path.string());
}

}  // namespace dissbus
