// Copyright 2026 The dissbus Authors.
// Licensed under the Apache License, Version 2.0; see LICENSE.

#include "dissbus/upcycler.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "dissbus/text.hpp"

namespace dissbus {

namespace {

const std::set<std::string> kEmpty;

void load_pairs(const std::filesystem::path& path, bool categories, Thesaurus& out) {
  std::istringstream in(text::read_file(path));
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view trimmed = text::trim(line);
    if (trimmed.empty() || trimmed.front() == '#') continue;
    const auto cols = text::split(trimmed, '\t');
    if (cols.size() != 2) {
      throw ValidationError(path.string() + ":" + std::to_string(line_no) + ": expected stem<TAB>list");
    }
    const std::string head = text::to_lower(text::trim(cols[0]));
    for (const std::string& item : text::split(cols[1], ',')) {
      const std::string value = text::to_lower(text::trim(item));
      if (value.empty()) continue;
      if (categories) {
        out.add_category(head, value);
      } else {
        out.add_synonym(head, value);
      }
    }
  }
}

}  // namespace

void Thesaurus::add_synonym(const std::string& x, const std::string& y) {
  if (x == y) return;
  synonyms_[x].insert(y);
  synonyms_[y].insert(x);
}

void Thesaurus::add_category(const std::string& stem, const std::string& category) {
  categories_[stem].insert(category);
}

const std::set<std::string>& Thesaurus::synonyms(const std::string& stem) const {
  const auto it = synonyms_.find(stem);
  return it == synonyms_.end() ? kEmpty : it->second;
}

const std::set<std::string>& Thesaurus::categories(const std::string& stem) const {
  const auto it = categories_.find(stem);
  return it == categories_.end() ? kEmpty : it->second;
}

Thesaurus Thesaurus::load(const std::filesystem::path& synonyms, const std::filesystem::path& categories) {
  Thesaurus t;
  if (!synonyms.empty()) load_pairs(synonyms, false, t);
  if (!categories.empty()) load_pairs(categories, true, t);
  return t;
}

int semantic_distance(const std::string& x, const std::string& y, const Thesaurus& thesaurus) {
  if (x == y) return 0;
  if (thesaurus.synonyms(x).count(y)) return 0;
  const auto& cx = thesaurus.categories(x);
  const auto& cy = thesaurus.categories(y);
  for (const std::string& c : cx) {
    if (cy.count(c)) return 0;
  }
  return 1;
}

std::string_view to_string(ComparisonMode mode) { return mode == ComparisonMode::Full ? "full" : "fractional"; }

ComparisonMode parse_comparison_mode(std::string_view name) {
  const std::string lower = text::to_lower(name);
  if (lower == "full") return ComparisonMode::Full;
  if (lower == "fractional") return ComparisonMode::Fractional;
  throw ParameterError("unknown comparison mode '" + std::string(name) + "' (expected full or fractional)");
}

SimilarityScore similarity_score(const BiTerm& biterm, const Topic& topic, const std::vector<BiTerm>& sample,
                                 const Thesaurus& thesaurus) {
  long matches = 0;
  for (const BiTerm& member : sample) {
    matches += 1 - semantic_distance(biterm.object_stem, member.object_stem, thesaurus);
  }
  // One multiplication keeps ties and order exact under weight scaling.
  return {biterm, topic.id, topic.weight * static_cast<double>(matches)};
}

SimilarityScore similarity_score(const BiTerm& biterm, const TopicBag& bag, const Thesaurus& thesaurus) {
  return similarity_score(biterm, bag.topic, bag.member_list(), thesaurus);
}

Allocation allocate_fractional(long total, const std::vector<long>& bag_sizes) {
  const std::size_t k = bag_sizes.size();
  long nonempty = 0;
  long sum = 0;
  for (long n : bag_sizes) {
    if (n < 0) throw ParameterError("bag sizes must be non-negative");
    if (n > 0) ++nonempty;
    sum += n;
  }
  if (total < nonempty) {
    throw ParameterError("comparison size M=" + std::to_string(total) + " is smaller than the " +
                         std::to_string(nonempty) + " non-empty bags");
  }
  Allocation a;
  a.quotas.assign(k, 0.0);
  a.apportioned.assign(k, 0);
  a.sizes.assign(k, 0);
  if (sum == 0) return a;

  long seated = 0;
  std::vector<double> remainder(k, 0.0);
  for (std::size_t i = 0; i < k; ++i) {
    a.quotas[i] = static_cast<double>(total) * static_cast<double>(bag_sizes[i]) / static_cast<double>(sum);
    a.apportioned[i] = static_cast<long>(std::floor(a.quotas[i]));
    remainder[i] = a.quotas[i] - static_cast<double>(a.apportioned[i]);
    seated += a.apportioned[i];
  }
  std::vector<std::size_t> order(k);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return remainder[x] > remainder[y]; });
  for (std::size_t i = 0; seated < total && i < k; ++i) {
    if (bag_sizes[order[i]] == 0) continue;
    ++a.apportioned[order[i]];
    ++seated;
  }

  long assigned = 0;
  for (std::size_t i = 0; i < k; ++i) {
    a.sizes[i] = std::min(a.apportioned[i], bag_sizes[i]);
    if (bag_sizes[i] > 0) a.sizes[i] = std::max(a.sizes[i], 1L);
    assigned += a.sizes[i];
  }
  while (assigned > total) {
    std::size_t pick = k;
    for (std::size_t i = 0; i < k; ++i) {
      if (a.sizes[i] <= 1) continue;
      if (pick == k || a.sizes[i] - a.quotas[i] > a.sizes[pick] - a.quotas[pick]) pick = i;
    }
    --a.sizes[pick];
    --assigned;
  }
  while (assigned < total) {
    std::size_t pick = k;
    for (std::size_t i = 0; i < k; ++i) {
      if (a.sizes[i] >= bag_sizes[i]) continue;
      if (pick == k || a.quotas[i] - a.sizes[i] > a.quotas[pick] - a.sizes[pick]) pick = i;
    }
    if (pick == k) break;
    ++a.sizes[pick];
    ++assigned;
  }
  return a;
}

std::uint64_t DeterministicRng::below(std::uint64_t n) {
  if (n == 0) throw ParameterError("cannot draw from an empty range");
  const std::uint64_t limit = std::mt19937_64::max() - std::mt19937_64::max() % n;
  std::uint64_t x = engine_();
  while (x >= limit) x = engine_();
  return x % n;
}

std::vector<BiTerm> sample_members(const std::vector<BiTerm>& members, std::size_t k, DeterministicRng& rng) {
  std::vector<std::size_t> idx(members.size());
  std::iota(idx.begin(), idx.end(), 0);
  k = std::min(k, members.size());
  std::vector<BiTerm> out;
  out.reserve(k);
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng.below(idx.size() - i));
    std::swap(idx[i], idx[j]);
    out.push_back(members[idx[i]]);
  }
  return out;
}

std::optional<std::string> assign_topic(const std::vector<SimilarityScore>& scores) {
  const SimilarityScore* best = nullptr;
  bool tied = false;
  for (const SimilarityScore& s : scores) {
    if (best == nullptr || s.value > best->value) {
      best = &s;
      tied = false;
    } else if (s.value == best->value) {
      tied = true;
    }
  }
  if (best == nullptr || best->value <= 0.0 || tied) return std::nullopt;
  return best->topic;
}

std::size_t UpcycleResult::assigned_count() const {
  return static_cast<std::size_t>(
      std::count_if(assignments.begin(), assignments.end(), [](const Assignment& a) { return a.topic.has_value(); }));
}

std::size_t UpcycleResult::added_count() const {
  return static_cast<std::size_t>(
      std::count_if(assignments.begin(), assignments.end(), [](const Assignment& a) { return a.added; }));
}

UpcycleResult upcycle(const FrequencyTable& unstrained, const std::vector<TopicBag>& bags, const Thesaurus& thesaurus,
                      double c1, long c2, const ComparisonPlan& plan) {
  if (!(c1 > 0.0)) throw ParameterError("C1 must be > 0");
  if (c2 < 1) throw ParameterError("C2 must be >= 1");
  if (plan.mode == ComparisonMode::Fractional) {
    long nonempty = 0;
    for (const TopicBag& b : bags) nonempty += b.size() > 0 ? 1 : 0;
    if (plan.total_sample < nonempty) {
      throw ParameterError("comparison size M=" + std::to_string(plan.total_sample) + " is smaller than the " +
                           std::to_string(nonempty) + " non-empty bags");
    }
  }

  UpcycleResult result;
  result.bags = bags;
  DeterministicRng rng(plan.seed);

  for (const auto& [biterm, count] : unstrained.ranked()) {
    std::vector<SimilarityScore> scores;
    scores.reserve(result.bags.size());
    if (plan.mode == ComparisonMode::Full) {
      for (const TopicBag& bag : result.bags) scores.push_back(similarity_score(biterm, bag, thesaurus));
    } else {
      std::vector<long> sizes;
      for (const TopicBag& bag : result.bags) sizes.push_back(static_cast<long>(bag.size()));
      const Allocation alloc = allocate_fractional(plan.total_sample, sizes);
      for (std::size_t k = 0; k < result.bags.size(); ++k) {
        const auto sample =
            sample_members(result.bags[k].member_list(), static_cast<std::size_t>(alloc.sizes[k]), rng);
        scores.push_back(similarity_score(biterm, result.bags[k].topic, sample, thesaurus));
      }
    }

    Assignment a;
    a.biterm = biterm;
    a.count = count;
    a.topic = assign_topic(scores);
    for (const SimilarityScore& s : scores) a.score = std::max(a.score, s.value);
    if (a.topic && a.score >= c1 && count >= static_cast<std::uint64_t>(c2)) {
      const bool already = std::any_of(result.bags.begin(), result.bags.end(),
                                       [&](const TopicBag& b) { return b.contains(biterm); });
      if (!already) {
        for (TopicBag& bag : result.bags) {
          if (bag.topic.id == *a.topic) bag.members.emplace(biterm, Provenance::Upcycled);
        }
        a.added = true;
      }
    }
    result.assignments.push_back(std::move(a));
  }
  return result;
}

std::string format_assignments_tsv(const std::vector<Assignment>& assignments) {
  std::string out;
  for (const Assignment& a : assignments) {
    out += a.biterm.key();
    out += '\t';
    out += a.topic.value_or("UNASSIGNED");
    out += '\t';
    out += text::format_real(a.score);
    out += '\t';
    out += a.added ? "true" : "false";
    out += '\n';
  }
  return out;
}

std::vector<Assignment> parse_assignments_tsv(std::string_view data, const FrequencyTable& table) {
  std::vector<Assignment> out;
  std::size_t line_no = 0;
  for (const std::string& line : text::split(data, '\n')) {
    ++line_no;
    if (text::trim(line).empty()) continue;
    const auto cols = text::split(line, '\t');
    const std::string where = "assignments:" + std::to_string(line_no);
    if (cols.size() != 4) throw ValidationError(where + ": expected 4 columns");
    const auto b = BiTerm::from_key(cols[0]);
    if (!b) throw ValidationError(where + ": malformed bi-term key '" + cols[0] + "'");
    Assignment a;
    a.biterm = *b;
    a.count = table.count(*b);
    if (cols[1] != "UNASSIGNED") a.topic = cols[1];
    a.score = text::parse_double(cols[2], where + " score");
    if (cols[3] != "true" && cols[3] != "false") throw ValidationError(where + ": added must be true or false");
    a.added = cols[3] == "true";
    out.push_back(std::move(a));
  }
  return out;
}

}  // namespace dissbus
