// Copyright 2026 The dissbus Authors.
// Licensed under the Apache License, Version 2.0; see LICENSE.

#ifndef DISSBUS_UPCYCLER_HPP_
#define DISSBUS_UPCYCLER_HPP_

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "dissbus/bagger.hpp"
#include "dissbus/strainer.hpp"
#include "dissbus/summarizer.hpp"

namespace dissbus {

// Synonym sets plus optional higher-level categories, keyed by stem.
class Thesaurus {
 public:
  // Adds x~y in both directions.
  void add_synonym(const std::string& x, const std::string& y);
  void add_category(const std::string& stem, const std::string& category);

  const std::set<std::string>& synonyms(const std::string& stem) const;
  const std::set<std::string>& categories(const std::string& stem) const;

  std::size_t size() const { return synonyms_.size(); }
  bool has_categories() const { return !categories_.empty(); }

  // TSV `stem<TAB>syn1,syn2,...` and `stem<TAB>cat1,cat2,...`; either path
  // may be empty.
  static Thesaurus load(const std::filesystem::path& synonyms, const std::filesystem::path& categories = {});

 private:
  std::map<std::string, std::set<std::string>> synonyms_;
  std::map<std::string, std::set<std::string>> categories_;
};

// 0 when the stems are equal, listed as synonyms, or share a category;
// otherwise 1.
int semantic_distance(const std::string& x, const std::string& y, const Thesaurus& thesaurus);

enum class ComparisonMode { Full, Fractional };

struct ComparisonPlan {
  ComparisonMode mode = ComparisonMode::Full;
  long total_sample = 0;  // M, fractional mode only
  std::uint64_t seed = 42;
};

std::string_view to_string(ComparisonMode mode);
ComparisonMode parse_comparison_mode(std::string_view name);

struct SimilarityScore {
  BiTerm biterm;
  std::string topic;
  double value = 0.0;
};

// Sum over `sample` of weight * (1 - d(object(biterm), object(member))).
SimilarityScore similarity_score(const BiTerm& biterm, const Topic& topic, const std::vector<BiTerm>& sample,
                                 const Thesaurus& thesaurus);

// Full-bag convenience overload.
SimilarityScore similarity_score(const BiTerm& biterm, const TopicBag& bag, const Thesaurus& thesaurus);

struct Allocation {
  std::vector<double> quotas;      // M * n_k / sum(n)
  std::vector<long> apportioned;   // largest remainder, before caps and the min-1 rule
  std::vector<long> sizes;         // M_k actually drawn
};

// Largest-remainder apportionment of `total` proportional to `bag_sizes`,
// then capped at n_k, lifted to >= 1 for non-empty bags and trimmed or
// topped up to stay within `total`. Throws ParameterError when `total` is
// smaller than the number of non-empty bags.
Allocation allocate_fractional(long total, const std::vector<long>& bag_sizes);

// Portable deterministic draws (std distributions differ across libraries).
class DeterministicRng {
 public:
  explicit DeterministicRng(std::uint64_t seed) : engine_(seed) {}
  std::uint64_t below(std::uint64_t n);

 private:
  std::mt19937_64 engine_;
};

// Uniform sample of `k` members without replacement, in draw order.
std::vector<BiTerm> sample_members(const std::vector<BiTerm>& members, std::size_t k, DeterministicRng& rng);

// Argmax topic; nullopt (UNASSIGNED) for an all-zero maximum or a tie.
std::optional<std::string> assign_topic(const std::vector<SimilarityScore>& scores);

struct Assignment {
  BiTerm biterm;
  std::uint64_t count = 0;
  std::optional<std::string> topic;
  double score = 0.0;  // winning (or maximum) score
  bool added = false;
};

struct UpcycleResult {
  std::vector<TopicBag> bags;
  std::vector<Assignment> assignments;  // processing order

  std::size_t assigned_count() const;
  std::size_t added_count() const;
};

// Single pass over unstrained bi-terms (count descending, then
// lexicographic). Each bi-term is scored against the current bags; it is
// assigned by assign_topic and added to the winning bag iff score >= c1 and
// count >= c2. Later bi-terms see earlier additions.
UpcycleResult upcycle(const FrequencyTable& unstrained, const std::vector<TopicBag>& bags, const Thesaurus& thesaurus,
                      double c1, long c2, const ComparisonPlan& plan);

// TSV `biterm_key, topic, score, added_to_bag` in processing order.
std::string format_assignments_tsv(const std::vector<Assignment>& assignments);
std::vector<Assignment> parse_assignments_tsv(std::string_view data, const FrequencyTable& table);

}  // namespace dissbus

#endif  // DISSBUS_UPCYCLER_HPP_
