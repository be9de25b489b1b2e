// Copyright 2026 The dissbus Authors.
// Licensed under the Apache License, Version 2.0; see LICENSE.

#include "dissbus/strainer.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "test_util.hpp"

namespace dissbus {
namespace {

BiTerm bt(const std::string& o, const std::string& e, Pos op = Pos::NN, Pos ep = Pos::ADJ) { return {o, op, e, ep}; }

std::vector<BiTermOccurrence> repeat(const BiTerm& b, int n) {
  std::vector<BiTermOccurrence> out;
  for (int i = 0; i < n; ++i) out.push_back({b, "r" + std::to_string(i), 0, false});
  return out;
}

// 200 synthetic reviews, 1 to 4 occurrences each, drawn from a Zipf-like
// vocabulary so that counts spread across the tested cut points.
std::vector<BiTermOccurrence> synthetic_occurrences(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const std::vector<std::string> objects{"food", "servic", "staff", "price", "place", "fish", "view", "go", "park"};
  const std::vector<std::string> evals{"good", "great", "friend", "fair", "clean", "back", "limit", "nice"};
  const std::vector<Pos> eval_pos{Pos::ADJ, Pos::RB, Pos::VB};
  std::vector<BiTermOccurrence> out;
  for (int r = 0; r < 200; ++r) {
    const int n = 1 + static_cast<int>(rng() % 4);
    for (int k = 0; k < n; ++k) {
      const auto o = objects[std::min(rng() % objects.size(), rng() % objects.size())];
      const auto e = evals[std::min(rng() % evals.size(), rng() % evals.size())];
      const Pos op = o == "go" ? Pos::VB : Pos::NN;
      Pos ep = eval_pos[rng() % eval_pos.size()];
      if (op == Pos::VB && ep == Pos::VB) ep = Pos::RB;
      out.push_back({{o, op, e, ep}, "r" + std::to_string(r), static_cast<std::size_t>(k), false});
    }
  }
  return out;
}

std::set<BiTerm> brute_force(const std::vector<BiTermOccurrence>& occurrences, long c) {
  std::set<BiTerm> out;
  for (const auto& a : occurrences) {
    long n = 0;
    for (const auto& b : occurrences) n += a.biterm == b.biterm;
    if (n >= c) out.insert(a.biterm);
  }
  return out;
}

TEST(CountTest, DirectCounting) {
  auto occ = repeat(bt("food", "good"), 3);
  const auto dish = repeat(bt("dish", "simpl"), 1);
  occ.insert(occ.end(), dish.begin(), dish.end());
  const FrequencyTable t = count_biterms(occ);
  EXPECT_EQ(t.count(bt("food", "good")), 3u);
  EXPECT_EQ(t.count(bt("dish", "simpl")), 1u);
  EXPECT_EQ(t.count(bt("nope", "x")), 0u);
  EXPECT_EQ(t.total_occurrences, 4u);
  EXPECT_EQ(t.entries.size(), 2u);
}

TEST(CountTest, KeyIncludesTags) {
  auto occ = repeat(bt("go", "back", Pos::VB, Pos::RB), 2);
  const auto other = repeat(bt("go", "back", Pos::NN, Pos::RB), 1);
  occ.insert(occ.end(), other.begin(), other.end());
  EXPECT_EQ(count_biterms(occ).entries.size(), 2u);
}

TEST(CountTest, Empty) {
  const FrequencyTable t = count_biterms({});
  EXPECT_TRUE(t.entries.empty());
  EXPECT_EQ(t.total_occurrences, 0u);
}

TEST(CountTest, MergeIsShardCounting) {
  const auto occ = synthetic_occurrences(5);
  const std::size_t half = occ.size() / 2;
  FrequencyTable a = count_biterms({occ.begin(), occ.begin() + static_cast<std::ptrdiff_t>(half)});
  const FrequencyTable b = count_biterms({occ.begin() + static_cast<std::ptrdiff_t>(half), occ.end()});
  a.merge(b);
  EXPECT_EQ(a, count_biterms(occ));
}

TEST(StrainTest, CutPointEight) {
  FrequencyTable t;
  t.entries = {{bt("food", "good"), 415}, {bt("rare", "pair"), 7}};
  t.total_occurrences = 422;
  const CommonExpressionSet s = strain(t, 8);
  EXPECT_EQ(s.biterms, (std::set<BiTerm>{bt("food", "good")}));
  EXPECT_EQ(s.cut_point, 8u);
}

TEST(StrainTest, CutPointOneKeepsEverything) {
  const FrequencyTable t = count_biterms(synthetic_occurrences(1));
  EXPECT_EQ(strain(t, 1).biterms.size(), t.entries.size());
}

TEST(StrainTest, InvalidCutPoint) {
  EXPECT_THROW(strain(FrequencyTable{}, 0), ParameterError);
  EXPECT_THROW(strain(FrequencyTable{}, -3), ParameterError);
}

TEST(StrainTest, BruteForceOracleAndMonotonicity) {
  const auto occ = synthetic_occurrences(2026);
  const FrequencyTable t = count_biterms(occ);
  std::set<BiTerm> previous;
  bool first = true;
  for (long c : {1, 2, 4, 8, 16, 32}) {
    const auto got = strain(t, c).biterms;
    EXPECT_EQ(got, brute_force(occ, c)) << "C=" << c;
    if (!first) {
      EXPECT_TRUE(std::includes(previous.begin(), previous.end(), got.begin(), got.end())) << "C=" << c;
    }
    previous = got;
    first = false;
  }
}

TEST(StrainTest, OrderIndependent) {
  auto occ = synthetic_occurrences(77);
  const auto expected = strain(count_biterms(occ), 4).biterms;
  std::mt19937_64 rng(3);
  for (int i = 0; i < 10; ++i) {
    std::shuffle(occ.begin(), occ.end(), rng);
    EXPECT_EQ(strain(count_biterms(occ), 4).biterms, expected);
  }
}

TEST(UnstrainedTest, ComplementOfCommon) {
  const FrequencyTable t = count_biterms(synthetic_occurrences(8));
  const CommonExpressionSet common = strain(t, 8);
  const FrequencyTable rest = unstrained(t, common);
  EXPECT_EQ(rest.entries.size() + common.biterms.size(), t.entries.size());
  for (const auto& [b, n] : rest.entries) {
    EXPECT_FALSE(common.contains(b));
    EXPECT_LT(n, 8u);
  }
}

TEST(RankedTest, CountDescendingThenLexicographic) {
  FrequencyTable t;
  t.entries = {{bt("b", "x"), 3}, {bt("a", "x"), 3}, {bt("c", "x"), 9}, {bt("a", "y", Pos::NN, Pos::VB), 3}};
  const auto r = t.ranked();
  ASSERT_EQ(r.size(), 4u);
  EXPECT_EQ(r[0].first, bt("c", "x"));
  EXPECT_EQ(r[1].first, bt("a", "x"));
  EXPECT_EQ(r[2].first, bt("a", "y", Pos::NN, Pos::VB));
  EXPECT_EQ(r[3].first, bt("b", "x"));
}

TEST(FrequencyTsvTest, FormatAndRoundTrip) {
  FrequencyTable t;
  t.entries = {{bt("food", "good"), 415}, {bt("servic", "good"), 173}};
  t.total_occurrences = 588;
  const std::string tsv = format_frequency_tsv(t);
  EXPECT_EQ(tsv, "food\tNN\tgood\tADJ\t415\nservic\tNN\tgood\tADJ\t173\n");
  EXPECT_EQ(parse_frequency_tsv(tsv), t);
}

TEST(FrequencyTsvTest, MalformedRows) {
  EXPECT_THROW(parse_frequency_tsv("food\tNN\tgood\tADJ\n"), ValidationError);
  EXPECT_THROW(parse_frequency_tsv("food\tNN\tgood\tADJ\tmany\n"), ValidationError);
  EXPECT_THROW(parse_frequency_tsv("food\tADJ\tgood\tNN\t3\n"), ValidationError);
}

TEST(WriteTextFileTest, CreatesParentsAndFailsOnDirectory) {
  testing::TempDir dir;
  write_text_file(dir / "sub" / "x.tsv", "abc\n");
  EXPECT_EQ(testing::slurp(dir / "sub" / "x.tsv"), "abc\n");
  EXPECT_THROW(write_text_file(dir / "sub", "abc"), IoError);
}

}  // namespace
}  // namespace dissbus
