// Copyright 2026 The dissbus Authors.
// Licensed under the Apache License, Version 2.0; see LICENSE.

#include "dissbus/corpus.hpp"

#include <gtest/gtest.h>

#include "test_util.hpp"

namespace dissbus {
namespace {

using testing::TempDir;
using testing::write_file;

constexpr const char* kFirstFive =
    R"({"id": "1", "title": "Fantastic!!", "body": "great taste...", "date": "2016-04-18", "rating": 5}
{"id": "2", "title": "Went here...", "body": "this place...", "date": "2016-04-12", "rating": 5}
{"id": "3", "title": "I'm dreaming...", "body": "this is hands...", "date": "2016-04-11", "rating": 5}
{"id": "4", "title": "Amazing Poke!", "body": "so glad we...", "date": "2016-04-11", "rating": 5}
{"id": "5", "title": "Great Poke", "body": "just a small...", "date": "2016-04-09", "rating": 4}
)";

TEST(LoadReviewsTest, FirstFiveRows) {
  TempDir dir;
  write_file(dir / "five.jsonl", kFirstFive);
  const LoadResult r = load_reviews(dir / "five.jsonl", CorpusFormat::Jsonl);
  ASSERT_EQ(r.corpus.reviews.size(), 5u);
  EXPECT_TRUE(r.errors.empty());
  EXPECT_EQ(r.corpus.reviews[0].title, "Fantastic!!");
  EXPECT_EQ(r.corpus.reviews[4].title, "Great Poke");
  std::vector<int> ratings;
  for (const auto& rv : r.corpus.reviews) ratings.push_back(rv.rating.value());
  EXPECT_EQ(ratings, (std::vector<int>{5, 5, 5, 5, 4}));
  EXPECT_EQ(r.corpus.reviews[0].date, "2016-04-18");
}

TEST(LoadReviewsTest, EmptyFile) {
  TempDir dir;
  write_file(dir / "empty.jsonl", "");
  const LoadResult r = load_reviews(dir / "empty.jsonl", CorpusFormat::Jsonl);
  EXPECT_TRUE(r.corpus.reviews.empty());
  EXPECT_TRUE(r.errors.empty());
  EXPECT_EQ(r.records_read, 0u);
}

TEST(LoadReviewsTest, BlankBodyIsRecordError) {
  TempDir dir;
  write_file(dir / "blank.jsonl", R"({"id": "r1", "body": "   "})" "\n");
  const LoadResult r = load_reviews(dir / "blank.jsonl", CorpusFormat::Jsonl);
  EXPECT_TRUE(r.corpus.reviews.empty());
  ASSERT_EQ(r.errors.size(), 1u);
  EXPECT_EQ(r.errors[0].review_id, "r1");
  EXPECT_EQ(r.errors[0].record, 1u);
}

TEST(LoadReviewsTest, DuplicateIdNamesTheId) {
  TempDir dir;
  write_file(dir / "dup.jsonl", R"({"id": "r1", "body": "good"})" "\n" R"({"id": "r1", "body": "bad"})" "\n");
  const LoadResult r = load_reviews(dir / "dup.jsonl", CorpusFormat::Jsonl);
  EXPECT_EQ(r.corpus.reviews.size(), 1u);
  ASSERT_EQ(r.errors.size(), 1u);
  EXPECT_NE(r.errors[0].message.find("r1"), std::string::npos);
}

TEST(LoadReviewsTest, MalformedRecordsAreCountedNotDropped) {
  TempDir dir;
  write_file(dir / "mixed.jsonl",
             "{\"id\": \"a\", \"body\": \"ok\"}\nnot json\n[1,2]\n{\"id\": \"b\", \"body\": \"x\", \"rating\": \"five\"}\n"
             "{\"body\": \"no id\"}\n{\"id\": \"c\", \"body\": \"fine\", \"rating\": null, \"title\": null}\n");
  const LoadResult r = load_reviews(dir / "mixed.jsonl", CorpusFormat::Jsonl);
  EXPECT_EQ(r.corpus.reviews.size() + r.errors.size(), r.records_read);
  EXPECT_EQ(r.records_read, 6u);
  EXPECT_EQ(r.corpus.reviews.size(), 2u);
  EXPECT_EQ(r.errors[0].record, 2u);
}

TEST(LoadReviewsTest, CsvWithQuotesAndNewlines) {
  TempDir dir;
  write_file(dir / "c.csv",
             "id,title,body,rating,date\n"
             "r1,\"Hi, there\",\"great taste, simple dish.\",5,2017-03-02\n"
             "r2,,\"line one\nline \"\"two\"\"\",,\n");
  const LoadResult r = load_reviews(dir / "c.csv", CorpusFormat::Csv);
  ASSERT_EQ(r.corpus.reviews.size(), 2u);
  EXPECT_EQ(r.corpus.reviews[0].title, "Hi, there");
  EXPECT_EQ(r.corpus.reviews[0].body, "great taste, simple dish.");
  EXPECT_EQ(r.corpus.reviews[1].body, "line one\nline \"two\"");
  EXPECT_FALSE(r.corpus.reviews[1].rating.has_value());
  EXPECT_FALSE(r.corpus.reviews[1].date.has_value());
}

TEST(LoadReviewsTest, CsvWithoutRequiredColumns) {
  TempDir dir;
  write_file(dir / "bad.csv", "name,text\nx,y\n");
  EXPECT_THROW(load_reviews(dir / "bad.csv", CorpusFormat::Csv), ValidationError);
}

TEST(LoadReviewsTest, UnreadableFileIsIoError) {
  EXPECT_THROW(load_reviews("/nonexistent/corpus.jsonl", CorpusFormat::Jsonl), IoError);
}

TEST(LoadReviewsTest, Deterministic) {
  const auto path = testing::fixtures_dir() / "corpus.jsonl";
  EXPECT_EQ(load_reviews(path, CorpusFormat::Jsonl).corpus, load_reviews(path, CorpusFormat::Jsonl).corpus);
}

TEST(LoadReviewsTest, FixtureCorpus) {
  const LoadResult r = load_reviews(testing::fixtures_dir() / "corpus.jsonl", CorpusFormat::Jsonl);
  EXPECT_EQ(r.corpus.reviews.size(), 60u);
  EXPECT_TRUE(r.errors.empty());
  EXPECT_TRUE(validate_corpus(r.corpus).ok());
}

TEST(FormatTest, FromExtension) {
  EXPECT_EQ(format_from_extension("a.jsonl"), CorpusFormat::Jsonl);
  EXPECT_EQ(format_from_extension("a.json"), CorpusFormat::Jsonl);
  EXPECT_EQ(format_from_extension("a.CSV"), CorpusFormat::Csv);
  EXPECT_THROW(format_from_extension("a.txt"), ParameterError);
}

TEST(CsvTest, EscapeRoundTrip) {
  const std::vector<std::string> fields{"plain", "with,comma", "with \"quote\"", "multi\nline", ""};
  std::string line;
  for (std::size_t i = 0; i < fields.size(); ++i) line += (i ? "," : "") + csv_escape(fields[i]);
  const auto rows = parse_csv(line + "\n");
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0], fields);
}

TEST(CsvTest, UnterminatedQuote) { EXPECT_THROW(parse_csv("a,\"b\n"), ValidationError); }

TEST(ValidateCorpusTest, DuplicateId) {
  Corpus c{{{"r1", "", "good", std::nullopt, std::nullopt}, {"r1", "", "bad", std::nullopt, std::nullopt}}};
  const ValidationReport report = validate_corpus(c);
  ASSERT_EQ(report.issues.size(), 1u);
  EXPECT_EQ(report.issues[0].kind, IssueKind::DuplicateId);
  EXPECT_EQ(report.issues[0].review_id, "r1");
}

TEST(ValidateCorpusTest, RatingOutOfRange) {
  Corpus c{{{"r1", "", "good", 7, std::nullopt}, {"r2", "", "fine", 3, std::nullopt}}};
  const ValidationReport report = validate_corpus(c);
  ASSERT_EQ(report.issues.size(), 1u);
  EXPECT_EQ(report.issues[0].kind, IssueKind::RatingOutOfRange);
}

TEST(ValidateCorpusTest, EmptyBody) {
  Corpus c{{{"r1", "", " \t", std::nullopt, std::nullopt}}};
  const ValidationReport report = validate_corpus(c);
  ASSERT_EQ(report.issues.size(), 1u);
  EXPECT_EQ(report.issues[0].kind, IssueKind::EmptyBody);
}

TEST(TopicsTest, LoadFixtureTopics) {
  const auto topics = load_topics(testing::fixtures_dir() / "topics.tsv");
  ASSERT_EQ(topics.size(), 8u);
  EXPECT_EQ(topics[0].id, "F");
  EXPECT_EQ(topics[4].id, "E");
  for (const auto& t : topics) EXPECT_DOUBLE_EQ(t.weight, 1.0);
}

TEST(TopicsTest, DefaultWeightAndValidation) {
  TempDir dir;
  write_file(dir / "t.tsv", "F\tfood\nS\tservice\t2.5\n");
  const auto topics = load_topics(dir / "t.tsv");
  ASSERT_EQ(topics.size(), 2u);
  EXPECT_DOUBLE_EQ(topics[0].weight, 1.0);
  EXPECT_DOUBLE_EQ(topics[1].weight, 2.5);
  EXPECT_THROW(validate_topics({{"F", "a", 1.0}, {"F", "b", 1.0}}), ValidationError);
  EXPECT_THROW(validate_topics({{"F", "a", 0.0}}), ValidationError);
  EXPECT_THROW(validate_topics({{"DISCARD", "a", 1.0}}), ValidationError);
}

}  // namespace
}  // namespace dissbus
