// Copyright 2026 The dissbus Authors.
// Licensed under the Apache License, Version 2.0; see LICENSE.

#include "dissbus/bagger.hpp"

#include <gtest/gtest.h>

#include <thread>

#include "dissbus/pipeline.hpp"
#include "dissbus/text.hpp"
#include "test_util.hpp"

namespace dissbus {
namespace {

using testing::TempDir;

BiTerm bt(const std::string& key) { return BiTerm::from_key(key).value(); }

const std::vector<Topic>& topics() {
  static const std::vector<Topic> t{{"F", "food", 1.0},     {"S", "service", 1.0},     {"P", "price", 1.0},
                                    {"A", "atmosphere", 1.0}, {"E", "environment", 1.0}, {"Rv", "revisit", 1.0},
                                    {"Re", "recommend", 1.0}, {"O", "other", 1.0}};
  return t;
}

// The ten labelled common expressions from the worked bagging example.
const std::vector<std::pair<std::string, std::string>>& example_labels() {
  static const std::vector<std::pair<std::string, std::string>> l{
      {"food:NN:good:ADJ", "F"},     {"servic:NN:good:ADJ", "S"},   {"staff:NN:friend:ADJ", "S"},
      {"food:NN:great:ADJ", "F"},    {"servic:NN:great:ADJ", "S"},  {"recommend:VB:high:RB", "Re"},
      {"go:VB:back:RB", "Rv"},       {"place:NN:great:ADJ", "E"},   {"servic:NN:friend:ADJ", "S"},
      {"price:NN:reason:ADJ", "P"}};
  return l;
}

CommonExpressionSet example_common() {
  CommonExpressionSet c;
  c.cut_point = 8;
  for (const auto& [k, _] : example_labels()) c.biterms.insert(bt(k));
  c.biterms.insert(bt("done:VB:well:RB"));
  return c;
}

LabelStore::Clock fixed_clock() {
  return [] { return std::string("2026-01-01T00:00:00Z"); };
}

std::set<std::string> member_keys(const TopicBag& bag) {
  std::set<std::string> out;
  for (const auto& [b, _] : bag.members) out.insert(b.key());
  return out;
}

const TopicBag& bag_for(const std::vector<TopicBag>& bags, const std::string& id) {
  for (const auto& b : bags) {
    if (b.topic.id == id) return b;
  }
  throw std::runtime_error("no bag " + id);
}

TEST(BuildBagsTest, ExampleLabels) {
  LabelStore store(topics(), example_common(), {}, fixed_clock());
  for (const auto& [k, d] : example_labels()) store.record_label(bt(k), d, "t");
  const auto bags = build_topic_bags(store.history(), topics());
  ASSERT_EQ(bags.size(), 8u);
  EXPECT_EQ(member_keys(bag_for(bags, "F")), (std::set<std::string>{"food:NN:good:ADJ", "food:NN:great:ADJ"}));
  EXPECT_EQ(member_keys(bag_for(bags, "S")),
            (std::set<std::string>{"servic:NN:good:ADJ", "staff:NN:friend:ADJ", "servic:NN:great:ADJ",
                                   "servic:NN:friend:ADJ"}));
  EXPECT_EQ(member_keys(bag_for(bags, "Re")), (std::set<std::string>{"recommend:VB:high:RB"}));
  EXPECT_EQ(member_keys(bag_for(bags, "E")), (std::set<std::string>{"place:NN:great:ADJ"}));
  EXPECT_EQ(member_keys(bag_for(bags, "Rv")), (std::set<std::string>{"go:VB:back:RB"}));
  EXPECT_EQ(member_keys(bag_for(bags, "P")), (std::set<std::string>{"price:NN:reason:ADJ"}));
  EXPECT_TRUE(bag_for(bags, "A").members.empty());
  EXPECT_TRUE(bag_for(bags, "O").members.empty());
  for (const auto& bag : bags) {
    for (const auto& [_, p] : bag.members) EXPECT_EQ(p, Provenance::Manual);
  }
  EXPECT_TRUE(bags_disjoint(bags));
}

TEST(BuildBagsTest, ZeroLabels) {
  const auto bags = build_topic_bags({}, topics());
  ASSERT_EQ(bags.size(), topics().size());
  for (const auto& b : bags) EXPECT_TRUE(b.members.empty());
}

TEST(BuildBagsTest, LatestWins) {
  LabelStore store(topics(), example_common(), {}, fixed_clock());
  store.record_label(bt("food:NN:good:ADJ"), "S", "a");
  store.record_label(bt("food:NN:good:ADJ"), "F", "b");
  const auto bags = build_topic_bags(store.history(), topics());
  EXPECT_TRUE(bag_for(bags, "F").contains(bt("food:NN:good:ADJ")));
  EXPECT_FALSE(bag_for(bags, "S").contains(bt("food:NN:good:ADJ")));
  EXPECT_EQ(store.history().size(), 2u);
  EXPECT_EQ(store.decision_for(bt("food:NN:good:ADJ"))->labeler, "b");
}

TEST(BuildBagsTest, DiscardExcludesFromAllBags) {
  LabelStore store(topics(), example_common(), {}, fixed_clock());
  store.record_label(bt("done:VB:well:RB"), "F", "a");
  store.record_label(bt("done:VB:well:RB"), std::string(kDiscard), "a");
  for (const auto& bag : build_topic_bags(store.history(), topics())) {
    EXPECT_FALSE(bag.contains(bt("done:VB:well:RB")));
  }
}

TEST(BuildBagsTest, UnknownTopicInLabels) {
  LabelRecord r{bt("food:NN:good:ADJ"), "X", "a", "", 1};
  EXPECT_THROW(build_topic_bags({r}, topics()), ValidationError);
}

TEST(BuildBagsTest, ReplayFromJournalIsIdentical) {
  TempDir dir;
  std::vector<TopicBag> before;
  {
    LabelStore store(topics(), example_common(), dir / "labels.jsonl", fixed_clock());
    for (const auto& [k, d] : example_labels()) store.record_label(bt(k), d, "t");
    store.record_label(bt("servic:NN:good:ADJ"), "F", "t");
    store.record_label(bt("servic:NN:good:ADJ"), "S", "t");
    before = build_topic_bags(store.history(), topics());
  }
  LabelStore reopened(topics(), example_common(), dir / "labels.jsonl", fixed_clock());
  EXPECT_EQ(reopened.history().size(), 12u);
  const auto after = build_topic_bags(read_journal(dir / "labels.jsonl"), topics());
  EXPECT_EQ(format_bags_tsv(before), format_bags_tsv(after));
  // Sequence numbers continue after replay.
  EXPECT_EQ(reopened.record_label(bt("go:VB:back:RB"), "Rv", "t").sequence, 13u);
}

TEST(LabelStoreTest, RejectsUnknownTopicAndUnstrainedBiTerm) {
  LabelStore store(topics(), example_common(), {}, fixed_clock());
  EXPECT_THROW(store.record_label(bt("food:NN:good:ADJ"), "X", "a"), ValidationError);
  EXPECT_THROW(store.record_label(bt("park:NN:limit:ADJ"), "E", "a"), ValidationError);
  EXPECT_TRUE(store.history().empty());
}

TEST(LabelStoreTest, ProgressAndQueue) {
  LabelStore store(topics(), example_common(), {}, fixed_clock());
  EXPECT_EQ(store.progress(), (LabelProgress{0, 0, 11}));
  const std::vector<std::pair<BiTerm, std::uint64_t>> ranked{
      {bt("food:NN:good:ADJ"), 415}, {bt("park:NN:limit:ADJ"), 300}, {bt("servic:NN:good:ADJ"), 173}};
  EXPECT_EQ(store.next_unlabeled(ranked), bt("food:NN:good:ADJ"));
  store.record_label(bt("food:NN:good:ADJ"), "F", "a");
  EXPECT_EQ(store.next_unlabeled(ranked), bt("servic:NN:good:ADJ"));
  store.record_label(bt("servic:NN:good:ADJ"), std::string(kDiscard), "a");
  EXPECT_EQ(store.progress(), (LabelProgress{1, 1, 9}));
  EXPECT_EQ(store.next_unlabeled(ranked), std::nullopt);
}

TEST(LabelStoreTest, ConcurrentWritersGetUniqueSequences) {
  TempDir dir;
  LabelStore store(topics(), example_common(), dir / "j.jsonl", fixed_clock());
  std::vector<std::thread> workers;
  for (int w = 0; w < 4; ++w) {
    workers.emplace_back([&store, w] {
      for (int i = 0; i < 25; ++i) store.record_label(BiTerm::from_key("food:NN:good:ADJ").value(), w % 2 ? "F" : "S", "w");
    });
  }
  for (auto& t : workers) t.join();
  const auto journal = read_journal(dir / "j.jsonl");
  ASSERT_EQ(journal.size(), 100u);
  for (std::size_t i = 0; i < journal.size(); ++i) EXPECT_EQ(journal[i].sequence, i + 1);
  EXPECT_EQ(store.active().size(), 1u);
}

TEST(JournalTest, LineRoundTrip) {
  const LabelRecord r{bt("go:VB:back:RB"), "Rv", "ann", "2026-01-01T00:00:00Z", 7};
  const LabelRecord back = label_from_json_line(label_to_json_line(r));
  EXPECT_EQ(back.biterm, r.biterm);
  EXPECT_EQ(back.decision, "Rv");
  EXPECT_EQ(back.labeler, "ann");
  EXPECT_EQ(back.timestamp, r.timestamp);
  EXPECT_EQ(back.sequence, 7u);
}

TEST(JournalTest, MalformedLineNamesLine) {
  TempDir dir;
  testing::write_file(dir / "j.jsonl", label_to_json_line({bt("go:VB:back:RB"), "Rv", "", "", 1}) + "\n{oops\n");
  try {
    read_journal(dir / "j.jsonl");
    FAIL() << "expected ValidationError";
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find(":2:"), std::string::npos) << e.what();
  }
}

TEST(UtcTimestampTest, Iso8601) {
  const std::string ts = utc_timestamp();
  ASSERT_EQ(ts.size(), 20u);
  EXPECT_EQ(ts[4], '-');
  EXPECT_EQ(ts[10], 'T');
  EXPECT_EQ(ts.back(), 'Z');
}

TEST(LabelsCsvTest, FixtureImport) {
  const auto labels = import_labels_csv(testing::fixtures_dir() / "labels.csv");
  EXPECT_EQ(labels.size(), 20u);
  EXPECT_EQ(labels[0].biterm, bt("food:NN:good:ADJ"));
  EXPECT_EQ(labels[0].decision, "F");
  for (std::size_t i = 0; i < labels.size(); ++i) EXPECT_EQ(labels[i].sequence, i + 1);
}

TEST(LabelsCsvTest, RoundTrip) {
  std::map<BiTerm, LabelRecord> active;
  for (const auto& [k, d] : example_labels()) active[bt(k)] = {bt(k), d, "csv", "", 0};
  const std::string csv = format_labels_csv(active);
  const auto back = parse_labels_csv(csv);
  ASSERT_EQ(back.size(), active.size());
  for (const auto& r : back) EXPECT_EQ(active.at(r.biterm).decision, r.decision);
}

TEST(LabelsCsvTest, Malformed) {
  EXPECT_THROW(parse_labels_csv("a,b,c\n"), ValidationError);
  EXPECT_THROW(parse_labels_csv("object_stem,object_pos,evaluation_stem,evaluation_pos,decision\nfood,NN,good\n"),
               ValidationError);
  EXPECT_THROW(parse_labels_csv("object_stem,object_pos,evaluation_stem,evaluation_pos,decision\nfood,ADJ,good,NN,F\n"),
               ValidationError);
  EXPECT_TRUE(parse_labels_csv("").empty());
}

TEST(LoadLabelsTest, ByExtension) {
  EXPECT_EQ(load_labels(testing::fixtures_dir() / "labels.csv").size(), 20u);
  EXPECT_THROW(load_labels("labels.txt"), ParameterError);
}

TEST(BagsTsvTest, RoundTripKeepsProvenance) {
  std::vector<TopicBag> bags;
  for (const auto& t : topics()) bags.push_back({t, {}});
  bags[0].members[bt("food:NN:good:ADJ")] = Provenance::Manual;
  bags[0].members[bt("steak:NN:amaz:ADJ")] = Provenance::Upcycled;
  bags[1].members[bt("servic:NN:good:ADJ")] = Provenance::Manual;
  const std::string tsv = format_bags_tsv(bags);
  EXPECT_EQ(tsv,
            "F\tfood\tNN\tgood\tADJ\tmanual\nF\tsteak\tNN\tamaz\tADJ\tupcycled\n"
            "S\tservic\tNN\tgood\tADJ\tmanual\n");
  const auto back = parse_bags_tsv(tsv, topics());
  ASSERT_EQ(back.size(), bags.size());
  for (std::size_t i = 0; i < bags.size(); ++i) EXPECT_EQ(back[i].members, bags[i].members);
  EXPECT_THROW(parse_bags_tsv("X\tfood\tNN\tgood\tADJ\tmanual\n", topics()), ValidationError);
}

class FixtureClausesTest : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    dir_ = new TempDir;
    PipelineConfig config = PipelineConfig::load(testing::fixtures_dir() / "config.json");
    config.output_dir = dir_->path();
    run_stage(Stage::Disintegrate, config);
    run_stage(Stage::Summarize, config);
    clauses_ = new std::vector<Clause>(read_clauses(dir_->path() / artifact::kClauses));
    occurrences_ = new std::vector<BiTermOccurrence>(
        parse_occurrences_tsv(text::read_file(dir_->path() / artifact::kOccurrences)));
  }
  static void TearDownTestSuite() {
    delete occurrences_;
    delete clauses_;
    delete dir_;
  }
  static TempDir* dir_;
  static std::vector<Clause>* clauses_;
  static std::vector<BiTermOccurrence>* occurrences_;
};

TempDir* FixtureClausesTest::dir_ = nullptr;
std::vector<Clause>* FixtureClausesTest::clauses_ = nullptr;
std::vector<BiTermOccurrence>* FixtureClausesTest::occurrences_ = nullptr;

TEST_F(FixtureClausesTest, DoneWellFiveClausesInCorpusOrder) {
  const auto found = clauses_for_biterm(bt("done:VB:well:RB"), *occurrences_, *clauses_);
  std::set<std::string> texts;
  for (const auto& c : found) texts.insert(text::normalize_whitespace(c.text));
  EXPECT_EQ(texts, (std::set<std::string>{"well done karai crab.", "sometimes, i find the steak too well done.",
                                          "well done to the staff.", "the garlic ahi was done well.",
                                          "flavors were really done well."}));
  ASSERT_EQ(found.size(), 5u);
  std::vector<std::pair<std::string, std::size_t>> order;
  for (const auto& c : found) order.emplace_back(c.review_id, c.index);
  EXPECT_TRUE(std::is_sorted(order.begin(), order.end()));
}

TEST_F(FixtureClausesTest, SingleOccurrenceAndAbsent) {
  const auto once = clauses_for_biterm(bt("tast:NN:great:ADJ"), *occurrences_, *clauses_);
  ASSERT_EQ(once.size(), 1u);
  EXPECT_EQ(once[0].review_id, "r000");
  EXPECT_TRUE(clauses_for_biterm(bt("zebra:NN:loud:ADJ"), *occurrences_, *clauses_).empty());
}

}  // namespace
}  // namespace dissbus
