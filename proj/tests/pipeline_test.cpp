// Copyright 2026 The dissbus Authors.
// Licensed under the Apache License, Version 2.0; see LICENSE.

#include "dissbus/pipeline.hpp"

#include <gtest/gtest.h>

#include <netinet/in.h>
#include <sys/socket.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <map>
#include <sstream>

#include "dissbus/text.hpp"
#include "test_util.hpp"

namespace dissbus {
namespace {

namespace fs = std::filesystem;
using testing::TempDir;

PipelineConfig fixture_config(const TempDir& out) {
  PipelineConfig c = PipelineConfig::load(testing::fixtures_dir() / "config.json");
  c.output_dir = out.path();
  return c;
}

std::string read(const fs::path& p) { return testing::slurp(p); }

// Counts keys in occurrences.tsv directly and keeps those at or above the
// cut point.
std::map<std::string, long> brute_force_strain(const fs::path& occurrences, long cut) {
  std::map<std::string, long> counts;
  std::istringstream in(read(occurrences));
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream cols(line);
    std::string review, clause, key;
    std::getline(cols, review, '\t');
    std::getline(cols, clause, '\t');
    std::getline(cols, key, '\t');
    ++counts[key];
  }
  std::map<std::string, long> kept;
  for (const auto& [k, n] : counts) {
    if (n >= cut) kept[k] = n;
  }
  return kept;
}

std::map<std::string, long> read_frequency(const fs::path& p) {
  std::map<std::string, long> out;
  std::istringstream in(read(p));
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto cols = text::split(line, '\t');
    out[cols[0] + ":" + cols[1] + ":" + cols[2] + ":" + cols[3]] = std::stol(cols[4]);
  }
  return out;
}

TEST(PipelineConfigTest, LoadsFixtureAndResolvesPaths) {
  const PipelineConfig c = PipelineConfig::load(testing::fixtures_dir() / "config.json");
  EXPECT_EQ(c.paths.corpus, testing::fixtures_dir() / "corpus.jsonl");
  EXPECT_EQ(c.cut_point, 8);
  EXPECT_EQ(c.c2, 3);
  EXPECT_EQ(c.mode, ComparisonMode::Full);
  EXPECT_NO_THROW(c.validate());
}

TEST(PipelineConfigTest, AbsolutePathsKept) {
  const auto c = PipelineConfig::from_json({{"paths", {{"corpus", "/abs/c.csv"}}}, {"output", "o"}}, "/base");
  EXPECT_EQ(c.paths.corpus, fs::path("/abs/c.csv"));
  EXPECT_EQ(c.output_dir, fs::path("/base/o"));
}

TEST(PipelineConfigTest, MalformedIsValidationError) {
  TempDir dir;
  testing::write_file(dir / "bad.json", "{ not json");
  EXPECT_THROW(PipelineConfig::load(dir / "bad.json"), ValidationError);
  EXPECT_THROW(PipelineConfig::from_json(nlohmann::json::array(), "."), ValidationError);
  EXPECT_THROW(PipelineConfig::from_json({{"cut_point", "eight"}}, "."), ValidationError);
}

TEST(PipelineConfigTest, MissingFileIsIoError) {
  EXPECT_THROW(PipelineConfig::load("/nonexistent/dissbus.json"), IoError);
}

TEST(PipelineConfigTest, RangeChecks) {
  PipelineConfig c;
  c.cut_point = 0;
  EXPECT_THROW(c.validate(), ParameterError);
  c = {};
  c.c1 = 0.0;
  EXPECT_THROW(c.validate(), ParameterError);
  c = {};
  c.c2 = 0;
  EXPECT_THROW(c.validate(), ParameterError);
  c = {};
  c.tau = 0.0;
  EXPECT_THROW(c.validate(), ParameterError);
  c = {};
  c.mode = ComparisonMode::Fractional;
  c.total_sample = 0;
  EXPECT_THROW(c.validate(), ParameterError);
  c = {};
  c.port = 70000;
  EXPECT_THROW(c.validate(), ParameterError);
}

TEST(StageTest, NamesRoundTrip) {
  for (Stage s : all_stages()) EXPECT_EQ(parse_stage(to_string(s)), s);
  EXPECT_EQ(all_stages().size(), 6u);
  EXPECT_THROW(parse_stage("polish"), ParameterError);
}

TEST(Sha256Test, KnownVectors) {
  EXPECT_EQ(sha256_hex(""), "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  EXPECT_EQ(sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST(PipelineTest, StagesRefuseToRunOutOfOrder) {
  TempDir out;
  const PipelineConfig c = fixture_config(out);
  try {
    run_stage(Stage::Score, c);
    FAIL();
  } catch (const MissingStageError& e) {
    EXPECT_EQ(e.required(), Stage::Upcycle);
    EXPECT_NE(std::string(e.what()).find("upcycle required"), std::string::npos);
  }
  EXPECT_THROW(run_stage(Stage::Summarize, c), MissingStageError);
  EXPECT_THROW(run_stage(Stage::Strain, c), MissingStageError);
}

TEST(PipelineTest, ScoreWithoutUpcycleAfterBag) {
  TempDir out;
  const PipelineConfig c = fixture_config(out);
  for (Stage s : {Stage::Disintegrate, Stage::Summarize, Stage::Strain, Stage::Bag}) run_stage(s, c);
  try {
    run_stage(Stage::Score, c);
    FAIL();
  } catch (const MissingStageError& e) {
    EXPECT_EQ(e.required(), Stage::Upcycle);
  }
}

TEST(PipelineTest, InvalidParameterRejectedBeforeWork) {
  TempDir out;
  PipelineConfig c = fixture_config(out);
  c.cut_point = 0;
  EXPECT_THROW(run_stage(Stage::Disintegrate, c), ParameterError);
  EXPECT_FALSE(fs::exists(out / artifact::kClauses));
}

class FixtureRunTest : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    out_ = new TempDir();
    funnel_ = run_all(fixture_config(*out_));
  }
  static void TearDownTestSuite() {
    delete out_;
    out_ = nullptr;
  }
  static TempDir* out_;
  static FunnelCounts funnel_;
};

TempDir* FixtureRunTest::out_ = nullptr;
FunnelCounts FixtureRunTest::funnel_;

TEST_F(FixtureRunTest, StrainMatchesBruteForce) {
  const fs::path dir = out_->path();
  for (long cut : {1L, 2L, 4L, 8L, 16L}) {
    TempDir other;
    PipelineConfig c = fixture_config(other);
    c.cut_point = cut;
    fs::copy_file(dir / artifact::kOccurrences, other / artifact::kOccurrences);
    run_stage(Stage::Strain, c);
    EXPECT_EQ(read_frequency(other / artifact::kCommon), brute_force_strain(dir / artifact::kOccurrences, cut))
        << "C=" << cut;
  }
  EXPECT_EQ(read_frequency(dir / artifact::kCommon).size(), funnel_.strained);
}

TEST_F(FixtureRunTest, OneMatrixRowPerReview) {
  EXPECT_EQ(funnel_.reviews, 60u);
  const auto lines = text::split(read(out_->path() / artifact::kMatrix), '\n');
  ASSERT_GE(lines.size(), 2u);
  EXPECT_EQ(lines.size(), 60u + 2u);  // header plus trailing empty field
  EXPECT_EQ(lines.front().rfind("review_id,F_count,F_mean,F_likert", 0), 0u);
}

TEST_F(FixtureRunTest, FunnelIsConsistent) {
  EXPECT_EQ(funnel_.rejected_records, 0u);
  EXPECT_EQ(funnel_.strained, 20u);
  EXPECT_EQ(funnel_.matched_occurrences + funnel_.unmatched_occurrences, funnel_.biterm_occurrences);
  EXPECT_LE(funnel_.upcycle_added, funnel_.upcycle_assigned);
  EXPECT_LE(funnel_.scored_clauses, funnel_.clauses);
  const auto report = nlohmann::json::parse(read(out_->path() / artifact::kReport));
  EXPECT_EQ(report["funnel"], funnel_.to_json());
}

TEST_F(FixtureRunTest, ManifestsHashTheirOutputs) {
  for (Stage s : all_stages()) {
    const fs::path p = out_->path() / (std::string(to_string(s)) + ".manifest.json");
    ASSERT_TRUE(fs::exists(p)) << p;
    const auto m = nlohmann::json::parse(read(p));
    EXPECT_EQ(m["stage"], std::string(to_string(s)));
    for (const auto& [name, hash] : m["outputs"].items()) {
      EXPECT_EQ(hash, sha256_file(out_->path() / name)) << name;
    }
  }
}

TEST_F(FixtureRunTest, GoldensVerify) {
  const auto results = verify_goldens(fixture_config(*out_));
  EXPECT_EQ(results.size(), 4u);
  for (const auto& r : results) EXPECT_TRUE(r.passed) << r.name << "\n" << r.diff;
}

TEST_F(FixtureRunTest, RerunIsByteIdentical) {
  TempDir again;
  PipelineConfig c = fixture_config(again);
  c.threads = 1;
  run_all(c);
  for (const char* name : {artifact::kClauses, artifact::kOccurrences, artifact::kFrequency, artifact::kBags,
                           artifact::kUpcycledBags, artifact::kAssignments, artifact::kClauseScores,
                           artifact::kMatrix, artifact::kReport}) {
    EXPECT_EQ(read(again / name), read(out_->path() / name)) << name;
  }
}

TEST_F(FixtureRunTest, RerunInPlaceIsIdempotent) {
  TempDir dir;
  const PipelineConfig c = fixture_config(dir);
  run_all(c);
  const std::string first = read(dir / "score.manifest.json");
  run_stage(Stage::Score, c);
  EXPECT_EQ(read(dir / "score.manifest.json"), first);
}

TEST_F(FixtureRunTest, FractionalSeedLeavesStrainUntouched) {
  std::map<std::uint64_t, std::string> common;
  for (std::uint64_t seed : {42u, 43u}) {
    TempDir dir;
    PipelineConfig c = fixture_config(dir);
    c.mode = ComparisonMode::Fractional;
    c.total_sample = 12;
    c.seed = seed;
    run_all(c);
    common[seed] = read(dir / artifact::kCommon);
    const auto m = nlohmann::json::parse(read(dir / "upcycle.manifest.json"));
    EXPECT_EQ(m["parameters"]["seed"], seed);
    EXPECT_EQ(m["parameters"]["mode"], "fractional");
  }
  EXPECT_EQ(common[42], common[43]);
  EXPECT_EQ(common[42], read(out_->path() / artifact::kCommon));
}

TEST_F(FixtureRunTest, ServeRefusesBusyPort) {
  const int fd = ::socket(AF_INET, SOCK_STREAM, 0);
  ASSERT_GE(fd, 0);
  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_addr.s_addr = htonl(INADDR_ANY);
  addr.sin_port = 0;
  ASSERT_EQ(::bind(fd, reinterpret_cast<sockaddr*>(&addr), sizeof addr), 0);
  ASSERT_EQ(::listen(fd, 1), 0);
  socklen_t len = sizeof addr;
  ::getsockname(fd, reinterpret_cast<sockaddr*>(&addr), &len);
  PipelineConfig c = fixture_config(*out_);
  c.port = ntohs(addr.sin_port);
  EXPECT_THROW(serve_labeling(c), IoError);
  ::close(fd);
}

TEST(PipelineTest, EmptyCorpusYieldsHeaderOnlyMatrix) {
  TempDir out;
  PipelineConfig c = fixture_config(out);
  testing::write_file(out / "empty.jsonl", "");
  c.paths.corpus = out / "empty.jsonl";
  c.paths.parses.clear();
  const FunnelCounts f = run_all(c);
  EXPECT_EQ(f.reviews, 0u);
  EXPECT_EQ(f.clauses, 0u);
  EXPECT_EQ(f.biterm_occurrences, 0u);
  EXPECT_EQ(f.strained, 0u);
  EXPECT_EQ(f.bagged_manual, 0u);
  EXPECT_EQ(f.upcycle_assigned, 0u);
  EXPECT_EQ(f.scored_clauses, 0u);
  const auto lines = text::split(read(out / artifact::kMatrix), '\n');
  EXPECT_EQ(lines.size(), 2u);
}

TEST(PipelineTest, RejectedRecordsAreReported) {
  TempDir out;
  PipelineConfig c = fixture_config(out);
  testing::write_file(out / "c.jsonl",
                      "{\"id\":\"a\",\"body\":\"the food was good.\"}\n"
                      "{\"id\":\"b\",\"body\":\"\"}\n"
                      "not json\n");
  c.paths.corpus = out / "c.jsonl";
  c.paths.parses.clear();
  const auto m = run_stage(Stage::Disintegrate, c);
  EXPECT_EQ(m["counts"]["reviews"], 1);
  EXPECT_EQ(m["counts"]["rejected_records"], 2);
  EXPECT_EQ(text::split(read(out / artifact::kRejects), '\n').size(), 3u);
}

TEST(PipelineTest, ClauseJsonRoundTrip) {
  Clause c;
  c.review_id = "r9";
  c.index = 4;
  c.tokens = {{"Food", "food", Pos::NN, true}, {"good", "good", Pos::ADJ, false}, {".", ".", Pos::PUNCT, true}};
  c.text = "Food good.";
  c.pairs = {{1, 0}};
  const Clause back = clause_from_json(clause_to_json(c));
  EXPECT_EQ(back.review_id, c.review_id);
  EXPECT_EQ(back.index, c.index);
  EXPECT_EQ(back.tokens, c.tokens);
  EXPECT_EQ(back.text, c.text);
  EXPECT_EQ(back.pairs, c.pairs);
}

TEST(PipelineTest, OccurrencesTsvRejectsMalformed) {
  EXPECT_THROW(parse_occurrences_tsv("r1\t0\tfood:NN:good:ADJ\n"), ValidationError);
  EXPECT_THROW(parse_occurrences_tsv("r1\t0\tfood-good\t0\n"), ValidationError);
  EXPECT_THROW(parse_occurrences_tsv("r1\t0\tfood:NN:good:ADJ\t2\n"), ValidationError);
  EXPECT_EQ(parse_occurrences_tsv("r1\t0\tfood:NN:good:ADJ\t1\n").size(), 1u);
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(DISSBUS_CLI) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

TEST(CliTest, ExitCodes) {
  TempDir dir;
  const fs::path config = dir / "config.json";
  auto j = nlohmann::json::parse(read(testing::fixtures_dir() / "config.json"));
  for (auto& [k, v] : j["paths"].items()) v = (testing::fixtures_dir() / v.get<std::string>()).string();
  j["output"] = (dir / "out").string();
  testing::write_file(config, j.dump());
  const std::string cfg = "--config " + config.string();

  EXPECT_EQ(run_cli("score " + cfg), 2);
  EXPECT_EQ(run_cli("all " + cfg), 0);
  EXPECT_EQ(run_cli("verify " + cfg), 0);
  EXPECT_EQ(run_cli("strain " + cfg + " --cut-point 0"), 3);
  EXPECT_EQ(run_cli("strain " + cfg + " --cut-point 4"), 0);
  EXPECT_EQ(run_cli("polish " + cfg), 3);
  EXPECT_EQ(run_cli("all --config " + (dir / "missing.json").string()), 2);
  testing::write_file(dir / "bad.json", "{");
  EXPECT_EQ(run_cli("all --config " + (dir / "bad.json").string()), 1);
}

}  // namespace
}  // namespace dissbus
