// Copyright 2026 The dissbus Authors.
// Licensed under the Apache License, Version 2.0; see LICENSE.

#ifndef DISSBUS_PIPELINE_HPP_
#define DISSBUS_PIPELINE_HPP_

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "dissbus/corpus.hpp"
#include "dissbus/parse.hpp"
#include "dissbus/segmenter.hpp"
#include "dissbus/upcycler.hpp"

namespace dissbus {

enum class Stage { Disintegrate, Summarize, Strain, Bag, Upcycle, Score };

std::string_view to_string(Stage stage);
Stage parse_stage(std::string_view name);
const std::vector<Stage>& all_stages();

// A stage was asked to run before its predecessor produced its artifacts.
class MissingStageError : public IoError {
 public:
  MissingStageError(Stage required, const std::string& detail);
  Stage required() const { return required_; }

 private:
  Stage required_;
};

struct PipelinePaths {
  std::filesystem::path corpus;
  std::filesystem::path parses;          // CoNLL-U, optional
  std::filesystem::path tagger_lexicon;  // optional
  std::filesystem::path lexicon;
  std::filesystem::path thesaurus;
  std::filesystem::path categories;  // optional
  std::filesystem::path negations;   // optional
  std::filesystem::path conjunctions;   // coordinators, optional
  std::filesystem::path subordinators;  // optional
  std::filesystem::path abbreviations;  // optional
  std::filesystem::path topics;
  std::filesystem::path labels;   // CSV or JSONL; falls back to the journal
  std::filesystem::path journal;  // defaults to <output>/labels.jsonl
  std::filesystem::path goldens;  // optional
};

struct PipelineConfig {
  PipelinePaths paths;
  std::filesystem::path output_dir = "out";
  long cut_point = 8;
  double c1 = 1.0;
  long c2 = 8;
  ComparisonMode mode = ComparisonMode::Full;
  long total_sample = 0;
  std::uint64_t seed = 42;
  double tau = 0.25;
  int port = 8080;
  unsigned threads = 0;  // 0 = hardware concurrency

  // JSON; relative paths resolve against the config file's directory.
  static PipelineConfig load(const std::filesystem::path& path);
  static PipelineConfig from_json(const nlohmann::json& j, const std::filesystem::path& base);
  // Throws ParameterError for out-of-range parameters.
  void validate() const;
  std::filesystem::path journal_path() const;
};

// Artifact file names inside the output directory.
namespace artifact {
inline constexpr const char* kReviews = "reviews.txt";
inline constexpr const char* kClauses = "clauses.jsonl";
inline constexpr const char* kRejects = "rejects.tsv";
inline constexpr const char* kOccurrences = "occurrences.tsv";
inline constexpr const char* kFrequency = "frequency.tsv";
inline constexpr const char* kCommon = "common.tsv";
inline constexpr const char* kUnstrained = "unstrained.tsv";
inline constexpr const char* kBags = "bags.tsv";
inline constexpr const char* kUpcycledBags = "bags_upcycled.tsv";
inline constexpr const char* kAssignments = "assignments.tsv";
inline constexpr const char* kClauseScores = "clause_scores.tsv";
inline constexpr const char* kMatrix = "matrix.csv";
inline constexpr const char* kReport = "report.json";
}  // namespace artifact

std::string sha256_hex(std::string_view data);
std::string sha256_file(const std::filesystem::path& path);

nlohmann::json clause_to_json(const Clause& clause);
Clause clause_from_json(const nlohmann::json& j);
std::vector<Clause> read_clauses(const std::filesystem::path& path);

std::string format_occurrences_tsv(const std::vector<BiTermOccurrence>& occurrences);
std::vector<BiTermOccurrence> parse_occurrences_tsv(std::string_view data);

// Disintegrates one corpus; reviews run on `threads` workers and merge in
// corpus order.
std::vector<Clause> disintegrate_corpus(const Corpus& corpus, const ParsedCorpus& parses, const Tagger& tagger,
                                        const SegmenterConfig& config, unsigned threads);

// Runs one stage; returns the manifest it wrote.
nlohmann::json run_stage(Stage stage, const PipelineConfig& config);

struct FunnelCounts {
  std::size_t reviews = 0;
  std::size_t rejected_records = 0;
  std::size_t clauses = 0;
  std::size_t biterm_occurrences = 0;
  std::size_t unique_biterms = 0;
  std::size_t strained = 0;
  std::size_t bagged_manual = 0;
  std::size_t upcycle_assigned = 0;
  std::size_t upcycle_added = 0;
  std::size_t matched_occurrences = 0;
  std::size_t unmatched_occurrences = 0;
  std::size_t scored_clauses = 0;

  nlohmann::json to_json() const;
};

// All stages in order plus report.json.
FunnelCounts run_all(const PipelineConfig& config);

// Blocks serving the labeling endpoints on config.port.
void serve_labeling(const PipelineConfig& config);

struct GoldenResult {
  std::string name;
  bool passed = false;
  std::string diff;
};

// Compares stage artifacts in the output directory against the golden files
// in config.paths.goldens. Requires a completed run.
std::vector<GoldenResult> verify_goldens(const PipelineConfig& config);

}  // namespace dissbus

#endif  // DISSBUS_PIPELINE_HPP_
