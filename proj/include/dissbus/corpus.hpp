// Copyright 2026 The dissbus Authors.
// Licensed under the Apache License, Version 2.0; see LICENSE.

#ifndef DISSBUS_CORPUS_HPP_
#define DISSBUS_CORPUS_HPP_

#include <filesystem>
#include <string>
#include <vector>

#include "dissbus/types.hpp"

namespace dissbus {

enum class CorpusFormat { Jsonl, Csv };

// Picks the format from the file extension (.jsonl/.json or .csv).
CorpusFormat format_from_extension(const std::filesystem::path& path);

struct RecordError {
  std::size_t record = 0;  // 1-based record number in the input
  std::string review_id;   // empty when the record had no usable id
  std::string message;

  bool operator==(const RecordError&) const = default;
};

struct LoadResult {
  Corpus corpus;
  std::vector<RecordError> errors;
  std::size_t records_read = 0;
};

// Reads a review corpus. Unreadable files throw IoError; bad records land
// in `errors` so that corpus size + error count == records_read.
LoadResult load_reviews(const std::filesystem::path& path, CorpusFormat format);

// RFC-4180 record splitter (quoted fields, doubled quotes, embedded
// newlines). Exposed for the label CSV importer.
std::vector<std::vector<std::string>> parse_csv(std::string_view data);
std::string csv_escape(std::string_view field);

enum class IssueKind { DuplicateId, EmptyBody, EmptyId, RatingOutOfRange };

struct ValidationIssue {
  IssueKind kind;
  std::string review_id;
  std::string message;
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;
  bool ok() const { return issues.empty(); }
};

ValidationReport validate_corpus(const Corpus& corpus);

// Topic configuration: TSV `id<TAB>label[<TAB>weight]`, weight defaults to 1.
std::vector<Topic> load_topics(const std::filesystem::path& path);
void validate_topics(const std::vector<Topic>& topics);

}  // namespace dissbus

#endif  // DISSBUS_CORPUS_HPP_
