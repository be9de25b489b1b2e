// Copyright 2026 The dissbus Authors.
// Licensed under the Apache License, Version 2.0; see LICENSE.

#include "dissbus/corpus.hpp"

#include <map>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "dissbus/text.hpp"

namespace dissbus {

namespace {

using nlohmann::json;

// Adds a candidate review, routing record-level failures to the error list.
class CorpusBuilder {
 public:
  explicit CorpusBuilder(LoadResult& out) : out_(out) {}

  void add(std::size_t record, Review review) {
    if (text::trim(review.id).empty()) {
      fail(record, "", "missing or empty id");
      return;
    }
    if (text::trim(review.body).empty()) {
      fail(record, review.id, "empty body");
      return;
    }
    if (review.rating && (*review.rating < 1 || *review.rating > 5)) {
      fail(record, review.id, "rating " + std::to_string(*review.rating) + " outside 1-5");
      return;
    }
    if (!seen_.insert(review.id).second) {
      fail(record, review.id, "duplicate id '" + review.id + "'");
      return;
    }
    out_.corpus.reviews.push_back(std::move(review));
  }

  void fail(std::size_t record, std::string id, std::string message) {
    out_.errors.push_back({record, std::move(id), std::move(message)});
  }

 private:
  LoadResult& out_;
  std::set<std::string> seen_;
};

std::optional<std::string> optional_string(const json& obj, const char* key) {
  const auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return std::nullopt;
  if (!it->is_string()) throw ValidationError(std::string("field '") + key + "' must be a string");
  return it->get<std::string>();
}

std::optional<int> optional_rating(const json& obj) {
  const auto it = obj.find("rating");
  if (it == obj.end() || it->is_null()) return std::nullopt;
  if (!it->is_number_integer()) throw ValidationError("field 'rating' must be an integer");
  return it->get<int>();
}

void load_jsonl(std::string_view data, LoadResult& out) {
  CorpusBuilder builder(out);
  std::istringstream in{std::string(data)};
  std::string line;
  while (std::getline(in, line)) {
    if (text::trim(line).empty()) continue;
    const std::size_t record = ++out.records_read;
    json obj;
    try {
      obj = json::parse(line);
    } catch (const json::parse_error& e) {
      builder.fail(record, "", std::string("malformed JSON: ") + e.what());
      continue;
    }
    if (!obj.is_object()) {
      builder.fail(record, "", "record is not a JSON object");
      continue;
    }
    try {
      Review r;
      r.id = optional_string(obj, "id").value_or("");
      r.title = optional_string(obj, "title").value_or("");
      r.body = optional_string(obj, "body").value_or("");
      r.rating = optional_rating(obj);
      r.date = optional_string(obj, "date");
      builder.add(record, std::move(r));
    } catch (const ValidationError& e) {
      builder.fail(record, optional_string(obj, "id").value_or(""), e.what());
    } catch (const json::exception& e) {
      builder.fail(record, "", e.what());
    }
  }
}

void load_csv(std::string_view data, LoadResult& out) {
  CorpusBuilder builder(out);
  const auto rows = parse_csv(data);
  if (rows.empty()) return;
  std::map<std::string, std::size_t> column;
  for (std::size_t i = 0; i < rows[0].size(); ++i) column[text::to_lower(text::trim(rows[0][i]))] = i;
  if (!column.count("id") || !column.count("body")) {
    throw ValidationError("CSV header must contain 'id' and 'body' columns");
  }
  const auto field = [&](const std::vector<std::string>& row, const char* name) -> std::optional<std::string> {
    const auto it = column.find(name);
    if (it == column.end() || it->second >= row.size()) return std::nullopt;
    return row[it->second];
  };
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    if (row.size() == 1 && text::trim(row[0]).empty()) continue;
    const std::size_t record = ++out.records_read;
    Review review;
    review.id = field(row, "id").value_or("");
    review.title = field(row, "title").value_or("");
    review.body = field(row, "body").value_or("");
    try {
      if (auto rating = field(row, "rating"); rating && !text::trim(*rating).empty()) {
        review.rating = static_cast<int>(text::parse_long(*rating, "rating"));
      }
    } catch (const ValidationError& e) {
      builder.fail(record, review.id, e.what());
      continue;
    }
    if (auto date = field(row, "date"); date && !text::trim(*date).empty()) review.date = *date;
    builder.add(record, std::move(review));
  }
}

}  // namespace

CorpusFormat format_from_extension(const std::filesystem::path& path) {
  const std::string ext = text::to_lower(path.extension().string());
  if (ext == ".csv") return CorpusFormat::Csv;
  if (ext == ".jsonl" || ext == ".json" || ext == ".ndjson") return CorpusFormat::Jsonl;
  throw ParameterError("cannot infer corpus format from '" + path.string() + "'");
}

LoadResult load_reviews(const std::filesystem::path& path, CorpusFormat format) {
  const std::string data = text::read_file(path);
  LoadResult out;
  if (format == CorpusFormat::Jsonl) {
    load_jsonl(data, out);
  } else {
    load_csv(data, out);
  }
  return out;
}

std::vector<std::vector<std::string>> parse_csv(std::string_view data) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string field;
  bool quoted = false;
  bool any = false;
  for (std::size_t i = 0; i < data.size(); ++i) {
    const char c = data[i];
    any = true;
    if (quoted) {
      if (c == '"') {
        if (i + 1 < data.size() && data[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field.push_back(c);
      }
      continue;
    }
    switch (c) {
      case '"':
        quoted = true;
        break;
      case ',':
        row.push_back(std::move(field));
        field.clear();
        break;
      case '\r':
        break;
      case '\n':
        row.push_back(std::move(field));
        field.clear();
        rows.push_back(std::move(row));
        row.clear();
        any = false;
        break;
      default:
        field.push_back(c);
    }
  }
  if (quoted) throw ValidationError("CSV ends inside a quoted field");
  if (any) {
    row.push_back(std::move(field));
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string csv_escape(std::string_view field) {
  if (field.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

ValidationReport validate_corpus(const Corpus& corpus) {
  ValidationReport report;
  std::map<std::string, int> seen;
  for (const Review& r : corpus.reviews) {
    if (text::trim(r.id).empty()) {
      report.issues.push_back({IssueKind::EmptyId, r.id, "empty id"});
    } else if (++seen[r.id] == 2) {
      report.issues.push_back({IssueKind::DuplicateId, r.id, "duplicate id '" + r.id + "'"});
    }
    if (text::trim(r.body).empty()) {
      report.issues.push_back({IssueKind::EmptyBody, r.id, "empty body"});
    }
    if (r.rating && (*r.rating < 1 || *r.rating > 5)) {
      report.issues.push_back(
          {IssueKind::RatingOutOfRange, r.id, "rating " + std::to_string(*r.rating) + " outside 1-5"});
    }
  }
  return report;
}

std::vector<Topic> load_topics(const std::filesystem::path& path) {
  std::vector<Topic> topics;
  std::istringstream in(text::read_file(path));
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (text::trim(line).empty() || text::trim(line).front() == '#') continue;
    const auto cols = text::split(line, '\t');
    if (cols.size() < 2) {
      throw ValidationError(path.string() + ":" + std::to_string(lineno) + ": expected id<TAB>label[<TAB>weight]");
    }
    Topic t;
    t.id = std::string(text::trim(cols[0]));
    t.label = std::string(text::trim(cols[1]));
    if (cols.size() > 2 && !text::trim(cols[2]).empty()) t.weight = text::parse_double(cols[2], "topic weight");
    topics.push_back(std::move(t));
  }
  validate_topics(topics);
  return topics;
}

void validate_topics(const std::vector<Topic>& topics) {
  std::set<std::string> ids;
  for (const Topic& t : topics) {
    if (t.id.empty()) throw ValidationError("topic with empty id");
    if (t.id == "DISCARD" || t.id == "UNASSIGNED") throw ValidationError("reserved topic id '" + t.id + "'");
    if (!ids.insert(t.id).second) throw ValidationError("duplicate topic id '" + t.id + "'");
    if (!(t.weight > 0.0)) throw ValidationError("topic '" + t.id + "' weight must be > 0");
  }
}

}  // namespace dissbus
