// Copyright 2026 The dissbus Authors.
// Licensed under the Apache License, Version 2.0; see LICENSE.

#ifndef DISSBUS_LABEL_SERVICE_HPP_
#define DISSBUS_LABEL_SERVICE_HPP_

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "dissbus/bagger.hpp"

namespace httplib {
class Server;
}

namespace dissbus {

struct ServiceResponse {
  int status = 200;
  nlohmann::json body;
};

// HTTP/JSON front of a LabelStore for the labeling UI:
//   GET  /topics
//   GET  /queue/next
//   GET  /biterms/{key}/clauses
//   POST /labels        {biterm_key, decision, labeler}
//   GET  /progress
class LabelService {
 public:
  LabelService(LabelStore& store, const FrequencyTable& table, std::vector<BiTermOccurrence> occurrences,
               std::vector<Clause> clauses);

  // Routing without a socket; `path` excludes the query string.
  ServiceResponse handle(const std::string& method, const std::string& path, const std::string& body);

  void mount(httplib::Server& server);

  nlohmann::json topics() const;
  nlohmann::json next() const;
  nlohmann::json clauses(const BiTerm& biterm) const;
  nlohmann::json progress() const;

 private:
  ServiceResponse post_label(const std::string& body);
  nlohmann::json clause_list(const BiTerm& biterm) const;

  LabelStore& store_;
  std::vector<std::pair<BiTerm, std::uint64_t>> queue_;  // strained, ranked
  std::map<BiTerm, std::uint64_t> counts_;
  std::vector<BiTermOccurrence> occurrences_;
  std::vector<Clause> clauses_;
};

nlohmann::json biterm_json(const BiTerm& b);

}  // namespace dissbus

#endif  // DISSBUS_LABEL_SERVICE_HPP_
