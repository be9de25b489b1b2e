// Copyright 2026 The dissbus Authors.
// Licensed under the Apache License, Version 2.0; see LICENSE.

#include "dissbus/label_service.hpp"

#include <httplib.h>

namespace dissbus {

namespace {

using nlohmann::json;

ServiceResponse error(int status, const std::string& message) { return {status, json{{"error", message}}}; }

constexpr std::string_view kClausePrefix = "/biterms/";
constexpr std::string_view kClauseSuffix = "/clauses";

}  // namespace

json biterm_json(const BiTerm& b) {
  return json{{"key", b.key()},
              {"object_stem", b.object_stem},
              {"object_pos", std::string(to_string(b.object_pos))},
              {"evaluation_stem", b.evaluation_stem},
              {"evaluation_pos", std::string(to_string(b.evaluation_pos))}};
}

LabelService::LabelService(LabelStore& store, const FrequencyTable& table, std::vector<BiTermOccurrence> occurrences,
                           std::vector<Clause> clauses)
    : store_(store), occurrences_(std::move(occurrences)), clauses_(std::move(clauses)) {
  for (const auto& entry : table.ranked()) {
    counts_.insert(entry);
    if (store_.common().contains(entry.first)) queue_.push_back(entry);
  }
}

json LabelService::topics() const {
  json out = json::array();
  for (const Topic& t : store_.topics()) out.push_back({{"id", t.id}, {"label", t.label}, {"weight", t.weight}});
  return out;
}

json LabelService::clause_list(const BiTerm& biterm) const {
  json out = json::array();
  for (const Clause& c : clauses_for_biterm(biterm, occurrences_, clauses_)) {
    out.push_back({{"review_id", c.review_id}, {"clause_index", c.index}, {"text", c.text}});
  }
  return out;
}

json LabelService::next() const {
  const auto b = store_.next_unlabeled(queue_);
  if (!b) return json{{"done", true}};
  const auto it = counts_.find(*b);
  return json{{"done", false},
              {"biterm", biterm_json(*b)},
              {"count", it == counts_.end() ? 0 : it->second},
              {"clauses", clause_list(*b)}};
}

json LabelService::clauses(const BiTerm& biterm) const { return clause_list(biterm); }

json LabelService::progress() const {
  const LabelProgress p = store_.progress();
  return json{{"labeled", p.labeled}, {"discarded", p.discarded}, {"remaining", p.remaining}};
}

ServiceResponse LabelService::post_label(const std::string& body) {
  json req;
  try {
    req = json::parse(body);
  } catch (const json::parse_error&) {
    return error(400, "request body is not valid JSON");
  }
  if (!req.is_object() || !req.contains("biterm_key") || !req.contains("decision") ||
      !req["biterm_key"].is_string() || !req["decision"].is_string()) {
    return error(400, "expected {biterm_key, decision, labeler}");
  }
  const auto b = BiTerm::from_key(req["biterm_key"].get<std::string>());
  if (!b) return error(400, "malformed biterm_key");
  const std::string labeler = req.contains("labeler") && req["labeler"].is_string() ? req["labeler"].get<std::string>() : "";
  try {
    const LabelRecord r = store_.record_label(*b, req["decision"].get<std::string>(), labeler);
    return {201, json{{"seq", r.sequence},
                      {"biterm_key", r.biterm.key()},
                      {"decision", r.decision},
                      {"labeler", r.labeler},
                      {"timestamp", r.timestamp},
                      {"progress", progress()}}};
  } catch (const ValidationError& e) {
    return error(422, e.what());
  } catch (const IoError& e) {
    return error(500, e.what());
  }
}

ServiceResponse LabelService::handle(const std::string& method, const std::string& path, const std::string& body) {
  if (method == "GET") {
    if (path == "/topics") return {200, topics()};
    if (path == "/queue/next") return {200, next()};
    if (path == "/progress") return {200, progress()};
    if (path.size() > kClausePrefix.size() + kClauseSuffix.size() && path.starts_with(kClausePrefix) &&
        path.ends_with(kClauseSuffix)) {
      const std::string key =
          path.substr(kClausePrefix.size(), path.size() - kClausePrefix.size() - kClauseSuffix.size());
      const auto b = BiTerm::from_key(httplib::detail::decode_url(key, false));
      if (!b) return error(400, "malformed bi-term key '" + key + "'");
      return {200, clauses(*b)};
    }
  } else if (method == "POST" && path == "/labels") {
    return post_label(body);
  }
  return error(404, "no route for " + method + " " + path);
}

void LabelService::mount(httplib::Server& server) {
  const auto reply = [](httplib::Response& res, const ServiceResponse& r) {
    res.status = r.status;
    res.set_header("Access-Control-Allow-Origin", "*");
    res.set_content(r.body.dump(), "application/json");
  };
  server.Get(R"(/.*)", [this, reply](const httplib::Request& req, httplib::Response& res) {
    reply(res, handle("GET", req.path, ""));
  });
  server.Post("/labels", [this, reply](const httplib::Request& req, httplib::Response& res) {
    reply(res, handle("POST", req.path, req.body));
  });
  server.Options(R"(/.*)", [](const httplib::Request&, httplib::Response& res) {
    res.set_header("Access-Control-Allow-Origin", "*");
    res.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
    res.set_header("Access-Control-Allow-Headers", "Content-Type");
    res.status = 204;
  });
}

}  // namespace dissbus
