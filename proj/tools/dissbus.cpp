// Copyright 2026 The dissbus Authors.
// Licensed under the Apache License, Version 2.0; see LICENSE.

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>

#include "dissbus/pipeline.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kValidation = 1;
constexpr int kIo = 2;
constexpr int kParameter = 3;

struct Overrides {
  std::optional<long> cut_point;
  std::optional<double> c1;
  std::optional<long> c2;
  std::optional<std::string> mode;
  std::optional<long> m;
  std::optional<std::uint64_t> seed;
  std::optional<double> tau;
  std::optional<int> port;
  std::optional<unsigned> threads;
};

void apply(const Overrides& o, dissbus::PipelineConfig& c) {
  if (o.cut_point) c.cut_point = *o.cut_point;
  if (o.c1) c.c1 = *o.c1;
  if (o.c2) c.c2 = *o.c2;
  if (o.mode) c.mode = dissbus::parse_comparison_mode(*o.mode);
  if (o.m) c.total_sample = *o.m;
  if (o.seed) c.seed = *o.seed;
  if (o.tau) c.tau = *o.tau;
  if (o.port) c.port = *o.port;
  if (o.threads) c.threads = *o.threads;
}

int run(const std::string& command, dissbus::PipelineConfig& config) {
  if (command == "all") {
    const dissbus::FunnelCounts f = dissbus::run_all(config);
    std::cout << f.to_json().dump(2) << "\n";
    return kOk;
  }
  if (command == "serve") {
    dissbus::serve_labeling(config);
    return kOk;
  }
  if (command == "verify") {
    bool ok = true;
    for (const auto& r : dissbus::verify_goldens(config)) {
      std::cout << (r.passed ? "PASS " : "FAIL ") << r.name << "\n";
      if (!r.passed) std::cout << r.diff;
      ok = ok && r.passed;
    }
    return ok ? kOk : kValidation;
  }
  const nlohmann::json manifest = dissbus::run_stage(dissbus::parse_stage(command), config);
  std::cout << manifest["counts"].dump(2) << "\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Confirmatory aspect-based opinion mining over short reviews"};
  std::string command;
  std::string config_path;
  Overrides o;
  app.add_option("command", command, "disintegrate|summarize|strain|bag|upcycle|score|all|serve|verify")
      ->required()
      ->check(CLI::IsMember(
          {"disintegrate", "summarize", "strain", "bag", "upcycle", "score", "all", "serve", "verify"}));
  app.add_option("--config", config_path, "pipeline config (JSON)")->required();
  app.add_option("--cut-point", o.cut_point, "straining cut point C");
  app.add_option("--c1", o.c1, "upcycle score criterion C1");
  app.add_option("--c2", o.c2, "upcycle count criterion C2");
  app.add_option("--mode", o.mode, "comparison mode: full or fractional");
  app.add_option("--m", o.m, "total comparison size M (fractional)");
  app.add_option("--seed", o.seed, "sampling seed (fractional)");
  app.add_option("--tau", o.tau, "likert threshold");
  app.add_option("--port", o.port, "labeling service port");
  app.add_option("--threads", o.threads, "worker threads (0 = all cores)");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kParameter;
  }

  try {
    dissbus::PipelineConfig config = dissbus::PipelineConfig::load(config_path);
    apply(o, config);
    return run(command, config);
  } catch (const dissbus::ValidationError& e) {
    std::cerr << "dissbus: " << e.what() << "\n";
    return kValidation;
  } catch (const dissbus::IoError& e) {
    std::cerr << "dissbus: " << e.what() << "\n";
    return kIo;
  } catch (const dissbus::ParameterError& e) {
    std::cerr << "dissbus: " << e.what() << "\n";
    return kParameter;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "dissbus: " << e.what() << "\n";
    return kIo;
  }
}
