#pragma once

#include <string>
#include <vector>

#include "cba/evaluation.hpp"

namespace cba {

inline constexpr const char* kVersion = "1.0.0";

/// Everything needed to rerun a command. Timestamp and wall-clock numbers
/// are the only fields allowed to differ between reruns.
struct RunManifest {
  std::string command;
  std::string dataset;
  ModelConfig config;
  std::string timestamp;  // omitted from output when empty
};

struct ReportOptions {
  bool include_timing = true;
};

std::string cv_report_json(const RunManifest& manifest, const CVReport& report, const ReportOptions& opts = {});

struct BenchEntry {
  DatasetMeta meta;
  ScenarioReport scenarios;
};

std::string bench_report_json(const RunManifest& manifest, const std::vector<BenchEntry>& entries,
                              const ReportOptions& opts = {});

/// Human-readable schema summary: attributes with their value counts, class
/// distribution.
std::string describe(const Dataset& dataset);

}  // namespace cba
