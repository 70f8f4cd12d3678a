#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "intrinlip/element.hpp"

namespace intrinlip {

/// Outcome of one inequality or identity checked over a sample.
struct CheckRecord {
  std::string check_id;
  std::string anchor;  // what is being checked, in words
  std::size_t samples = 0;
  std::size_t skipped = 0;
  std::size_t violations = 0;
  /// Largest observed (lhs - rhs) of the checked inequality; <= 0 on a pass.
  double worst_margin = -1e300;
  std::map<std::string, double> constants;

  void observe(double margin) {
    ++samples;
    if (margin > worst_margin) worst_margin = margin;
    if (margin > 0.0) ++violations;
  }
};

struct SuiteOptions {
  std::string suite = "all";
  std::string group = "heisenberg";
  std::optional<std::string> map;  // all shipped maps when empty
  std::uint64_t seed = 1;
  std::size_t samples = 10000;
  bool exhaustive = false;
  Tolerances tol{};
  std::optional<std::string> box;  // chart box csv; [-1,1]^d when empty
};

struct SuiteReport {
  SuiteOptions options;
  std::vector<CheckRecord> checks;
  bool passed = true;
  double wall_time_s = 0.0;
};

/// Suite names accepted by run_suite.
std::vector<std::string> suite_names();

/// Throws InvalidSpec for unknown suites, groups or maps.
SuiteReport run_suite(const SuiteOptions& options);

struct EstimateOptions {
  std::string group = "heisenberg";
  std::string map = "const:0";
  std::uint64_t seed = 1;
  std::size_t samples = 10000;
  bool exhaustive = false;
  Tolerances tol{};
  std::optional<std::string> box;
};

/// All condition constants, the graph-pair constant, the splitting constants
/// and the quasi-distance constants for one map, as a single record.
CheckRecord estimate_constants(const EstimateOptions& options);

/// One CSV row per sampled g: chart coordinates and the minimal opening of
/// every cone family (vertex 1).
void write_cone_sweep(std::ostream& out, const std::string& group, std::size_t samples,
                      std::uint64_t seed, const std::optional<std::string>& box);

/// JSON with fields suite, group, map, seed, samples, exhaustive, tolerances,
/// checks, passed, wall_time_s.
std::string report_json(const SuiteReport& report, int indent = 2);
std::string estimate_json(const EstimateOptions& options, const CheckRecord& record,
                          double wall_time_s, int indent = 2);

}  // namespace intrinlip
