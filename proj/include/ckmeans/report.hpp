#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ckmeans/admm.hpp"
#include "ckmeans/oracle.hpp"

namespace ckmeans {

struct MetricsReport {
  double nmi = 0.0;
  double accuracy = 0.0;

  bool operator==(const MetricsReport&) const = default;
};

struct SweepEntry {
  std::uint64_t seed = 0;
  double rho = 0.0;
  double objective = 0.0;
  bool converged = false;
  bool feasible = false;
  int iterations = 0;

  bool operator==(const SweepEntry&) const = default;
};

/// Machine-readable record of one CLI invocation. Builders are expected to
/// pass every float through round_sig first; serialization then emits the
/// stored values verbatim (keys sorted), which makes reports byte-stable
/// and round-trippable.
struct RunReport {
  nlohmann::json config;  ///< echo of the effective flags
  SolveResult solve;
  std::optional<OracleResult> oracle;
  std::optional<double> oracle_relative_gap;
  std::optional<MetricsReport> metrics;
  std::vector<SweepEntry> sweep;
  std::vector<std::string> validation_warnings;
  double wall_time = 0.0;  ///< seconds; excluded from determinism guarantees
};

/// Rounds to the given number of significant digits (default 12).
double round_sig(double value, int digits = 12);

nlohmann::json report_to_json(const RunReport& report);
RunReport report_from_json(const nlohmann::json& doc);

std::string serialize_report(const RunReport& report);
RunReport parse_report(const std::string& text);

bool operator==(const RunReport& lhs, const RunReport& rhs);

}  // namespace ckmeans
