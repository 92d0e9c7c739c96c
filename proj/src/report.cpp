#include "ckmeans/report.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace ckmeans {
namespace {

using nlohmann::json;

bool equal_or_both_nan(double a, double b) {
  return (std::isnan(a) && std::isnan(b)) || a == b;
}

json vec_to_json(const Vec& v) {
  json arr = json::array();
  for (int i = 0; i < v.size(); ++i) arr.push_back(v[i]);
  return arr;
}

Vec vec_from_json(const json& arr) {
  Vec v(static_cast<Eigen::Index>(arr.size()));
  for (size_t i = 0; i < arr.size(); ++i) v[static_cast<Eigen::Index>(i)] = arr[i];
  return v;
}

json solve_to_json(const SolveResult& solve) {
  return json{{"labels", solve.labels},
              {"x_final", vec_to_json(solve.x_final)},
              {"objective", solve.objective},
              {"converged", solve.converged},
              {"iterations", solve.iterations},
              {"residuals",
               {{"onehot", solve.residuals.onehot},
                {"cardinality", solve.residuals.cardinality},
                {"mustlink_gap", solve.residuals.mustlink_gap},
                {"cannotlink_value", solve.residuals.cannotlink_value},
                {"consensus", solve.residuals.consensus}}},
              {"trace", solve.trace}};
}

SolveResult solve_from_json(const json& doc) {
  SolveResult solve;
  solve.labels = doc.at("labels").get<std::vector<int>>();
  solve.x_final = vec_from_json(doc.at("x_final"));
  solve.objective = doc.at("objective");
  solve.converged = doc.at("converged");
  solve.iterations = doc.at("iterations");
  const json& res = doc.at("residuals");
  solve.residuals.onehot = res.at("onehot");
  solve.residuals.cardinality = res.at("cardinality");
  solve.residuals.mustlink_gap = res.at("mustlink_gap");
  solve.residuals.cannotlink_value = res.at("cannotlink_value");
  solve.residuals.consensus = res.at("consensus");
  solve.trace = doc.at("trace").get<std::vector<double>>();
  return solve;
}

json oracle_to_json(const OracleResult& oracle) {
  json doc{{"best_labels", oracle.best_labels},
           {"feasible_count", oracle.feasible_count},
           {"optimal_count", oracle.optimal_count},
           {"feasible", oracle.feasible}};
  if (oracle.feasible) doc["best_objective"] = oracle.best_objective;
  return doc;
}

OracleResult oracle_from_json(const json& doc) {
  OracleResult oracle;
  oracle.best_labels = doc.at("best_labels").get<std::vector<int>>();
  oracle.feasible_count = doc.at("feasible_count");
  oracle.optimal_count = doc.at("optimal_count");
  oracle.feasible = doc.at("feasible");
  oracle.best_objective = doc.contains("best_objective")
                              ? doc.at("best_objective").get<double>()
                              : std::nan("");
  return oracle;
}

}  // namespace

double round_sig(double value, int digits) {
  if (!std::isfinite(value)) return value;
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.*g", digits, value);
  return std::strtod(buffer, nullptr);
}

json report_to_json(const RunReport& report) {
  json doc;
  doc["config"] = report.config;
  doc["solve"] = solve_to_json(report.solve);
  if (report.oracle) doc["oracle"] = oracle_to_json(*report.oracle);
  if (report.oracle_relative_gap) doc["oracle_relative_gap"] = *report.oracle_relative_gap;
  if (report.metrics) {
    doc["metrics"] = {{"nmi", report.metrics->nmi},
                      {"accuracy", report.metrics->accuracy}};
  }
  if (!report.sweep.empty()) {
    json runs = json::array();
    for (const auto& entry : report.sweep) {
      runs.push_back({{"seed", entry.seed},
                      {"rho", entry.rho},
                      {"objective", entry.objective},
                      {"converged", entry.converged},
                      {"feasible", entry.feasible},
                      {"iterations", entry.iterations}});
    }
    doc["sweep"] = runs;
  }
  if (!report.validation_warnings.empty())
    doc["validation_warnings"] = report.validation_warnings;
  doc["wall_time"] = report.wall_time;
  return doc;
}

RunReport report_from_json(const json& doc) {
  RunReport report;
  report.config = doc.at("config");
  report.solve = solve_from_json(doc.at("solve"));
  if (doc.contains("oracle")) report.oracle = oracle_from_json(doc.at("oracle"));
  if (doc.contains("oracle_relative_gap"))
    report.oracle_relative_gap = doc.at("oracle_relative_gap").get<double>();
  if (doc.contains("metrics")) {
    report.metrics = MetricsReport{doc.at("metrics").at("nmi"),
                                   doc.at("metrics").at("accuracy")};
  }
  if (doc.contains("sweep")) {
    for (const auto& entry : doc.at("sweep")) {
      report.sweep.push_back(SweepEntry{entry.at("seed"), entry.at("rho"),
                                        entry.at("objective"), entry.at("converged"),
                                        entry.at("feasible"), entry.at("iterations")});
    }
  }
  if (doc.contains("validation_warnings"))
    report.validation_warnings =
        doc.at("validation_warnings").get<std::vector<std::string>>();
  report.wall_time = doc.at("wall_time");
  return report;
}

std::string serialize_report(const RunReport& report) {
  return report_to_json(report).dump(2) + "\n";
}

RunReport parse_report(const std::string& text) {
  return report_from_json(json::parse(text));
}

bool operator==(const RunReport& lhs, const RunReport& rhs) {
  const auto solve_equal = [](const SolveResult& a, const SolveResult& b) {
    return a.labels == b.labels && a.x_final == b.x_final &&
           a.objective == b.objective && a.converged == b.converged &&
           a.iterations == b.iterations && a.trace == b.trace &&
           a.residuals.onehot == b.residuals.onehot &&
           a.residuals.cardinality == b.residuals.cardinality &&
           a.residuals.mustlink_gap == b.residuals.mustlink_gap &&
           a.residuals.cannotlink_value == b.residuals.cannotlink_value &&
           a.residuals.consensus == b.residuals.consensus;
  };
  const auto oracle_equal = [](const std::optional<OracleResult>& a,
                               const std::optional<OracleResult>& b) {
    if (a.has_value() != b.has_value()) return false;
    if (!a) return true;
    return a->best_labels == b->best_labels &&
           equal_or_both_nan(a->best_objective, b->best_objective) &&
           a->feasible_count == b->feasible_count &&
           a->optimal_count == b->optimal_count && a->feasible == b->feasible;
  };
  return lhs.config == rhs.config && solve_equal(lhs.solve, rhs.solve) &&
         oracle_equal(lhs.oracle, rhs.oracle) &&
         lhs.oracle_relative_gap == rhs.oracle_relative_gap &&
         lhs.metrics == rhs.metrics && lhs.sweep == rhs.sweep &&
         lhs.validation_warnings == rhs.validation_warnings &&
         lhs.wall_time == rhs.wall_time;
}

}  // namespace ckmeans
