#include <doctest.h>

#include <string>

#include "ckmeans/report.hpp"

using namespace ckmeans;

namespace {

RunReport sample_report() {
  RunReport report;
  report.config = {{"k", 2}, {"rho", 0.1}, {"seed", 7}};
  report.solve.labels = {0, 0, 1, 1};
  report.solve.x_final = Vec::Zero(8);
  report.solve.x_final[0] = round_sig(1.0 / 3.0);
  report.solve.objective = round_sig(0.010000000000001931);
  report.solve.converged = true;
  report.solve.iterations = 137;
  report.solve.residuals.consensus = round_sig(2.5e-9);
  report.solve.trace = {round_sig(0.5), round_sig(0.25), round_sig(0.01)};
  OracleResult oracle;
  oracle.best_labels = {0, 0, 1, 1};
  oracle.best_objective = round_sig(0.01);
  oracle.feasible_count = 6;
  oracle.optimal_count = 2;
  oracle.feasible = true;
  report.oracle = oracle;
  report.oracle_relative_gap = 0.0;
  report.metrics = MetricsReport{1.0, 1.0};
  report.sweep = {{0, 0.1, 0.01, true, true, 137}, {1, 0.1, 0.01, true, true, 140}};
  report.validation_warnings = {"example warning"};
  report.wall_time = round_sig(0.1234567890123);
  return report;
}

}  // namespace

TEST_CASE("round_sig keeps 12 significant digits") {
  CHECK(round_sig(0.010000000000001931) == 0.01);
  CHECK(round_sig(1.0 / 3.0) == 0.333333333333);
  CHECK(round_sig(123456789012345.0) == 123456789012000.0);
  CHECK(round_sig(0.0) == 0.0);
  CHECK(round_sig(-2.5e-9) == -2.5e-9);
}

TEST_CASE("report serialization round-trips") {
  const RunReport report = sample_report();
  const std::string text = serialize_report(report);
  const RunReport back = parse_report(text);
  CHECK(back == report);

  // Optional sections stay absent.
  RunReport bare;
  bare.config = {{"k", 1}};
  bare.solve.labels = {0};
  bare.solve.x_final = Vec::Ones(1);
  const RunReport bare_back = parse_report(serialize_report(bare));
  CHECK(bare_back == bare);
  CHECK_FALSE(bare_back.oracle.has_value());
  CHECK_FALSE(bare_back.metrics.has_value());
}

TEST_CASE("serialization is deterministic with sorted keys") {
  const std::string a = serialize_report(sample_report());
  const std::string b = serialize_report(sample_report());
  CHECK(a == b);

  // Keys come out sorted regardless of insertion order.
  const auto config_pos = a.find("\"config\"");
  const auto solve_pos = a.find("\"solve\"");
  const auto wall_pos = a.find("\"wall_time\"");
  CHECK(config_pos < solve_pos);
  CHECK(solve_pos < wall_pos);
}

TEST_CASE("infeasible oracle results survive the round trip") {
  RunReport report;
  report.config = {{"k", 2}};
  report.solve.labels = {0, 1};
  report.solve.x_final = Vec::Zero(4);
  OracleResult oracle;
  oracle.best_objective = std::nan("");
  oracle.feasible = false;
  oracle.feasible_count = 0;
  report.oracle = oracle;
  const RunReport back = parse_report(serialize_report(report));
  CHECK(back == report);
  CHECK(std::isnan(back.oracle->best_objective));
}
