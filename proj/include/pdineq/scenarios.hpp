#pragma once

// Reference scenarios: each recomputes a set of quantities from embedded
// instances and compares them against stored four-digit reference values.

#include <string>
#include <vector>

#include "pdineq/report.hpp"

namespace pdineq {

struct ScenarioRow {
  std::string quantity;
  double computed = 0.0;
  double reference = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct ScenarioResult {
  std::string id;
  std::vector<ScenarioRow> rows;
  bool pass = false;
  double seconds = 0.0;
};

/// Reference eigenvalues carry 4 decimals.
inline constexpr double kEigenvalueTolerance = 1.5e-4;
/// Reference determinants carry 4 decimals.
inline constexpr double kDeterminantTolerance = 1e-3;

ScenarioResult scenario_general_d_weak_log();
ScenarioResult scenario_log_majorization_gap();
ScenarioResult scenario_entrywise_padded();
ScenarioResult scenario_negative_power();
ScenarioResult scenario_matic_general_d();
ScenarioResult scenario_inverse_square_sum();

std::vector<ScenarioResult> run_reference_scenarios();

Json to_json(const ScenarioResult& r);
/// Fixed-width human-readable table.
std::string format_table(const std::vector<ScenarioResult>& results);

}  // namespace pdineq
