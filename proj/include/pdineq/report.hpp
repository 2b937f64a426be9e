#pragma once

// JSON forms of matrices, verdicts, instances and fuzz reports.
//
// MatrixFile:  {"n": 2, "rows": [[4, 2], [2, 3]],
//               "exact": [[["4","1"], ["2","1"]], [["2","1"], ["3","1"]]]}   (exact optional)
//
// Verdict:     {"type": "verdict", "id", "lhs", "rhs", "margin", "holds",
//               "tolerance", "allowance",
//               "fingerprint": {"n", "partition", "hash"},
//               "quantities": {name: value, ...},
//               "order": {...}   (vector-order ids only),
//               "exact": {"lhs", "rhs", "lhs_approx", "rhs_approx", "holds"}   (when certified)}
//
// Order:       {"kind", "n", "margins", "allowances", "total_residual",
//               "tolerance", "holds", "failure": "none"|"prefix"|"total",
//               "fails_at": k or null}
//
// FuzzReport:  {"type": "fuzz-report", "id", "config": {...}, "trials",
//               "holds", "violations", "worst_margin", "worst_trial",
//               "records": [{"trial", "seed", "injected", "verdict",
//                            "instance"}], "wall_seconds"}

#include <filesystem>
#include <optional>
#include <string>

#include <json.hpp>

#include "pdineq/fuzz.hpp"
#include "pdineq/inequalities.hpp"

namespace pdineq {

using Json = nlohmann::ordered_json;

struct MatrixFile {
  Matrix rows;
  std::optional<RationalMatrix> exact;
};

/// Throws ParseError on malformed content or when "exact" disagrees with
/// "rows" by more than 1e-12 * max(1, |entry|).
MatrixFile parse_matrix_file(const Json& j);
MatrixFile read_matrix_file(const std::filesystem::path& path);
Json to_json(const MatrixFile& file);
void write_matrix_file(const std::filesystem::path& path, const MatrixFile& file);

Json to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j);

Json to_json(const OrderReport& r);
Json to_json(const InequalityVerdict& v);
Json to_json(const ExactCertificate& c);

Json to_json(const Instance& inst);
Instance instance_from_json(const Json& j);

Json to_json(const GenConfig& cfg);
Json to_json(const FuzzReport& r);

std::string format_rational(const Rational& q);

}  // namespace pdineq
