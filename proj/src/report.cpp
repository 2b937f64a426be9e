#include "pdineq/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace pdineq {

namespace {

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::vector<std::size_t> sizes_from_json(const Json& j) {
  std::vector<std::size_t> out;
  for (const auto& v : j) out.push_back(v.get<std::size_t>());
  return out;
}

Json exact_to_json(const RationalMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.dim(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.dim(); ++j)
      row.push_back({m(i, j).get_num().get_str(), m(i, j).get_den().get_str()});
    rows.push_back(std::move(row));
  }
  return rows;
}

RationalMatrix exact_from_json(const Json& j) {
  if (!j.is_array()) throw Error(ErrorCode::ParseError, "\"exact\" must be an array of rows");
  RationalMatrix m(j.size());
  for (std::size_t r = 0; r < j.size(); ++r) {
    if (!j[r].is_array() || j[r].size() != j.size())
      throw Error(ErrorCode::ParseError, "\"exact\" must be square");
    for (std::size_t c = 0; c < j.size(); ++c) {
      const auto& e = j[r][c];
      if (e.is_array() && e.size() == 2) {
        m(r, c) = parse_rational(e[0].get<std::string>() + "/" + e[1].get<std::string>());
      } else if (e.is_string()) {
        m(r, c) = parse_rational(e.get<std::string>());
      } else {
        throw Error(ErrorCode::ParseError, "exact entry must be [\"num\",\"den\"]");
      }
    }
  }
  return m;
}

}  // namespace

std::string format_rational(const Rational& q) { return q.get_str(); }

// ------------------------------------------------------------ matrices

Json to_json(const Matrix& m) {
  Json rows = Json::array();
  for (const auto& r : m.to_rows()) rows.push_back(r);
  return rows;
}

Matrix matrix_from_json(const Json& j) {
  if (!j.is_array()) throw Error(ErrorCode::ParseError, "matrix rows must be an array");
  std::vector<std::vector<double>> rows;
  for (const auto& r : j) {
    if (!r.is_array()) throw Error(ErrorCode::ParseError, "matrix row must be an array");
    std::vector<double> row;
    for (const auto& v : r) {
      if (!v.is_number()) throw Error(ErrorCode::ParseError, "matrix entries must be numbers");
      row.push_back(v.get<double>());
    }
    rows.push_back(std::move(row));
  }
  try {
    return Matrix::from_rows(rows);
  } catch (const Error& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
}

MatrixFile parse_matrix_file(const Json& j) {
  if (!j.is_object() || !j.contains("n") || !j.contains("rows"))
    throw Error(ErrorCode::ParseError, "matrix file needs \"n\" and \"rows\"");
  if (!j["n"].is_number_integer() || j["n"].get<long long>() < 1)
    throw Error(ErrorCode::ParseError, "\"n\" must be a positive integer");
  const auto n = j["n"].get<std::size_t>();
  MatrixFile f{matrix_from_json(j["rows"]), std::nullopt};
  if (f.rows.rows() != n || f.rows.cols() != n)
    throw Error(ErrorCode::ParseError, "\"rows\" is not " + std::to_string(n) + "x" + std::to_string(n));
  if (j.contains("exact")) {
    f.exact = exact_from_json(j["exact"]);
    if (f.exact->dim() != n) throw Error(ErrorCode::ParseError, "\"exact\" size differs from n");
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) {
        const double v = f.rows(r, c);
        if (std::abs((*f.exact)(r, c).get_d() - v) > 1e-12 * std::max(1.0, std::abs(v)))
          throw Error(ErrorCode::ParseError, "\"exact\" disagrees with \"rows\" at (" + std::to_string(r) +
                                                 "," + std::to_string(c) + ")");
      }
  }
  return f;
}

MatrixFile read_matrix_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path.string());
  Json j;
  try {
    j = Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, path.string() + ": " + e.what());
  }
  return parse_matrix_file(j);
}

Json to_json(const MatrixFile& file) {
  Json j;
  j["n"] = file.rows.rows();
  j["rows"] = to_json(file.rows);
  if (file.exact) j["exact"] = exact_to_json(*file.exact);
  return j;
}

void write_matrix_file(const std::filesystem::path& path, const MatrixFile& file) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::ParseError, "cannot write " + path.string());
  out << to_json(file).dump(2) << '\n';
  if (!out) throw Error(ErrorCode::ParseError, "write failed for " + path.string());
}

// ------------------------------------------------------------ verdicts

Json to_json(const OrderReport& r) {
  Json j;
  j["kind"] = std::string(to_string(r.kind));
  j["n"] = r.n;
  j["margins"] = r.margins;
  j["allowances"] = r.allowances;
  j["total_residual"] = r.total_residual;
  j["tolerance"] = r.tolerance;
  j["holds"] = r.holds;
  j["failure"] = r.failure == OrderFailure::None ? "none" : r.failure == OrderFailure::Prefix ? "prefix" : "total";
  j["fails_at"] = r.fails_at ? Json(*r.fails_at) : Json(nullptr);
  return j;
}

Json to_json(const ExactCertificate& c) {
  return Json{{"lhs", format_rational(c.lhs)},
              {"rhs", format_rational(c.rhs)},
              {"lhs_approx", c.lhs.get_d()},
              {"rhs_approx", c.rhs.get_d()},
              {"holds", c.holds}};
}

Json to_json(const InequalityVerdict& v) {
  Json j;
  j["type"] = "verdict";
  j["id"] = std::string(to_string(v.id));
  j["lhs"] = v.lhs;
  j["rhs"] = v.rhs;
  j["margin"] = v.margin;
  j["holds"] = v.holds;
  j["tolerance"] = v.tolerance;
  j["allowance"] = v.allowance;
  j["fingerprint"] = {{"n", v.fingerprint.n},
                      {"partition", v.fingerprint.partition},
                      {"hash", hex64(v.fingerprint.hash)}};
  Json q = Json::object();
  for (const auto& [k, val] : v.quantities) q[k] = val;
  j["quantities"] = std::move(q);
  if (v.order) j["order"] = to_json(*v.order);
  if (v.exact) j["exact"] = to_json(*v.exact);
  return j;
}

// ------------------------------------------------------------ instances

Json to_json(const Instance& inst) {
  Json j;
  j["partition"] = inst.partition.sizes();
  if (inst.c) j["C"] = to_json(inst.c->matrix());
  if (inst.d) j["D"] = to_json(inst.d->matrix());
  if (!inst.as.empty()) {
    Json as = Json::array();
    for (const auto& a : inst.as) as.push_back(to_json(a.matrix()));
    j["A"] = std::move(as);
  }
  if (!inst.indices.empty()) j["indices"] = inst.indices;
  j["p"] = inst.p;
  j["tail_index"] = inst.tail_index;
  if (inst.c_exact) j["C_exact"] = exact_to_json(*inst.c_exact);
  if (inst.d_exact) j["D_exact"] = exact_to_json(*inst.d_exact);
  return j;
}

Instance instance_from_json(const Json& j) {
  Instance inst;
  try {
    std::size_t n = 0;
    if (j.contains("C")) n = j["C"].size();
    else if (j.contains("A") && !j["A"].empty()) n = j["A"][0].size();
    inst.partition = validate_partition(sizes_from_json(j.at("partition")), n);
    if (j.contains("C")) inst.c = PDMatrix(matrix_from_json(j["C"]));
    if (j.contains("D")) inst.d = PDMatrix(matrix_from_json(j["D"]));
    if (j.contains("A"))
      for (const auto& a : j["A"]) inst.as.emplace_back(matrix_from_json(a));
    if (j.contains("indices")) inst.indices = sizes_from_json(j["indices"]);
    inst.p = j.value("p", 1.0);
    inst.tail_index = j.value("tail_index", std::size_t{0});
    if (j.contains("C_exact")) inst.c_exact = exact_from_json(j["C_exact"]);
    if (j.contains("D_exact")) inst.d_exact = exact_from_json(j["D_exact"]);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
  return inst;
}

// ------------------------------------------------------------ fuzz

Json to_json(const GenConfig& cfg) {
  Json j;
  j["n"] = cfg.n;
  j["partition"] = cfg.partition.empty() ? Json("random") : Json(cfg.partition);
  j["m"] = cfg.m;
  j["style"] = std::string(to_string(cfg.style));
  j["kappa_max"] = cfg.kappa_max;
  j["scale"] = cfg.scale;
  j["seed"] = cfg.seed;
  j["p"] = cfg.p;
  j["tail_index"] = cfg.tail_index;
  j["tolerance"] = cfg.tolerance;
  j["inject_known"] = cfg.inject_known;
  return j;
}

Json to_json(const FuzzReport& r) {
  Json j;
  j["type"] = "fuzz-report";
  j["id"] = std::string(to_string(r.id));
  j["family"] = family_of(r.id) == Family::Theorem ? "theorem"
                : family_of(r.id) == Family::Open  ? "open"
                                                   : "counterexample";
  j["config"] = to_json(r.config);
  j["trials"] = r.trials;
  j["holds"] = r.holds;
  j["violations"] = r.violations;
  j["worst_margin"] = r.worst_margin;
  j["worst_trial"] = r.worst_trial;
  Json records = Json::array();
  for (const auto& rec : r.records) {
    Json jr;
    jr["trial"] = rec.trial;
    jr["seed"] = rec.seed;
    jr["injected"] = rec.injected;
    jr["verdict"] = to_json(rec.verdict);
    if (rec.instance) jr["instance"] = to_json(*rec.instance);
    records.push_back(std::move(jr));
  }
  j["records"] = std::move(records);
  j["wall_seconds"] = r.wall_seconds;
  return j;
}

}  // namespace pdineq
