// pdineq: check, fuzz and reproduce determinantal and majorization
// inequalities for positive definite matrices.
//
//   pdineq verify-paper [--json-only]
//   pdineq check <id> --C c.json [--D d.json | --D-block d1.json ...] [--A a.json ...]
//                [--part 2,2] [--p 2] [--idx 0,2] [--tail 1] [--tol 1e-9] [--json-only]
//   pdineq fuzz <id> [--n 4] [--part 2,2] [--m 2] [--trials 1000] [--seed 42]
//                [--style spectral|gram] [--kappa 1e6] [--p 1] [--tail 0] [--tol 1e-9]
//   pdineq gen --n 3 [--part 1,2] [--seed 1] [--trial 0] [--style spectral] [--kappa 1e6] [--out m.json]
//
// Exit codes: 0 holds / pass, 1 usage or input error, 2 inequality violated.

#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pdineq/fuzz.hpp"
#include "pdineq/report.hpp"
#include "pdineq/scenarios.hpp"

namespace {

using namespace pdineq;

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitViolated = 2;

std::vector<std::size_t> parse_list(const std::string& text) {
  std::vector<std::size_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty() || item.find_first_not_of("0123456789") != std::string::npos)
      throw Error(ErrorCode::ParseError, "bad list '" + text + "'");
    out.push_back(std::stoull(item));
  }
  if (out.empty()) throw Error(ErrorCode::ParseError, "empty list");
  return out;
}

struct CheckArgs {
  std::string id;
  std::string c_path;
  std::string d_path;
  std::vector<std::string> d_blocks;
  std::vector<std::string> a_paths;
  std::string part;
  std::string idx;
  double p = 1.0;
  std::size_t tail = 0;
  double tol = kDefaultTolerance;
};

struct FuzzArgs {
  std::string id;
  std::size_t n = 4;
  std::string part;
  std::size_t m = 2;
  std::uint64_t trials = 1000;
  std::uint64_t seed = 0;
  std::string style = "spectral";
  double kappa = 1e6;
  double scale = 1.0;
  double p = 1.0;
  std::size_t tail = 0;
  double tol = kDefaultTolerance;
  bool no_inject = false;
  bool keep_instances = false;
  std::size_t max_records = 32;
  unsigned threads = 0;
};

struct GenArgs {
  long long n = 0;
  std::string part;
  std::uint64_t seed = 0;
  std::uint64_t trial = 0;
  std::string style = "spectral";
  double kappa = 1e6;
  double scale = 1.0;
  std::string out;
};

void emit(const Json& j) { std::cout << j.dump() << '\n'; }

int cmd_verify_paper(bool json_only) {
  const auto results = run_reference_scenarios();
  bool all = true;
  for (const auto& r : results) {
    emit(to_json(r));
    all = all && r.pass;
  }
  if (!json_only) std::cerr << format_table(results) << (all ? "all scenarios pass\n" : "SOME SCENARIOS FAIL\n");
  return all ? kExitOk : kExitInput;
}

int cmd_check(const CheckArgs& a, bool json_only) {
  const InequalityId id = inequality_from_string(a.id);
  Instance inst;
  inst.p = a.p;
  inst.tail_index = a.tail;

  std::size_t n = 0;
  bool all_exact = true;
  if (!a.c_path.empty()) {
    auto f = read_matrix_file(a.c_path);
    n = f.rows.rows();
    inst.c = PDMatrix(f.rows);
    inst.c_exact = f.exact;
    all_exact = all_exact && f.exact.has_value();
  }
  if (!a.d_path.empty() && !a.d_blocks.empty())
    throw Error(ErrorCode::ShapeMismatch, "give either --D or --D-block, not both");
  std::vector<std::size_t> block_sizes;
  if (!a.d_path.empty()) {
    auto f = read_matrix_file(a.d_path);
    inst.d = PDMatrix(f.rows);
    inst.d_exact = f.exact;
    all_exact = all_exact && f.exact.has_value();
  } else if (!a.d_blocks.empty()) {
    BlockDiagonal bd;
    std::vector<RationalMatrix> exact_blocks;
    for (const auto& path : a.d_blocks) {
      auto f = read_matrix_file(path);
      block_sizes.push_back(f.rows.rows());
      bd.blocks.push_back(f.rows);
      if (f.exact) exact_blocks.push_back(*f.exact);
    }
    inst.d = PDMatrix(direct_sum(bd));
    if (exact_blocks.size() == bd.blocks.size()) {
      RationalMatrix d(inst.d->dim());
      std::size_t off = 0;
      for (const auto& b : exact_blocks) {
        for (std::size_t i = 0; i < b.dim(); ++i)
          for (std::size_t j = 0; j < b.dim(); ++j) d(off + i, off + j) = b(i, j);
        off += b.dim();
      }
      inst.d_exact = std::move(d);
    } else {
      all_exact = false;
    }
  }
  for (const auto& path : a.a_paths) {
    auto f = read_matrix_file(path);
    n = f.rows.rows();
    inst.as.emplace_back(f.rows);
    if (f.exact) inst.as_exact.push_back(*f.exact);
  }
  if (inst.as_exact.size() != inst.as.size()) inst.as_exact.clear();
  if (!all_exact) {
    inst.c_exact.reset();
    inst.d_exact.reset();
  }
  if (n == 0) throw Error(ErrorCode::ShapeMismatch, "no input matrices (use --C or --A)");

  if (!a.part.empty())
    inst.partition = validate_partition(parse_list(a.part), n);
  else if (!block_sizes.empty())
    inst.partition = validate_partition(block_sizes, n);
  else
    inst.partition = Partition::whole(n);
  if (!a.idx.empty()) inst.indices = parse_list(a.idx);
  else if (id == InequalityId::Lemma31)
    for (std::size_t i = 0; i < n; ++i) inst.indices.push_back(i);

  const auto v = evaluate(id, inst, a.tol);
  emit(to_json(v));
  if (!json_only) {
    std::fprintf(stderr, "%-20s lhs=%.10g rhs=%.10g margin=%.3e allowance=%.1e  %s\n",
                 std::string(to_string(id)).c_str(), v.lhs, v.rhs, v.margin, v.allowance,
                 v.holds ? "HOLDS" : "VIOLATED");
    if (v.exact)
      std::fprintf(stderr, "  exact: lhs=%s rhs=%s  %s\n", format_rational(v.exact->lhs).c_str(),
                   format_rational(v.exact->rhs).c_str(), v.exact->holds ? "holds" : "violated");
  }
  return v.holds ? kExitOk : kExitViolated;
}

int cmd_fuzz(const FuzzArgs& a, bool json_only) {
  const InequalityId id = inequality_from_string(a.id);
  GenConfig cfg;
  cfg.n = a.n;
  if (!a.part.empty()) cfg.partition = parse_list(a.part);
  cfg.m = a.m;
  cfg.style = style_from_string(a.style);
  cfg.kappa_max = a.kappa;
  cfg.scale = a.scale;
  cfg.seed = a.seed;
  cfg.p = a.p;
  cfg.tail_index = a.tail;
  cfg.tolerance = a.tol;
  cfg.inject_known = !a.no_inject;
  cfg.keep_instances = a.keep_instances;
  cfg.max_records = a.max_records;
  cfg.threads = a.threads;

  const auto r = fuzz(id, cfg, a.trials);
  emit(to_json(r));
  if (!json_only) {
    std::fprintf(stderr, "%-20s trials=%llu holds=%llu violations=%llu worst_margin=%.3e (trial %llu) %.2fs\n",
                 std::string(to_string(id)).c_str(), static_cast<unsigned long long>(r.trials),
                 static_cast<unsigned long long>(r.holds), static_cast<unsigned long long>(r.violations),
                 r.worst_margin, static_cast<unsigned long long>(r.worst_trial), r.wall_seconds);
    if (family_of(id) == Family::Open && r.violations == 0)
      std::fprintf(stderr, "  no violations: consistent with the reported experiments\n");
  }
  return r.violations == 0 ? kExitOk : kExitViolated;
}

int cmd_gen(const GenArgs& a) {
  if (a.n < 1) throw Error(ErrorCode::DimensionMismatch, "--n must be >= 1");
  const auto n = static_cast<std::size_t>(a.n);
  Rng rng(derive_seed(a.seed, a.trial));
  const auto style = style_from_string(a.style);
  Matrix m;
  if (a.part.empty()) {
    m = gen_pd(rng, n, style, a.kappa, a.scale).matrix();
  } else {
    const auto part = validate_partition(parse_list(a.part), n);
    BlockDiagonal bd;
    for (std::size_t s : part.sizes()) bd.blocks.push_back(gen_pd(rng, s, style, a.kappa, a.scale).matrix());
    m = direct_sum(bd);
  }
  const MatrixFile file{m, std::nullopt};
  if (a.out.empty())
    std::cout << to_json(file).dump(2) << '\n';
  else
    write_matrix_file(a.out, file);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Determinantal and majorization inequalities for positive definite matrices"};
  app.require_subcommand(1);
  bool json_only = false;
  app.add_flag("--json-only", json_only, "Suppress the human-readable output on stderr");

  auto* verify = app.add_subcommand("verify-paper", "Run the built-in reference scenarios");
  verify->add_flag("--json-only", json_only);

  CheckArgs check_args;
  auto* check = app.add_subcommand("check", "Evaluate one inequality on matrices from files");
  check->add_option("id", check_args.id, "Inequality id")->required();
  check->add_option("--C", check_args.c_path, "Matrix file for C (or A for lemma31)");
  check->add_option("--D", check_args.d_path, "Matrix file for the full D");
  check->add_option("--D-block", check_args.d_blocks, "Matrix files for D1, ..., Dk");
  check->add_option("--A", check_args.a_paths, "Matrix files for A1, ..., Am");
  check->add_option("--part", check_args.part, "Partition n1,n2,...,nk");
  check->add_option("--p", check_args.p, "Exponent");
  check->add_option("--idx", check_args.idx, "0-based principal indices (lemma31)");
  check->add_option("--tail", check_args.tail, "Tail index m, 1-based; 0 checks every m (fischer-tail)");
  check->add_option("--tol", check_args.tol, "Relative tolerance");
  check->add_flag("--json-only", json_only);

  FuzzArgs fuzz_args;
  auto* fz = app.add_subcommand("fuzz", "Evaluate one inequality on seeded random instances");
  fz->add_option("id", fuzz_args.id, "Inequality id")->required();
  fz->add_option("--n", fuzz_args.n, "Dimension");
  fz->add_option("--part", fuzz_args.part, "Partition n1,...,nk (default: random per trial)");
  fz->add_option("--m", fuzz_args.m, "Matrix count (choi, thm32, open-q)");
  fz->add_option("--trials", fuzz_args.trials, "Number of trials");
  fz->add_option("--seed", fuzz_args.seed, "Master seed");
  fz->add_option("--style", fuzz_args.style, "Generator: spectral or gram");
  fz->add_option("--kappa", fuzz_args.kappa, "Condition number cap");
  fz->add_option("--scale", fuzz_args.scale, "Eigenvalue scale");
  fz->add_option("--p", fuzz_args.p, "Exponent");
  fz->add_option("--tail", fuzz_args.tail, "Tail index for fischer-tail (0: all)");
  fz->add_option("--tol", fuzz_args.tol, "Relative tolerance");
  fz->add_flag("--no-inject", fuzz_args.no_inject, "Do not replace trial 0 by the known counterexample");
  fz->add_flag("--keep-instances", fuzz_args.keep_instances, "Store every trial's instance");
  fz->add_option("--max-records", fuzz_args.max_records, "Violating records to store");
  fz->add_option("--threads", fuzz_args.threads, "Worker threads (0: all cores)");
  fz->add_flag("--json-only", json_only);

  GenArgs gen_args;
  auto* gen = app.add_subcommand("gen", "Write a random positive definite matrix file");
  gen->add_option("--n", gen_args.n, "Dimension")->required();
  gen->add_option("--part", gen_args.part, "Block-diagonal with this partition");
  gen->add_option("--seed", gen_args.seed, "Seed");
  gen->add_option("--trial", gen_args.trial, "Trial index within the seed");
  gen->add_option("--style", gen_args.style, "Generator: spectral or gram");
  gen->add_option("--kappa", gen_args.kappa, "Condition number cap");
  gen->add_option("--scale", gen_args.scale, "Eigenvalue scale");
  gen->add_option("--out", gen_args.out, "Output path (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  try {
    if (*verify) return cmd_verify_paper(json_only);
    if (*check) return cmd_check(check_args, json_only);
    if (*fz) return cmd_fuzz(fuzz_args, json_only);
    if (*gen) return cmd_gen(gen_args);
  } catch (const pdineq::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  }
  return kExitInput;
}
