// Acceptance suite: one PASS/FAIL line per criterion, with timings.
// Exit status is 0 only if every criterion passes.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "pdineq/fuzz.hpp"
#include "pdineq/scenarios.hpp"

using namespace pdineq;
using namespace pdineq::testing;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void criterion(int number, const char* title, double time_limit, const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::string detail = o.detail;
  if (time_limit > 0 && secs >= time_limit) {
    o.pass = false;
    detail += "; runtime limit " + std::to_string(time_limit) + " s exceeded";
  }
  if (!o.pass) ++failures;
  std::printf("[%s] %2d %-40s %8.3f s  %s\n", o.pass ? "PASS" : "FAIL", number, title, secs, detail.c_str());
  std::fflush(stdout);
}

Outcome from_scenario(const ScenarioResult& r) {
  std::string failed;
  for (const auto& row : r.rows)
    if (!row.pass) failed += " " + row.quantity;
  return {r.pass, r.pass ? std::to_string(r.rows.size()) + " quantities match" : "mismatch:" + failed};
}

char buf[512];

template <typename... Args>
std::string fmt(const char* f, Args... args) {
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

GenConfig grid_config(std::size_t n, std::uint64_t seed) {
  GenConfig cfg;
  cfg.n = n;
  cfg.seed = seed;
  cfg.kappa_max = 1e6;
  cfg.tolerance = 1e-9;
  return cfg;
}

}  // namespace

int main() {
  criterion(1, "general D weak-log example", 0.1, [] { return from_scenario(scenario_general_d_weak_log()); });
  criterion(2, "block D log-majorization gap", 0.1, [] { return from_scenario(scenario_log_majorization_gap()); });
  criterion(3, "matic with general D", 0.1, [] { return from_scenario(scenario_matic_general_d()); });
  criterion(4, "inverse square sum counterexample", 0.5, [] { return from_scenario(scenario_inverse_square_sum()); });
  criterion(5, "negative power grid", 0, [] { return from_scenario(scenario_negative_power()); });
  criterion(6, "padded entrywise order", 0, [] { return from_scenario(scenario_entrywise_padded()); });

  criterion(7, "theorem fuzz suite", 60.0, [] {
    struct Case {
      InequalityId id;
      double p;
      std::size_t m;
    };
    std::vector<Case> cases{{InequalityId::MainTheorem, 1, 2}, {InequalityId::Matic, 1, 2}};
    for (double p : {0.0, 0.5, 1.0, 2.0, 3.0}) cases.push_back({InequalityId::DetPower, p, 2});
    for (std::size_t m : {1, 2, 3}) cases.push_back({InequalityId::Choi, 1, m});
    for (double p : {1.0, 2.0, 3.0}) cases.push_back({InequalityId::Thm32, p, 2});
    cases.push_back({InequalityId::Lemma31, 1, 2});
    cases.push_back({InequalityId::FischerTail, 1, 2});
    cases.push_back({InequalityId::KyFan, 1, 2});

    std::uint64_t runs = 0, trials = 0, violations = 0;
    double worst = INFINITY;
    std::string first_bad;
    for (const auto& c : cases)
      for (std::size_t n = 2; n <= 8; ++n) {
        auto cfg = grid_config(n, 1000 + n);
        cfg.p = c.p;
        cfg.m = c.m;
        const auto r = fuzz(c.id, cfg, 1000);
        ++runs;
        trials += r.trials;
        violations += r.violations;
        worst = std::min(worst, r.worst_margin);
        if (r.violations && first_bad.empty())
          first_bad = fmt(" first: %s n=%zu p=%g m=%zu", std::string(to_string(c.id)).c_str(), n, c.p, c.m);
      }
    return Outcome{violations == 0, fmt("%llu runs, %llu trials, %llu violations, worst margin %.3g",
                                        (unsigned long long)runs, (unsigned long long)trials,
                                        (unsigned long long)violations, worst) +
                                        first_bad};
  });

  criterion(8, "false-family fuzz", 0, [] {
    std::string detail;
    bool pass = true;
    for (auto [id, p] : {std::pair{InequalityId::AbsPower, 2.0}, std::pair{InequalityId::CommutedPower, 2.0},
                         std::pair{InequalityId::InvSquareSum, 1.0}}) {
      auto cfg = grid_config(4, 7);
      cfg.partition = {2, 2};
      cfg.p = p;
      const auto r = fuzz(id, cfg, 10000);
      const bool injected = !r.records.empty() && r.records[0].injected;
      pass = pass && r.violations >= 1;
      detail += fmt("%s: %llu violations%s; ", std::string(to_string(id)).c_str(),
                    (unsigned long long)r.violations, injected ? " (trial 0 injected)" : "");
    }
    return Outcome{pass, detail};
  });

  criterion(9, "open question experiment", 0, [] {
    bool pass = true;
    std::string detail;
    for (std::size_t m : {2, 3}) {
      auto cfg = grid_config(2, 9);
      cfg.partition = {1, 1};
      cfg.m = m;
      const auto r = fuzz(InequalityId::OpenQuestion, cfg, 1000);
      pass = pass && r.violations == 0;
      detail += fmt("n=2 m=%zu: %llu; ", m, (unsigned long long)r.violations);
    }
    std::uint64_t larger = 0;
    for (auto part : {std::vector<std::size_t>{2, 2}, std::vector<std::size_t>{2, 2, 2}})
      for (std::size_t m : {2, 3}) {
        auto cfg = grid_config(part.size() * 2, 9);
        cfg.partition = part;
        cfg.m = m;
        const auto r = fuzz(InequalityId::OpenQuestion, cfg, 1000);
        larger += r.violations;
        detail += fmt("n=%zu m=%zu: %llu; ", cfg.n, m, (unsigned long long)r.violations);
      }
    detail += larger == 0 ? "n=4,6 no violations (informational)"
                          : "n=4,6 violations found (informational)";
    return Outcome{pass, detail};
  });

  criterion(10, "numerical kernel properties", 0, [] {
    std::mt19937_64 rng(10);
    double recon = 0.0;
    for (int t = 0; t < 1000; ++t) {
      const std::size_t n = 1 + t % 12;
      const Matrix a = random_symmetric(rng, n);
      const auto e = jacobi_eigen(SymMatrix(a), true);
      const Matrix& v = *e.vectors;
      recon = std::max(recon, relative_error(v * Matrix::diagonal(e.values.values()) * v.transpose(), a));
    }
    double oracle = 0.0;
    for (int t = 0; t < 1000; ++t) {
      const Matrix a = random_symmetric(rng, 2 + t % 2);
      const auto got = jacobi_eigen(SymMatrix(a)).values;
      const auto want = charpoly_eigenvalues(a);
      for (std::size_t i = 0; i < want.size(); ++i)
        oracle = std::max(oracle, std::abs(got[i] - want[i]) / std::max(1.0, std::abs(want[i])));
    }
    // (AB)^s (AB)^r = (AB)^{s+r} on the exponent grid {-1, 0.5, 1, 2}; the
    // floating point product carries error of order eps * cond(AB), so the
    // asserted run uses kappa 100 and kappa 1e6 is reported alongside.
    auto semigroup_error = [](double kappa) {
      const double ps[] = {-1.0, 0.5, 1.0, 2.0};
      Rng gen(11);
      double worst = 0.0;
      for (int t = 0; t < 200; ++t) {
        const std::size_t n = 1 + t % 8;
        const auto a = gen_pd(gen, n, GeneratorStyle::Spectral, kappa, 1.0);
        const auto b = gen_pd(gen, n, GeneratorStyle::Spectral, kappa, 1.0);
        for (double s : ps)
          for (double r : ps)
            worst = std::max(worst, relative_error(hyperbolic_power(a, b, s) * hyperbolic_power(a, b, r),
                                                   hyperbolic_power(a, b, s + r)));
      }
      return worst;
    };
    const double semigroup = semigroup_error(100.0);
    const double semigroup_wide = semigroup_error(1e6);
    double mean = 0.0;
    std::lognormal_distribution<double> g(0.0, 2.0);
    for (int t = 0; t < 1000; ++t) {
      std::vector<double> v(1 + t % 16);
      for (double& x : v) x = g(rng);
      const double gm = geometric_mean(v);
      mean = std::max(mean, std::abs(power_mean(v, 1e-7) - gm) / gm);
    }
    const bool pass = recon <= 1e-10 && oracle <= 1e-9 && semigroup <= 1e-9 && mean <= 1e-5;
    return Outcome{pass, fmt("reconstruction %.2e, charpoly %.2e, semigroup (kappa 1e2) %.2e, power mean %.2e; "
                             "semigroup at kappa 1e6 (informational) %.2e",
                             recon, oracle, semigroup, mean, semigroup_wide)};
  });

  criterion(11, "abs-square identity and equivalence", 0, [] {
    auto run = [](double kappa, double& worst, std::uint64_t& mismatches, std::uint64_t& skipped, bool strict) {
      Rng rng(12);
      worst = 0.0;
      mismatches = 0;
      skipped = 0;
      for (int t = 0; t < 1000; ++t) {
        const std::size_t n = 2 + t % 7;
        Instance inst;
        inst.partition = random_partition(rng, n);
        inst.c = gen_pd(rng, n, GeneratorStyle::Spectral, kappa, 1.0);
        std::vector<PDMatrix> blocks;
        for (auto s : inst.partition.sizes())
          blocks.push_back(gen_pd(rng, s, GeneratorStyle::Spectral, kappa, std::pow(10.0, -3.0 * (rng() % 4) / 3)));
        inst.d = PDMatrix(direct_sum(blocks));
        inst.p = 2.0;
        try {
          worst = std::max(worst, -evaluate(InequalityId::IdentityAbsSquare, inst).margin);
          if (evaluate(InequalityId::AbsPower, inst).holds != evaluate(InequalityId::InvSquareSum, inst).holds)
            ++mismatches;
        } catch (const Error&) {
          // forming D^-2 + C^-2 directly squares the condition number
          if (strict) throw;
          ++skipped;
        }
      }
    };
    double worst = 0.0, worst_wide = 0.0;
    std::uint64_t mismatches = 0, mismatches_wide = 0, skipped = 0, skipped_wide = 0;
    run(100.0, worst, mismatches, skipped, true);
    run(1e6, worst_wide, mismatches_wide, skipped_wide, false);
    return Outcome{worst <= 1e-9 && mismatches == 0,
                   fmt("kappa 1e2: max rel. deviation %.2e, %llu verdict mismatches; kappa 1e6 (informational): "
                       "%.2e, %llu mismatches, %llu instances not evaluable",
                       worst, (unsigned long long)mismatches, worst_wide, (unsigned long long)mismatches_wide,
                       (unsigned long long)skipped_wide)};
  });

  std::printf("%s: %d criteria failed\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}
