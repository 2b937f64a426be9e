#pragma once

// Seeded random instance generation and batch evaluation of the catalog.
//
// Each trial draws from its own stream seeded by derive_seed(seed, trial), so
// a trial's instance does not depend on any other trial or on the order in
// which trials run. No automatic shrinking is done: violating instances are
// kept verbatim.

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "pdineq/inequalities.hpp"

namespace pdineq {

enum class GeneratorStyle {
  Spectral,  // Q diag(λ) Q^T, λ log-uniform in [scale, scale * kappa_max]
  Gram,      // G G^T + 1e-3 n I, resampled until the condition cap holds
};

GeneratorStyle style_from_string(std::string_view name);
std::string_view to_string(GeneratorStyle style);

struct GenConfig {
  std::size_t n = 4;
  /// Empty: every trial draws a random composition of n.
  std::vector<std::size_t> partition;
  /// Matrix count for the Choi family.
  std::size_t m = 2;
  GeneratorStyle style = GeneratorStyle::Spectral;
  double kappa_max = 1e6;
  double scale = 1.0;
  std::uint64_t seed = 0;
  /// Exponent for det-power, abs-power, commuted-power, neg-power, thm32.
  double p = 1.0;
  /// fischer-tail: 1-based m, 0 for every m.
  std::size_t tail_index = 0;
  double tolerance = kDefaultTolerance;
  /// Replace trial 0 by the known counterexample for the id, when one
  /// exists and its shape matches n and partition.
  bool inject_known = true;
  bool keep_instances = false;
  /// Violating records beyond this many are counted but not stored.
  std::size_t max_records = 32;
  /// 0: hardware concurrency.
  unsigned threads = 0;
};

/// Throws BadPartition / DimensionMismatch / BadExponent for invalid configs.
void validate(const GenConfig& cfg);

/// splitmix64 finalizer of (seed, trial).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t trial);

using Rng = std::mt19937_64;

PDMatrix gen_pd(const GenConfig& cfg, std::uint64_t trial);
PDMatrix gen_pd(Rng& rng, std::size_t n, GeneratorStyle style, double kappa_max, double scale);

/// Random composition of n (each of the n-1 gaps cut with probability 1/2).
Partition random_partition(Rng& rng, std::size_t n);

/// Instance for trial `trial`, including trial-0 injection.
Instance gen_instance(InequalityId id, const GenConfig& cfg, std::uint64_t trial);

struct TrialRecord {
  std::uint64_t trial = 0;
  std::uint64_t seed = 0;
  InequalityVerdict verdict;
  bool injected = false;
  std::optional<Instance> instance;
};

struct FuzzReport {
  InequalityId id = InequalityId::MainTheorem;
  GenConfig config;
  std::uint64_t trials = 0;
  std::uint64_t holds = 0;
  std::uint64_t violations = 0;
  double worst_margin = 0.0;
  std::uint64_t worst_trial = 0;
  std::vector<TrialRecord> records;
  double wall_seconds = 0.0;
};

/// Runs `trials` independent trials. The report (apart from wall time) is a
/// pure function of (id, cfg, trials).
FuzzReport fuzz(InequalityId id, const GenConfig& cfg, std::uint64_t trials);

}  // namespace pdineq
