#include "pdineq/fuzz.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <numeric>
#include <thread>

#include "pdineq/reference_data.hpp"

namespace pdineq {

GeneratorStyle style_from_string(std::string_view name) {
  if (name == "spectral" || name == "SPECTRAL") return GeneratorStyle::Spectral;
  if (name == "gram" || name == "GRAM") return GeneratorStyle::Gram;
  throw Error(ErrorCode::ParseError, "unknown generator style '" + std::string(name) + "'");
}

std::string_view to_string(GeneratorStyle style) {
  return style == GeneratorStyle::Spectral ? "spectral" : "gram";
}

void validate(const GenConfig& cfg) {
  if (cfg.n < 1) throw Error(ErrorCode::DimensionMismatch, "n must be >= 1");
  if (!cfg.partition.empty()) validate_partition(cfg.partition, cfg.n);
  if (!(cfg.kappa_max >= 1.0)) throw Error(ErrorCode::BadExponent, "kappa_max must be >= 1");
  if (!(cfg.scale > 0.0)) throw Error(ErrorCode::BadExponent, "scale must be > 0");
  if (cfg.m < 1) throw Error(ErrorCode::ShapeMismatch, "m must be >= 1");
  if (cfg.tail_index > cfg.n) throw Error(ErrorCode::IndexOutOfRange, "tail index exceeds n");
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t trial) {
  auto mix = [](std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  };
  return mix(seed ^ mix(trial));
}

namespace {

constexpr int kMaxResamples = 100;

Matrix gaussian(Rng& rng, std::size_t n) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix g(n, n);
  for (double& v : g.data()) v = normal(rng);
  return g;
}

// Orthonormal columns from a Gaussian matrix, Gram-Schmidt applied twice.
Matrix random_orthogonal(Rng& rng, std::size_t n) {
  Matrix q = gaussian(rng, n);
  for (std::size_t j = 0; j < n; ++j) {
    for (int pass = 0; pass < 2; ++pass)
      for (std::size_t k = 0; k < j; ++k) {
        double dot = 0.0;
        for (std::size_t i = 0; i < n; ++i) dot += q(i, k) * q(i, j);
        for (std::size_t i = 0; i < n; ++i) q(i, j) -= dot * q(i, k);
      }
    double norm = 0.0;
    for (std::size_t i = 0; i < n; ++i) norm += q(i, j) * q(i, j);
    norm = std::sqrt(norm);
    for (std::size_t i = 0; i < n; ++i) q(i, j) /= norm;
  }
  return q;
}

Matrix symmetrized(Matrix m) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = i + 1; j < m.cols(); ++j) {
      const double avg = 0.5 * (m(i, j) + m(j, i));
      m(i, j) = avg;
      m(j, i) = avg;
    }
  return m;
}

bool injection_matches(const GenConfig& cfg, const Instance& inst) {
  return cfg.n == inst.partition.dim() &&
         (cfg.partition.empty() || cfg.partition == inst.partition.sizes());
}

std::optional<Instance> known_instance(InequalityId id, const GenConfig& cfg) {
  switch (id) {
    case InequalityId::AbsPower:
    case InequalityId::CommutedPower:
    case InequalityId::InvSquareSum:
    case InequalityId::SvWeakLog:
      return reference::inv_square_instance(cfg.p);
    case InequalityId::WeakLogGeneralD:
      return reference::general_d_instance();
    case InequalityId::MaticGeneralD:
      return reference::matic_general_instance();
    case InequalityId::NegPower:
      return reference::neg_power_instance(cfg.p);
    default:
      return std::nullopt;
  }
}

// The false families are most easily broken when the D blocks live on very
// different scales.
bool biased_blocks(InequalityId id) {
  return id == InequalityId::AbsPower || id == InequalityId::CommutedPower ||
         id == InequalityId::InvSquareSum || id == InequalityId::SvWeakLog;
}

}  // namespace

PDMatrix gen_pd(Rng& rng, std::size_t n, GeneratorStyle style, double kappa_max, double scale) {
  if (n < 1) throw Error(ErrorCode::DimensionMismatch, "n must be >= 1");
  if (style == GeneratorStyle::Spectral) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<double> lambda(n);
    for (double& l : lambda) l = scale * std::pow(kappa_max, unit(rng));
    const Matrix q = random_orthogonal(rng, n);
    Matrix a(n, n);
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a(i, j) += q(i, k) * lambda[k] * q(j, k);
    return PDMatrix(symmetrized(std::move(a)));
  }

  const double eps = 1e-3 * static_cast<double>(n);
  for (int attempt = 0; attempt < kMaxResamples; ++attempt) {
    const Matrix g = gaussian(rng, n);
    Matrix a = symmetrized(g * g.transpose());
    for (std::size_t i = 0; i < n; ++i) a(i, i) += eps;
    a = scale * a;
    try {
      PDMatrix pd(std::move(a));
      const auto ev = jacobi_eigen(pd).values;
      if (ev.max() <= kappa_max * ev.min()) return pd;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NotPositiveDefinite) throw;
    }
  }
  throw Error(ErrorCode::ResampleExhausted,
              "no Gram sample within condition cap after " + std::to_string(kMaxResamples) + " tries");
}

PDMatrix gen_pd(const GenConfig& cfg, std::uint64_t trial) {
  Rng rng(derive_seed(cfg.seed, trial));
  return gen_pd(rng, cfg.n, cfg.style, cfg.kappa_max, cfg.scale);
}

Partition random_partition(Rng& rng, std::size_t n) {
  std::bernoulli_distribution cut(0.5);
  std::vector<std::size_t> sizes{1};
  for (std::size_t i = 1; i < n; ++i) {
    if (cut(rng))
      sizes.push_back(1);
    else
      ++sizes.back();
  }
  return validate_partition(sizes, n);
}

Instance gen_instance(InequalityId id, const GenConfig& cfg, std::uint64_t trial) {
  if (trial == 0 && cfg.inject_known)
    if (auto known = known_instance(id, cfg); known && injection_matches(cfg, *known)) return *known;

  Rng rng(derive_seed(cfg.seed, trial));
  Instance inst;
  inst.partition = cfg.partition.empty() ? random_partition(rng, cfg.n) : validate_partition(cfg.partition, cfg.n);
  inst.p = cfg.p;
  inst.tail_index = cfg.tail_index;
  auto pd = [&](std::size_t n) { return gen_pd(rng, n, cfg.style, cfg.kappa_max, cfg.scale); };

  switch (id) {
    case InequalityId::Choi:
    case InequalityId::Thm32:
    case InequalityId::OpenQuestion:
      for (std::size_t i = 0; i < cfg.m; ++i) inst.as.push_back(pd(cfg.n));
      break;
    case InequalityId::Lemma31: {
      inst.c = pd(cfg.n);
      std::bernoulli_distribution keep(0.5);
      for (std::size_t i = 0; i < cfg.n; ++i)
        if (keep(rng)) inst.indices.push_back(i);
      if (inst.indices.empty()) {
        std::uniform_int_distribution<std::size_t> pick(0, cfg.n - 1);
        inst.indices.push_back(pick(rng));
      }
      break;
    }
    case InequalityId::FischerTail:
    case InequalityId::KyFan:
      inst.c = pd(cfg.n);
      break;
    case InequalityId::MaticGeneralD:
    case InequalityId::WeakLogGeneralD:
      inst.c = pd(cfg.n);
      inst.d = pd(cfg.n);
      break;
    default: {
      inst.c = pd(cfg.n);
      std::vector<PDMatrix> blocks;
      std::uniform_real_distribution<double> decades(0.0, 3.0);
      for (std::size_t s : inst.partition.sizes()) {
        PDMatrix b = pd(s);
        if (biased_blocks(id)) b = PDMatrix(std::pow(10.0, -decades(rng)) * b.matrix());
        blocks.push_back(std::move(b));
      }
      inst.d = PDMatrix(direct_sum(blocks));
      break;
    }
  }
  return inst;
}

FuzzReport fuzz(InequalityId id, const GenConfig& cfg, std::uint64_t trials) {
  validate(cfg);
  if (trials < 1) throw Error(ErrorCode::ShapeMismatch, "trials must be >= 1");
  const auto start = std::chrono::steady_clock::now();

  struct Outcome {
    InequalityVerdict verdict;
    bool injected = false;
  };
  std::vector<Outcome> outcomes(trials);
  std::vector<std::exception_ptr> errors(trials);

  unsigned workers = cfg.threads ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, trials));
  std::atomic<std::uint64_t> next{0};
  auto work = [&] {
    for (std::uint64_t t = next++; t < trials; t = next++) {
      try {
        const Instance inst = gen_instance(id, cfg, t);
        outcomes[t].verdict = evaluate(id, inst, cfg.tolerance);
        outcomes[t].injected = t == 0 && cfg.inject_known && known_instance(id, cfg) &&
                               injection_matches(cfg, *known_instance(id, cfg));
      } catch (...) {
        errors[t] = std::current_exception();
      }
    }
  };
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work);
    work();
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);

  FuzzReport report;
  report.id = id;
  report.config = cfg;
  report.trials = trials;
  report.worst_margin = outcomes.front().verdict.margin;
  for (std::uint64_t t = 0; t < trials; ++t) {
    const auto& o = outcomes[t];
    if (o.verdict.margin < report.worst_margin) {
      report.worst_margin = o.verdict.margin;
      report.worst_trial = t;
    }
    const bool keep_violation = !o.verdict.holds && report.violations < cfg.max_records;
    if (o.verdict.holds)
      ++report.holds;
    else
      ++report.violations;
    if (keep_violation || cfg.keep_instances) {
      // Regenerated here so that only retained trials pay for the copy.
      report.records.push_back({t, derive_seed(cfg.seed, t), o.verdict, o.injected, gen_instance(id, cfg, t)});
    }
  }
  report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace pdineq
