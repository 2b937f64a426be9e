#pragma once

// One evaluator per inequality family. Every evaluator returns both sides
// and a margin; a violated inequality is reported in the verdict, never
// thrown.
//
// Conventions shared by all verdicts:
//   * the statement under test reads lhs <= rhs (or x ≺ y for the vector
//     orders);
//   * margin = rhs - lhs, taken in the log domain for determinant products;
//   * holds <=> margin >= -allowance, where allowance is the tolerance scaled
//     by max(1, |log lhs|, |log rhs|) (or the per-prefix allowance of the
//     embedded OrderReport at its weakest prefix).

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pdineq/blocks.hpp"
#include "pdineq/majorization.hpp"
#include "pdineq/matrix.hpp"
#include "pdineq/rational.hpp"

namespace pdineq {

enum class InequalityId {
  MainTheorem,        // λ(C1⁻¹D1 ⊕ … ⊕ Ck⁻¹Dk) ≺_{w log} λ(C⁻¹D)
  Matic,              // ∏ det(I + Ci⁻¹Di) <= det(I + C⁻¹D)
  DetPower,           // ∏ det(I + (Ci⁻¹Di)^p) <= det(I + (C⁻¹D)^p), p >= 0
  AbsPower,           // same with |Ci⁻¹Di|^p (false)
  CommutedPower,      // same with Ci^{-p} Di^p (false)
  InvSquareSum,       // ∏ det(Di⁻² + Ci⁻²) <= det(D⁻² + C⁻²) (false)
  NegPower,           // DetPower for p < 0 (false)
  MaticGeneralD,      // Matic with D not block diagonal (false)
  WeakLogGeneralD,    // MainTheorem with D not block diagonal (false)
  SvWeakLog,          // MainTheorem with singular values (false)
  Choi,               // ∏_j det(Σ_i (A_i^{(j)})⁻¹) <= det(Σ_i A_i⁻¹)
  Thm32,              // λ(⊕_j Σ_i (A_i^{(j)})⁻¹)^p ≺_w λ(Σ_i A_i⁻¹)^p, p >= 1
  OpenQuestion,       // the p = 1 weak log version of Thm32 (open)
  Lemma31,            // [A]⁻¹ <= [A⁻¹]
  FischerTail,        // ∏_{i>=m} λ_i(C) <= ∏_{i>=m} λ_i(C1 ⊕ … ⊕ Ck)
  KyFan,              // λ(Diag C) ≺ λ(C)
  IdentityAbsSquare,  // det(I + |C⁻¹D|²) = det(D⁻² + C⁻²) det(D)²
};

/// Stable string ids used by the CLI, the fuzzer, and the JSON reports.
std::string_view to_string(InequalityId id);
InequalityId inequality_from_string(std::string_view name);
std::span<const InequalityId> all_inequalities();

enum class Family {
  Theorem,        // proved; any violation is a defect
  Counterexample, // known false in general
  Open,           // no ground truth
};
Family family_of(InequalityId id);

/// Instance descriptor carried in every verdict.
struct Fingerprint {
  std::size_t n = 0;
  std::vector<std::size_t> partition;
  std::uint64_t hash = 0;  // FNV-1a over all input entries
};

struct ExactCertificate {
  Rational lhs;
  Rational rhs;
  bool holds = false;  // lhs <= rhs, no tolerance
};

struct InequalityVerdict {
  InequalityId id = InequalityId::MainTheorem;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;
  bool holds = false;
  double tolerance = kDefaultTolerance;
  double allowance = kDefaultTolerance;
  std::optional<OrderReport> order;
  Fingerprint fingerprint;
  std::vector<std::pair<std::string, double>> quantities;
  std::optional<ExactCertificate> exact;

  std::optional<double> quantity(std::string_view name) const;
};

// ------------------------------------------------------ theorem family

InequalityVerdict check_main_theorem(const PDMatrix& c, std::span<const PDMatrix> d_blocks,
                                     const Partition& part, double tol = kDefaultTolerance);
InequalityVerdict check_matic(const PDMatrix& c, std::span<const PDMatrix> d_blocks,
                              const Partition& part, double tol = kDefaultTolerance);
/// Throws NegativePower for p < 0.
InequalityVerdict check_det_power(const PDMatrix& c, std::span<const PDMatrix> d_blocks,
                                  const Partition& part, double p, double tol = kDefaultTolerance);
InequalityVerdict check_choi(std::span<const PDMatrix> as, const Partition& part,
                             double tol = kDefaultTolerance);
/// Throws BadExponent for p < 1.
InequalityVerdict check_thm32(std::span<const PDMatrix> as, const Partition& part, double p,
                              double tol = kDefaultTolerance);
InequalityVerdict check_open_q(std::span<const PDMatrix> as, const Partition& part,
                               double tol = kDefaultTolerance);
/// idx: strictly increasing 0-based indices. lhs is 0 and rhs is
/// λ_min([A⁻¹] - [A]⁻¹).
InequalityVerdict check_lemma31(const PDMatrix& a, std::span<const std::size_t> idx,
                                double tol = kDefaultTolerance);
/// m is 1-based, 1 <= m <= n; m = 1 is the Fischer inequality.
InequalityVerdict check_fischer_tail(const PDMatrix& c, const Partition& part, std::size_t m,
                                     double tol = kDefaultTolerance);
InequalityVerdict check_kyfan(const PDMatrix& c, const Partition& part,
                              double tol = kDefaultTolerance);

/// Equality check of det(I + |C⁻¹D|²) against det(D⁻² + C⁻²) det(D)², both
/// for the whole matrix and for the product over blocks; margin is minus the
/// largest relative deviation.
InequalityVerdict identity_abs_square(const PDMatrix& c, std::span<const PDMatrix> d_blocks,
                                      const Partition& part, double tol = kDefaultTolerance);

// ------------------------------------------------------ general evaluators

/// C and D positive definite; D need not be block diagonal. The left-hand
/// sides use the diagonal blocks of D.
struct GeneralInstance {
  PDMatrix c;
  PDMatrix d;
  Partition partition;
  double p = 1.0;
};

/// For AbsPower, CommutedPower, InvSquareSum, NegPower, MaticGeneralD,
/// WeakLogGeneralD and SvWeakLog. Other ids throw UnknownInequality.
InequalityVerdict evaluate_general(InequalityId id, const GeneralInstance& inst,
                                   double tol = kDefaultTolerance);

// ------------------------------------------------------ exact certificates

/// ∏ det(Ci + Di)/det(Ci) against det(C + D)/det(C); D may be full.
ExactCertificate certify_matic_exact(const RationalMatrix& c, const RationalMatrix& d,
                                     const Partition& part);
/// ∏ det(Di⁻² + Ci⁻²) against det(D⁻² + C⁻²).
ExactCertificate certify_inv_square_sum_exact(const RationalMatrix& c, const RationalMatrix& d,
                                              const Partition& part);
ExactCertificate certify_choi_exact(std::span<const RationalMatrix> as, const Partition& part);

// ------------------------------------------------------ dispatch

/// Everything any evaluator may need. `d` is the full D; theorem ids require
/// it to be block diagonal with respect to `partition`.
struct Instance {
  Partition partition;
  std::optional<PDMatrix> c;
  std::optional<PDMatrix> d;
  std::vector<PDMatrix> as;
  std::vector<std::size_t> indices;
  double p = 1.0;
  /// FischerTail: 1-based m, or 0 for every m (the weakest one is reported).
  std::size_t tail_index = 0;
  std::optional<RationalMatrix> c_exact;
  std::optional<RationalMatrix> d_exact;
  std::vector<RationalMatrix> as_exact;
};

/// Runs the evaluator for `id`; attaches an exact certificate for Matic,
/// MaticGeneralD, InvSquareSum and Choi when exact inputs are present.
InequalityVerdict evaluate(InequalityId id, const Instance& inst, double tol = kDefaultTolerance);

}  // namespace pdineq
