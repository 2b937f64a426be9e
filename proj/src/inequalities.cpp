#include "pdineq/inequalities.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <limits>

namespace pdineq {

namespace {

constexpr std::array<std::pair<InequalityId, std::string_view>, 17> kIds{{
    {InequalityId::MainTheorem, "main-thm"},
    {InequalityId::Matic, "matic"},
    {InequalityId::DetPower, "det-power"},
    {InequalityId::AbsPower, "abs-power"},
    {InequalityId::CommutedPower, "commuted-power"},
    {InequalityId::InvSquareSum, "inv-square-sum"},
    {InequalityId::NegPower, "neg-power"},
    {InequalityId::MaticGeneralD, "matic-general-d"},
    {InequalityId::WeakLogGeneralD, "weak-log-general-d"},
    {InequalityId::SvWeakLog, "sv-weak-log"},
    {InequalityId::Choi, "choi"},
    {InequalityId::Thm32, "thm32"},
    {InequalityId::OpenQuestion, "open-q"},
    {InequalityId::Lemma31, "lemma31"},
    {InequalityId::FischerTail, "fischer-tail"},
    {InequalityId::KyFan, "ky-fan"},
    {InequalityId::IdentityAbsSquare, "identity-abs-square"},
}};

class Hasher {
 public:
  void add(std::uint64_t v) {
    for (int i = 0; i < 8; ++i) {
      h_ ^= (v >> (8 * i)) & 0xffu;
      h_ *= 0x100000001b3ull;
    }
  }
  void add(const Matrix& m) {
    add(m.rows());
    for (double v : m.data()) add(std::bit_cast<std::uint64_t>(v));
  }
  std::uint64_t value() const { return h_; }

 private:
  std::uint64_t h_ = 0xcbf29ce484222325ull;
};

Fingerprint fingerprint_of(const Partition& part, std::initializer_list<const Matrix*> mats,
                           std::span<const PDMatrix> extra = {}) {
  Hasher h;
  for (const Matrix* m : mats) h.add(*m);
  for (const auto& m : extra) h.add(m.matrix());
  return {part.dim(), part.sizes(), h.value()};
}

void require_consistent(const PDMatrix& c, std::span<const PDMatrix> d_blocks, const Partition& part) {
  if (c.dim() != part.dim())
    throw Error(ErrorCode::DimensionMismatch, "C has dimension " + std::to_string(c.dim()) +
                                                  ", partition covers " + std::to_string(part.dim()));
  if (d_blocks.size() != part.blocks())
    throw Error(ErrorCode::DimensionMismatch, "expected " + std::to_string(part.blocks()) + " D blocks");
  for (std::size_t i = 0; i < d_blocks.size(); ++i)
    if (d_blocks[i].dim() != part.sizes()[i])
      throw Error(ErrorCode::DimensionMismatch, "D block " + std::to_string(i) + " has wrong size");
}

void require_common_dim(std::span<const PDMatrix> as, const Partition& part) {
  if (as.empty()) throw Error(ErrorCode::ShapeMismatch, "need at least one matrix");
  for (const auto& a : as)
    if (a.dim() != part.dim()) throw Error(ErrorCode::DimensionMismatch, "matrices must share the partition dimension");
}

double log_allowance(double tol, double log_lhs, double log_rhs) {
  return tol * std::max({1.0, std::abs(log_lhs), std::abs(log_rhs)});
}

// Scalar verdict from log-domain sides.
InequalityVerdict scalar_verdict(InequalityId id, double log_lhs, double log_rhs, double tol,
                                 Fingerprint fp) {
  InequalityVerdict v;
  v.id = id;
  v.lhs = std::exp(log_lhs);
  v.rhs = std::exp(log_rhs);
  v.margin = log_rhs - log_lhs;
  v.tolerance = tol;
  v.allowance = log_allowance(tol, log_lhs, log_rhs);
  v.holds = v.margin >= -v.allowance;
  v.fingerprint = std::move(fp);
  return v;
}

// Order-type verdict: the reported margin/allowance come from the prefix with
// the least slack, so holds <=> margin >= -allowance matches the report.
InequalityVerdict order_verdict(InequalityId id, OrderReport report, bool log_sides,
                                std::span<const double> x, std::span<const double> y, Fingerprint fp) {
  InequalityVerdict v;
  v.id = id;
  v.tolerance = report.tolerance;
  double lx = 0.0, ly = 0.0;
  for (double t : x) lx += log_sides ? std::log(t) : t;
  for (double t : y) ly += log_sides ? std::log(t) : t;
  v.lhs = lx;
  v.rhs = ly;

  std::size_t weakest = 0;
  double slack = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < report.n; ++k) {
    const double s = report.margins[k] + report.allowances[k];
    if (s < slack) {
      slack = s;
      weakest = k;
    }
  }
  v.margin = report.margins[weakest];
  v.allowance = report.allowances[weakest];
  if (report.failure == OrderFailure::Total) {
    v.margin = -std::abs(report.total_residual);
    v.allowance = report.allowances.back();
  }
  v.holds = report.holds;
  v.order = std::move(report);
  v.fingerprint = std::move(fp);
  return v;
}

std::vector<double> concat_sorted(const std::vector<Spectrum>& parts) {
  std::vector<double> out;
  for (const auto& s : parts) out.insert(out.end(), s.values().begin(), s.values().end());
  return Spectrum(std::move(out)).vector();
}

Matrix product_inv_times(const PDMatrix& c, const Matrix& d) { return pd_inverse(c).matrix() * d; }

PDMatrix inverse_square_sum(const PDMatrix& c, const PDMatrix& d) {
  const Matrix ci = pd_inverse(c).matrix();
  const Matrix di = pd_inverse(d).matrix();
  return PDMatrix(di * di + ci * ci);
}

// log det(D⁻² + C⁻²) through D⁻¹ (I + Z Zᵀ) D⁻¹ with Z = D C⁻¹; the middle
// factor has eigenvalues >= 1 so it stays positive definite when the direct
// sum has squared condition number.
double log_det_inverse_square_sum(const PDMatrix& c, const PDMatrix& d) {
  const Matrix z = d.matrix() * pd_inverse(c).matrix();
  const PDMatrix middle(Matrix::identity(c.dim()) + z * z.transpose());
  return log_det_pd(middle) - 2.0 * log_det_pd(d);
}

double sum_log1p_pow(std::span<const double> values, double p) {
  double s = 0.0;
  for (double v : values) s += std::log1p(std::pow(v, p));
  return s;
}

double prod_one_plus_pow(std::span<const double> values, double p) {
  double s = 1.0;
  for (double v : values) s *= 1.0 + std::pow(v, p);
  return s;
}

// Shared by DetPower (p >= 0) and NegPower.
InequalityVerdict det_power_impl(InequalityId id, const PDMatrix& c, std::span<const PDMatrix> d_blocks,
                                 const PDMatrix& d_full, const Partition& part, double p, double tol) {
  const auto c_blocks = diag_blocks_pd(c, part);
  std::vector<double> x;
  for (std::size_t i = 0; i < c_blocks.size(); ++i) {
    const auto s = eig_pd_product(pd_inverse(c_blocks[i]), d_blocks[i]);
    x.insert(x.end(), s.values().begin(), s.values().end());
  }
  const auto y = eig_pd_product(pd_inverse(c), d_full);

  auto v = scalar_verdict(id, sum_log1p_pow(x, p), sum_log1p_pow(y.values(), p), tol,
                          fingerprint_of(part, {&c.matrix(), &d_full.matrix()}));
  v.lhs = prod_one_plus_pow(x, p);
  v.rhs = prod_one_plus_pow(y.values(), p);
  v.quantities.emplace_back("p", p);
  return v;
}

InequalityVerdict weak_log_impl(InequalityId id, const PDMatrix& c, std::span<const PDMatrix> d_blocks,
                                const PDMatrix& d_full, const Partition& part, double tol) {
  const auto c_blocks = diag_blocks_pd(c, part);
  std::vector<Spectrum> parts;
  for (std::size_t i = 0; i < c_blocks.size(); ++i)
    parts.push_back(eig_pd_product(pd_inverse(c_blocks[i]), d_blocks[i]));
  const auto x = concat_sorted(parts);
  const auto y = eig_pd_product(pd_inverse(c), d_full);
  auto report = check_order(OrderKind::WeakLogMajorize, x, y.values(), {tol});
  auto v = order_verdict(id, std::move(report), true, x, y.values(),
                         fingerprint_of(part, {&c.matrix(), &d_full.matrix()}));
  v.quantities.emplace_back("product_lhs", std::exp(v.lhs));
  v.quantities.emplace_back("product_rhs", std::exp(v.rhs));
  return v;
}

// Σ_i (A_i^{(j)})⁻¹ for every block j, and Σ_i A_i⁻¹.
std::pair<std::vector<PDMatrix>, PDMatrix> choi_sums(std::span<const PDMatrix> as, const Partition& part) {
  require_common_dim(as, part);
  std::vector<Matrix> block_sums(part.blocks());
  Matrix total(part.dim(), part.dim());
  for (const auto& a : as) {
    total = total + pd_inverse(a).matrix();
    const auto blocks = diag_blocks_pd(a, part);
    for (std::size_t j = 0; j < blocks.size(); ++j) {
      const Matrix inv = pd_inverse(blocks[j]).matrix();
      block_sums[j] = block_sums[j].rows() ? block_sums[j] + inv : inv;
    }
  }
  std::vector<PDMatrix> sums;
  for (auto& b : block_sums) sums.emplace_back(std::move(b));
  return {std::move(sums), PDMatrix(std::move(total))};
}

std::vector<double> union_spectrum(std::span<const PDMatrix> blocks) {
  std::vector<Spectrum> parts;
  for (const auto& b : blocks) parts.push_back(jacobi_eigen(b).values);
  return concat_sorted(parts);
}

double rel_dev(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

}  // namespace

std::string_view to_string(InequalityId id) {
  for (const auto& [k, name] : kIds)
    if (k == id) return name;
  return "?";
}

InequalityId inequality_from_string(std::string_view name) {
  for (const auto& [k, n] : kIds)
    if (n == name) return k;
  throw Error(ErrorCode::UnknownInequality, "'" + std::string(name) + "'");
}

std::span<const InequalityId> all_inequalities() {
  static const auto ids = [] {
    std::array<InequalityId, kIds.size()> out{};
    for (std::size_t i = 0; i < kIds.size(); ++i) out[i] = kIds[i].first;
    return out;
  }();
  return ids;
}

Family family_of(InequalityId id) {
  switch (id) {
    case InequalityId::AbsPower:
    case InequalityId::CommutedPower:
    case InequalityId::InvSquareSum:
    case InequalityId::NegPower:
    case InequalityId::MaticGeneralD:
    case InequalityId::WeakLogGeneralD:
    case InequalityId::SvWeakLog:
      return Family::Counterexample;
    case InequalityId::OpenQuestion:
      return Family::Open;
    default:
      return Family::Theorem;
  }
}

std::optional<double> InequalityVerdict::quantity(std::string_view name) const {
  for (const auto& [k, v] : quantities)
    if (k == name) return v;
  return std::nullopt;
}

// ------------------------------------------------------ theorem family

InequalityVerdict check_main_theorem(const PDMatrix& c, std::span<const PDMatrix> d_blocks,
                                     const Partition& part, double tol) {
  require_consistent(c, d_blocks, part);
  const PDMatrix d(direct_sum(d_blocks));
  return weak_log_impl(InequalityId::MainTheorem, c, d_blocks, d, part, tol);
}

InequalityVerdict check_matic(const PDMatrix& c, std::span<const PDMatrix> d_blocks,
                              const Partition& part, double tol) {
  require_consistent(c, d_blocks, part);
  const PDMatrix d(direct_sum(d_blocks));
  const auto c_blocks = diag_blocks_pd(c, part);
  // det(I + X⁻¹Y) = det(X + Y) / det(X)
  double log_lhs = 0.0;
  for (std::size_t i = 0; i < c_blocks.size(); ++i)
    log_lhs += log_det_pd(PDMatrix(c_blocks[i].matrix() + d_blocks[i].matrix())) - log_det_pd(c_blocks[i]);
  const double log_rhs = log_det_pd(PDMatrix(c.matrix() + d.matrix())) - log_det_pd(c);
  return scalar_verdict(InequalityId::Matic, log_lhs, log_rhs, tol,
                        fingerprint_of(part, {&c.matrix(), &d.matrix()}));
}

InequalityVerdict check_det_power(const PDMatrix& c, std::span<const PDMatrix> d_blocks,
                                  const Partition& part, double p, double tol) {
  if (p < 0.0) throw Error(ErrorCode::NegativePower, "p = " + std::to_string(p) + "; use neg-power");
  require_consistent(c, d_blocks, part);
  const PDMatrix d(direct_sum(d_blocks));
  return det_power_impl(InequalityId::DetPower, c, d_blocks, d, part, p, tol);
}

InequalityVerdict check_choi(std::span<const PDMatrix> as, const Partition& part, double tol) {
  const auto [block_sums, total] = choi_sums(as, part);
  double log_lhs = 0.0;
  for (const auto& b : block_sums) log_lhs += log_det_pd(b);
  auto v = scalar_verdict(InequalityId::Choi, log_lhs, log_det_pd(total), tol,
                          fingerprint_of(part, {}, as));
  v.quantities.emplace_back("m", static_cast<double>(as.size()));
  return v;
}

InequalityVerdict check_thm32(std::span<const PDMatrix> as, const Partition& part, double p, double tol) {
  if (!(p >= 1.0)) throw Error(ErrorCode::BadExponent, "p = " + std::to_string(p) + " < 1");
  const auto [block_sums, total] = choi_sums(as, part);
  auto x = union_spectrum(block_sums);
  auto y = jacobi_eigen(total).values.vector();
  for (double& t : x) t = std::pow(t, p);
  for (double& t : y) t = std::pow(t, p);
  auto report = check_order(OrderKind::WeakMajorize, x, y, {tol});
  auto v = order_verdict(InequalityId::Thm32, std::move(report), false, x, y, fingerprint_of(part, {}, as));
  v.quantities.emplace_back("p", p);
  v.quantities.emplace_back("m", static_cast<double>(as.size()));
  return v;
}

InequalityVerdict check_open_q(std::span<const PDMatrix> as, const Partition& part, double tol) {
  const auto [block_sums, total] = choi_sums(as, part);
  const auto x = union_spectrum(block_sums);
  const auto y = jacobi_eigen(total).values.vector();
  auto report = check_order(OrderKind::WeakLogMajorize, x, y, {tol});
  auto v = order_verdict(InequalityId::OpenQuestion, std::move(report), true, x, y,
                         fingerprint_of(part, {}, as));
  v.quantities.emplace_back("m", static_cast<double>(as.size()));
  return v;
}

InequalityVerdict check_lemma31(const PDMatrix& a, std::span<const std::size_t> idx, double tol) {
  const PDMatrix sub(principal_submatrix(a.matrix(), idx));
  const SymMatrix inv_of_sub = pd_inverse(sub);
  const SymMatrix sub_of_inv(principal_submatrix(pd_inverse(a).matrix(), idx));
  const auto cmp = loewner_compare(inv_of_sub, sub_of_inv, tol);

  InequalityVerdict v;
  v.id = InequalityId::Lemma31;
  v.lhs = 0.0;
  v.rhs = cmp.min_eigenvalue;
  v.margin = cmp.min_eigenvalue;
  v.tolerance = tol;
  v.allowance = cmp.allowance;
  v.holds = cmp.holds;
  Hasher h;
  h.add(a.matrix());
  for (auto i : idx) h.add(i);
  v.fingerprint = {a.dim(), {idx.size()}, h.value()};
  return v;
}

InequalityVerdict check_fischer_tail(const PDMatrix& c, const Partition& part, std::size_t m, double tol) {
  const std::size_t n = c.dim();
  if (part.dim() != n) throw Error(ErrorCode::DimensionMismatch, "partition does not match C");
  if (m < 1 || m > n) throw Error(ErrorCode::IndexOutOfRange, "tail index m = " + std::to_string(m));
  const auto full = jacobi_eigen(c).values;
  const auto blocks = union_spectrum(diag_blocks_pd(c, part));
  double log_lhs = 0.0, log_rhs = 0.0;
  for (std::size_t i = m - 1; i < n; ++i) {
    log_lhs += std::log(full[i]);
    log_rhs += std::log(blocks[i]);
  }
  auto v = scalar_verdict(InequalityId::FischerTail, log_lhs, log_rhs, tol,
                          fingerprint_of(part, {&c.matrix()}));
  v.quantities.emplace_back("m", static_cast<double>(m));
  return v;
}

InequalityVerdict check_kyfan(const PDMatrix& c, const Partition& part, double tol) {
  if (part.dim() != c.dim()) throw Error(ErrorCode::DimensionMismatch, "partition does not match C");
  const auto x = union_spectrum(diag_blocks_pd(c, part));
  const auto y = jacobi_eigen(c).values.vector();
  auto report = check_order(OrderKind::Majorize, x, y, {tol});
  return order_verdict(InequalityId::KyFan, std::move(report), false, x, y, fingerprint_of(part, {&c.matrix()}));
}

InequalityVerdict identity_abs_square(const PDMatrix& c, std::span<const PDMatrix> d_blocks,
                                      const Partition& part, double tol) {
  require_consistent(c, d_blocks, part);
  const PDMatrix d(direct_sum(d_blocks));
  const auto c_blocks = diag_blocks_pd(c, part);

  // Path 1: singular values of the explicit product.
  auto abs_square_side = [](const PDMatrix& cc, const PDMatrix& dd) {
    return prod_one_plus_pow(singular_values(product_inv_times(cc, dd.matrix())).values(), 2.0);
  };
  // Path 2: det(D⁻² + C⁻²) det(D)².
  auto inverse_side = [](const PDMatrix& cc, const PDMatrix& dd) {
    const double dd_det = det_pd(dd);
    return det_pd(inverse_square_sum(cc, dd)) * dd_det * dd_det;
  };

  const double global_abs = abs_square_side(c, d);
  const double global_inv = inverse_side(c, d);
  double block_abs = 1.0, block_inv = 1.0;
  for (std::size_t i = 0; i < c_blocks.size(); ++i) {
    block_abs *= abs_square_side(c_blocks[i], d_blocks[i]);
    block_inv *= inverse_side(c_blocks[i], d_blocks[i]);
  }
  const double dev = std::max(rel_dev(global_abs, global_inv), rel_dev(block_abs, block_inv));

  InequalityVerdict v;
  v.id = InequalityId::IdentityAbsSquare;
  v.lhs = global_abs;
  v.rhs = global_inv;
  v.margin = -dev;
  v.tolerance = tol;
  v.allowance = tol;
  v.holds = dev <= tol;
  v.fingerprint = fingerprint_of(part, {&c.matrix(), &d.matrix()});
  v.quantities = {{"global_abs_square", global_abs},
                  {"global_inverse_square", global_inv},
                  {"blockwise_abs_square", block_abs},
                  {"blockwise_inverse_square", block_inv},
                  {"relative_deviation", dev}};
  return v;
}

// ------------------------------------------------------ general evaluators

InequalityVerdict evaluate_general(InequalityId id, const GeneralInstance& inst, double tol) {
  const auto& c = inst.c;
  const auto& d = inst.d;
  const auto& part = inst.partition;
  if (c.dim() != part.dim() || d.dim() != part.dim())
    throw Error(ErrorCode::DimensionMismatch, "C, D and partition must agree");
  const auto c_blocks = diag_blocks_pd(c, part);
  const auto d_blocks = diag_blocks_pd(d, part);
  const auto fp = fingerprint_of(part, {&c.matrix(), &d.matrix()});

  switch (id) {
    case InequalityId::NegPower:
      return det_power_impl(id, c, d_blocks, d, part, inst.p, tol);

    case InequalityId::WeakLogGeneralD:
      return weak_log_impl(id, c, d_blocks, d, part, tol);

    case InequalityId::MaticGeneralD: {
      double log_lhs = 0.0;
      for (std::size_t i = 0; i < c_blocks.size(); ++i)
        log_lhs += log_det_pd(PDMatrix(c_blocks[i].matrix() + d_blocks[i].matrix())) - log_det_pd(c_blocks[i]);
      const double log_rhs = log_det_pd(PDMatrix(c.matrix() + d.matrix())) - log_det_pd(c);
      return scalar_verdict(id, log_lhs, log_rhs, tol, fp);
    }

    case InequalityId::AbsPower: {
      // det(I + |X|^p) = ∏ (1 + s_i(X)^p)
      std::vector<double> x;
      for (std::size_t i = 0; i < c_blocks.size(); ++i) {
        const auto s = singular_values(product_inv_times(c_blocks[i], d_blocks[i].matrix()));
        x.insert(x.end(), s.values().begin(), s.values().end());
      }
      const auto y = singular_values(product_inv_times(c, d.matrix()));
      auto v = scalar_verdict(id, sum_log1p_pow(x, inst.p), sum_log1p_pow(y.values(), inst.p), tol, fp);
      v.lhs = prod_one_plus_pow(x, inst.p);
      v.rhs = prod_one_plus_pow(y.values(), inst.p);
      v.quantities.emplace_back("p", inst.p);
      return v;
    }

    case InequalityId::CommutedPower: {
      // det(I + X^{-p} Y^p) = ∏ (1 + λ_i(X^{-p} Y^p))
      // λ(X^{-p} Y^p) = s(X^{-p/2} Y^{p/2})²
      auto side = [p = inst.p](const PDMatrix& cc, const PDMatrix& dd) {
        const auto s = singular_values(spectral_power(cc, -p / 2) * spectral_power(dd, p / 2));
        return sum_log1p_pow(s.values(), 2.0);
      };
      double log_lhs = 0.0;
      for (std::size_t i = 0; i < c_blocks.size(); ++i) log_lhs += side(c_blocks[i], d_blocks[i]);
      auto v = scalar_verdict(id, log_lhs, side(c, d), tol, fp);
      v.quantities.emplace_back("p", inst.p);
      return v;
    }

    case InequalityId::InvSquareSum: {
      double log_lhs = 0.0;
      for (std::size_t i = 0; i < c_blocks.size(); ++i)
        log_lhs += log_det_inverse_square_sum(c_blocks[i], d_blocks[i]);
      return scalar_verdict(id, log_lhs, log_det_inverse_square_sum(c, d), tol, fp);
    }

    case InequalityId::SvWeakLog: {
      std::vector<Spectrum> parts;
      for (std::size_t i = 0; i < c_blocks.size(); ++i)
        parts.push_back(singular_values(product_inv_times(c_blocks[i], d_blocks[i].matrix())));
      const auto x = concat_sorted(parts);
      const auto y = singular_values(product_inv_times(c, d.matrix()));
      auto report = check_order(OrderKind::WeakLogMajorize, x, y.values(), {tol});
      return order_verdict(id, std::move(report), true, x, y.values(), fp);
    }

    default:
      throw Error(ErrorCode::UnknownInequality,
                  std::string(to_string(id)) + " is not a general-instance evaluator");
  }
}

// ------------------------------------------------------ exact certificates

namespace {

std::vector<RationalMatrix> exact_blocks(const RationalMatrix& m, const Partition& part) {
  if (m.dim() != part.dim()) throw Error(ErrorCode::DimensionMismatch, "exact matrix vs partition");
  std::vector<RationalMatrix> out;
  for (std::size_t j = 0; j < part.blocks(); ++j) out.push_back(m.submatrix(part.offset(j), part.sizes()[j]));
  return out;
}

ExactCertificate certificate(Rational lhs, Rational rhs) {
  ExactCertificate c{std::move(lhs), std::move(rhs), false};
  c.holds = c.lhs <= c.rhs;
  return c;
}

Rational exact_inverse_square_sum_det(const RationalMatrix& c, const RationalMatrix& d) {
  const auto ci = inverse_exact(c);
  const auto di = inverse_exact(d);
  return det_exact(di * di + ci * ci);
}

}  // namespace

ExactCertificate certify_matic_exact(const RationalMatrix& c, const RationalMatrix& d, const Partition& part) {
  const auto cb = exact_blocks(c, part);
  const auto db = exact_blocks(d, part);
  Rational lhs = 1;
  for (std::size_t i = 0; i < cb.size(); ++i) lhs *= det_exact(cb[i] + db[i]) / det_exact(cb[i]);
  return certificate(lhs, det_exact(c + d) / det_exact(c));
}

ExactCertificate certify_inv_square_sum_exact(const RationalMatrix& c, const RationalMatrix& d,
                                              const Partition& part) {
  const auto cb = exact_blocks(c, part);
  const auto db = exact_blocks(d, part);
  Rational lhs = 1;
  for (std::size_t i = 0; i < cb.size(); ++i) lhs *= exact_inverse_square_sum_det(cb[i], db[i]);
  return certificate(lhs, exact_inverse_square_sum_det(c, d));
}

ExactCertificate certify_choi_exact(std::span<const RationalMatrix> as, const Partition& part) {
  if (as.empty()) throw Error(ErrorCode::ShapeMismatch, "need at least one matrix");
  RationalMatrix total(part.dim());
  std::vector<RationalMatrix> block_sums;
  for (std::size_t j = 0; j < part.blocks(); ++j) block_sums.emplace_back(part.sizes()[j]);
  for (const auto& a : as) {
    total = total + inverse_exact(a);
    const auto blocks = exact_blocks(a, part);
    for (std::size_t j = 0; j < blocks.size(); ++j) block_sums[j] = block_sums[j] + inverse_exact(blocks[j]);
  }
  Rational lhs = 1;
  for (const auto& b : block_sums) lhs *= det_exact(b);
  return certificate(lhs, det_exact(total));
}

// ------------------------------------------------------ dispatch

InequalityVerdict evaluate(InequalityId id, const Instance& inst, double tol) {
  const auto& part = inst.partition;
  auto need_c = [&]() -> const PDMatrix& {
    if (!inst.c) throw Error(ErrorCode::ShapeMismatch, std::string(to_string(id)) + " needs C");
    return *inst.c;
  };
  auto need_d = [&]() -> const PDMatrix& {
    if (!inst.d) throw Error(ErrorCode::ShapeMismatch, std::string(to_string(id)) + " needs D");
    return *inst.d;
  };
  auto block_d = [&]() {
    const auto& d = need_d();
    if (!is_block_diagonal(d.matrix(), part))
      throw Error(ErrorCode::ShapeMismatch,
                  std::string(to_string(id)) + " requires D block diagonal for the partition");
    return diag_blocks_pd(d, part);
  };
  auto general = [&] { return GeneralInstance{need_c(), need_d(), part, inst.p}; };

  InequalityVerdict v;
  switch (id) {
    case InequalityId::MainTheorem: v = check_main_theorem(need_c(), block_d(), part, tol); break;
    case InequalityId::Matic: v = check_matic(need_c(), block_d(), part, tol); break;
    case InequalityId::DetPower: v = check_det_power(need_c(), block_d(), part, inst.p, tol); break;
    case InequalityId::IdentityAbsSquare: v = identity_abs_square(need_c(), block_d(), part, tol); break;
    case InequalityId::AbsPower:
    case InequalityId::CommutedPower:
    case InequalityId::InvSquareSum:
    case InequalityId::NegPower:
    case InequalityId::MaticGeneralD:
    case InequalityId::WeakLogGeneralD:
    case InequalityId::SvWeakLog:
      v = evaluate_general(id, general(), tol);
      break;
    case InequalityId::Choi: v = check_choi(inst.as, part, tol); break;
    case InequalityId::Thm32: v = check_thm32(inst.as, part, inst.p, tol); break;
    case InequalityId::OpenQuestion: v = check_open_q(inst.as, part, tol); break;
    case InequalityId::Lemma31: v = check_lemma31(need_c(), inst.indices, tol); break;
    case InequalityId::KyFan: v = check_kyfan(need_c(), part, tol); break;
    case InequalityId::FischerTail: {
      const auto& c = need_c();
      if (inst.tail_index != 0) {
        v = check_fischer_tail(c, part, inst.tail_index, tol);
        break;
      }
      for (std::size_t m = 1; m <= c.dim(); ++m) {
        auto t = check_fischer_tail(c, part, m, tol);
        if (m == 1 || t.margin + t.allowance < v.margin + v.allowance) v = std::move(t);
      }
      break;
    }
  }

  if (inst.c_exact && inst.d_exact) {
    if (id == InequalityId::Matic || id == InequalityId::MaticGeneralD)
      v.exact = certify_matic_exact(*inst.c_exact, *inst.d_exact, part);
    else if (id == InequalityId::InvSquareSum)
      v.exact = certify_inv_square_sum_exact(*inst.c_exact, *inst.d_exact, part);
  }
  if (id == InequalityId::Choi && !inst.as_exact.empty())
    v.exact = certify_choi_exact(inst.as_exact, part);
  return v;
}

}  // namespace pdineq
