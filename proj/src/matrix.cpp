#include "pdineq/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace pdineq {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorCode::NotSymmetric: return "NotSymmetric";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::EmptyVector: return "EmptyVector";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::NonPositiveEntry: return "NonPositiveEntry";
    case ErrorCode::ZeroOrder: return "ZeroOrder";
    case ErrorCode::BadPartition: return "BadPartition";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::NegativePower: return "NegativePower";
    case ErrorCode::BadExponent: return "BadExponent";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::UnknownInequality: return "UnknownInequality";
    case ErrorCode::ResampleExhausted: return "ResampleExhausted";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

// ---------------------------------------------------------------- Matrix

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows)
    : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw Error(ErrorCode::ShapeMismatch, "ragged initializer");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::diagonal(std::span<const double> d) {
  Matrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

Matrix Matrix::from_rows(const std::vector<std::vector<double>>& rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r ? rows.front().size() : 0;
  Matrix m(r, c);
  for (std::size_t i = 0; i < r; ++i) {
    if (rows[i].size() != c) throw Error(ErrorCode::ShapeMismatch, "ragged rows");
    std::copy(rows[i].begin(), rows[i].end(), m.data_.begin() + static_cast<std::ptrdiff_t>(i * c));
  }
  return m;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

double Matrix::frobenius_norm() const {
  double scale = max_abs();
  if (scale == 0.0) return 0.0;
  double s = 0.0;
  for (double v : data_) s += (v / scale) * (v / scale);
  return scale * std::sqrt(s);
}

double Matrix::max_abs() const {
  double m = 0.0;
  for (double v : data_) m = std::max(m, std::abs(v));
  return m;
}

double Matrix::trace() const {
  double t = 0.0;
  for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
  return t;
}

std::vector<std::vector<double>> Matrix::to_rows() const {
  std::vector<std::vector<double>> out(rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    out[i].assign(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                  data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
  return out;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw Error(ErrorCode::DimensionMismatch, "matrix sum");
  Matrix c = a;
  auto cd = c.data();
  auto bd = b.data();
  for (std::size_t i = 0; i < cd.size(); ++i) cd[i] += bd[i];
  return c;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw Error(ErrorCode::DimensionMismatch, "matrix difference");
  Matrix c = a;
  auto cd = c.data();
  auto bd = b.data();
  for (std::size_t i = 0; i < cd.size(); ++i) cd[i] -= bd[i];
  return c;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw Error(ErrorCode::DimensionMismatch, "matrix product");
  Matrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

Matrix operator*(double s, const Matrix& a) {
  Matrix c = a;
  for (double& v : c.data()) v *= s;
  return c;
}

// ---------------------------------------------------------------- SymMatrix

bool is_symmetric(const Matrix& m) {
  if (!m.square()) return false;
  const double bound = 1e-12 * std::max(1.0, m.max_abs());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = i + 1; j < m.cols(); ++j)
      if (std::abs(m(i, j) - m(j, i)) > bound) return false;
  return true;
}

SymMatrix::SymMatrix(Matrix m) {
  if (!m.square()) throw Error(ErrorCode::DimensionMismatch, "symmetric matrix must be square");
  if (!is_symmetric(m)) throw Error(ErrorCode::NotSymmetric, "input is not symmetric");
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = i + 1; j < m.cols(); ++j) {
      const double avg = 0.5 * (m(i, j) + m(j, i));
      m(i, j) = avg;
      m(j, i) = avg;
    }
  m_ = std::move(m);
}

PDMatrix::PDMatrix(SymMatrix s) : SymMatrix(std::move(s)), chol_(cholesky(*this)) {}

Spectrum::Spectrum(std::vector<double> values) : v_(std::move(values)) {
  std::stable_sort(v_.begin(), v_.end(), std::greater<>());
}

// ---------------------------------------------------------------- Cholesky

LowerTriangular cholesky(const SymMatrix& a) {
  const std::size_t n = a.dim();
  double max_diag = 0.0;
  for (std::size_t i = 0; i < n; ++i) max_diag = std::max(max_diag, a(i, i));
  const double floor = kCholeskyPivotFloor * max_diag;

  Matrix l(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    double d = a(j, j);
    for (std::size_t k = 0; k < j; ++k) d -= l(j, k) * l(j, k);
    if (!(d > 0.0) || d < floor || max_diag <= 0.0)
      throw Error(ErrorCode::NotPositiveDefinite,
                  "pivot " + std::to_string(j) + " = " + std::to_string(d));
    const double ljj = std::sqrt(d);
    l(j, j) = ljj;
    for (std::size_t i = j + 1; i < n; ++i) {
      double s = a(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
      l(i, j) = s / ljj;
    }
  }
  return LowerTriangular(std::move(l));
}

double det_pd(const PDMatrix& a) {
  double d = 1.0;
  const auto& l = a.factor();
  for (std::size_t i = 0; i < l.dim(); ++i) d *= l(i, i) * l(i, i);
  return d;
}

double log_det_pd(const PDMatrix& a) {
  double s = 0.0;
  const auto& l = a.factor();
  for (std::size_t i = 0; i < l.dim(); ++i) s += 2.0 * std::log(l(i, i));
  return s;
}

namespace {

// Inverse of a lower triangular matrix by forward substitution.
Matrix lower_inverse(const LowerTriangular& l) {
  const std::size_t n = l.dim();
  Matrix inv(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    inv(j, j) = 1.0 / l(j, j);
    for (std::size_t i = j + 1; i < n; ++i) {
      double s = 0.0;
      for (std::size_t k = j; k < i; ++k) s -= l(i, k) * inv(k, j);
      inv(i, j) = s / l(i, i);
    }
  }
  return inv;
}

// Congruence R^T A R with the result symmetrized exactly.
SymMatrix congruence(const Matrix& r, const Matrix& a) {
  Matrix m = r.transpose() * a * r;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = i + 1; j < m.cols(); ++j) {
      const double avg = 0.5 * (m(i, j) + m(j, i));
      m(i, j) = avg;
      m(j, i) = avg;
    }
  return SymMatrix(std::move(m));
}

// V f(L) V^T for an eigendecomposition with vectors.
Matrix spectral_apply(const EigenDecomposition& e, auto&& f) {
  const Matrix& v = *e.vectors;
  const std::size_t n = v.rows();
  Matrix out(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    const double fk = f(e.values[k]);
    for (std::size_t i = 0; i < n; ++i) {
      const double vik = v(i, k) * fk;
      for (std::size_t j = i; j < n; ++j) out(i, j) += vik * v(j, k);
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j) out(i, j) = out(j, i);
  return out;
}

}  // namespace

PDMatrix pd_inverse(const PDMatrix& a) {
  const Matrix linv = lower_inverse(a.factor());
  const std::size_t n = a.dim();
  // A^{-1} = L^{-T} L^{-1}; only the upper triangle is accumulated.
  Matrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      double s = 0.0;
      for (std::size_t k = j; k < n; ++k) s += linv(k, i) * linv(k, j);
      inv(i, j) = s;
      inv(j, i) = s;
    }
  return PDMatrix(std::move(inv));
}

// ---------------------------------------------------------------- Jacobi

EigenDecomposition jacobi_eigen(const SymMatrix& sym, bool want_vectors) {
  const std::size_t n = sym.dim();
  Matrix a = sym.matrix();
  Matrix v = Matrix::identity(n);
  const double threshold = jacobi::kRelativeThreshold * a.frobenius_norm();

  auto off_norm = [&] {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) s += 2.0 * a(i, j) * a(i, j);
    return std::sqrt(s);
  };

  bool converged = false;
  for (int sweep = 0; sweep <= jacobi::kMaxSweeps; ++sweep) {
    if (off_norm() <= threshold) {
      converged = true;
      break;
    }
    if (sweep == jacobi::kMaxSweeps) break;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        double t;
        if (std::abs(theta) > 1e150) {
          t = 1.0 / (2.0 * theta);
        } else {
          t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
          if (theta < 0.0) t = -t;
        }
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const double tau = s / (1.0 + c);

        a(p, p) -= t * apq;
        a(q, q) += t * apq;
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        for (std::size_t r = 0; r < n; ++r) {
          if (r == p || r == q) continue;
          const double g = a(r, p);
          const double h = a(r, q);
          const double rp = g - s * (h + g * tau);
          const double rq = h + s * (g - h * tau);
          a(r, p) = rp;
          a(p, r) = rp;
          a(r, q) = rq;
          a(q, r) = rq;
        }
        if (want_vectors) {
          for (std::size_t r = 0; r < n; ++r) {
            const double g = v(r, p);
            const double h = v(r, q);
            v(r, p) = g - s * (h + g * tau);
            v(r, q) = h + s * (g - h * tau);
          }
        }
      }
    }
  }
  if (!converged)
    throw Error(ErrorCode::NoConvergence,
                "off-diagonal norm above threshold after " + std::to_string(jacobi::kMaxSweeps) +
                    " sweeps");

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a(i, i) > a(j, j); });

  std::vector<double> values(n);
  for (std::size_t k = 0; k < n; ++k) values[k] = a(order[k], order[k]);

  EigenDecomposition out{Spectrum(std::move(values)), std::nullopt};
  if (want_vectors) {
    Matrix sorted(n, n);
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t r = 0; r < n; ++r) sorted(r, k) = v(r, order[k]);
    out.vectors = std::move(sorted);
  }
  return out;
}

// ---------------------------------------------------------------- functions

PDMatrix pd_power(const PDMatrix& a, double p) {
  const auto e = jacobi_eigen(a, true);
  return PDMatrix(spectral_apply(e, [p](double x) { return std::pow(x, p); }));
}

PDMatrix pd_sqrt(const PDMatrix& a) {
  const auto e = jacobi_eigen(a, true);
  return PDMatrix(spectral_apply(e, [](double x) { return std::sqrt(x); }));
}

Spectrum eig_pd_product(const PDMatrix& a, const PDMatrix& b) {
  if (a.dim() != b.dim()) throw Error(ErrorCode::DimensionMismatch, "eig_pd_product");
  const SymMatrix m = congruence(b.factor().matrix(), a.matrix());
  return jacobi_eigen(m).values;
}

Matrix hyperbolic_power(const PDMatrix& a, const PDMatrix& b, double p) {
  if (a.dim() != b.dim()) throw Error(ErrorCode::DimensionMismatch, "hyperbolic_power");
  const auto eb = jacobi_eigen(b, true);
  const Matrix s = spectral_apply(eb, [](double x) { return std::sqrt(x); });
  const Matrix s_inv = spectral_apply(eb, [](double x) { return 1.0 / std::sqrt(x); });
  const SymMatrix m = congruence(s, a.matrix());
  const auto em = jacobi_eigen(m, true);
  const Matrix mp = spectral_apply(em, [p](double x) { return std::pow(x, p); });
  return s_inv * mp * s;
}

// One-sided Jacobi on the columns of X: small singular values keep absolute
// accuracy of order eps * ||X|| instead of sqrt(eps) * ||X|| via X^T X.
Spectrum singular_values(const Matrix& x) {
  if (x.rows() < x.cols()) return singular_values(x.transpose());
  Matrix u = x;
  const std::size_t m = u.rows(), n = u.cols();
  for (int sweep = 0; sweep < 60; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        double alpha = 0.0, beta = 0.0, gamma = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
          alpha += u(i, p) * u(i, p);
          beta += u(i, q) * u(i, q);
          gamma += u(i, p) * u(i, q);
        }
        if (gamma == 0.0 || std::abs(gamma) <= 1e-15 * std::sqrt(alpha * beta)) continue;
        rotated = true;
        const double zeta = (beta - alpha) / (2.0 * gamma);
        const double t = std::copysign(1.0, zeta) / (std::abs(zeta) + std::hypot(1.0, zeta));
        const double c = 1.0 / std::hypot(1.0, t);
        const double s = c * t;
        for (std::size_t i = 0; i < m; ++i) {
          const double up = u(i, p), uq = u(i, q);
          u(i, p) = c * up - s * uq;
          u(i, q) = s * up + c * uq;
        }
      }
    if (!rotated) break;
  }
  std::vector<double> s(n);
  for (std::size_t j = 0; j < n; ++j) {
    double norm = 0.0;
    for (std::size_t i = 0; i < m; ++i) norm = std::hypot(norm, u(i, j));
    s[j] = norm;
  }
  return Spectrum(std::move(s));
}

Matrix spectral_power(const SymMatrix& a, double p) {
  const auto e = jacobi_eigen(a, true);
  if (e.values.size() && !(e.values.min() > 0.0))
    throw Error(ErrorCode::NotPositiveDefinite, "spectral_power needs positive eigenvalues");
  return spectral_apply(e, [p](double v) { return std::pow(v, p); });
}

LoewnerComparison loewner_compare(const SymMatrix& a, const SymMatrix& b, double tol) {
  if (a.dim() != b.dim()) throw Error(ErrorCode::DimensionMismatch, "loewner_le");
  const SymMatrix diff(b.matrix() - a.matrix());
  const double lmin = diff.dim() ? jacobi_eigen(diff).values.min() : 0.0;
  const double allowance = tol * std::max(1.0, diff.matrix().frobenius_norm());
  return {lmin, allowance, lmin >= -allowance};
}

}  // namespace pdineq
