#pragma once

// Dense real matrices and the symmetric/positive-definite kernels built on
// them: Cholesky, cyclic Jacobi, spectral matrix functions, and eigenvalues
// of products of two positive definite matrices.

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <vector>

#include "pdineq/error.hpp"

namespace pdineq {

/// Row-major dense real matrix.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  explicit Matrix(std::size_t n) : Matrix(n, n) {}
  Matrix(std::initializer_list<std::initializer_list<double>> rows);

  static Matrix identity(std::size_t n);
  static Matrix diagonal(std::span<const double> d);
  static Matrix from_rows(const std::vector<std::vector<double>>& rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<const double> data() const noexcept { return data_; }
  std::span<double> data() noexcept { return data_; }

  Matrix transpose() const;
  double frobenius_norm() const;
  double max_abs() const;
  double trace() const;

  std::vector<std::vector<double>> to_rows() const;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

Matrix operator+(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);
Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator*(double s, const Matrix& a);

/// Real symmetric matrix. Construction accepts inputs that are symmetric to
/// within 1e-12 * max(1, max|a_ij|) and stores the exactly symmetrized values.
class SymMatrix {
 public:
  SymMatrix() = default;
  explicit SymMatrix(Matrix m);

  std::size_t dim() const noexcept { return m_.rows(); }
  double operator()(std::size_t i, std::size_t j) const { return m_(i, j); }
  const Matrix& matrix() const noexcept { return m_; }

 private:
  Matrix m_;
};

bool is_symmetric(const Matrix& m);

/// Lower triangular factor with exact zeros above the diagonal.
class LowerTriangular {
 public:
  LowerTriangular() = default;
  std::size_t dim() const noexcept { return m_.rows(); }
  double operator()(std::size_t i, std::size_t j) const { return m_(i, j); }
  const Matrix& matrix() const noexcept { return m_; }

 private:
  friend LowerTriangular cholesky(const SymMatrix& a);
  explicit LowerTriangular(Matrix m) : m_(std::move(m)) {}
  Matrix m_;
};

/// Symmetric matrix whose Cholesky factorization succeeded. The factor is
/// kept alongside the entries.
class PDMatrix : public SymMatrix {
 public:
  PDMatrix() = default;
  explicit PDMatrix(SymMatrix s);
  explicit PDMatrix(Matrix m) : PDMatrix(SymMatrix(std::move(m))) {}

  const LowerTriangular& factor() const noexcept { return chol_; }

 private:
  LowerTriangular chol_;
};

/// Nonincreasing vector of reals.
class Spectrum {
 public:
  Spectrum() = default;
  /// Sorts the input into nonincreasing order.
  explicit Spectrum(std::vector<double> values);

  std::size_t size() const noexcept { return v_.size(); }
  double operator[](std::size_t i) const { return v_[i]; }
  std::span<const double> values() const noexcept { return v_; }
  const std::vector<double>& vector() const noexcept { return v_; }

  double max() const { return v_.front(); }
  double min() const { return v_.back(); }

 private:
  std::vector<double> v_;
};

struct EigenDecomposition {
  Spectrum values;
  /// Columns are eigenvectors in the order of `values`.
  std::optional<Matrix> vectors;
};

namespace jacobi {
inline constexpr int kMaxSweeps = 30;
inline constexpr double kRelativeThreshold = 1e-14;
}  // namespace jacobi

/// Pivots below this fraction of the largest diagonal entry are treated as
/// zero, so near-singular inputs are rejected.
inline constexpr double kCholeskyPivotFloor = 1e-13;

LowerTriangular cholesky(const SymMatrix& a);

/// Cyclic Jacobi: stops when the off-diagonal Frobenius norm falls to
/// 1e-14 * ||A||_F; throws NoConvergence after 30 sweeps.
EigenDecomposition jacobi_eigen(const SymMatrix& a, bool want_vectors = false);

PDMatrix pd_inverse(const PDMatrix& a);
PDMatrix pd_sqrt(const PDMatrix& a);
/// V diag(lambda^p) V^T for any real p.
PDMatrix pd_power(const PDMatrix& a, double p);
/// V diag(λ^p) V^T without re-validating the result, for powers whose
/// condition number exceeds what a PDMatrix accepts.
Matrix spectral_power(const SymMatrix& a, double p);

double det_pd(const PDMatrix& a);
double log_det_pd(const PDMatrix& a);

/// Eigenvalues of AB, computed as eigenvalues of R^T A R where B = R R^T.
Spectrum eig_pd_product(const PDMatrix& a, const PDMatrix& b);

/// (AB)^p for the hyperbolic product AB. With S = B^{1/2} and
/// S A S = V L V^T this is S^{-1} V L^p V^T S.
Matrix hyperbolic_power(const PDMatrix& a, const PDMatrix& b, double p);

/// Square roots of the eigenvalues of X^T X.
Spectrum singular_values(const Matrix& x);

struct LoewnerComparison {
  double min_eigenvalue;  // lambda_min(B - A)
  double allowance;       // tol * max(1, ||B - A||_F)
  bool holds;
};

LoewnerComparison loewner_compare(const SymMatrix& a, const SymMatrix& b, double tol);

/// A <= B in the Loewner order, up to tol * max(1, ||B - A||_F).
inline bool loewner_le(const SymMatrix& a, const SymMatrix& b, double tol) {
  return loewner_compare(a, b, tol).holds;
}

}  // namespace pdineq
