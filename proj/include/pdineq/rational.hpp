#pragma once

// Exact rational matrices on top of GMP, used to certify determinant
// comparisons without rounding.

#include <gmpxx.h>

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "pdineq/matrix.hpp"

namespace pdineq {

using Rational = mpq_class;

/// Parses "3", "-7/4", "14.7", "2.5e-3" exactly.
Rational parse_rational(std::string_view text);

class RationalMatrix {
 public:
  RationalMatrix() = default;
  explicit RationalMatrix(std::size_t n) : n_(n), data_(n * n) {}

  static RationalMatrix identity(std::size_t n);
  /// Exact binary value of each double.
  static RationalMatrix from_matrix(const Matrix& m);
  static RationalMatrix from_strings(const std::vector<std::vector<std::string>>& rows);

  std::size_t dim() const noexcept { return n_; }
  Rational& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }

  bool is_symmetric() const;
  Matrix to_matrix() const;
  RationalMatrix submatrix(std::size_t offset, std::size_t size) const;

  friend bool operator==(const RationalMatrix&, const RationalMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<Rational> data_;
};

RationalMatrix operator+(const RationalMatrix& a, const RationalMatrix& b);
RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b);

/// Exact determinant: rows are scaled to integers, then Bareiss
/// fraction-free elimination. Singular input returns 0.
Rational det_exact(const RationalMatrix& m);

/// Gauss-Jordan over the rationals; throws DimensionMismatch on singular input.
RationalMatrix inverse_exact(const RationalMatrix& m);

}  // namespace pdineq
