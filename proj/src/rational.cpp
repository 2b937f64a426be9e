#include "pdineq/rational.hpp"

#include <cctype>
#include <utility>

namespace pdineq {

namespace {

mpz_class parse_integer(std::string_view digits, std::string_view whole) {
  if (digits.empty()) throw Error(ErrorCode::ParseError, "bad rational '" + std::string(whole) + "'");
  for (char c : digits)
    if (!std::isdigit(static_cast<unsigned char>(c)))
      throw Error(ErrorCode::ParseError, "bad rational '" + std::string(whole) + "'");
  return mpz_class(std::string(digits), 10);
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const std::string_view whole = text;
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);

  bool negative = false;
  if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }

  Rational value;
  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    const mpz_class num = parse_integer(text.substr(0, slash), whole);
    const mpz_class den = parse_integer(text.substr(slash + 1), whole);
    if (den == 0) throw Error(ErrorCode::ParseError, "zero denominator in '" + std::string(whole) + "'");
    value = Rational(num, den);
  } else {
    long exponent = 0;
    if (const auto e = text.find_first_of("eE"); e != std::string_view::npos) {
      std::string_view exp_text = text.substr(e + 1);
      bool exp_negative = false;
      if (!exp_text.empty() && (exp_text.front() == '-' || exp_text.front() == '+')) {
        exp_negative = exp_text.front() == '-';
        exp_text.remove_prefix(1);
      }
      exponent = parse_integer(exp_text, whole).get_si();
      if (exp_negative) exponent = -exponent;
      text = text.substr(0, e);
    }
    std::string digits;
    if (const auto dot = text.find('.'); dot != std::string_view::npos) {
      digits = std::string(text.substr(0, dot)) + std::string(text.substr(dot + 1));
      exponent -= static_cast<long>(text.size() - dot - 1);
      if (text.size() == 1) digits.clear();
    } else {
      digits = std::string(text);
    }
    mpz_class num = parse_integer(digits, whole);
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
    value = exponent < 0 ? Rational(num, scale) : Rational(num * scale);
  }
  value.canonicalize();
  return negative ? Rational(-value) : value;
}

RationalMatrix RationalMatrix::identity(std::size_t n) {
  RationalMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

RationalMatrix RationalMatrix::from_matrix(const Matrix& m) {
  if (!m.square()) throw Error(ErrorCode::DimensionMismatch, "rational matrix must be square");
  RationalMatrix r(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = Rational(m(i, j));
  return r;
}

RationalMatrix RationalMatrix::from_strings(const std::vector<std::vector<std::string>>& rows) {
  RationalMatrix r(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows.size()) throw Error(ErrorCode::ShapeMismatch, "rational rows not square");
    for (std::size_t j = 0; j < rows.size(); ++j) r(i, j) = parse_rational(rows[i][j]);
  }
  return r;
}

bool RationalMatrix::is_symmetric() const {
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = i + 1; j < n_; ++j)
      if ((*this)(i, j) != (*this)(j, i)) return false;
  return true;
}

Matrix RationalMatrix::to_matrix() const {
  Matrix m(n_, n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) m(i, j) = (*this)(i, j).get_d();
  return m;
}

RationalMatrix RationalMatrix::submatrix(std::size_t offset, std::size_t size) const {
  if (offset + size > n_) throw Error(ErrorCode::IndexOutOfRange, "rational submatrix");
  RationalMatrix s(size);
  for (std::size_t i = 0; i < size; ++i)
    for (std::size_t j = 0; j < size; ++j) s(i, j) = (*this)(offset + i, offset + j);
  return s;
}

RationalMatrix operator+(const RationalMatrix& a, const RationalMatrix& b) {
  if (a.dim() != b.dim()) throw Error(ErrorCode::DimensionMismatch, "rational sum");
  RationalMatrix c(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j) c(i, j) = a(i, j) + b(i, j);
  return c;
}

RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b) {
  if (a.dim() != b.dim()) throw Error(ErrorCode::DimensionMismatch, "rational product");
  const std::size_t n = a.dim();
  RationalMatrix c(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Rational s = 0;
      for (std::size_t k = 0; k < n; ++k) s += a(i, k) * b(k, j);
      c(i, j) = s;
    }
  return c;
}

Rational det_exact(const RationalMatrix& m) {
  const std::size_t n = m.dim();
  if (n == 0) return 1;

  // Clear denominators row by row: det(M) = det(Z) / prod(row scales).
  std::vector<mpz_class> z(n * n);
  mpz_class scale = 1;
  for (std::size_t i = 0; i < n; ++i) {
    mpz_class row_lcm = 1;
    for (std::size_t j = 0; j < n; ++j) mpz_lcm(row_lcm.get_mpz_t(), row_lcm.get_mpz_t(), m(i, j).get_den_mpz_t());
    for (std::size_t j = 0; j < n; ++j) z[i * n + j] = m(i, j).get_num() * (row_lcm / m(i, j).get_den());
    scale *= row_lcm;
  }
  auto at = [&](std::size_t i, std::size_t j) -> mpz_class& { return z[i * n + j]; };

  int sign = 1;
  mpz_class prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (at(k, k) == 0) {
      std::size_t swap_row = k + 1;
      while (swap_row < n && at(swap_row, k) == 0) ++swap_row;
      if (swap_row == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(at(k, j), at(swap_row, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        mpz_class v = at(k, k) * at(i, j) - at(i, k) * at(k, j);
        mpz_divexact(at(i, j).get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
      }
      at(i, k) = 0;
    }
    prev = at(k, k);
  }
  Rational det(mpz_class(sign * at(n - 1, n - 1)), scale);
  det.canonicalize();
  return det;
}

RationalMatrix inverse_exact(const RationalMatrix& m) {
  const std::size_t n = m.dim();
  RationalMatrix a = m;
  RationalMatrix inv = RationalMatrix::identity(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pivot = k;
    while (pivot < n && a(pivot, k) == 0) ++pivot;
    if (pivot == n) throw Error(ErrorCode::DimensionMismatch, "singular rational matrix");
    if (pivot != k)
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(a(k, j), a(pivot, j));
        std::swap(inv(k, j), inv(pivot, j));
      }
    const Rational p = a(k, k);
    for (std::size_t j = 0; j < n; ++j) {
      a(k, j) /= p;
      inv(k, j) /= p;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k || a(i, k) == 0) continue;
      const Rational f = a(i, k);
      for (std::size_t j = 0; j < n; ++j) {
        a(i, j) -= f * a(k, j);
        inv(i, j) -= f * inv(k, j);
      }
    }
  }
  return inv;
}

}  // namespace pdineq
