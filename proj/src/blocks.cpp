#include "pdineq/blocks.hpp"

#include <numeric>
#include <string>

namespace pdineq {

std::size_t Partition::offset(std::size_t block) const {
  if (block > sizes_.size()) throw Error(ErrorCode::IndexOutOfRange, "partition block");
  return std::accumulate(sizes_.begin(), sizes_.begin() + static_cast<std::ptrdiff_t>(block),
                         std::size_t{0});
}

Partition Partition::whole(std::size_t n) {
  const std::size_t sizes[] = {n};
  return validate_partition(sizes, n);
}

Partition validate_partition(std::span<const std::size_t> sizes, std::size_t n) {
  if (sizes.empty()) throw Error(ErrorCode::BadPartition, "partition has no blocks");
  std::size_t sum = 0;
  for (std::size_t s : sizes) {
    if (s < 1) throw Error(ErrorCode::BadPartition, "block size must be >= 1");
    sum += s;
  }
  if (sum != n)
    throw Error(ErrorCode::BadPartition,
                "block sizes sum to " + std::to_string(sum) + ", dimension is " + std::to_string(n));
  Partition p;
  p.sizes_.assign(sizes.begin(), sizes.end());
  p.dim_ = n;
  return p;
}

Partition BlockDiagonal::partition() const {
  std::vector<std::size_t> sizes;
  std::size_t n = 0;
  for (const auto& b : blocks) {
    if (!b.square()) throw Error(ErrorCode::ShapeMismatch, "block is not square");
    sizes.push_back(b.rows());
    n += b.rows();
  }
  return validate_partition(sizes, n);
}

BlockDiagonal diag_blocks(const Matrix& c, const Partition& part) {
  if (!c.square() || c.rows() != part.dim())
    throw Error(ErrorCode::DimensionMismatch, "matrix dimension " + std::to_string(c.rows()) +
                                                  " vs partition " + std::to_string(part.dim()));
  BlockDiagonal out;
  std::size_t off = 0;
  for (std::size_t s : part.sizes()) {
    Matrix b(s, s);
    for (std::size_t i = 0; i < s; ++i)
      for (std::size_t j = 0; j < s; ++j) b(i, j) = c(off + i, off + j);
    out.blocks.push_back(std::move(b));
    off += s;
  }
  return out;
}

std::vector<PDMatrix> diag_blocks_pd(const PDMatrix& c, const Partition& part) {
  std::vector<PDMatrix> out;
  for (auto& b : diag_blocks(c.matrix(), part).blocks) out.emplace_back(std::move(b));
  return out;
}

Matrix direct_sum(const BlockDiagonal& blocks) {
  std::size_t n = 0;
  for (const auto& b : blocks.blocks) {
    if (!b.square()) throw Error(ErrorCode::ShapeMismatch, "block is not square");
    n += b.rows();
  }
  Matrix m(n, n);
  std::size_t off = 0;
  for (const auto& b : blocks.blocks) {
    for (std::size_t i = 0; i < b.rows(); ++i)
      for (std::size_t j = 0; j < b.cols(); ++j) m(off + i, off + j) = b(i, j);
    off += b.rows();
  }
  return m;
}

Matrix direct_sum(std::span<const PDMatrix> blocks) {
  BlockDiagonal bd;
  for (const auto& b : blocks) bd.blocks.push_back(b.matrix());
  return direct_sum(bd);
}

Matrix principal_submatrix(const Matrix& a, std::span<const std::size_t> idx) {
  for (std::size_t i = 0; i < idx.size(); ++i) {
    if (idx[i] >= a.rows() || idx[i] >= a.cols())
      throw Error(ErrorCode::IndexOutOfRange, "index " + std::to_string(idx[i]));
    if (i > 0 && idx[i] <= idx[i - 1])
      throw Error(ErrorCode::IndexOutOfRange, "indices must be strictly increasing");
  }
  Matrix s(idx.size(), idx.size());
  for (std::size_t i = 0; i < idx.size(); ++i)
    for (std::size_t j = 0; j < idx.size(); ++j) s(i, j) = a(idx[i], idx[j]);
  return s;
}

bool is_block_diagonal(const Matrix& m, const Partition& part) {
  if (m.rows() != part.dim() || !m.square()) return false;
  std::vector<std::size_t> block_of(m.rows());
  std::size_t off = 0;
  for (std::size_t b = 0; b < part.blocks(); ++b)
    for (std::size_t i = 0; i < part.sizes()[b]; ++i) block_of[off++] = b;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (block_of[i] != block_of[j] && m(i, j) != 0.0) return false;
  return true;
}

}  // namespace pdineq
