#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "pdineq/matrix.hpp"

namespace pdineq {

/// Ordered block sizes (n_1, ..., n_k), each >= 1, summing to the ambient
/// dimension. Blocks are contiguous along the diagonal.
class Partition {
 public:
  Partition() = default;

  const std::vector<std::size_t>& sizes() const noexcept { return sizes_; }
  std::size_t blocks() const noexcept { return sizes_.size(); }
  std::size_t dim() const noexcept { return dim_; }
  std::size_t offset(std::size_t block) const;

  /// The single-block partition (n).
  static Partition whole(std::size_t n);

  friend bool operator==(const Partition&, const Partition&) = default;

 private:
  friend Partition validate_partition(std::span<const std::size_t> sizes, std::size_t n);
  std::vector<std::size_t> sizes_;
  std::size_t dim_ = 0;
};

/// Throws BadPartition if a size is zero, the list is empty, or the sum is not n.
Partition validate_partition(std::span<const std::size_t> sizes, std::size_t n);

/// Square blocks in diagonal order.
struct BlockDiagonal {
  std::vector<Matrix> blocks;

  Partition partition() const;
};

/// Copies of the diagonal blocks of c.
BlockDiagonal diag_blocks(const Matrix& c, const Partition& part);
std::vector<PDMatrix> diag_blocks_pd(const PDMatrix& c, const Partition& part);

Matrix direct_sum(const BlockDiagonal& blocks);
Matrix direct_sum(std::span<const PDMatrix> blocks);

/// Rows and columns restricted to the strictly increasing 0-based indices.
Matrix principal_submatrix(const Matrix& a, std::span<const std::size_t> idx);

/// True when the entries outside the diagonal blocks are exactly zero.
bool is_block_diagonal(const Matrix& m, const Partition& part);

}  // namespace pdineq
