#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "pdineq/matrix.hpp"

namespace pdineq {

enum class OrderKind {
  Majorize,          // x ≺ y
  WeakMajorize,      // x ≺_w y
  LogMajorize,       // x ≺_log y
  WeakLogMajorize,   // x ≺_{w log} y
  EntrywiseLe,       // x_[i] <= y_[i]
};

std::string_view to_string(OrderKind kind);
OrderKind order_kind_from_string(std::string_view name);

inline constexpr double kDefaultTolerance = 1e-9;

enum class OrderFailure {
  None,
  Prefix,  // some margin below -allowance
  Total,   // prefixes fine, totals differ (non-weak kinds only)
};

/// Outcome of comparing two vectors under one of the orders.
///
/// margins[k-1] is (prefix_k(y) - prefix_k(x)) on sorted copies: plain
/// prefix sums, prefix sums of logarithms for the log kinds, and y_[k] - x_[k]
/// for EntrywiseLe. The prefix k passes when margins[k-1] >= -allowances[k-1],
/// where allowances[k-1] = tolerance * max(1, |prefix_k(x)|, |prefix_k(y)|).
struct OrderReport {
  OrderKind kind = OrderKind::Majorize;
  std::size_t n = 0;
  std::vector<double> margins;
  std::vector<double> allowances;
  /// prefix_n(y) - prefix_n(x); only meaningful for Majorize / LogMajorize.
  double total_residual = 0.0;
  double tolerance = kDefaultTolerance;
  bool holds = true;
  OrderFailure failure = OrderFailure::None;
  /// 1-based prefix at which the order first fails.
  std::optional<std::size_t> fails_at;

  double worst_margin() const;
};

/// Stable nonincreasing rearrangement. Throws EmptyVector.
Spectrum sort_desc(std::span<const double> v);

struct OrderOptions {
  double tolerance = kDefaultTolerance;
  /// EntrywiseLe only: zero-pad the shorter vector instead of throwing.
  bool pad_with_zeros = false;
};

OrderReport check_order(OrderKind kind, std::span<const double> x, std::span<const double> y,
                        OrderOptions options = {});

/// ((1/m) sum a_i^r)^{1/r}. Throws ZeroOrder for r == 0.
double power_mean(std::span<const double> a, double r);
double geometric_mean(std::span<const double> a);

}  // namespace pdineq
