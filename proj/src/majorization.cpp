#include "pdineq/majorization.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace pdineq {

std::string_view to_string(OrderKind kind) {
  switch (kind) {
    case OrderKind::Majorize: return "MAJORIZE";
    case OrderKind::WeakMajorize: return "WEAK_MAJORIZE";
    case OrderKind::LogMajorize: return "LOG_MAJORIZE";
    case OrderKind::WeakLogMajorize: return "WEAK_LOG_MAJORIZE";
    case OrderKind::EntrywiseLe: return "ENTRYWISE_LE";
  }
  return "?";
}

OrderKind order_kind_from_string(std::string_view name) {
  for (auto k : {OrderKind::Majorize, OrderKind::WeakMajorize, OrderKind::LogMajorize,
                 OrderKind::WeakLogMajorize, OrderKind::EntrywiseLe})
    if (to_string(k) == name) return k;
  throw Error(ErrorCode::ParseError, "unknown order kind '" + std::string(name) + "'");
}

double OrderReport::worst_margin() const {
  double worst = margins.empty() ? 0.0 : margins.front();
  for (double m : margins) worst = std::min(worst, m);
  if (kind == OrderKind::Majorize || kind == OrderKind::LogMajorize)
    worst = std::min(worst, -std::abs(total_residual));
  return worst;
}

Spectrum sort_desc(std::span<const double> v) {
  if (v.empty()) throw Error(ErrorCode::EmptyVector, "sort_desc");
  return Spectrum(std::vector<double>(v.begin(), v.end()));
}

OrderReport check_order(OrderKind kind, std::span<const double> x, std::span<const double> y,
                        OrderOptions options) {
  std::vector<double> xs(x.begin(), x.end());
  std::vector<double> ys(y.begin(), y.end());
  if (xs.size() != ys.size()) {
    if (kind != OrderKind::EntrywiseLe || !options.pad_with_zeros)
      throw Error(ErrorCode::LengthMismatch,
                  std::to_string(xs.size()) + " vs " + std::to_string(ys.size()));
    const std::size_t n = std::max(xs.size(), ys.size());
    xs.resize(n, 0.0);
    ys.resize(n, 0.0);
  }
  if (xs.empty()) throw Error(ErrorCode::EmptyVector, "check_order");

  const bool log_kind = kind == OrderKind::LogMajorize || kind == OrderKind::WeakLogMajorize;
  if (log_kind) {
    for (double v : xs)
      if (!(v > 0.0)) throw Error(ErrorCode::NonPositiveEntry, "x has entry " + std::to_string(v));
    for (double v : ys)
      if (!(v > 0.0)) throw Error(ErrorCode::NonPositiveEntry, "y has entry " + std::to_string(v));
  }

  std::stable_sort(xs.begin(), xs.end(), std::greater<>());
  std::stable_sort(ys.begin(), ys.end(), std::greater<>());

  const std::size_t n = xs.size();
  OrderReport r;
  r.kind = kind;
  r.n = n;
  r.tolerance = options.tolerance;
  r.margins.resize(n);
  r.allowances.resize(n);

  double px = 0.0;
  double py = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    double ax, ay;
    if (kind == OrderKind::EntrywiseLe) {
      ax = xs[k];
      ay = ys[k];
    } else {
      px += log_kind ? std::log(xs[k]) : xs[k];
      py += log_kind ? std::log(ys[k]) : ys[k];
      ax = px;
      ay = py;
    }
    r.margins[k] = ay - ax;
    r.allowances[k] = options.tolerance * std::max({1.0, std::abs(ax), std::abs(ay)});
    if (r.holds && r.margins[k] < -r.allowances[k]) {
      r.holds = false;
      r.failure = OrderFailure::Prefix;
      r.fails_at = k + 1;
    }
  }
  r.total_residual = r.margins.back();
  const bool needs_equal_totals = kind == OrderKind::Majorize || kind == OrderKind::LogMajorize;
  if (needs_equal_totals && r.holds && std::abs(r.total_residual) > r.allowances.back()) {
    r.holds = false;
    r.failure = OrderFailure::Total;
    r.fails_at = n;
  }
  return r;
}

double power_mean(std::span<const double> a, double r) {
  if (a.empty()) throw Error(ErrorCode::EmptyVector, "power_mean");
  if (r == 0.0) throw Error(ErrorCode::ZeroOrder, "use geometric_mean for r = 0");
  for (double v : a)
    if (!(v > 0.0)) throw Error(ErrorCode::NonPositiveEntry, "power_mean entry " + std::to_string(v));
  // Normalizing so that r*log(a_i/ref) <= 0 keeps expm1 bounded; the log1p/expm1
  // pair stays accurate as r -> 0.
  const double ref = r > 0.0 ? *std::max_element(a.begin(), a.end())
                             : *std::min_element(a.begin(), a.end());
  double s = 0.0;
  for (double v : a) s += std::expm1(r * std::log(v / ref));
  s /= static_cast<double>(a.size());
  return ref * std::exp(std::log1p(s) / r);
}

double geometric_mean(std::span<const double> a) {
  if (a.empty()) throw Error(ErrorCode::EmptyVector, "geometric_mean");
  double s = 0.0;
  for (double v : a) {
    if (!(v > 0.0)) throw Error(ErrorCode::NonPositiveEntry, "geometric_mean entry " + std::to_string(v));
    s += std::log(v);
  }
  return std::exp(s / static_cast<double>(a.size()));
}

}  // namespace pdineq
