#include "kdgrid/grid_engine.hpp"

#include <cmath>

namespace kdgrid::grid {

std::size_t choose_split_dim(std::span<const std::size_t> extents, const SplitPolicy& policy) {
  const std::size_t k = extents.size();
  if (k < 2) throw ContractViolation("grid needs at least two dimensions");
  const bool asym = policy.variant == Variant::asymmetric;
  std::size_t best = k;
  for (std::size_t d = 0; d + 1 < k; ++d)
    if (extents[d] > 1 && (best == k || extents[d] > extents[best])) best = d;
  const std::size_t last = k - 1;
  if (extents[last] <= 1) {
    if (best == k) throw ContractViolation("no dimension can be split");
    return best;
  }
  if (best == k) return last;
  long double a = 1.0L, b = 1.0L;
  for (std::size_t i = 0; i < k; ++i) {
    a *= static_cast<long double>(extents[last]);
    b *= static_cast<long double>(extents[best]);
  }
  if (asym)
    for (std::size_t i = 0; i + 1 < k; ++i) b *= static_cast<long double>(policy.omega);
  return a > b ? last : best;
}

double predict_q(std::size_t k, double cells, const sim::CacheConfig& config, Variant variant) {
  if (k < 2) throw ContractViolation("grid needs at least two dimensions");
  const double m = static_cast<double>(config.cache_entries);
  const double b = static_cast<double>(config.line_entries);
  double q = cells / (b * std::pow(m, 1.0 / static_cast<double>(k - 1)));
  if (variant == Variant::asymmetric) q *= std::pow(config.write_cost, 1.0 / static_cast<double>(k));
  return q;
}

}  // namespace kdgrid::grid
