#pragma once

#include "kdgrid/grid_engine.hpp"
#include "kdgrid/linalg.hpp"
#include "kdgrid/monoid.hpp"

namespace kdgrid::linalg::detail {

// C += -(A B); the Schur-complement and triangular-solve updates.
struct MinusTimes {
  using Add = PlusOp;
  static constexpr double mul(double a, double b) { return -(a * b); }
};

template <class SR>
WorkSpan multiply_into(sim::Simulator& sim, const MatView& a, const MatView& b, const MatView& c,
                       const grid::GridOptions& opt) {
  if (a.cols != b.rows || c.rows != a.rows || c.cols != b.cols)
    throw ContractViolation("matrix shapes do not conform");
  if (c.empty() || a.cols == 0) return {};
  // Cell (i, j, k). Input 0 drops i: (j, k) -> B[k][j]. Input 1 drops j: (i, k) -> A[i][k].
  auto g = [](const std::array<double, 2>& v, const grid::Index<3>&) { return SR::mul(v[1], v[0]); };
  grid::GridSpec<3, decltype(g), grid::AllCells, typename SR::Add> spec{
      {c.rows, c.cols, a.cols}, g, {}, {}};
  return grid::compute_grid(sim, spec, {b.view_transposed(), a.view()}, c.view(), opt);
}

}  // namespace kdgrid::linalg::detail
