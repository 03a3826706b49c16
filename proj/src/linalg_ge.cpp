#include <cmath>

#include "linalg_detail.hpp"

namespace kdgrid::linalg {

namespace {

using sim::Access;

WorkSpan factor(sim::Simulator& sim, const MatView& a, const grid::GridOptions& opt, ShapeTrace* trace,
                std::size_t offset, std::size_t depth) {
  const std::size_t n = a.rows;
  if (n == 0) return {};
  if (trace) ++trace->at(depth).calls;
  const std::size_t t = opt.base_threshold == 0 ? 1 : opt.base_threshold;
  if (n <= t) {
    std::uint64_t cells = 0;
    for (std::size_t k = 0; k < n; ++k) {
      const double p = sim.load(a.at(k, k));
      if (!(std::fabs(p) >= kPivotFloor)) throw SingularMatrix(offset + k);
      for (std::size_t i = k + 1; i < n; ++i) {
        const double l = sim.load(a.at(i, k), Access::update) / p;
        sim.store(a.at(i, k), l);
        for (std::size_t j = k + 1; j < n; ++j) {
          const double v = sim.load(a.at(i, j), Access::update) - l * sim.load(a.at(k, j));
          sim.store(a.at(i, j), v);
        }
        cells += n - k;
      }
    }
    return base_cost(cells);
  }
  if (trace) {
    trace->at(depth).recursive += 2;
    trace->at(depth).solves += 2;
    trace->at(depth).grids += 1;
  }
  const std::size_t h = first_half(n), r = n - h;
  MatView a00 = a.block(0, 0, h, h), a01 = a.block(0, h, h, r);
  MatView a10 = a.block(h, 0, r, h), a11 = a.block(h, h, r, r);
  WorkSpan ws = factor(sim, a00, opt, trace, offset, depth + 1);
  ws = seq({ws, par({solve_lower(sim, a00, a01, true, opt), solve_upper_right(sim, a00, a10, opt)})});
  ws = seq({ws, detail::multiply_into<detail::MinusTimes>(sim, a10, a01, a11, opt)});
  return seq({ws, factor(sim, a11, opt, trace, offset + h, depth + 1)});
}

}  // namespace

WorkSpan lu_in_place(sim::Simulator& sim, const MatView& a, const grid::GridOptions& opt, ShapeTrace* trace) {
  if (a.rows != a.cols) throw ContractViolation("factorization needs a square matrix");
  return factor(sim, a, opt, trace, 0, 0);
}

}  // namespace kdgrid::linalg
