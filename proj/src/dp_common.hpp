#pragma once

#include "kdgrid/cache_sim.hpp"
#include "kdgrid/grid_engine.hpp"
#include "kdgrid/instance.hpp"
#include "kdgrid/matrix_view.hpp"
#include "kdgrid/work_span.hpp"

namespace kdgrid::dp::detail {

using grid::Index;
using sim::Access;
using sim::Address;
using sim::Simulator;
using sim::Value;

// 1-d output map over contiguous entries.
struct Line {
  Address base;
  [[nodiscard]] Address address(const Index<1>& c) const { return base + c[0]; }
};

// dst^T = Op(dst^T, src), divide and conquer on the larger side.
// dst is src.cols x src.rows.
template <class Op>
WorkSpan transpose_merge(Simulator& sim, const MatView& src, const MatView& dst, std::size_t base) {
  if (src.empty()) return {};
  if (src.rows <= base && src.cols <= base) {
    for (std::size_t i = 0; i < src.rows; ++i)
      for (std::size_t j = 0; j < src.cols; ++j) {
        Value s = sim.load(src.at(i, j), Access::update);
        Value d = sim.load(dst.at(j, i), Access::update);
        sim.store(dst.at(j, i), Op{}(d, s));
      }
    return base_cost(src.rows * src.cols);
  }
  if (src.rows >= src.cols) {
    std::size_t h = first_half(src.rows);
    return par({transpose_merge<Op>(sim, src.block(0, 0, h, src.cols), dst.block(0, 0, dst.rows, h), base),
               transpose_merge<Op>(sim, src.block(h, 0, src.rows - h, src.cols),
                                   dst.block(0, h, dst.rows, src.rows - h), base)});
  }
  std::size_t h = first_half(src.cols);
  return par({transpose_merge<Op>(sim, src.block(0, 0, src.rows, h), dst.block(0, 0, h, dst.cols), base),
             transpose_merge<Op>(sim, src.block(0, h, src.rows, src.cols - h),
                                 dst.block(h, 0, src.cols - h, dst.cols), base)});
}

// Makes a and b^T agree on Op(a, b^T). b is a.cols x a.rows.
template <class Op>
WorkSpan reconcile(Simulator& sim, const MatView& a, const MatView& b, std::size_t base) {
  if (a.empty()) return {};
  if (a.rows <= base && a.cols <= base) {
    for (std::size_t i = 0; i < a.rows; ++i)
      for (std::size_t j = 0; j < a.cols; ++j) {
        Value x = sim.load(a.at(i, j), Access::update);
        Value y = sim.load(b.at(j, i), Access::update);
        Value v = Op{}(x, y);
        sim.store(a.at(i, j), v);
        sim.store(b.at(j, i), v);
      }
    return base_cost(a.rows * a.cols);
  }
  if (a.rows >= a.cols) {
    std::size_t h = first_half(a.rows);
    return par({reconcile<Op>(sim, a.block(0, 0, h, a.cols), b.block(0, 0, b.rows, h), base),
               reconcile<Op>(sim, a.block(h, 0, a.rows - h, a.cols), b.block(0, h, b.rows, a.rows - h),
                             base)});
  }
  std::size_t h = first_half(a.cols);
  return par({reconcile<Op>(sim, a.block(0, 0, a.rows, h), b.block(0, 0, h, b.cols), base),
             reconcile<Op>(sim, a.block(0, h, a.rows, a.cols - h), b.block(h, 0, a.cols - h, b.cols),
                           base)});
}

[[nodiscard]] Table extract(const Simulator& sim, const MatView& m);

[[nodiscard]] inline std::size_t threshold(const grid::GridOptions& opt) {
  return opt.base_threshold == 0 ? 1 : opt.base_threshold;
}

}  // namespace kdgrid::dp::detail
