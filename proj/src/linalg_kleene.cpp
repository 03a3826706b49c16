#include "linalg_detail.hpp"

namespace kdgrid::linalg {

namespace {

using sim::Access;

WorkSpan closure(sim::Simulator& sim, const MatView& a, const grid::GridOptions& opt,
                 ShapeTrace* trace, std::size_t depth) {
  const std::size_t n = a.rows;
  if (trace) ++trace->at(depth).calls;
  if (n == 0) return {};
  const std::size_t t = opt.base_threshold == 0 ? 1 : opt.base_threshold;
  if (n <= t) {
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
          double via = sim.load(a.at(i, k)) + sim.load(a.at(k, j));
          double cur = sim.load(a.at(i, j), Access::update);
          if (via < cur) cur = via;
          sim.store(a.at(i, j), cur);
        }
    return base_cost(static_cast<std::uint64_t>(n) * n * n);
  }
  if (trace) {
    trace->at(depth).recursive += 2;
    trace->at(depth).grids += 6;
  }
  const std::size_t h = first_half(n), r = n - h;
  MatView a00 = a.block(0, 0, h, h), a01 = a.block(0, h, h, r);
  MatView a10 = a.block(h, 0, r, h), a11 = a.block(h, h, r, r);
  auto mm = [&](const MatView& x, const MatView& y, const MatView& z) {
    return detail::multiply_into<MinPlus>(sim, x, y, z, opt);
  };
  WorkSpan ws = closure(sim, a00, opt, trace, depth + 1);
  ws = seq({ws, par({mm(a00, a01, a01), mm(a10, a00, a10)})});
  ws = seq({ws, mm(a10, a01, a11)});
  ws = seq({ws, closure(sim, a11, opt, trace, depth + 1)});
  ws = seq({ws, par({mm(a01, a11, a01), mm(a11, a10, a10)})});
  return seq({ws, mm(a01, a10, a00)});
}

}  // namespace

WorkSpan kleene(sim::Simulator& sim, const MatView& a, const grid::GridOptions& opt, ShapeTrace* trace) {
  if (a.rows != a.cols) throw ContractViolation("closure needs a square matrix");
  return closure(sim, a, opt, trace, 0);
}

}  // namespace kdgrid::linalg
