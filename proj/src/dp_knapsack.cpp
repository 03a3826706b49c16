#include "dp_common.hpp"
#include "kdgrid/dp.hpp"
#include "kdgrid/monoid.hpp"

namespace kdgrid::dp {

using namespace detail;

Result solve_knapsack(Simulator& sim, const ProblemInstance& in, const grid::GridOptions& opt) {
  const std::size_t n = in.n;
  auto a = sim.allocate_persistent({n + 1}, 0.0, "A");
  auto b = sim.allocate_persistent({n + 1}, 0.0, "B");
  auto d = sim.allocate_persistent({n + 1}, sim::kInf, "D");
  for (std::size_t j = 0; j <= n; ++j) {
    sim.poke(a.base() + j, in.a(j));
    sim.poke(b.base() + j, in.b(j));
  }
  const Address ab = a.base(), bb = b.base();
  // c[0] is the output index i, c[1] the split j; only j <= i contributes.
  auto cell = [&in, ab, bb](Simulator& s, const Index<2>& c) {
    const std::size_t i = c[0], j = c[1];
    return s.load(ab + j) + s.load(bb + (i - j)) + in.w3(j, i - j, i);
  };
  auto lower = [](const Index<2>& c) { return c[1] <= c[0]; };
  Result res;
  res.cost = grid::run_grid<2, MinOp>(sim, Index<2>{n + 1, n + 1}, cell, lower, Line{d.base()}, opt);
  res.table = extract(sim, {d.base(), 1, n + 1, n + 1});
  return res;
}

}  // namespace kdgrid::dp
