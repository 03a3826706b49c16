#include "dp_common.hpp"
#include "kdgrid/dp.hpp"
#include "kdgrid/monoid.hpp"

namespace kdgrid::dp {

namespace {

using namespace detail;

class Lws {
 public:
  Lws(Simulator& sim, const ProblemInstance& in, const grid::GridOptions& opt, Address d)
      : sim_(sim), in_(in), opt_(opt), d_(d), t_(threshold(opt)) {}

  // Finishes D[p..q] given all contributions from indices below p.
  WorkSpan solve(std::size_t p, std::size_t q) {
    const std::size_t len = q - p + 1;
    if (len <= t_) {
      std::uint64_t cells = 0;
      for (std::size_t j = p + 1; j <= q; ++j) {
        Value acc = sim_.load(d_ + j, Access::update);
        for (std::size_t i = p; i < j; ++i) acc = MinOp{}(acc, sim_.load(d_ + i) + in_.w(i, j));
        sim_.store(d_ + j, acc);
        cells += j - p;
      }
      return base_cost(cells);
    }
    const std::size_t r = p + first_half(len) - 1;
    WorkSpan left = solve(p, r);
    WorkSpan across = cross(p, r, q);
    return seq({seq({left, across}), solve(r + 1, q)});
  }

 private:
  // Contributions from D[p..r] to D[r+1..q].
  WorkSpan cross(std::size_t p, std::size_t r, std::size_t q) {
    const Address d = d_;
    const ProblemInstance& in = in_;
    auto cell = [d, &in, p, r](Simulator& s, const Index<2>& c) {
      const std::size_t i = p + c[1], j = r + 1 + c[0];
      return s.load(d + i) + in.w(i, j);
    };
    return grid::run_grid<2, MinOp>(sim_, Index<2>{q - r, r - p + 1}, cell, grid::AllCells{},
                                    Line{d_ + r + 1}, opt_);
  }

  Simulator& sim_;
  const ProblemInstance& in_;
  const grid::GridOptions& opt_;
  Address d_;
  std::size_t t_;
};

}  // namespace

Result solve_lws(Simulator& sim, const ProblemInstance& in, const grid::GridOptions& opt) {
  const std::size_t n = in.n;
  auto d = sim.allocate_persistent({n + 1}, sim::kInf, "D");
  sim.poke(d.base(), in.origin);
  Result res;
  if (n > 0) res.cost = Lws(sim, in, opt, d.base()).solve(0, n);
  res.table = extract(sim, {d.base(), 1, n + 1, n + 1});
  return res;
}

}  // namespace kdgrid::dp
