#include "dp_common.hpp"
#include "kdgrid/dp.hpp"
#include "kdgrid/monoid.hpp"

namespace kdgrid::dp {

namespace {

using namespace detail;

class Accordion {
 public:
  Accordion(Simulator& sim, const ProblemInstance& in, const grid::GridOptions& opt, MatView rows,
            MatView cols)
      : sim_(sim), in_(in), opt_(opt), rows_(rows), cols_(cols), n_(in.n) {}

  // Columns j in [a, b). Row j-1 of the row copy must already hold every
  // column below a.
  WorkSpan tasks(std::size_t a, std::size_t b) {
    if (b - a == 1) return task(a);
    const std::size_t m = a + first_half(b - a);
    WorkSpan first = tasks(a, m);
    // Columns [a, m) of rows [m-1, b-1) are what the second half reads.
    MatView src = cols_.block(a, m - 1, m - a, b - m);
    MatView dst = rows_.block(m - 1, a, b - m, m - a);
    WorkSpan move = transpose_merge<MaxOp>(sim_, src, dst, threshold(opt_));
    return seq({seq({first, move}), tasks(m, b)});
  }

 private:
  // Column j: outputs i in (j, n], inputs k in [1, j-1).
  WorkSpan task(std::size_t j) {
    if (j + 1 > n_ || j < 3) return {};
    const Address in_row = rows_.at(j - 1, 1);
    const ProblemInstance& in = in_;
    auto cell = [in_row, &in, j](Simulator& s, const Index<2>& c) {
      return s.load(in_row + c[1]) + in.w3(j + 1 + c[0], j, 1 + c[1]);
    };
    return grid::run_grid<2, MaxOp>(sim_, Index<2>{n_ - j, j - 2}, cell, grid::AllCells{},
                                    Line{cols_.at(j, j + 1)}, opt_);
  }

  Simulator& sim_;
  const ProblemInstance& in_;
  const grid::GridOptions& opt_;
  MatView rows_, cols_;
  std::size_t n_;
};

}  // namespace

Result solve_accordion(Simulator& sim, const ProblemInstance& in, const grid::GridOptions& opt) {
  const std::size_t n = in.n, w = n + 1;
  const Value ninf = MaxOp::identity();
  MatView rows = mat_view(sim.allocate_persistent({w, w}, ninf, "D"));
  MatView cols = mat_view(sim.allocate_persistent({w, w}, ninf, "D^T"));
  for (std::size_t i = 2; i <= n; ++i) {
    sim.poke(rows.at(i, 1), in.first_column(i));
    sim.poke(cols.at(1, i), in.first_column(i));
  }
  Result res;
  if (n >= 2) res.cost = Accordion(sim, in, opt, rows, cols).tasks(2, n + 1);
  res.table = Table(w, w, ninf);
  for (std::size_t j = 1; j <= n; ++j)
    for (std::size_t i = j + 1; i <= n; ++i) res.table.at(i, j) = sim.peek(cols.at(j, i));
  return res;
}

}  // namespace kdgrid::dp
