#include <vector>

#include "dp_common.hpp"
#include "kdgrid/dp.hpp"
#include "kdgrid/monoid.hpp"

namespace kdgrid::dp {

namespace {

using namespace detail;

struct Block {
  std::size_t r0, r1, c0, c1;
  [[nodiscard]] bool empty() const { return r0 >= r1 || c0 >= c1; }
};

// rows_[i][j] and cols_[j][i] both hold D[i][j]. Row terms read rows_,
// column terms read cols_; quadrant boundaries reconcile the two.
class Gap {
 public:
  Gap(Simulator& sim, const ProblemInstance& in, const grid::GridOptions& opt, MatView rows,
      MatView cols)
      : sim_(sim), in_(in), opt_(opt), rows_(rows), cols_(cols), t_(threshold(opt)) {}

  // Requires every contribution from outside the block already applied to
  // both copies.
  WorkSpan solve(const Block& b) {
    if (b.empty()) return {};
    if (b.r1 - b.r0 <= t_ && b.c1 - b.c0 <= t_) return base(b);
    const std::size_t rm = b.r0 + first_half(b.r1 - b.r0);
    const std::size_t cm = b.c0 + first_half(b.c1 - b.c0);
    Block q00{b.r0, rm, b.c0, cm}, q01{b.r0, rm, cm, b.c1};
    Block q10{rm, b.r1, b.c0, cm}, q11{rm, b.r1, cm, b.c1};

    WorkSpan ws = solve(q00);
    WorkSpan right = seq({row_updates(q01, b.c0, cm), to_cols(q01)});
    WorkSpan down = seq({col_updates(q10, b.r0, rm), to_rows(q10)});
    ws = seq({ws, par({right, down})});
    ws = seq({ws, par({solve(q01), solve(q10)})});
    ws = seq({ws, par({row_updates(q11, b.c0, cm), col_updates(q11, b.r0, rm)})});
    ws = seq({ws, reconcile<MinOp>(sim_, rows_.block(q11.r0, q11.c0, q11.r1 - q11.r0, q11.c1 - q11.c0),
                                  cols_.block(q11.c0, q11.r0, q11.c1 - q11.c0, q11.r1 - q11.r0), t_)});
    return seq({ws, solve(q11)});
  }

 private:
  WorkSpan base(const Block& b) {
    std::uint64_t cells = 0;
    for (std::size_t i = b.r0; i < b.r1; ++i)
      for (std::size_t j = b.c0; j < b.c1; ++j) {
        if (i == 0 || j == 0) continue;
        Value acc = sim_.load(rows_.at(i, j), Access::update);
        for (std::size_t q = b.c0; q < j; ++q) acc = MinOp{}(acc, sim_.load(rows_.at(i, q)) + in_.w_alt(q, j));
        for (std::size_t p = b.r0; p < i; ++p) acc = MinOp{}(acc, sim_.load(cols_.at(j, p)) + in_.w(p, i));
        acc = MinOp{}(acc, sim_.load(rows_.at(i - 1, j - 1)) + in_.diag(i, j));
        sim_.store(rows_.at(i, j), acc);
        sim_.store(cols_.at(j, i), acc);
        cells += (j - b.c0) + (i - b.r0) + 1;
      }
    return base_cost(cells);
  }

  // For each row of `t`, columns [q0, q1) feed columns [t.c0, t.c1).
  WorkSpan row_updates(const Block& t, std::size_t q0, std::size_t q1) {
    WorkSpan ws;
    const ProblemInstance& in = in_;
    for (std::size_t i = t.r0; i < t.r1; ++i) {
      if (i == 0) continue;
      const Address src = rows_.at(i, q0);
      const std::size_t c0 = t.c0;
      auto cell = [src, &in, q0, c0](Simulator& s, const Index<2>& c) {
        return s.load(src + c[1]) + in.w_alt(q0 + c[1], c0 + c[0]);
      };
      ws = par({ws, grid::run_grid<2, MinOp>(sim_, Index<2>{t.c1 - t.c0, q1 - q0}, cell,
                                            grid::AllCells{}, Line{rows_.at(i, t.c0)}, opt_)});
    }
    return ws;
  }

  // For each column of `t`, rows [p0, p1) feed rows [t.r0, t.r1).
  WorkSpan col_updates(const Block& t, std::size_t p0, std::size_t p1) {
    WorkSpan ws;
    const ProblemInstance& in = in_;
    for (std::size_t j = t.c0; j < t.c1; ++j) {
      if (j == 0) continue;
      const Address src = cols_.at(j, p0);
      const std::size_t r0 = t.r0;
      auto cell = [src, &in, p0, r0](Simulator& s, const Index<2>& c) {
        return s.load(src + c[1]) + in.w(p0 + c[1], r0 + c[0]);
      };
      ws = par({ws, grid::run_grid<2, MinOp>(sim_, Index<2>{t.r1 - t.r0, p1 - p0}, cell,
                                            grid::AllCells{}, Line{cols_.at(j, t.r0)}, opt_)});
    }
    return ws;
  }

  WorkSpan to_cols(const Block& b) {
    return transpose_merge<MinOp>(sim_, rows_.block(b.r0, b.c0, b.r1 - b.r0, b.c1 - b.c0),
                                  cols_.block(b.c0, b.r0, b.c1 - b.c0, b.r1 - b.r0), t_);
  }
  WorkSpan to_rows(const Block& b) {
    return transpose_merge<MinOp>(sim_, cols_.block(b.c0, b.r0, b.c1 - b.c0, b.r1 - b.r0),
                                  rows_.block(b.r0, b.c0, b.r1 - b.r0, b.c1 - b.c0), t_);
  }

  Simulator& sim_;
  const ProblemInstance& in_;
  const grid::GridOptions& opt_;
  MatView rows_, cols_;
  std::size_t t_;
};

}  // namespace

Result solve_gap(Simulator& sim, const ProblemInstance& in, const grid::GridOptions& opt) {
  const std::size_t n = in.n, w = n + 1;
  MatView rows = mat_view(sim.allocate_persistent({w, w}, sim::kInf, "D"));
  MatView cols = mat_view(sim.allocate_persistent({w, w}, sim::kInf, "D^T"));
  auto set = [&](std::size_t i, std::size_t j, Value v) {
    sim.poke(rows.at(i, j), v);
    sim.poke(cols.at(j, i), v);
  };
  set(0, 0, in.origin);
  for (std::size_t j = 1; j <= n; ++j) set(0, j, in.w(0, j));
  for (std::size_t i = 1; i <= n; ++i) set(i, 0, in.w_alt(0, i));
  Result res;
  res.cost = Gap(sim, in, opt, rows, cols).solve({0, w, 0, w});
  res.table = extract(sim, rows);
  return res;
}

}  // namespace kdgrid::dp
