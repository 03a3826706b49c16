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

struct BlockOut {
  MatView m;
  [[nodiscard]] Address address(const Index<2>& c) const { return m.at(c[0], c[1]); }
};

class GapBaseline {
 public:
  GapBaseline(Simulator& sim, const ProblemInstance& in, const grid::GridOptions& opt, MatView d)
      : sim_(sim), in_(in), opt_(opt), d_(d), t_(threshold(opt)) {}

  WorkSpan solve(const Block& b) {
    if (b.empty()) return {};
    if (b.r1 - b.r0 <= t_ && b.c1 - b.c0 <= t_) return base(b);
    const std::size_t rm = b.r0 + first_half(b.r1 - b.r0);
    const std::size_t cm = b.c0 + first_half(b.c1 - b.c0);
    Block q00{b.r0, rm, b.c0, cm}, q01{b.r0, rm, cm, b.c1};
    Block q10{rm, b.r1, b.c0, cm}, q11{rm, b.r1, cm, b.c1};

    WorkSpan ws = solve(q00);
    ws = seq({ws, par({rows_from(q01, b.c0, cm), cols_from(q10, b.r0, rm)})});
    ws = seq({ws, par({solve(q01), solve(q10)})});
    ws = seq({ws, seq({rows_from(q11, b.c0, cm), cols_from(q11, b.r0, rm)})});
    return seq({ws, solve(q11)});
  }

 private:
  WorkSpan base(const Block& b) {
    std::uint64_t cells = 0;
    for (std::size_t i = b.r0; i < b.r1; ++i)
      for (std::size_t j = b.c0; j < b.c1; ++j) {
        if (i == 0 || j == 0) continue;
        Value acc = sim_.load(d_.at(i, j), Access::update);
        for (std::size_t q = b.c0; q < j; ++q) acc = MinOp{}(acc, sim_.load(d_.at(i, q)) + in_.w_alt(q, j));
        for (std::size_t p = b.r0; p < i; ++p) acc = MinOp{}(acc, sim_.load(d_.at(p, j)) + in_.w(p, i));
        acc = MinOp{}(acc, sim_.load(d_.at(i - 1, j - 1)) + in_.diag(i, j));
        sim_.store(d_.at(i, j), acc);
        cells += (j - b.c0) + (i - b.r0) + 1;
      }
    return base_cost(cells);
  }

  // Cells (i, j, q): D[i][q] + w'(q, j) into D[i][j], q in [q0, q1).
  WorkSpan rows_from(const Block& t, std::size_t q0, std::size_t q1) {
    if (t.empty() || q0 >= q1) return {};
    const MatView d = d_;
    const ProblemInstance& in = in_;
    const std::size_t r0 = t.r0, c0 = t.c0;
    auto cell = [d, &in, r0, c0, q0](Simulator& s, const Index<3>& c) {
      const std::size_t i = r0 + c[0], j = c0 + c[1], q = q0 + c[2];
      return s.load(d.at(i, q)) + in.w_alt(q, j);
    };
    auto live = [r0](const Index<3>& c) { return r0 + c[0] != 0; };
    return grid::run_grid<3, MinOp>(sim_, Index<3>{t.r1 - t.r0, t.c1 - t.c0, q1 - q0}, cell, live,
                                    BlockOut{d_.block(t.r0, t.c0, t.r1 - t.r0, t.c1 - t.c0)}, opt_);
  }

  // Cells (i, j, p): D[p][j] + w(p, i) into D[i][j], p in [p0, p1).
  WorkSpan cols_from(const Block& t, std::size_t p0, std::size_t p1) {
    if (t.empty() || p0 >= p1) return {};
    const MatView d = d_;
    const ProblemInstance& in = in_;
    const std::size_t r0 = t.r0, c0 = t.c0;
    auto cell = [d, &in, r0, c0, p0](Simulator& s, const Index<3>& c) {
      const std::size_t i = r0 + c[0], j = c0 + c[1], p = p0 + c[2];
      return s.load(d.at(p, j)) + in.w(p, i);
    };
    auto live = [c0](const Index<3>& c) { return c0 + c[1] != 0; };
    return grid::run_grid<3, MinOp>(sim_, Index<3>{t.r1 - t.r0, t.c1 - t.c0, p1 - p0}, cell, live,
                                    BlockOut{d_.block(t.r0, t.c0, t.r1 - t.r0, t.c1 - t.c0)}, opt_);
  }

  Simulator& sim_;
  const ProblemInstance& in_;
  const grid::GridOptions& opt_;
  MatView d_;
  std::size_t t_;
};

}  // namespace

Result solve_gap_baseline(Simulator& sim, const ProblemInstance& in, const grid::GridOptions& opt) {
  const std::size_t n = in.n, w = n + 1;
  MatView d = mat_view(sim.allocate_persistent({w, w}, sim::kInf, "D"));
  sim.poke(d.at(0, 0), in.origin);
  for (std::size_t j = 1; j <= n; ++j) sim.poke(d.at(0, j), in.w(0, j));
  for (std::size_t i = 1; i <= n; ++i) sim.poke(d.at(i, 0), in.w_alt(0, i));
  Result res;
  res.cost = GapBaseline(sim, in, opt, d).solve({0, w, 0, w});
  res.table = extract(sim, d);
  return res;
}

}  // namespace kdgrid::dp
