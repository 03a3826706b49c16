#include "dp_common.hpp"
#include "kdgrid/dp.hpp"
#include "kdgrid/monoid.hpp"

namespace kdgrid::dp {

namespace {

using namespace detail;

struct Block {
  std::size_t r0, r1, c0, c1;
  [[nodiscard]] bool empty() const { return r0 >= r1 || c0 >= c1; }
  [[nodiscard]] std::size_t width() const { return c1 - c0; }
  [[nodiscard]] std::size_t size() const { return (r1 - r0) * (c1 - c0); }
};

// Row-major flattening of a block; entry f is (r0 + f / width, c0 + f % width).
struct Flat {
  MatView d;
  Block b;
  [[nodiscard]] Address address(const Index<1>& f) const {
    return d.at(b.r0 + f[0] / b.width(), b.c0 + f[0] % b.width());
  }
};

class Rna {
 public:
  Rna(Simulator& sim, const ProblemInstance& in, const grid::GridOptions& opt, MatView d)
      : sim_(sim), in_(in), opt_(opt), d_(d), t_(threshold(opt)) {}

  WorkSpan solve(const Block& b) {
    if (b.empty()) return {};
    if (b.r1 - b.r0 <= t_ && b.c1 - b.c0 <= t_) return base(b);
    const std::size_t rm = b.r0 + first_half(b.r1 - b.r0);
    const std::size_t cm = b.c0 + first_half(b.c1 - b.c0);
    Block q00{b.r0, rm, b.c0, cm}, q01{b.r0, rm, cm, b.c1};
    Block q10{rm, b.r1, b.c0, cm}, q11{rm, b.r1, cm, b.c1};

    WorkSpan ws = solve(q00);
    ws = seq({ws, par({par({update(q00, q01), update(q00, q10)}), update(q00, q11)})});
    ws = seq({ws, par({solve(q01), solve(q10)})});
    ws = seq({ws, seq({update(q01, q11), update(q10, q11)})});
    return seq({ws, solve(q11)});
  }

 private:
  WorkSpan base(const Block& b) {
    std::uint64_t cells = 0;
    for (std::size_t i = b.r0; i < b.r1; ++i)
      for (std::size_t j = b.c0; j < b.c1; ++j) {
        if (i == 0 || j == 0) continue;
        Value acc = sim_.load(d_.at(i, j), Access::update);
        for (std::size_t p = b.r0; p < i; ++p)
          for (std::size_t q = b.c0; q < j; ++q)
            acc = MinOp{}(acc, sim_.load(d_.at(p, q)) + in_.w4(p, q, i, j));
        sim_.store(d_.at(i, j), acc);
        cells += (i - b.r0) * (j - b.c0);
      }
    return base_cost(cells);
  }

  // Contributions from every entry of src to every entry of dst, as a 2-d
  // grid over flattened (target, source) pairs with p < i and q < j.
  WorkSpan update(const Block& src, const Block& dst) {
    if (src.empty() || dst.empty()) return {};
    const MatView d = d_;
    const ProblemInstance& in = in_;
    const Block s = src, t = dst;
    auto cell = [d, &in, s, t](Simulator& sm, const Index<2>& c) {
      const std::size_t i = t.r0 + c[0] / t.width(), j = t.c0 + c[0] % t.width();
      const std::size_t p = s.r0 + c[1] / s.width(), q = s.c0 + c[1] % s.width();
      return sm.load(d.at(p, q)) + in.w4(p, q, i, j);
    };
    auto live = [s, t](const Index<2>& c) {
      return s.r0 + c[1] / s.width() < t.r0 + c[0] / t.width() &&
             s.c0 + c[1] % s.width() < t.c0 + c[0] % t.width();
    };
    return grid::run_grid<2, MinOp>(sim_, Index<2>{t.size(), s.size()}, cell, live, Flat{d_, t}, opt_);
  }

  Simulator& sim_;
  const ProblemInstance& in_;
  const grid::GridOptions& opt_;
  MatView d_;
  std::size_t t_;
};

}  // namespace

Result solve_rna(Simulator& sim, const ProblemInstance& in, const grid::GridOptions& opt) {
  const std::size_t n = in.n, w = n + 1;
  MatView d = mat_view(sim.allocate_persistent({w, w}, sim::kInf, "D"));
  sim.poke(d.at(0, 0), in.origin);
  for (std::size_t j = 1; j <= n; ++j) sim.poke(d.at(0, j), in.edge(0, j));
  for (std::size_t i = 1; i <= n; ++i) sim.poke(d.at(i, 0), in.edge(0, i));
  Result res;
  res.cost = Rna(sim, in, opt, d).solve({0, w, 0, w});
  res.table = extract(sim, d);
  return res;
}

}  // namespace kdgrid::dp
