#include "dp_common.hpp"
#include "kdgrid/dp.hpp"
#include "kdgrid/monoid.hpp"

namespace kdgrid::dp {

namespace {

using namespace detail;

struct Range {
  std::size_t lo, hi;  // [lo, hi)
  [[nodiscard]] std::size_t size() const { return hi - lo; }
};

class Parenthesis {
 public:
  Parenthesis(Simulator& sim, const ProblemInstance& in, const grid::GridOptions& opt, MatView d)
      : sim_(sim), in_(in), opt_(opt), d_(d), t_(threshold(opt)) {}

  // All pairs a <= i < j <= b.
  WorkSpan triangle(std::size_t a, std::size_t b) {
    if (b - a <= t_) {
      std::uint64_t cells = 0;
      for (std::size_t len = 2; len <= b - a; ++len)
        for (std::size_t i = a; i + len <= b; ++i) {
          const std::size_t j = i + len;
          Value acc = sim_.load(d_.at(i, j), Access::update);
          for (std::size_t k = i + 1; k < j; ++k)
            acc = MinOp{}(acc, sim_.load(d_.at(i, k)) + sim_.load(d_.at(k, j)) + in_.w3(i, k, j));
          sim_.store(d_.at(i, j), acc);
          cells += len - 1;
        }
      return base_cost(cells);
    }
    const std::size_t m = a + first_half(b - a);
    WorkSpan ws = par({triangle(a, m), triangle(m, b)});
    Range rows{a, m}, cols{m + 1, b + 1};
    ws = seq({ws, update(rows, cols, {m, m + 1})});
    return seq({ws, box(rows, cols)});
  }

 private:
  // Pairs (i, j) in rows x cols with every row below every column. Terms with
  // k strictly between the two ranges must already be applied.
  WorkSpan box(const Range& rows, const Range& cols) {
    if (rows.size() == 0 || cols.size() == 0) return {};
    if (rows.size() <= t_ && cols.size() <= t_) return box_base(rows, cols);
    const std::size_t im = rows.lo + first_half(rows.size());
    const std::size_t jm = cols.lo + first_half(cols.size());
    Range i0{rows.lo, im}, i1{im, rows.hi}, j0{cols.lo, jm}, j1{jm, cols.hi};

    WorkSpan ws = box(i1, j0);
    WorkSpan upper = seq({update(i0, j0, i1), box(i0, j0)});
    WorkSpan right = seq({update(i1, j1, j0), box(i1, j1)});
    ws = seq({ws, par({upper, right})});
    ws = seq({ws, seq({update(i0, j1, i1), update(i0, j1, j0)})});
    return seq({ws, box(i0, j1)});
  }

  WorkSpan box_base(const Range& rows, const Range& cols) {
    std::uint64_t cells = 0;
    for (std::size_t i = rows.hi; i-- > rows.lo;)
      for (std::size_t j = cols.lo; j < cols.hi; ++j) {
        Value acc = sim_.load(d_.at(i, j), Access::update);
        for (std::size_t k = i + 1; k < rows.hi; ++k)
          acc = MinOp{}(acc, sim_.load(d_.at(i, k)) + sim_.load(d_.at(k, j)) + in_.w3(i, k, j));
        for (std::size_t k = cols.lo; k < j; ++k)
          acc = MinOp{}(acc, sim_.load(d_.at(i, k)) + sim_.load(d_.at(k, j)) + in_.w3(i, k, j));
        sim_.store(d_.at(i, j), acc);
        cells += (rows.hi - i - 1) + (j - cols.lo);
      }
    return base_cost(cells);
  }

  // 3-d grid over (i, j, k): D[i][k] + D[k][j] + w(i,k,j) into D[i][j].
  WorkSpan update(const Range& rows, const Range& cols, const Range& mid) {
    if (rows.size() == 0 || cols.size() == 0 || mid.size() == 0) return {};
    const ProblemInstance& in = in_;
    const std::size_t i0 = rows.lo, j0 = cols.lo, k0 = mid.lo;
    auto g = [&in, i0, j0, k0](const std::array<Value, 2>& v, const Index<3>& c) {
      return v[0] + v[1] + in.w3(i0 + c[0], k0 + c[2], j0 + c[1]);
    };
    grid::GridSpec<3, decltype(g), grid::AllCells, MinOp> spec{
        {rows.size(), cols.size(), mid.size()}, g, {}, {}};
    // Input 0 drops i: indexed (j, k) -> D[k][j]. Input 1 drops j: (i, k) -> D[i][k].
    std::array<grid::View<2>, 2> inputs{d_.block(k0, j0, mid.size(), cols.size()).view_transposed(),
                                        d_.block(i0, k0, rows.size(), mid.size()).view()};
    return grid::compute_grid(sim_, spec, inputs, d_.block(i0, j0, rows.size(), cols.size()).view(), opt_);
  }

  Simulator& sim_;
  const ProblemInstance& in_;
  const grid::GridOptions& opt_;
  MatView d_;
  std::size_t t_;
};

}  // namespace

Result solve_parenthesis(Simulator& sim, const ProblemInstance& in, const grid::GridOptions& opt) {
  const std::size_t n = in.n, w = n + 1;
  MatView d = mat_view(sim.allocate_persistent({w, w}, sim::kInf, "D"));
  for (std::size_t i = 0; i + 1 <= n; ++i) sim.poke(d.at(i, i + 1), in.pair_init(i, i + 1));
  Result res;
  if (n >= 2) res.cost = Parenthesis(sim, in, opt, d).triangle(0, n);
  res.table = extract(sim, d);
  return res;
}

}  // namespace kdgrid::dp
