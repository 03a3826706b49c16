#include <cmath>

#include "linalg_detail.hpp"

namespace kdgrid::linalg {

namespace {

using sim::Access;

std::size_t threshold(const grid::GridOptions& opt) {
  return opt.base_threshold == 0 ? 1 : opt.base_threshold;
}

WorkSpan subtract_product(sim::Simulator& sim, const MatView& x, const MatView& y, const MatView& z,
                          const grid::GridOptions& opt) {
  return detail::multiply_into<detail::MinusTimes>(sim, x, y, z, opt);
}

class LowerSolve {
 public:
  LowerSolve(sim::Simulator& sim, bool unit, const grid::GridOptions& opt, ShapeTrace* trace)
      : sim_(sim), unit_(unit), opt_(opt), trace_(trace), t_(threshold(opt)) {}

  WorkSpan run(const MatView& tm, const MatView& b, std::size_t offset, std::size_t depth) {
    const std::size_t n = tm.rows, m = b.cols;
    if (n == 0 || m == 0) return {};
    if (trace_) ++trace_->at(depth).calls;
    if (n <= t_ && m <= t_) return base(tm, b, offset);
    if (n <= t_) {
      const std::size_t mh = first_half(m);
      if (trace_) trace_->at(depth).recursive += 2;
      return par({run(tm, b.block(0, 0, n, mh), offset, depth + 1),
                 run(tm, b.block(0, mh, n, m - mh), offset, depth + 1)});
    }
    const std::size_t nh = first_half(n), nr = n - nh;
    MatView t00 = tm.block(0, 0, nh, nh), t10 = tm.block(nh, 0, nr, nh), t11 = tm.block(nh, nh, nr, nr);
    if (m <= t_) {
      if (trace_) {
        trace_->at(depth).recursive += 2;
        trace_->at(depth).grids += 1;
      }
      MatView b0 = b.block(0, 0, nh, m), b1 = b.block(nh, 0, nr, m);
      WorkSpan ws = run(t00, b0, offset, depth + 1);
      ws = seq({ws, subtract_product(sim_, t10, b0, b1, opt_)});
      return seq({ws, run(t11, b1, offset + nh, depth + 1)});
    }
    if (trace_) {
      trace_->at(depth).recursive += 4;
      trace_->at(depth).grids += 2;
    }
    const std::size_t mh = first_half(m), mr = m - mh;
    MatView x00 = b.block(0, 0, nh, mh), x01 = b.block(0, mh, nh, mr);
    MatView b10 = b.block(nh, 0, nr, mh), b11 = b.block(nh, mh, nr, mr);
    WorkSpan ws = par({run(t00, x00, offset, depth + 1), run(t00, x01, offset, depth + 1)});
    ws = seq({ws, par({subtract_product(sim_, t10, x00, b10, opt_), subtract_product(sim_, t10, x01, b11, opt_)})});
    return seq({ws, par({run(t11, b10, offset + nh, depth + 1), run(t11, b11, offset + nh, depth + 1)})});
  }

 private:
  WorkSpan base(const MatView& tm, const MatView& b, std::size_t offset) {
    const std::size_t n = tm.rows, m = b.cols;
    for (std::size_t c = 0; c < m; ++c)
      for (std::size_t i = 0; i < n; ++i) {
        double x = sim_.load(b.at(i, c), Access::update);
        for (std::size_t l = 0; l < i; ++l) x -= sim_.load(tm.at(i, l)) * sim_.load(b.at(l, c));
        if (!unit_) {
          double d = sim_.load(tm.at(i, i));
          if (!(std::fabs(d) >= kPivotFloor)) throw SingularMatrix(offset + i);
          x /= d;
        }
        sim_.store(b.at(i, c), x);
      }
    return base_cost(static_cast<std::uint64_t>(m) * n * (n + 1) / 2);
  }

  sim::Simulator& sim_;
  bool unit_;
  const grid::GridOptions& opt_;
  ShapeTrace* trace_;
  std::size_t t_;
};

class UpperRightSolve {
 public:
  UpperRightSolve(sim::Simulator& sim, const grid::GridOptions& opt)
      : sim_(sim), opt_(opt), t_(threshold(opt)) {}

  WorkSpan run(const MatView& u, const MatView& b, std::size_t offset) {
    const std::size_t n = u.rows, m = b.rows;
    if (n == 0 || m == 0) return {};
    if (n <= t_ && m <= t_) return base(u, b, offset);
    if (n <= t_) {
      const std::size_t mh = first_half(m);
      return par({run(u, b.block(0, 0, mh, n), offset), run(u, b.block(mh, 0, m - mh, n), offset)});
    }
    const std::size_t nh = first_half(n), nr = n - nh;
    MatView u00 = u.block(0, 0, nh, nh), u01 = u.block(0, nh, nh, nr), u11 = u.block(nh, nh, nr, nr);
    if (m <= t_) {
      MatView b0 = b.block(0, 0, m, nh), b1 = b.block(0, nh, m, nr);
      WorkSpan ws = run(u00, b0, offset);
      ws = seq({ws, subtract_product(sim_, b0, u01, b1, opt_)});
      return seq({ws, run(u11, b1, offset + nh)});
    }
    const std::size_t mh = first_half(m), mr = m - mh;
    MatView x00 = b.block(0, 0, mh, nh), x10 = b.block(mh, 0, mr, nh);
    MatView b01 = b.block(0, nh, mh, nr), b11 = b.block(mh, nh, mr, nr);
    WorkSpan ws = par({run(u00, x00, offset), run(u00, x10, offset)});
    ws = seq({ws, par({subtract_product(sim_, x00, u01, b01, opt_), subtract_product(sim_, x10, u01, b11, opt_)})});
    return seq({ws, par({run(u11, b01, offset + nh), run(u11, b11, offset + nh)})});
  }

 private:
  WorkSpan base(const MatView& u, const MatView& b, std::size_t offset) {
    const std::size_t n = u.rows, m = b.rows;
    for (std::size_t r = 0; r < m; ++r)
      for (std::size_t j = 0; j < n; ++j) {
        double x = sim_.load(b.at(r, j), Access::update);
        for (std::size_t l = 0; l < j; ++l) x -= sim_.load(b.at(r, l)) * sim_.load(u.at(l, j));
        double d = sim_.load(u.at(j, j));
        if (!(std::fabs(d) >= kPivotFloor)) throw SingularMatrix(offset + j);
        sim_.store(b.at(r, j), x / d);
      }
    return base_cost(static_cast<std::uint64_t>(m) * n * (n + 1) / 2);
  }

  sim::Simulator& sim_;
  const grid::GridOptions& opt_;
  std::size_t t_;
};

}  // namespace

WorkSpan solve_lower(sim::Simulator& sim, const MatView& t, const MatView& b, bool unit_diagonal,
                     const grid::GridOptions& opt, ShapeTrace* trace) {
  if (t.rows != t.cols || b.rows != t.rows) throw ContractViolation("triangular solve shapes do not conform");
  return LowerSolve(sim, unit_diagonal, opt, trace).run(t, b, 0, 0);
}

WorkSpan solve_upper_right(sim::Simulator& sim, const MatView& u, const MatView& b,
                           const grid::GridOptions& opt) {
  if (u.rows != u.cols || b.cols != u.rows) throw ContractViolation("triangular solve shapes do not conform");
  return UpperRightSolve(sim, opt).run(u, b, 0);
}

}  // namespace kdgrid::linalg
