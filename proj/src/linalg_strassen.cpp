#include <cmath>

#include "linalg_detail.hpp"

namespace kdgrid::linalg {

namespace {

using sim::Access;

bool power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

class Strassen {
 public:
  Strassen(sim::Simulator& sim, std::size_t threshold) : sim_(sim), t_(threshold) {}

  // C += A B with A h x (r h), B (r h) x h, C h x h.
  WorkSpan product(const MatView& a, const MatView& b, const MatView& c) {
    const std::size_t h = c.rows;
    if (h <= t_ || h % 2 != 0) return classic(a, b, c);
    const std::size_t hh = h / 2, kk = a.cols / 2;
    MatView a11 = a.block(0, 0, hh, kk), a12 = a.block(0, kk, hh, kk);
    MatView a21 = a.block(hh, 0, hh, kk), a22 = a.block(hh, kk, hh, kk);
    MatView b11 = b.block(0, 0, kk, hh), b12 = b.block(0, hh, kk, hh);
    MatView b21 = b.block(kk, 0, kk, hh), b22 = b.block(kk, hh, kk, hh);
    MatView c11 = c.block(0, 0, hh, hh), c12 = c.block(0, hh, hh, hh);
    MatView c21 = c.block(hh, 0, hh, hh), c22 = c.block(hh, hh, hh, hh);

    WorkSpan prods, adds;
    auto step = [&](MatView x, MatView y, std::initializer_list<std::pair<MatView, double>> into) {
      auto m = sim_.allocate({hh, hh});
      MatView mv = mat_view(m);
      prods = par({prods, product(x, y, mv)});
      for (const auto& [dst, sign] : into) adds = seq({adds, accumulate(dst, mv, sign)});
      sim_.release(m);
    };
    // Each operand sum lives in its own temporary for the duration of one product.
    auto with_sum = [&](MatView x, MatView y, double sign, auto&& body) {
      auto s = sim_.allocate({x.rows, x.cols});
      MatView sv = mat_view(s);
      adds = seq({adds, combine(x, y, sign, sv)});
      body(sv);
      sim_.release(s);
    };

    with_sum(a11, a22, 1, [&](MatView s) {
      with_sum(b11, b22, 1, [&](MatView t) { step(s, t, {{c11, 1}, {c22, 1}}); });
    });
    with_sum(a21, a22, 1, [&](MatView s) { step(s, b11, {{c21, 1}, {c22, -1}}); });
    with_sum(b12, b22, -1, [&](MatView t) { step(a11, t, {{c12, 1}, {c22, 1}}); });
    with_sum(b21, b11, -1, [&](MatView t) { step(a22, t, {{c11, 1}, {c21, 1}}); });
    with_sum(a11, a12, 1, [&](MatView s) { step(s, b22, {{c11, -1}, {c12, 1}}); });
    with_sum(a21, a11, -1, [&](MatView s) {
      with_sum(b11, b12, 1, [&](MatView t) { step(s, t, {{c22, 1}}); });
    });
    with_sum(a12, a22, -1, [&](MatView s) {
      with_sum(b21, b22, 1, [&](MatView t) { step(s, t, {{c11, 1}}); });
    });
    return seq({prods, {0, adds.span}});
  }

  std::uint64_t multiplications = 0;
  std::uint64_t additions = 0;

 private:
  WorkSpan classic(const MatView& a, const MatView& b, const MatView& c) {
    for (std::size_t i = 0; i < c.rows; ++i)
      for (std::size_t j = 0; j < c.cols; ++j) {
        double acc = sim_.load(c.at(i, j), Access::update);
        for (std::size_t k = 0; k < a.cols; ++k) acc += sim_.load(a.at(i, k)) * sim_.load(b.at(k, j));
        sim_.store(c.at(i, j), acc);
      }
    const std::uint64_t cells = static_cast<std::uint64_t>(c.rows) * c.cols * a.cols;
    multiplications += cells;
    return base_cost(cells);
  }

  // out = x + sign * y
  WorkSpan combine(const MatView& x, const MatView& y, double sign, const MatView& out) {
    for (std::size_t i = 0; i < x.rows; ++i)
      for (std::size_t j = 0; j < x.cols; ++j)
        sim_.store(out.at(i, j), sim_.load(x.at(i, j), Access::update) + sign * sim_.load(y.at(i, j), Access::update));
    const std::uint64_t m = static_cast<std::uint64_t>(x.rows) * x.cols;
    additions += m;
    return merge_cost(m);
  }

  // dst += sign * src
  WorkSpan accumulate(const MatView& dst, const MatView& src, double sign) {
    for (std::size_t i = 0; i < dst.rows; ++i)
      for (std::size_t j = 0; j < dst.cols; ++j) {
        double v = sim_.load(dst.at(i, j), Access::update) + sign * sim_.load(src.at(i, j), Access::update);
        sim_.store(dst.at(i, j), v);
      }
    const std::uint64_t m = static_cast<std::uint64_t>(dst.rows) * dst.cols;
    additions += m;
    return merge_cost(m);
  }

  sim::Simulator& sim_;
  std::size_t t_;
};

}  // namespace

std::size_t strassen_tile_factor(double omega, std::size_t n) {
  if (!(omega >= 1.0)) throw ContractViolation("write cost must be >= 1");
  const double exponent = std::log(4.0) / std::log(7.0) * std::log2(omega);
  std::size_t r = std::size_t{1} << static_cast<unsigned>(std::lround(exponent));
  if (n == 0) return 1;
  return std::min(r, n);
}

StrassenStats strassen_asym(sim::Simulator& sim, const MatView& a, const MatView& b, const MatView& c,
                            double omega, std::size_t threshold) {
  const std::size_t n = a.rows;
  if (a.cols != n || b.rows != n || b.cols != n || c.rows != n || c.cols != n)
    throw ContractViolation("strassen needs square matrices of equal size");
  if (!power_of_two(n)) throw ContractViolation("strassen needs a power-of-two size");
  StrassenStats st;
  st.tile_factor = strassen_tile_factor(omega, n);
  const std::size_t r = st.tile_factor, s = n / r;
  Strassen run(sim, threshold);
  WorkSpan ws;
  for (std::size_t ti = 0; ti < r; ++ti)
    for (std::size_t tj = 0; tj < r; ++tj)
      ws = par({ws, run.product(a.block(ti * s, 0, s, n), b.block(0, tj * s, n, s), c.block(ti * s, tj * s, s, s))});
  st.multiplications = run.multiplications;
  st.additions = run.additions;
  st.cost = {run.multiplications, ws.span};
  return st;
}

}  // namespace kdgrid::linalg
