#include <array>
#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include "doctest.h"
#include "kdgrid/grid_engine.hpp"
#include "kdgrid/instance.hpp"
#include "kdgrid/monoid.hpp"

using namespace kdgrid;
using namespace kdgrid::grid;
using sim::CacheConfig;
using sim::Simulator;
using sim::Value;

namespace {

GridOptions opts(SplitPolicy p, Execution e, std::size_t t = 8) {
  GridOptions o;
  o.policy = p;
  o.execution = e;
  o.base_threshold = t;
  return o;
}

std::vector<GridOptions> all_options() {
  std::vector<GridOptions> v;
  for (auto p : {SplitPolicy::classic(), SplitPolicy::asymmetric(8), SplitPolicy::asymmetric(3.5),
                 SplitPolicy::asymmetric(64)})
    for (auto e : {Execution::sequential, Execution::parallel})
      for (std::size_t t : {1, 2, 8}) v.push_back(opts(p, e, t));
  return v;
}

template <std::size_t D>
std::vector<std::size_t> shape_of(const Index<D>& i) {
  return {i.begin(), i.end()};
}

// Random integer grid of any rank with a hash mask; evaluated through the
// engine and by a plain loop nest.
template <std::size_t K, class Op>
struct RandomGrid {
  Index<K> extents;
  std::uint64_t seed;
  std::uint64_t mask_mod;  // cell kept iff hash % mask_mod == 0

  std::vector<std::vector<Value>> inputs() const {
    std::vector<std::vector<Value>> in(K - 1);
    for (std::size_t m = 0; m + 1 < K; ++m) {
      std::size_t sz = 1;
      for (std::size_t d = 0; d < K; ++d)
        if (d != m) sz *= extents[d];
      for (std::size_t i = 0; i < sz; ++i) in[m].push_back(static_cast<Value>(index_hash(seed, m, {i}) % 10));
    }
    return in;
  }
  bool full(const Index<K>& c) const {
    std::uint64_t h = seed;
    for (auto x : c) h = splitmix64(h ^ x);
    return h % mask_mod == 0;
  }
  static Value g(const std::array<Value, K - 1>& v, const Index<K>& c) {
    Value s = static_cast<Value>(c[K - 1] % 3);
    for (auto x : v) s += x;
    return s;
  }

  template <std::size_t D>
  static std::size_t flat(const Index<D>& c, const Index<D>& ext) {
    std::size_t f = 0;
    for (std::size_t d = 0; d < D; ++d) f = f * ext[d] + c[d];
    return f;
  }

  std::vector<Value> reference() const {
    auto in = inputs();
    Index<K - 1> oext = project<K>(extents, K - 1);
    std::size_t osz = 1;
    for (auto e : oext) osz *= e;
    std::vector<Value> out(osz, Op::identity());
    Index<K> c{};
    for (;;) {
      if (full(c)) {
        std::array<Value, K - 1> v{};
        for (std::size_t m = 0; m + 1 < K; ++m) v[m] = in[m][flat<K - 1>(project<K>(c, m), project<K>(extents, m))];
        auto& o = out[flat<K - 1>(project<K>(c, K - 1), oext)];
        o = Op{}(o, g(v, c));
      }
      std::size_t d = K;
      while (d-- > 0) {
        if (++c[d] < extents[d]) break;
        c[d] = 0;
      }
      if (d == static_cast<std::size_t>(-1)) break;
    }
    return out;
  }

  struct Result {
    std::vector<Value> out;
    WorkSpan cost;
    sim::CostReport report;
  };

  Result run(const GridOptions& opt, CacheConfig cache = {64, 4, 1}) const {
    Simulator s(cache);
    auto in = inputs();
    std::array<View<K - 1>, K - 1> views;
    for (std::size_t m = 0; m + 1 < K; ++m) {
      auto arr = s.allocate_persistent(shape_of<K - 1>(project<K>(extents, m)));
      for (std::size_t i = 0; i < in[m].size(); ++i) s.poke(arr.base() + i, in[m][i]);
      views[m] = view_of<K - 1>(arr);
    }
    auto oarr = s.allocate_persistent(shape_of<K - 1>(project<K>(extents, K - 1)), Op::identity());
    auto self = *this;
    auto fullness = [self](const Index<K>& c) { return self.full(c); };
    GridSpec<K, decltype(&RandomGrid::g), decltype(fullness), Op> spec{extents, &RandomGrid::g, fullness, {}};
    Result r;
    r.cost = compute_grid(s, spec, views, view_of<K - 1>(oarr), opt);
    for (std::size_t i = 0; i < oarr.size(); ++i) r.out.push_back(s.peek(oarr.base() + i));
    r.report = s.flush_and_report(r.cost);
    return r;
  }

  std::uint64_t non_empty() const {
    std::uint64_t n = 0;
    Index<K> c{};
    for (;;) {
      n += full(c);
      std::size_t d = K;
      while (d-- > 0) {
        if (++c[d] < extents[d]) break;
        c[d] = 0;
      }
      if (d == static_cast<std::size_t>(-1)) break;
    }
    return n;
  }
};

// Merge entries a parallel run should charge, from the split rule alone.
template <std::size_t K>
std::uint64_t expected_merges(Index<K> ext, const GridOptions& opt) {
  bool base = true;
  for (auto e : ext) base = base && e <= opt.base_threshold;
  if (base) return 0;
  std::size_t d = choose_split_dim(std::span<const std::size_t>(ext), opt.policy);
  Index<K> a = ext, b = ext;
  a[d] = (ext[d] + 1) / 2;
  b[d] = ext[d] - a[d];
  std::uint64_t m = expected_merges<K>(a, opt) + expected_merges<K>(b, opt);
  if (d == K - 1 && opt.execution == Execution::parallel) {
    std::uint64_t out = 1;
    for (std::size_t i = 0; i + 1 < K; ++i) out *= ext[i];
    m += out;
  }
  return m;
}

// Full k-d product grid into a zeroed output.
template <std::size_t K>
sim::CostReport product_grid(std::size_t n, const GridOptions& opt, CacheConfig cache,
                             std::function<bool(const Index<K>&)> full = nullptr) {
  Simulator s(cache);
  std::vector<std::size_t> shape(K - 1, n);
  std::array<View<K - 1>, K - 1> in;
  for (auto& v : in) v = view_of<K - 1>(s.allocate_persistent(shape, 1.0));
  auto out = view_of<K - 1>(s.allocate_persistent(shape, 0.0));
  Index<K> ext;
  ext.fill(n);
  auto g = [](const std::array<Value, K - 1>& v, const Index<K>&) {
    Value p = 1;
    for (auto x : v) p *= x;
    return p;
  };
  WorkSpan ws;
  if (full) {
    GridSpec<K, decltype(g), decltype(full), PlusOp> spec{ext, g, full, {}};
    ws = compute_grid(s, spec, in, out, opt);
  } else {
    GridSpec<K, decltype(g), AllCells, PlusOp> spec{ext, g, {}, {}};
    ws = compute_grid(s, spec, in, out, opt);
  }
  return s.flush_and_report(ws);
}

}  // namespace

TEST_CASE("split dimension examples") {
  std::array<std::size_t, 3> a{8, 8, 16}, b{4, 4, 64};
  CHECK(choose_split_dim(a, SplitPolicy::asymmetric(8)) == 0);
  CHECK(choose_split_dim(b, SplitPolicy::asymmetric(8)) == 2);
  CHECK(choose_split_dim(a, SplitPolicy::classic()) == 2);
}

TEST_CASE("split rule edge cases") {
  std::array<std::size_t, 3> tie{8, 8, 8}, flat{1, 1, 9}, thin{1, 5, 1}, second{3, 7, 2};
  CHECK(choose_split_dim(tie, SplitPolicy::classic()) == 0);
  CHECK(choose_split_dim(flat, SplitPolicy::asymmetric(64)) == 2);
  CHECK(choose_split_dim(thin, SplitPolicy::classic()) == 1);
  CHECK(choose_split_dim(second, SplitPolicy::classic()) == 1);
  std::array<std::size_t, 2> dead{1, 1};
  CHECK_THROWS_AS((void)choose_split_dim(dead, SplitPolicy::classic()), ContractViolation);
  // omega = 1 under the asymmetric rule is the classic rule.
  std::array<std::size_t, 2> sq{6, 6}, wide{6, 7};
  CHECK(choose_split_dim(sq, SplitPolicy::asymmetric(1)) == 0);
  CHECK(choose_split_dim(wide, SplitPolicy::asymmetric(1)) == 1);
  // Score boundary: n_k^k vs omega^(k-1) n_j^k. 4 * 8^(1/2) ~ 11.3.
  std::array<std::size_t, 2> under{4, 11}, over{4, 12};
  CHECK(choose_split_dim(under, SplitPolicy::asymmetric(8)) == 0);
  CHECK(choose_split_dim(over, SplitPolicy::asymmetric(8)) == 1);
}

TEST_CASE("recursion splitter agrees with choose_split_dim") {
  std::mt19937_64 rng(5);
  for (double w : {1.0, 2.0, 3.5, 8.0, 64.0, 512.0}) {
    const auto p = SplitPolicy::asymmetric(w);
    detail::Splitter<3> s3(p);
    detail::Splitter<2> s2(p);
    for (int t = 0; t < 2000; ++t) {
      Index<3> e3{1 + rng() % 70, 1 + rng() % 70, 1 + rng() % 300};
      Index<2> e2{1 + rng() % 70, 1 + rng() % 300};
      if (e3[0] > 1 || e3[1] > 1 || e3[2] > 1) CHECK(s3.choose(e3) == choose_split_dim(e3, p));
      if (e2[0] > 1 || e2[1] > 1) CHECK(s2.choose(e2) == choose_split_dim(e2, p));
    }
  }
}

TEST_CASE("split choice ignores cache parameters") {
  // The rule sees extents and policy only; same grid, different caches,
  // same merge count and span.
  const auto opt = opts(SplitPolicy::asymmetric(8), Execution::parallel, 4);
  auto a = product_grid<3>(24, opt, {64, 4, 8});
  auto b = product_grid<3>(24, opt, {1024, 4, 8});
  CHECK(a.work == b.work);
  CHECK(a.span == b.span);
  CHECK(a.peak_temp_entries == b.peak_temp_entries);
}

TEST_CASE("work and span accounting") {
  CHECK(base_cost(5) == WorkSpan{5, 5});
  std::array<WorkSpan, 2> kids{WorkSpan{8, 3}, WorkSpan{6, 4}};
  CHECK(seq({account(kids, Composition::parallel), merge_cost(4)}) == WorkSpan{18, 7});
  CHECK(account(kids, Composition::sequential) == WorkSpan{14, 7});
  CHECK(merge_depth(1) == 1);
  CHECK(merge_depth(2) == 2);
  CHECK(merge_depth(5) == 4);
  CHECK(merge_depth(0) == 1);
}

TEST_CASE("cache prediction formula") {
  CHECK(predict_q(3, 256.0 * 256 * 256, {1024, 16, 1}, Variant::classic) == doctest::Approx(32768));
  const double n2 = 100.0 * 100;
  CHECK(predict_q(2, n2, {256, 8, 1}, Variant::asymmetric) == doctest::Approx(predict_q(2, n2, {256, 8, 1}, Variant::classic)));
  CHECK(predict_q(3, 1e6, {256, 8, 64}, Variant::asymmetric) / predict_q(3, 1e6, {256, 8, 64}, Variant::classic) ==
        doctest::Approx(4.0));
}

TEST_CASE("identity matrix product") {
  for (const auto& opt : all_options()) {
    Simulator s({16, 2, 1});
    auto a = s.allocate_persistent({2, 2});
    auto b = s.allocate_persistent({2, 2});
    auto c = s.allocate_persistent({2, 2});
    for (std::size_t i = 0; i < 2; ++i) {
      s.write(a, {i, i}, 1);
      s.write(b, {i, i}, 1);
    }
    auto g = [](const std::array<Value, 2>& v, const Index<3>&) { return v[0] * v[1]; };
    GridSpec<3, decltype(g), AllCells, PlusOp> spec{{2, 2, 2}, g, {}, {}};
    // Cell (i, j, k): input 0 drops i -> B[k][j]; input 1 drops j -> A[i][k].
    View<2> bt{b.base(), {2, 2}, {1, 2}};
    (void)compute_grid(s, spec, {bt, view_of<2>(a)}, view_of<2>(c), opt);
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j) CHECK(s.read(c, {i, j}) == (i == j ? 1.0 : 0.0));
  }
}

TEST_CASE("one dimensional min with fullness") {
  for (const auto& opt : all_options()) {
    Simulator s({16, 2, 1});
    auto in = s.allocate_persistent({4});
    auto out = s.allocate_persistent({4}, MinOp::identity());
    for (std::size_t j = 0; j < 4; ++j) s.write(in, {j}, static_cast<Value>(j));
    auto g = [](const std::array<Value, 1>& v, const Index<2>& c) {
      const double d = static_cast<double>(c[1]) - static_cast<double>(c[0]);
      return v[0] + d * d;
    };
    auto full = [](const Index<2>& c) { return c[1] < c[0]; };
    GridSpec<2, decltype(g), decltype(full), MinOp> spec{{4, 4}, g, full, {}};
    (void)compute_grid(s, spec, {view_of<1>(in)}, view_of<1>(out), opt);
    CHECK(std::isinf(s.read(out, {0})));
    CHECK(s.read(out, {1}) == 1);
    CHECK(s.read(out, {2}) == 2);
    CHECK(s.read(out, {3}) == 3);
  }
}

TEST_CASE("random integer products match the loop nest") {
  RandomGrid<3, PlusOp> g{{4, 4, 4}, 17, 1};
  auto ref = g.reference();
  for (const auto& opt : all_options()) CHECK(g.run(opt).out == ref);
}

TEST_CASE("value invariance across policies, executors and thresholds") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 12; ++t) {
    RandomGrid<2, MinOp> g2{{1 + rng() % 40, 1 + rng() % 40}, rng(), 1 + rng() % 3};
    RandomGrid<3, PlusOp> g3{{1 + rng() % 13, 1 + rng() % 13, 1 + rng() % 25}, rng(), 1 + rng() % 3};
    RandomGrid<3, MaxOp> g3m{{1 + rng() % 13, 1 + rng() % 13, 1 + rng() % 25}, rng(), 2};
    auto r2 = g2.reference();
    auto r3 = g3.reference();
    auto r3m = g3m.reference();
    for (const auto& opt : all_options()) {
      CHECK(g2.run(opt).out == r2);
      CHECK(g3.run(opt).out == r3);
      CHECK(g3m.run(opt).out == r3m);
    }
  }
}

TEST_CASE("engine handles four dimensions") {
  RandomGrid<4, PlusOp> g{{5, 3, 6, 9}, 3, 2};
  auto ref = g.reference();
  for (const auto& opt : all_options()) CHECK(g.run(opt).out == ref);
}

TEST_CASE("work is non-empty cells plus merge entries") {
  std::mt19937_64 rng(23);
  for (int t = 0; t < 10; ++t) {
    RandomGrid<3, PlusOp> g{{1 + rng() % 20, 1 + rng() % 20, 1 + rng() % 40}, rng(), 1 + rng() % 4};
    const auto cells = g.non_empty();
    for (const auto& opt : all_options()) {
      auto r = g.run(opt);
      CHECK(r.cost.work == cells + expected_merges<3>(g.extents, opt));
      CHECK(r.cost.span <= r.cost.work);
      if (opt.execution == Execution::sequential) CHECK(r.cost.work == cells);
    }
  }
}

TEST_CASE("shape mismatches are contract violations") {
  Simulator s({16, 2, 1});
  auto a = s.allocate_persistent({3, 4});
  auto b = s.allocate_persistent({4, 4});
  auto c = s.allocate_persistent({4, 4});
  auto g = [](const std::array<Value, 2>& v, const Index<3>&) { return v[0] * v[1]; };
  GridSpec<3, decltype(g), AllCells, PlusOp> spec{{4, 4, 4}, g, {}, {}};
  CHECK_THROWS_AS((void)compute_grid(s, spec, {view_of<2>(a), view_of<2>(b)}, view_of<2>(c), {}),
                  ContractViolation);
  CHECK_THROWS_AS((void)compute_grid(s, spec, {view_of<2>(b), view_of<2>(b)}, view_of<2>(a), {}),
                  ContractViolation);
  CHECK_THROWS_AS((void)view_of<3>(a), ContractViolation);
}

TEST_CASE("parallel temporaries stay linear for a square 2-d grid") {
  // Frozen constant: measured peak at n = 16, threshold 2 is 2n entries.
  const auto opt = opts(SplitPolicy::classic(), Execution::parallel, 2);
  auto r = product_grid<2>(16, opt, {64, 4, 1});
  CHECK(r.peak_temp_entries <= 2 * 16);
  for (std::size_t n : {32, 64, 128}) {
    auto a = product_grid<2>(n, opt, {64, 4, 1});
    auto b = product_grid<2>(2 * n, opt, {64, 4, 1});
    CHECK(static_cast<double>(b.peak_temp_entries) <= 2.0 * 1.1 * static_cast<double>(a.peak_temp_entries));
  }
  auto seq = product_grid<2>(64, opts(SplitPolicy::classic(), Execution::sequential, 2), {64, 4, 1});
  CHECK(seq.peak_temp_entries == 0);
}

TEST_CASE("parallel span of a full 3-d grid grows polylogarithmically") {
  const auto opt = opts(SplitPolicy::classic(), Execution::parallel);
  double prev_span = 0, first_norm = 0;
  for (std::size_t n : {8, 16, 32, 64}) {
    auto r = product_grid<3>(n, opt, {256, 8, 1});
    const double lg = std::log2(static_cast<double>(n));
    const double norm = static_cast<double>(r.span) / (lg * lg);
    if (prev_span > 0) CHECK(static_cast<double>(r.span) <= 3.0 * prev_span);
    if (first_norm == 0) first_norm = norm;
    CHECK(norm <= first_norm);
    prev_span = static_cast<double>(r.span);
  }
  // Serialising the output-dimension halves lengthens the span.
  auto s = product_grid<3>(32, opts(SplitPolicy::classic(), Execution::sequential), {256, 8, 1});
  auto p = product_grid<3>(32, opt, {256, 8, 1});
  CHECK(s.span > p.span);
  CHECK(s.span < s.work);
}

TEST_CASE("masking cells changes transfers by a bounded factor") {
  const auto opt = opts(SplitPolicy::classic(), Execution::sequential);
  auto full = product_grid<3>(48, opt, {256, 8, 1});
  for (std::uint64_t mod : {2, 4}) {
    auto r = product_grid<3>(48, opt, {256, 8, 1}, [mod](const Index<3>& c) {
      return index_hash(9, 0, {c[0], c[1], c[2]}) % mod == 0;
    });
    const double ratio = static_cast<double>(r.sym_q) / static_cast<double>(full.sym_q);
    CHECK(ratio <= 1.05);
    CHECK(ratio >= 0.25);
  }
}

TEST_CASE("asymmetric split reduces writes on a tall cache") {
  // One-entry lines keep every skewed tile at least a line wide.
  const CacheConfig base{64, 1, 1};
  std::uint64_t prev = 0, first = 0;
  for (double w : {1.0, 8.0, 64.0, 512.0}) {
    CacheConfig c = base;
    c.write_cost = w;
    auto r = product_grid<3>(128, opts(SplitPolicy::asymmetric(w), Execution::sequential), c);
    if (first == 0) first = r.write_transfers;
    if (prev) CHECK(r.write_transfers <= prev);
    // Within an order of magnitude of omega^(-2/3).
    CHECK(static_cast<double>(r.write_transfers) / static_cast<double>(first) <= 10.0 * std::pow(w, -2.0 / 3.0));
    prev = r.write_transfers;
  }
}
