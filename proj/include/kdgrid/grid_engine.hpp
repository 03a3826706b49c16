#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>

#include "kdgrid/cache_sim.hpp"
#include "kdgrid/monoid.hpp"

namespace kdgrid::grid {

using sim::Access;
using sim::Address;
using sim::Simulator;
using sim::Value;

template <std::size_t K>
using Index = std::array<std::size_t, K>;

enum class Variant { classic, asymmetric };

struct SplitPolicy {
  Variant variant = Variant::classic;
  double omega = 1.0;

  static SplitPolicy classic() { return {}; }
  static SplitPolicy asymmetric(double omega) { return {Variant::asymmetric, omega}; }
};

enum class Execution { sequential, parallel };

struct GridOptions {
  SplitPolicy policy;
  Execution execution = Execution::parallel;
  std::size_t base_threshold = 8;
};

// Index of the dimension to halve: argmax over splittable d of extent_d * x_d,
// where x = 1 except x_last = omega^(-(k-1)/k) under the asymmetric policy.
// Ties go to the smallest index. Dimensions of extent 1 are never chosen.
[[nodiscard]] std::size_t choose_split_dim(std::span<const std::size_t> extents,
                                           const SplitPolicy& policy);

// Leading-order transfer estimate for a k-d grid with `cells` cells.
[[nodiscard]] double predict_q(std::size_t k, double cells, const sim::CacheConfig& config,
                               Variant variant);

// Strided view of D-dimensional simulated data.
template <std::size_t D>
struct View {
  Address base = 0;
  Index<D> extents{};
  std::array<std::ptrdiff_t, D> strides{};

  [[nodiscard]] Address address(const Index<D>& c) const {
    std::ptrdiff_t off = 0;
    for (std::size_t d = 0; d < D; ++d) off += static_cast<std::ptrdiff_t>(c[d]) * strides[d];
    return static_cast<Address>(static_cast<std::ptrdiff_t>(base) + off);
  }
};

template <std::size_t D>
[[nodiscard]] View<D> dense_view(Address base, const Index<D>& extents) {
  View<D> v{base, extents, {}};
  std::ptrdiff_t s = 1;
  for (std::size_t d = D; d-- > 0;) {
    v.strides[d] = s;
    s *= static_cast<std::ptrdiff_t>(extents[d]);
  }
  return v;
}

template <std::size_t D>
[[nodiscard]] View<D> view_of(const sim::SimArray& a) {
  if (a.rank() != D) throw ContractViolation("array rank does not match view rank");
  Index<D> ext{};
  for (std::size_t d = 0; d < D; ++d) ext[d] = a.extents()[d];
  return dense_view<D>(a.base(), ext);
}

// Drops coordinate `skip` from c.
template <std::size_t K>
[[nodiscard]] Index<K - 1> project(const Index<K>& c, std::size_t skip) {
  Index<K - 1> r{};
  for (std::size_t d = 0, o = 0; d < K; ++d)
    if (d != skip) r[o++] = c[d];
  return r;
}

struct AllCells {
  template <class C>
  constexpr bool operator()(const C&) const {
    return true;
  }
};

namespace detail {

// Chooses split dimensions with powers instead of fractional scores so that
// integral omega gives exact tie-breaking.
template <std::size_t K>
class Splitter {
 public:
  explicit Splitter(const SplitPolicy& p)
      : asym_(p.variant == Variant::asymmetric && p.omega != 1.0) {
    if (asym_) {
      omega_pow_ = 1.0L;
      for (std::size_t i = 0; i + 1 < K; ++i) omega_pow_ *= static_cast<long double>(p.omega);
    }
  }

  [[nodiscard]] std::size_t choose(const Index<K>& ext) const {
    std::size_t best = K;
    for (std::size_t d = 0; d + 1 < K; ++d)
      if (ext[d] > 1 && (best == K || ext[d] > ext[best])) best = d;
    const std::size_t last = K - 1;
    if (ext[last] <= 1) return best;
    if (best == K) return last;
    if (!asym_) return ext[last] > ext[best] ? last : best;
    long double a = 1.0L, b = omega_pow_;
    for (std::size_t i = 0; i < K; ++i) {
      a *= static_cast<long double>(ext[last]);
      b *= static_cast<long double>(ext[best]);
    }
    return a > b ? last : best;
  }

 private:
  bool asym_;
  long double omega_pow_ = 1.0L;
};

template <std::size_t D>
struct BufferMap {
  Address base;
  Index<D> lo;
  Index<D> strides;
  [[nodiscard]] Address address(const Index<D>& c) const {
    Address a = base;
    for (std::size_t d = 0; d < D; ++d) a += (c[d] - lo[d]) * strides[d];
    return a;
  }
};

template <std::size_t K, class Cell, class Full, class Op>
class Runner {
 public:
  Runner(Simulator& sim, const Cell& cell, const Full& full, const GridOptions& opt)
      : sim_(sim), cell_(cell), full_(full), split_(opt.policy),
        threshold_(opt.base_threshold == 0 ? 1 : opt.base_threshold), exec_(opt.execution) {}

  template <class Out>
  WorkSpan run(Index<K> lo, Index<K> hi, const Out& out) {
    Index<K> ext{};
    bool base = true;
    for (std::size_t d = 0; d < K; ++d) {
      ext[d] = hi[d] - lo[d];
      if (ext[d] == 0) return {};
      if (ext[d] > threshold_) base = false;
    }
    if (base) return run_base(lo, hi, out);

    const std::size_t d = split_.choose(ext);
    const std::size_t mid = lo[d] + (ext[d] + 1) / 2;
    Index<K> hi_a = hi, lo_b = lo;
    hi_a[d] = mid;
    lo_b[d] = mid;
    if (d + 1 < K) return par({run(lo, hi_a, out), run(lo_b, hi, out)});
    if (exec_ == Execution::sequential) return seq({run(lo, hi_a, out), run(lo_b, hi, out)});

    // Reduction split: each half accumulates into its own buffer, then merge.
    Index<K - 1> olo = project<K>(lo, K - 1), oext = project<K>(ext, K - 1);
    std::vector<std::size_t> shape(oext.begin(), oext.end());
    auto buf_a = sim_.allocate(shape, Op::identity());
    auto buf_b = sim_.allocate(shape, Op::identity());
    Index<K - 1> strides{};
    std::size_t s = 1, m = 1;
    for (std::size_t i = K - 1; i-- > 0;) {
      strides[i] = s;
      s *= oext[i];
    }
    m = s;
    BufferMap<K - 1> ma{buf_a.base(), olo, strides}, mb{buf_b.base(), olo, strides};
    WorkSpan ws = par({run(lo, hi_a, ma), run(lo_b, hi, mb)});

    Index<K - 1> oc = olo;
    for (std::size_t n = 0; n < m; ++n) {
      Address dst = out.address(oc);
      Value v = sim_.load(dst, Access::update);
      Value x = sim_.load(ma.address(oc), Access::update);
      Value y = sim_.load(mb.address(oc), Access::update);
      sim_.store(dst, Op{}(Op{}(v, x), y));
      for (std::size_t i = K - 1; i-- > 0;) {
        if (++oc[i] < olo[i] + oext[i]) break;
        oc[i] = olo[i];
      }
    }
    sim_.release(buf_b);
    sim_.release(buf_a);
    return seq({ws, merge_cost(m)});
  }

 private:
  template <class Out>
  WorkSpan run_base(const Index<K>& lo, const Index<K>& hi, const Out& out) {
    std::uint64_t cells = 0;
    Index<K> c = lo;
    for (;;) {
      // Cells sharing an output entry are contiguous in the innermost loop.
      bool any = false;
      for (c[K - 1] = lo[K - 1]; c[K - 1] < hi[K - 1]; ++c[K - 1])
        if (full_(c)) {
          any = true;
          break;
        }
      if (any) {
        Address dst = out.address(project<K>(c, K - 1));
        Value acc = sim_.load(dst, Access::update);
        for (; c[K - 1] < hi[K - 1]; ++c[K - 1]) {
          if (!full_(c)) continue;
          acc = Op{}(acc, cell_(sim_, c));
          ++cells;
        }
        sim_.store(dst, acc);
      }
      std::size_t i = K - 1;
      while (i-- > 0) {
        if (++c[i] < hi[i]) break;
        c[i] = lo[i];
      }
      if (i == static_cast<std::size_t>(-1)) break;
    }
    return base_cost(cells);
  }

  Simulator& sim_;
  const Cell& cell_;
  const Full& full_;
  Splitter<K> split_;
  std::size_t threshold_;
  Execution exec_;
};

template <std::size_t K, class G>
struct ProjectionCell {
  std::array<View<K - 1>, K - 1> inputs;
  G g;
  Value operator()(Simulator& s, const Index<K>& c) const {
    std::array<Value, K - 1> v{};
    for (std::size_t m = 0; m + 1 < K; ++m) v[m] = s.load(inputs[m].address(project<K>(c, m)));
    return g(v, c);
  }
};

}  // namespace detail

// Runs every non-empty cell of the grid [0, extents). `cell(sim, c)` performs
// its own input reads and returns g; results are folded with Op into
// out.address(c without its last coordinate). `out` is any type with
// Address address(const Index<K-1>&).
template <std::size_t K, class Op, class Cell, class Full, class Out>
WorkSpan run_grid(Simulator& sim, const Index<K>& extents, const Cell& cell, const Full& full,
                  const Out& out, const GridOptions& options) {
  static_assert(K >= 2, "grids need at least two dimensions");
  detail::Runner<K, Cell, Full, Op> runner(sim, cell, full, options);
  return runner.run(Index<K>{}, extents, out);
}

// Grid in projection form: input m is the grid with dimension m removed,
// the output is the grid with the last dimension removed.
template <std::size_t K, class G, class Full, class Op>
struct GridSpec {
  Index<K> extents{};
  G g;  // Value(const std::array<Value, K-1>& inputs, const Index<K>& cell)
  Full fullness;
  Op combine;
};

template <std::size_t K, class G, class Full, class Op>
WorkSpan compute_grid(Simulator& sim, const GridSpec<K, G, Full, Op>& spec,
                      const std::array<View<K - 1>, K - 1>& inputs, const View<K - 1>& output,
                      GridOptions options) {
  for (std::size_t m = 0; m + 1 < K; ++m)
    if (inputs[m].extents != project<K>(spec.extents, m))
      throw ContractViolation("input shape does not match grid projection");
  if (output.extents != project<K>(spec.extents, K - 1))
    throw ContractViolation("output shape does not match grid projection");
  detail::ProjectionCell<K, G> cell{inputs, spec.g};
  return run_grid<K, Op>(sim, spec.extents, cell, spec.fullness, output, options);
}

// Sequential executor: halves of the reduction dimension run one after the
// other into the same output.
template <std::size_t K, class G, class Full, class Op>
WorkSpan compute_grid_sequential(Simulator& sim, const GridSpec<K, G, Full, Op>& spec,
                                 const std::array<View<K - 1>, K - 1>& inputs,
                                 const View<K - 1>& output, GridOptions options) {
  options.execution = Execution::sequential;
  return compute_grid(sim, spec, inputs, output, options);
}

// Parallel executor: reduction halves write private buffers merged with Op.
template <std::size_t K, class G, class Full, class Op>
WorkSpan compute_grid_parallel(Simulator& sim, const GridSpec<K, G, Full, Op>& spec,
                               const std::array<View<K - 1>, K - 1>& inputs,
                               const View<K - 1>& output, GridOptions options) {
  options.execution = Execution::parallel;
  return compute_grid(sim, spec, inputs, output, options);
}

}  // namespace kdgrid::grid
