#include "kdgrid/solvers.hpp"

#include "kdgrid/dp.hpp"
#include "kdgrid/linalg.hpp"
#include "kdgrid/matrix_view.hpp"

namespace kdgrid {

namespace {

MatView load_matrix(sim::Simulator& sim, const std::vector<double>& src, std::size_t n, const char* tag) {
  MatView m = mat_view(sim.allocate_persistent({n, n}, 0.0, tag));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) sim.poke(m.at(i, j), src[i * n + j]);
  return m;
}

Table read_matrix(const sim::Simulator& sim, const MatView& m) {
  Table t(m.rows, m.cols);
  for (std::size_t i = 0; i < m.rows; ++i)
    for (std::size_t j = 0; j < m.cols; ++j) t.at(i, j) = sim.peek(m.at(i, j));
  return t;
}

KernelOutput matrix_kernel(sim::Simulator& sim, const ProblemInstance& in, const grid::GridOptions& opt) {
  const std::size_t n = in.n;
  if (n == 0) return {Table(0, 0), {}};
  KernelOutput out;
  switch (in.kind) {
    case Kind::mm:
    case Kind::mm_minplus: {
      const bool trop = in.kind == Kind::mm_minplus;
      MatView a = load_matrix(sim, in.mat_a, n, "A");
      MatView b = load_matrix(sim, in.mat_b, n, "B");
      MatView c = mat_view(sim.allocate_persistent({n, n}, trop ? sim::kInf : 0.0, "C"));
      out.cost = linalg::matmul(sim, trop ? linalg::Semiring::min_plus : linalg::Semiring::plus_times, a, b, c, opt);
      out.table = read_matrix(sim, c);
      break;
    }
    case Kind::strassen: {
      MatView a = load_matrix(sim, in.mat_a, n, "A");
      MatView b = load_matrix(sim, in.mat_b, n, "B");
      MatView c = mat_view(sim.allocate_persistent({n, n}, 0.0, "C"));
      const double omega = opt.policy.variant == grid::Variant::asymmetric ? opt.policy.omega : 1.0;
      out.cost = linalg::strassen_asym(sim, a, b, c, omega, opt.base_threshold).cost;
      out.table = read_matrix(sim, c);
      break;
    }
    case Kind::kleene: {
      MatView a = load_matrix(sim, in.mat_a, n, "D");
      out.cost = linalg::kleene(sim, a, opt);
      out.table = read_matrix(sim, a);
      break;
    }
    case Kind::ge: {
      MatView a = load_matrix(sim, in.mat_a, n, "A");
      out.cost = linalg::lu_in_place(sim, a, opt);
      out.table = read_matrix(sim, a);
      break;
    }
    case Kind::trs: {
      MatView t = load_matrix(sim, in.mat_a, n, "T");
      MatView x = load_matrix(sim, in.mat_b, n, "X");
      out.cost = linalg::solve_lower(sim, t, x, false, opt);
      out.table = read_matrix(sim, x);
      break;
    }
    default:
      throw ContractViolation("not a matrix kernel");
  }
  return out;
}

}  // namespace

KernelOutput solve_kernel(sim::Simulator& sim, const ProblemInstance& in, const grid::GridOptions& opt) {
  auto wrap = [](dp::Result r) { return KernelOutput{std::move(r.table), r.cost}; };
  switch (in.kind) {
    case Kind::lws:
      return wrap(dp::solve_lws(sim, in, opt));
    case Kind::gap:
      return wrap(dp::solve_gap(sim, in, opt));
    case Kind::rna:
      return wrap(dp::solve_rna(sim, in, opt));
    case Kind::parenthesis:
      return wrap(dp::solve_parenthesis(sim, in, opt));
    case Kind::knapsack:
      return wrap(dp::solve_knapsack(sim, in, opt));
    case Kind::accordion:
      return wrap(dp::solve_accordion(sim, in, opt));
    default:
      return matrix_kernel(sim, in, opt);
  }
}

KernelRun run_kernel(const ProblemInstance& in, const sim::CacheConfig& cache, const grid::GridOptions& opt) {
  sim::Simulator sim(cache);
  KernelOutput out = solve_kernel(sim, in, opt);
  return {std::move(out.table), sim.flush_and_report(out.cost)};
}

}  // namespace kdgrid
