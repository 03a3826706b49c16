#pragma once

#include "kdgrid/cache_sim.hpp"
#include "kdgrid/grid_engine.hpp"
#include "kdgrid/instance.hpp"
#include "kdgrid/work_span.hpp"

namespace kdgrid::dp {

struct Result {
  Table table;
  WorkSpan cost;
};

// All solvers allocate their tables in `sim` (tagged "D", and "D^T" for the
// transposed copy) and return the finished table. Transfers accumulate in
// `sim`; call flush_and_report(result.cost) for the totals.

// D[j] = min_{i<j} D[i] + w(i,j), D[0] = 0. Table is 1 x (n+1).
Result solve_lws(sim::Simulator& sim, const ProblemInstance& in, const grid::GridOptions& opt);

// Edit-distance style recurrence with general gap costs over (n+1) x (n+1).
// Keeps a row-major and a column-major copy so that every row and column
// update is a 2-d grid over contiguous data.
Result solve_gap(sim::Simulator& sim, const ProblemInstance& in, const grid::GridOptions& opt);

// Same recurrence with one row-major copy and 3-d grid updates between
// quadrants. Kept as the reference point for transfer comparisons.
Result solve_gap_baseline(sim::Simulator& sim, const ProblemInstance& in,
                          const grid::GridOptions& opt);

// D[i][j] = min_{p<i, q<j} D[p][q] + w(p,q,i,j) over (n+1) x (n+1).
Result solve_rna(sim::Simulator& sim, const ProblemInstance& in, const grid::GridOptions& opt);

// D[i][j] = min_{i<k<j} D[i][k] + D[k][j] + w(i,k,j), D[i][i+1] given.
Result solve_parenthesis(sim::Simulator& sim, const ProblemInstance& in,
                         const grid::GridOptions& opt);

// D[i] = min_{0<=j<=i} A[j] + B[i-j] + w(j, i-j, i). Table is 1 x (n+1).
Result solve_knapsack(sim::Simulator& sim, const ProblemInstance& in, const grid::GridOptions& opt);

// D[i][j] = max_{1<=k<j-1} D[j-1][k] + w(i,j,k) for 1 <= j < i <= n,
// D[i][1] = first_column(i). Undefined entries hold -inf.
Result solve_accordion(sim::Simulator& sim, const ProblemInstance& in,
                       const grid::GridOptions& opt);

}  // namespace kdgrid::dp
