#pragma once

#include "kdgrid/cache_sim.hpp"
#include "kdgrid/grid_engine.hpp"
#include "kdgrid/instance.hpp"

namespace kdgrid {

struct KernelOutput {
  Table table;
  WorkSpan cost;
};

// Loads the instance into `sim`, runs the kernel for in.kind and returns its
// result in the same layout the oracle uses.
KernelOutput solve_kernel(sim::Simulator& sim, const ProblemInstance& in, const grid::GridOptions& opt);

struct KernelRun {
  Table table;
  sim::CostReport cost;
};

// Fresh simulator, one kernel, flushed report.
KernelRun run_kernel(const ProblemInstance& in, const sim::CacheConfig& cache, const grid::GridOptions& opt);

}  // namespace kdgrid
