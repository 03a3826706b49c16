#pragma once

#include <cstdint>
#include <vector>

#include "kdgrid/cache_sim.hpp"
#include "kdgrid/grid_engine.hpp"
#include "kdgrid/matrix_view.hpp"
#include "kdgrid/work_span.hpp"

namespace kdgrid::linalg {

enum class Semiring { plus_times, min_plus };

// Per recursion depth: how many calls ran there and what each non-base call
// launched below it.
struct ShapeTrace {
  struct Level {
    std::uint64_t calls = 0;
    std::uint64_t recursive = 0;
    std::uint64_t grids = 0;
    std::uint64_t solves = 0;
  };
  std::vector<Level> levels;
  Level& at(std::size_t depth) {
    if (levels.size() <= depth) levels.resize(depth + 1);
    return levels[depth];
  }
};

// C (+)= A (x) B as one 3-d grid. Both semirings share the code path.
WorkSpan matmul(sim::Simulator& sim, Semiring sr, const MatView& a, const MatView& b,
                const MatView& c, const grid::GridOptions& opt);

// In-place min-plus closure (all-pairs shortest paths). Diagonal must be 0.
WorkSpan kleene(sim::Simulator& sim, const MatView& a, const grid::GridOptions& opt,
                ShapeTrace* trace = nullptr);

// In-place LU without pivoting: strictly lower part holds L (unit diagonal
// implied), upper part holds U. Throws SingularMatrix for |pivot| < 1e-12.
WorkSpan lu_in_place(sim::Simulator& sim, const MatView& a, const grid::GridOptions& opt,
                     ShapeTrace* trace = nullptr);

// B <- T^-1 B for lower-triangular T. With unit_diagonal the diagonal of T
// is not read.
WorkSpan solve_lower(sim::Simulator& sim, const MatView& t, const MatView& b, bool unit_diagonal,
                     const grid::GridOptions& opt, ShapeTrace* trace = nullptr);

// B <- B U^-1 for upper-triangular U.
WorkSpan solve_upper_right(sim::Simulator& sim, const MatView& u, const MatView& b,
                           const grid::GridOptions& opt);

inline constexpr double kPivotFloor = 1e-12;

struct StrassenStats {
  WorkSpan cost;  // work counts scalar multiplications
  std::uint64_t multiplications = 0;
  std::uint64_t additions = 0;
  std::size_t tile_factor = 1;
};

// Power of two nearest to omega^(log_7 4), clamped to [1, n].
[[nodiscard]] std::size_t strassen_tile_factor(double omega, std::size_t n);

// C += A B over (+, x). Output is cut into r x r tiles, each computed by the
// 7-product recursion down to `threshold`. n must be a power of two.
StrassenStats strassen_asym(sim::Simulator& sim, const MatView& a, const MatView& b,
                            const MatView& c, double omega, std::size_t threshold = 8);

}  // namespace kdgrid::linalg
