#pragma once

#include <cstddef>

#include "kdgrid/cache_sim.hpp"
#include "kdgrid/grid_engine.hpp"

namespace kdgrid {

// Rectangular window into row-major simulated storage.
struct MatView {
  sim::Address base = 0;
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::size_t stride = 0;

  [[nodiscard]] sim::Address at(std::size_t i, std::size_t j) const { return base + i * stride + j; }
  [[nodiscard]] MatView block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    return {at(r0, c0), nr, nc, stride};
  }
  [[nodiscard]] bool empty() const { return rows == 0 || cols == 0; }

  // Indexed (i, j) -> (i, j).
  [[nodiscard]] grid::View<2> view() const {
    return {base, {rows, cols}, {static_cast<std::ptrdiff_t>(stride), 1}};
  }
  // Indexed (j, i) -> (i, j).
  [[nodiscard]] grid::View<2> view_transposed() const {
    return {base, {cols, rows}, {1, static_cast<std::ptrdiff_t>(stride)}};
  }
};

[[nodiscard]] inline MatView mat_view(const sim::SimArray& a) {
  if (a.rank() != 2) throw ContractViolation("matrix view needs a rank-2 array");
  return {a.base(), a.extents()[0], a.extents()[1], a.extents()[1]};
}

// Halving rule shared by every recursion: the first part gets ceil(n/2).
[[nodiscard]] inline std::size_t first_half(std::size_t n) { return (n + 1) / 2; }

}  // namespace kdgrid
