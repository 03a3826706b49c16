#include "dp_common.hpp"

namespace kdgrid::dp::detail {

Table extract(const Simulator& sim, const MatView& m) {
  Table t(m.rows, m.cols);
  for (std::size_t i = 0; i < m.rows; ++i)
    for (std::size_t j = 0; j < m.cols; ++j) t.at(i, j) = sim.peek(m.at(i, j));
  return t;
}

}  // namespace kdgrid::dp::detail
