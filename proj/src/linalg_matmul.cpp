#include "linalg_detail.hpp"

namespace kdgrid::linalg {

WorkSpan matmul(sim::Simulator& sim, Semiring sr, const MatView& a, const MatView& b,
                const MatView& c, const grid::GridOptions& opt) {
  if (sr == Semiring::plus_times) return detail::multiply_into<PlusTimes>(sim, a, b, c, opt);
  return detail::multiply_into<MinPlus>(sim, a, b, c, opt);
}

}  // namespace kdgrid::linalg
