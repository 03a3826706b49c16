#pragma once

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <span>

namespace kdgrid {

struct WorkSpan {
  std::uint64_t work = 0;
  std::uint64_t span = 0;
  friend bool operator==(const WorkSpan&, const WorkSpan&) = default;
};

// ceil(log2 m) + 1, with m = 0 treated as m = 1.
[[nodiscard]] std::uint64_t merge_depth(std::uint64_t m);

[[nodiscard]] inline WorkSpan base_cost(std::uint64_t cells) { return {cells, cells}; }
[[nodiscard]] inline WorkSpan merge_cost(std::uint64_t entries) {
  return {entries, merge_depth(entries)};
}
// Both take a braced list so that side-effecting arguments run left to
// right; the simulator replays siblings in that order.
[[nodiscard]] inline WorkSpan par(std::initializer_list<WorkSpan> parts) {
  WorkSpan t;
  for (const auto& p : parts) t = {t.work + p.work, std::max(t.span, p.span)};
  return t;
}
[[nodiscard]] inline WorkSpan seq(std::initializer_list<WorkSpan> parts) {
  WorkSpan t;
  for (const auto& p : parts) t = {t.work + p.work, t.span + p.span};
  return t;
}

enum class Composition { parallel, sequential };

// Folds sibling costs. Parallel siblings add work and take the max span,
// sequential siblings add both.
[[nodiscard]] WorkSpan account(std::span<const WorkSpan> children, Composition how);

}  // namespace kdgrid
