#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "kdgrid/instance.hpp"

namespace kdgrid::oracle {

struct OracleResult {
  Table values;
  std::uint64_t elapsed_cells = 0;
};

// Largest n the brute-force loops accept for this kind.
[[nodiscard]] std::size_t size_cap(Kind k);

// Direct loop-nest evaluation, same table layout as the solvers.
// Throws CapExceeded above size_cap.
[[nodiscard]] OracleResult solve(const ProblemInstance& in);

// Minimum over every full bracketing of [0, n], enumerated without reuse.
// Only for n <= 6.
[[nodiscard]] double parenthesis_enumerate(const ProblemInstance& in);

struct Mismatch {
  std::size_t row = 0;
  std::size_t col = 0;
  double expected = 0.0;
  double actual = 0.0;
};

struct MatchReport {
  bool ok = true;
  std::size_t compared = 0;
  std::optional<Mismatch> first;
  [[nodiscard]] std::string describe() const;
};

inline constexpr double kRelativeTolerance = 1e-9;

// Exact comparison, or |a - e| <= 1e-9 * max(1, |e|) when `relative`.
// Infinities must match exactly.
[[nodiscard]] MatchReport compare(const Table& expected, const Table& actual, bool relative);

// Runs the oracle for `in` and compares against `actual`.
[[nodiscard]] MatchReport cross_check(const ProblemInstance& in, const Table& actual);

}  // namespace kdgrid::oracle
