#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "kdgrid/grid_engine.hpp"
#include "kdgrid/instance.hpp"
#include "kdgrid/oracle.hpp"

namespace kdgrid::bench {

struct ExperimentConfig {
  Kind kind = Kind::mm;
  std::vector<std::size_t> sizes;
  std::size_t cache_entries = 256;
  std::size_t line_entries = 8;
  std::vector<double> omegas{1.0};
  grid::Variant policy = grid::Variant::classic;
  grid::Execution execution = grid::Execution::parallel;
  std::size_t threshold = 8;
  std::uint64_t seed = 1;
  std::string preset = "random(10)";
  std::string boundary;  // empty: kind defaults
  std::string out;       // empty: stdout

  // JSON object with the field names above (kind, sizes, cache, line,
  // omega, policy, execution, threshold, seed, preset, boundary, out).
  static ExperimentConfig from_json(const std::string& text);
  void validate() const;
};

struct SweepRow {
  std::string kind;
  std::size_t n = 0;
  std::size_t cache_entries = 0;
  std::size_t line_entries = 0;
  double omega = 1.0;
  std::string policy;
  std::uint64_t read_transfers = 0;
  std::uint64_t write_transfers = 0;
  std::uint64_t sym_q = 0;
  double asym_q = 0.0;
  std::uint64_t work = 0;
  std::uint64_t span = 0;
  std::uint64_t peak_temp_entries = 0;
  double predicted_q = 0.0;
  std::string oracle_checked;  // pass, fail or skip
};

[[nodiscard]] const std::vector<std::string>& csv_header();

// One row per (n, omega); oracle check whenever n is within the checker cap.
[[nodiscard]] std::vector<SweepRow> run(const ExperimentConfig& config);

void write_csv(std::ostream& out, const std::vector<SweepRow>& rows);
[[nodiscard]] std::vector<SweepRow> read_csv(std::istream& in);

// Numeric value of a header column for a row.
[[nodiscard]] double metric_value(const SweepRow& row, const std::string& metric);

// Least-squares slope of log2(metric) against log2(n). Needs at least three
// distinct positive sizes and positive metrics.
[[nodiscard]] double fit_exponent(std::span<const double> sizes, std::span<const double> metric);

struct FitResult {
  std::string kind;
  std::size_t cache_entries = 0;
  std::size_t line_entries = 0;
  double omega = 1.0;
  std::string policy;
  std::size_t points = 0;
  double slope = 0.0;
};

// Groups rows by (kind, M, B, omega, policy) and fits each group.
[[nodiscard]] std::vector<FitResult> fit(const std::vector<SweepRow>& rows, const std::string& metric);

struct VerifyOptions {
  grid::GridOptions grid;
  std::size_t cache_entries = 256;
  std::size_t line_entries = 8;
  bool inject_fault = false;  // test hook: corrupts one output entry
};

// Solves a random instance of `kind` and compares with the oracle.
// Throws CapExceeded above the checker cap.
[[nodiscard]] oracle::MatchReport verify(Kind kind, std::size_t n, std::uint64_t seed,
                                         const VerifyOptions& options = {});

[[nodiscard]] std::string format_number(double v);

}  // namespace kdgrid::bench
