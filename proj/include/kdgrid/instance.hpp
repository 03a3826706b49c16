#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace kdgrid {

enum class Kind {
  lws,
  gap,
  rna,
  parenthesis,
  knapsack,
  accordion,
  mm,
  mm_minplus,
  kleene,
  ge,
  trs,
  strassen,
};

[[nodiscard]] std::string_view kind_name(Kind k);
[[nodiscard]] std::optional<Kind> parse_kind(std::string_view name);
[[nodiscard]] const std::vector<Kind>& all_kinds();
// Kinds whose outputs are compared with a relative tolerance.
[[nodiscard]] bool is_floating(Kind k);
// Dimension of the grid family the kernel reduces to (2 or 3).
[[nodiscard]] std::size_t grid_dimension(Kind k);
// Number of cell evaluations a plain loop nest performs for size n.
[[nodiscard]] std::uint64_t term_count(Kind k, std::size_t n);

// splitmix64 output function applied to state + golden gamma.
[[nodiscard]] std::uint64_t splitmix64(std::uint64_t state);
// Order-sensitive hash of (seed, salt, indices...) built from splitmix64.
[[nodiscard]] std::uint64_t index_hash(std::uint64_t seed, std::uint64_t salt,
                                       std::initializer_list<std::uint64_t> idx);

struct WeightPreset {
  enum class Type { linear, quadratic, random, constant };
  Type type = Type::random;
  std::uint64_t seed = 1;
  std::int64_t range = 10;
  double constant = 1.0;

  static WeightPreset linear() { return {Type::linear}; }
  static WeightPreset quadratic() { return {Type::quadratic}; }
  static WeightPreset random(std::uint64_t seed, std::int64_t range) {
    return {Type::random, seed, range};
  }
  static WeightPreset constant_value(double c) { return {Type::constant, 1, 10, c}; }

  // Accepts linear, quadratic, constant(c), random(seed,range) and
  // random(range); the last takes its seed from default_seed.
  static WeightPreset parse(std::string_view text, std::uint64_t default_seed);
  [[nodiscard]] std::string to_string() const;

  // linear: sum of |gaps|; quadratic: sum of gaps squared; random hashes
  // (salt, key) into [0, range).
  [[nodiscard]] double weight(std::uint64_t salt, std::initializer_list<std::int64_t> gaps,
                              std::initializer_list<std::uint64_t> key) const;
  // Matrix entry style value: |i-j|, (i-j)^2, constant or uniform.
  // Signed uniform values lie in [-(range-1), range-1]; unsigned in [0, range).
  [[nodiscard]] double entry(std::uint64_t salt, std::size_t i, std::size_t j, bool is_signed) const;
};

using W1 = std::function<double(std::size_t)>;
using W2 = std::function<double(std::size_t, std::size_t)>;
using W3 = std::function<double(std::size_t, std::size_t, std::size_t)>;
using W4 = std::function<double(std::size_t, std::size_t, std::size_t, std::size_t)>;

// Everything a kernel and its checker need. Weight functions are pure.
// Unused members stay empty for a given kind.
struct ProblemInstance {
  Kind kind = Kind::lws;
  std::size_t n = 0;
  WeightPreset preset;
  double origin = 0.0;  // lws D[0]; gap and rna D[0][0]

  W2 w;        // lws w(i,j); gap w(p,i)
  W2 w_alt;    // gap w'(q,j)
  W2 diag;     // gap r(i,j)
  W2 edge;     // rna boundary D[0][j] = edge(0,j), D[i][0] = edge(0,i)
  W3 w3;       // parenthesis w(i,k,j); knapsack w(j, i-j, i); accordion w(i,j,k)
  W4 w4;       // rna w(p,q,i,j)
  W1 a, b;     // knapsack arrays
  W2 pair_init;  // parenthesis D[i][i+1]
  W1 first_column;  // accordion D[i][1]
  std::vector<double> mat_a, mat_b;  // dense n x n row-major inputs
};

// `boundary`, when given, replaces the default initial entries: the origin
// (0 by default), rna edges, parenthesis pairs (0), knapsack arrays and the
// accordion first column (0).
[[nodiscard]] ProblemInstance make_instance(Kind kind, std::size_t n, const WeightPreset& preset,
                                            const std::optional<WeightPreset>& boundary = std::nullopt);

// Dense row-major result table.
struct Table {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  Table() = default;
  Table(std::size_t r, std::size_t c, double fill = 0.0) : rows(r), cols(c), data(r * c, fill) {}
  double& at(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  [[nodiscard]] double at(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
};

}  // namespace kdgrid
