#pragma once

#include <algorithm>
#include <limits>

namespace kdgrid {

// Combine operators with their identities. Engine code takes these as
// template parameters so the hot loops inline them.
struct MinOp {
  static constexpr double identity() { return std::numeric_limits<double>::infinity(); }
  constexpr double operator()(double a, double b) const { return b < a ? b : a; }
};

struct MaxOp {
  static constexpr double identity() { return -std::numeric_limits<double>::infinity(); }
  constexpr double operator()(double a, double b) const { return b > a ? b : a; }
};

struct PlusOp {
  static constexpr double identity() { return 0.0; }
  constexpr double operator()(double a, double b) const { return a + b; }
};

// (+, x) over the reals.
struct PlusTimes {
  using Add = PlusOp;
  static constexpr double mul(double a, double b) { return a * b; }
};

// (min, +), the tropical semiring.
struct MinPlus {
  using Add = MinOp;
  static constexpr double mul(double a, double b) { return a + b; }
};

}  // namespace kdgrid
