#include <cmath>
#include <random>
#include <string>

#include "doctest.h"
#include "kdgrid/dp.hpp"
#include "kdgrid/oracle.hpp"

using namespace kdgrid;
using grid::Execution;
using grid::GridOptions;
using grid::SplitPolicy;
using sim::CacheConfig;
using sim::Simulator;

namespace {

const double inf = std::numeric_limits<double>::infinity();

using Solver = dp::Result (*)(Simulator&, const ProblemInstance&, const GridOptions&);

Solver solver_for(Kind k) {
  switch (k) {
    case Kind::lws: return dp::solve_lws;
    case Kind::gap: return dp::solve_gap;
    case Kind::rna: return dp::solve_rna;
    case Kind::parenthesis: return dp::solve_parenthesis;
    case Kind::knapsack: return dp::solve_knapsack;
    case Kind::accordion: return dp::solve_accordion;
    default: return nullptr;
  }
}

const Kind dp_kinds[] = {Kind::lws, Kind::gap, Kind::rna, Kind::parenthesis, Kind::knapsack, Kind::accordion};

std::vector<GridOptions> option_grid() {
  std::vector<GridOptions> v;
  for (auto p : {SplitPolicy::classic(), SplitPolicy::asymmetric(8), SplitPolicy::asymmetric(64)})
    for (auto e : {Execution::sequential, Execution::parallel})
      for (std::size_t t : {1, 4}) {
        GridOptions o;
        o.policy = p;
        o.execution = e;
        o.base_threshold = t;
        v.push_back(o);
      }
  return v;
}

Table run(Solver f, const ProblemInstance& in, const GridOptions& opt = {}, CacheConfig c = {64, 4, 1}) {
  Simulator s(c);
  return f(s, in, opt).table;
}

Table run(const ProblemInstance& in, const GridOptions& opt = {}) { return run(solver_for(in.kind), in, opt); }

ProblemInstance base(Kind k, std::size_t n) { return make_instance(k, n, WeightPreset::random(3, 10)); }

}  // namespace

TEST_CASE("lws examples") {
  auto in = base(Kind::lws, 9);
  in.w = [](std::size_t i, std::size_t j) { return double(j - i); };
  auto t = run(in);
  for (std::size_t j = 0; j <= 9; ++j) CHECK(t.at(0, j) == double(j));

  in = base(Kind::lws, 3);
  in.w = [](std::size_t i, std::size_t j) { return double((j - i) * (j - i)); };
  t = run(in);
  CHECK(t.data == std::vector<double>{0, 1, 2, 3});

  in = base(Kind::lws, 1);
  t = run(in);
  CHECK(t.data == std::vector<double>{0, in.w(0, 1)});
}

TEST_CASE("gap examples") {
  const std::string x = "ab", y = "ab";
  auto in = base(Kind::gap, 2);
  in.w = in.w_alt = [](std::size_t p, std::size_t i) { return double(i - p); };
  in.diag = [&](std::size_t i, std::size_t j) { return x[i - 1] == y[j - 1] ? 0.0 : 1.0; };
  CHECK(run(in).at(2, 2) == 0);

  in = base(Kind::gap, 4);
  auto t = run(in);
  CHECK(oracle::compare(oracle::solve(in).values, t, false).ok);
  for (std::size_t j = 1; j <= 4; ++j) {
    CHECK(t.at(0, j) == in.w(0, j));
    CHECK(t.at(j, 0) == in.w_alt(0, j));
  }
}

TEST_CASE("rna examples") {
  auto in = base(Kind::rna, 7);
  in.w4 = [](std::size_t p, std::size_t q, std::size_t i, std::size_t j) { return double(i - p + j - q); };
  in.edge = [](std::size_t, std::size_t j) { return double(j); };
  auto t = run(in);
  for (std::size_t i = 0; i <= 7; ++i)
    for (std::size_t j = 0; j <= 7; ++j) CHECK(t.at(i, j) == double(i + j));

  in = base(Kind::rna, 3);
  CHECK(oracle::compare(oracle::solve(in).values, run(in), false).ok);

  in = base(Kind::rna, 1);
  CHECK(run(in).at(1, 1) == in.w4(0, 0, 1, 1));
}

TEST_CASE("parenthesis examples") {
  auto in = base(Kind::parenthesis, 8);
  in.w3 = [](std::size_t, std::size_t, std::size_t) { return 1.0; };
  in.pair_init = [](std::size_t, std::size_t) { return 0.0; };
  auto t = run(in);
  for (std::size_t i = 0; i <= 8; ++i)
    for (std::size_t j = i + 1; j <= 8; ++j) CHECK(t.at(i, j) == double(j - i - 1));

  const double dims[] = {2, 3, 4, 5};
  in = base(Kind::parenthesis, 3);
  in.w3 = [&](std::size_t i, std::size_t k, std::size_t j) { return dims[i] * dims[k] * dims[j]; };
  in.pair_init = [](std::size_t, std::size_t) { return 0.0; };
  CHECK(run(in).at(0, 3) == 64);

  in = base(Kind::parenthesis, 2);
  CHECK(run(in).at(0, 2) == in.pair_init(0, 1) + in.pair_init(1, 2) + in.w3(0, 1, 2));
}

TEST_CASE("knapsack examples") {
  auto in = base(Kind::knapsack, 11);
  in.a = in.b = [](std::size_t j) { return double(j); };
  in.w3 = [](std::size_t, std::size_t, std::size_t) { return 0.0; };
  auto t = run(in);
  for (std::size_t i = 0; i <= 11; ++i) CHECK(t.at(0, i) == double(i));

  in = base(Kind::knapsack, 5);
  CHECK(oracle::compare(oracle::solve(in).values, run(in), false).ok);

  in = base(Kind::knapsack, 0);
  t = run(in);
  REQUIRE(t.data.size() == 1);
  CHECK(t.at(0, 0) == in.a(0) + in.b(0) + in.w3(0, 0, 0));
}

TEST_CASE("accordion examples") {
  auto in = base(Kind::accordion, 6);
  in.w3 = [](std::size_t, std::size_t, std::size_t) { return 0.0; };
  auto t = run(in);
  for (std::size_t i = 3; i <= 6; ++i) CHECK(t.at(i, 2) == -inf);
  // Row j = 3 draws on D[2][1] = 0 only.
  for (std::size_t i = 4; i <= 6; ++i) CHECK(t.at(i, 3) == 0);

  in = base(Kind::accordion, 5);
  CHECK(oracle::compare(oracle::solve(in).values, run(in), false).ok);

  in = base(Kind::accordion, 9);
  in.first_column = [](std::size_t i) { return double(3 * i); };
  t = run(in);
  for (std::size_t i = 2; i <= 9; ++i) CHECK(t.at(i, 1) == double(3 * i));
  CHECK(oracle::compare(oracle::solve(in).values, t, false).ok);
}

TEST_CASE("solvers match the oracle for every option") {
  std::mt19937_64 rng(41);
  for (Kind k : dp_kinds) {
    CAPTURE(kind_name(k));
    for (int t = 0; t < 6; ++t) {
      const std::size_t cap = k == Kind::rna ? 12 : 28;
      const std::size_t n = 1 + rng() % cap;
      auto in = make_instance(k, n, WeightPreset::random(rng(), 1 + rng() % 20));
      const auto expected = oracle::solve(in).values;
      for (const auto& opt : option_grid()) {
        auto rep = oracle::compare(expected, run(in, opt), false);
        CHECK_MESSAGE(rep.ok, "n=" << n << " " << rep.describe());
      }
    }
  }
}

TEST_CASE("gap baseline matches the oracle") {
  for (std::size_t n : {1, 2, 3, 5, 8, 13, 16, 31}) {
    for (std::uint64_t seed : {1, 2, 3}) {
      auto in = make_instance(Kind::gap, n, WeightPreset::random(seed, 10));
      const auto expected = oracle::solve(in).values;
      for (const auto& opt : option_grid())
        CHECK(oracle::compare(expected, run(dp::solve_gap_baseline, in, opt), false).ok);
    }
  }
}

TEST_CASE("every table entry read as an input is already final") {
  // Entries only ever decrease (or increase, for max) toward their final
  // value, so a read of a final entry sees exactly the oracle value.
  for (Kind k : dp_kinds) {
    CAPTURE(kind_name(k));
    for (std::size_t n : {5, 12, 23}) {
      auto in = make_instance(k, n, WeightPreset::random(n, 10));
      const auto expected = oracle::solve(in).values;
      for (const auto& opt : option_grid()) {
        Simulator s({64, 4, 1});
        std::size_t bad = 0, seen = 0;
        s.set_read_observer([&](sim::Address a, double v) {
          auto loc = s.locate(a);
          if (loc.tag != "D" && loc.tag != "D^T") return;
          ++seen;
          std::size_t i = 0, j = loc.index.back();
          if (loc.index.size() == 2) i = loc.index[0];
          if (loc.tag == "D^T") std::swap(i, j);
          if (v != expected.at(i, j)) ++bad;
        });
        (void)solver_for(k)(s, in, opt);
        CHECK(bad == 0);
        if (k != Kind::knapsack) CHECK(seen > 0);
      }
    }
  }
}

TEST_CASE("gap baseline reads only final entries") {
  auto in = make_instance(Kind::gap, 19, WeightPreset::random(4, 10));
  const auto expected = oracle::solve(in).values;
  Simulator s({64, 4, 1});
  std::size_t bad = 0;
  s.set_read_observer([&](sim::Address a, double v) {
    auto loc = s.locate(a);
    if (loc.tag == "D" && v != expected.at(loc.index[0], loc.index[1])) ++bad;
  });
  (void)dp::solve_gap_baseline(s, in, {});
  CHECK(bad == 0);
}

TEST_CASE("sequential and parallel runs do the same cell work") {
  // The parallel executor adds merge entries only.
  for (Kind k : dp_kinds) {
    auto in = make_instance(k, k == Kind::rna ? 12 : 40, WeightPreset::random(2, 10));
    GridOptions s, p;
    s.execution = Execution::sequential;
    p.execution = Execution::parallel;
    Simulator a({64, 4, 1}), b({64, 4, 1});
    auto rs = solver_for(k)(a, in, s);
    auto rp = solver_for(k)(b, in, p);
    CHECK(rs.cost.work <= rp.cost.work);
    CHECK(rp.cost.span <= rs.cost.span);
    CHECK(rs.cost.work >= oracle::solve(in).elapsed_cells);
  }
}

TEST_CASE("lws span grows linearly") {
  std::uint64_t prev = 0;
  for (std::size_t n : {128, 256, 512}) {
    Simulator s({256, 8, 1});
    auto r = dp::solve_lws(s, make_instance(Kind::lws, n, WeightPreset::quadratic()), {});
    if (prev) {
      const double ratio = double(r.cost.span) / double(prev);
      CHECK(ratio > 1.7);
      CHECK(ratio < 2.4);
    }
    prev = r.cost.span;
  }
}

TEST_CASE("boundary presets reach every solver") {
  const auto bound = WeightPreset::random(77, 6);
  for (Kind k : dp_kinds) {
    CAPTURE(kind_name(k));
    for (std::size_t n : {1, 6, 17}) {
      auto in = make_instance(k, n, WeightPreset::random(5, 10), bound);
      const auto expected = oracle::solve(in).values;
      for (const auto& opt : option_grid()) CHECK(oracle::compare(expected, run(in, opt), false).ok);
      if (k == Kind::gap) CHECK(oracle::compare(expected, run(dp::solve_gap_baseline, in), false).ok);
    }
  }
  auto in = make_instance(Kind::lws, 1, WeightPreset::linear(), WeightPreset::constant_value(4));
  CHECK(run(in).data == std::vector<double>{4, 5});
  in = make_instance(Kind::rna, 1, WeightPreset::random(1, 10), WeightPreset::constant_value(2));
  CHECK(run(in).at(1, 1) == 2 + in.w4(0, 0, 1, 1));
}
