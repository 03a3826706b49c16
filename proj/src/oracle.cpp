#include "kdgrid/oracle.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <sstream>

#include "kdgrid/errors.hpp"

namespace kdgrid::oracle {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

OracleResult lws(const ProblemInstance& in) {
  const std::size_t n = in.n;
  OracleResult r{Table(1, n + 1, kInf), 0};
  r.values.at(0, 0) = in.origin;
  for (std::size_t j = 1; j <= n; ++j)
    for (std::size_t i = 0; i < j; ++i) {
      r.values.at(0, j) = std::min(r.values.at(0, j), r.values.at(0, i) + in.w(i, j));
      ++r.elapsed_cells;
    }
  return r;
}

OracleResult gap(const ProblemInstance& in) {
  const std::size_t n = in.n;
  OracleResult r{Table(n + 1, n + 1, kInf), 0};
  Table& d = r.values;
  d.at(0, 0) = in.origin;
  for (std::size_t j = 1; j <= n; ++j) d.at(0, j) = in.w(0, j);
  for (std::size_t i = 1; i <= n; ++i) d.at(i, 0) = in.w_alt(0, i);
  for (std::size_t i = 1; i <= n; ++i)
    for (std::size_t j = 1; j <= n; ++j) {
      double best = d.at(i - 1, j - 1) + in.diag(i, j);
      for (std::size_t q = 0; q < j; ++q) best = std::min(best, d.at(i, q) + in.w_alt(q, j));
      for (std::size_t p = 0; p < i; ++p) best = std::min(best, d.at(p, j) + in.w(p, i));
      d.at(i, j) = best;
      r.elapsed_cells += i + j + 1;
    }
  return r;
}

OracleResult rna(const ProblemInstance& in) {
  const std::size_t n = in.n;
  OracleResult r{Table(n + 1, n + 1, kInf), 0};
  Table& d = r.values;
  d.at(0, 0) = in.origin;
  for (std::size_t j = 1; j <= n; ++j) d.at(0, j) = in.edge(0, j);
  for (std::size_t i = 1; i <= n; ++i) d.at(i, 0) = in.edge(0, i);
  for (std::size_t i = 1; i <= n; ++i)
    for (std::size_t j = 1; j <= n; ++j) {
      double best = kInf;
      for (std::size_t p = 0; p < i; ++p)
        for (std::size_t q = 0; q < j; ++q) best = std::min(best, d.at(p, q) + in.w4(p, q, i, j));
      d.at(i, j) = best;
      r.elapsed_cells += i * j;
    }
  return r;
}

OracleResult parenthesis(const ProblemInstance& in) {
  const std::size_t n = in.n;
  OracleResult r{Table(n + 1, n + 1, kInf), 0};
  Table& d = r.values;
  for (std::size_t i = 0; i + 1 <= n; ++i) d.at(i, i + 1) = in.pair_init(i, i + 1);
  for (std::size_t len = 2; len <= n; ++len)
    for (std::size_t i = 0; i + len <= n; ++i) {
      const std::size_t j = i + len;
      double best = kInf;
      for (std::size_t k = i + 1; k < j; ++k) best = std::min(best, d.at(i, k) + d.at(k, j) + in.w3(i, k, j));
      d.at(i, j) = best;
      r.elapsed_cells += len - 1;
    }
  return r;
}

OracleResult knapsack(const ProblemInstance& in) {
  const std::size_t n = in.n;
  OracleResult r{Table(1, n + 1, kInf), 0};
  for (std::size_t i = 0; i <= n; ++i)
    for (std::size_t j = 0; j <= i; ++j) {
      r.values.at(0, i) = std::min(r.values.at(0, i), in.a(j) + in.b(i - j) + in.w3(j, i - j, i));
      ++r.elapsed_cells;
    }
  return r;
}

OracleResult accordion(const ProblemInstance& in) {
  const std::size_t n = in.n;
  OracleResult r{Table(n + 1, n + 1, -kInf), 0};
  Table& d = r.values;
  for (std::size_t i = 2; i <= n; ++i) d.at(i, 1) = in.first_column(i);
  for (std::size_t j = 2; j <= n; ++j)
    for (std::size_t i = j + 1; i <= n; ++i) {
      double best = -kInf;
      for (std::size_t k = 1; k + 1 < j; ++k) best = std::max(best, d.at(j - 1, k) + in.w3(i, j, k));
      d.at(i, j) = best;
      r.elapsed_cells += j - 2;
    }
  return r;
}

OracleResult product(const ProblemInstance& in, bool tropical) {
  const std::size_t n = in.n;
  OracleResult r{Table(n, n, tropical ? kInf : 0.0), 0};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      double acc = tropical ? kInf : 0.0;
      for (std::size_t k = 0; k < n; ++k) {
        double a = in.mat_a[i * n + k], b = in.mat_b[k * n + j];
        acc = tropical ? std::min(acc, a + b) : acc + a * b;
      }
      r.values.at(i, j) = acc;
      r.elapsed_cells += n;
    }
  return r;
}

OracleResult floyd_warshall(const ProblemInstance& in) {
  const std::size_t n = in.n;
  OracleResult r{Table(n, n), 0};
  r.values.data = in.mat_a;
  Table& d = r.values;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        d.at(i, j) = std::min(d.at(i, j), d.at(i, k) + d.at(k, j));
        ++r.elapsed_cells;
      }
  return r;
}

OracleResult doolittle(const ProblemInstance& in) {
  const std::size_t n = in.n;
  OracleResult r{Table(n, n), 0};
  r.values.data = in.mat_a;
  Table& a = r.values;
  for (std::size_t k = 0; k < n; ++k) {
    if (std::fabs(a.at(k, k)) < 1e-12) throw SingularMatrix(k);
    for (std::size_t i = k + 1; i < n; ++i) {
      a.at(i, k) /= a.at(k, k);
      ++r.elapsed_cells;
      for (std::size_t j = k + 1; j < n; ++j) {
        a.at(i, j) -= a.at(i, k) * a.at(k, j);
        ++r.elapsed_cells;
      }
    }
  }
  return r;
}

OracleResult forward_substitution(const ProblemInstance& in) {
  const std::size_t n = in.n;
  OracleResult r{Table(n, n), 0};
  Table& x = r.values;
  for (std::size_t c = 0; c < n; ++c)
    for (std::size_t i = 0; i < n; ++i) {
      double v = in.mat_b[i * n + c];
      for (std::size_t l = 0; l < i; ++l) v -= in.mat_a[i * n + l] * x.at(l, c);
      const double diag = in.mat_a[i * n + i];
      if (std::fabs(diag) < 1e-12) throw SingularMatrix(i);
      x.at(i, c) = v / diag;
      r.elapsed_cells += i + 1;
    }
  return r;
}

}  // namespace

std::size_t size_cap(Kind k) { return k == Kind::rna ? 48 : 128; }

OracleResult solve(const ProblemInstance& in) {
  if (in.n > size_cap(in.kind))
    throw CapExceeded("size " + std::to_string(in.n) + " is above the checker cap of " +
                      std::to_string(size_cap(in.kind)) + " for " + std::string(kind_name(in.kind)));
  switch (in.kind) {
    case Kind::lws:
      return lws(in);
    case Kind::gap:
      return gap(in);
    case Kind::rna:
      return rna(in);
    case Kind::parenthesis:
      return parenthesis(in);
    case Kind::knapsack:
      return knapsack(in);
    case Kind::accordion:
      return accordion(in);
    case Kind::mm:
    case Kind::strassen:
      return product(in, false);
    case Kind::mm_minplus:
      return product(in, true);
    case Kind::kleene:
      return floyd_warshall(in);
    case Kind::ge:
      return doolittle(in);
    case Kind::trs:
      return forward_substitution(in);
  }
  throw ContractViolation("unknown kind");
}

double parenthesis_enumerate(const ProblemInstance& in) {
  if (in.n > 6) throw CapExceeded("enumeration is limited to n <= 6");
  if (in.n < 1) return kInf;
  std::function<double(std::size_t, std::size_t)> best = [&](std::size_t i, std::size_t j) {
    if (j == i + 1) return in.pair_init(i, j);
    double b = kInf;
    for (std::size_t k = i + 1; k < j; ++k) b = std::min(b, best(i, k) + best(k, j) + in.w3(i, k, j));
    return b;
  };
  return best(0, in.n);
}

std::string MatchReport::describe() const {
  std::ostringstream os;
  if (ok) {
    os << "match (" << compared << " entries)";
  } else if (first) {
    os << "mismatch at (" << first->row << ", " << first->col << "): expected " << first->expected
       << ", got " << first->actual;
  } else {
    os << "shape mismatch";
  }
  return os.str();
}

MatchReport compare(const Table& expected, const Table& actual, bool relative) {
  MatchReport rep;
  if (expected.rows != actual.rows || expected.cols != actual.cols) {
    rep.ok = false;
    return rep;
  }
  for (std::size_t i = 0; i < expected.rows; ++i)
    for (std::size_t j = 0; j < expected.cols; ++j) {
      const double e = expected.at(i, j), a = actual.at(i, j);
      ++rep.compared;
      bool same = e == a;
      if (!same && relative && std::isfinite(e) && std::isfinite(a))
        same = std::fabs(a - e) <= kRelativeTolerance * std::max(1.0, std::fabs(e));
      if (!same) {
        rep.ok = false;
        rep.first = Mismatch{i, j, e, a};
        return rep;
      }
    }
  return rep;
}

MatchReport cross_check(const ProblemInstance& in, const Table& actual) {
  return compare(solve(in).values, actual, is_floating(in.kind));
}

}  // namespace kdgrid::oracle
