#include "kdgrid/instance.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <stdexcept>

#include "kdgrid/errors.hpp"

namespace kdgrid {

namespace {

constexpr std::array<std::pair<Kind, std::string_view>, 12> kNames{{
    {Kind::lws, "lws"},
    {Kind::gap, "gap"},
    {Kind::rna, "rna"},
    {Kind::parenthesis, "parenthesis"},
    {Kind::knapsack, "knapsack2"},
    {Kind::accordion, "accordion"},
    {Kind::mm, "mm"},
    {Kind::mm_minplus, "mm-minplus"},
    {Kind::kleene, "kleene"},
    {Kind::ge, "ge"},
    {Kind::trs, "trs"},
    {Kind::strassen, "strassen"},
}};

std::int64_t parse_int(std::string_view s) {
  std::int64_t v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size())
    throw ContractViolation("bad integer in preset: " + std::string(s));
  return v;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  return s;
}

}  // namespace

std::string_view kind_name(Kind k) {
  for (const auto& [kind, name] : kNames)
    if (kind == k) return name;
  return "?";
}

std::optional<Kind> parse_kind(std::string_view name) {
  for (const auto& [kind, n] : kNames)
    if (n == name) return kind;
  if (name == "knapsack") return Kind::knapsack;
  return std::nullopt;
}

const std::vector<Kind>& all_kinds() {
  static const std::vector<Kind> kinds = [] {
    std::vector<Kind> v;
    for (const auto& e : kNames) v.push_back(e.first);
    return v;
  }();
  return kinds;
}

bool is_floating(Kind k) { return k == Kind::ge || k == Kind::trs; }

std::size_t grid_dimension(Kind k) {
  switch (k) {
    case Kind::lws:
    case Kind::gap:
    case Kind::rna:
    case Kind::knapsack:
    case Kind::accordion:
      return 2;
    default:
      return 3;
  }
}

std::uint64_t term_count(Kind k, std::size_t n_) {
  const std::uint64_t n = n_;
  switch (k) {
    case Kind::lws:
      return n * (n + 1) / 2;
    case Kind::gap:
      return n * n * (n + 1) + n * n;
    case Kind::rna:
      return (n * (n + 1) / 2) * (n * (n + 1) / 2);
    case Kind::parenthesis:
      return (n + 1) * n * (n - 1) / 6;
    case Kind::knapsack:
      return (n + 1) * (n + 2) / 2;
    case Kind::accordion: {
      std::uint64_t c = 0;
      for (std::uint64_t j = 2; j <= n; ++j) c += (n - j) * (j - 2);
      return c;
    }
    case Kind::mm:
    case Kind::mm_minplus:
    case Kind::kleene:
    case Kind::strassen:
      return n * n * n;
    case Kind::ge: {
      std::uint64_t c = 0;
      for (std::uint64_t r = 0; r < n; ++r) c += (n - r - 1) + (n - r - 1) * (n - r - 1);
      return c;
    }
    case Kind::trs:
      return n * n * (n + 1) / 2;
  }
  return 0;
}

std::uint64_t splitmix64(std::uint64_t state) {
  std::uint64_t z = state + 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t index_hash(std::uint64_t seed, std::uint64_t salt,
                         std::initializer_list<std::uint64_t> idx) {
  std::uint64_t h = splitmix64(seed ^ splitmix64(salt));
  for (auto v : idx) h = splitmix64(h ^ v);
  return h;
}

WeightPreset WeightPreset::parse(std::string_view text, std::uint64_t default_seed) {
  text = trim(text);
  if (text == "linear") return linear();
  if (text == "quadratic") return quadratic();
  auto open = text.find('(');
  if (open == std::string_view::npos || text.back() != ')')
    throw ContractViolation("unknown weight preset: " + std::string(text));
  std::string_view name = text.substr(0, open);
  std::string_view args = text.substr(open + 1, text.size() - open - 2);
  if (name == "constant") {
    std::string a(trim(args));
    char* end = nullptr;
    double c = std::strtod(a.c_str(), &end);
    if (a.empty() || *end != '\0') throw ContractViolation("bad constant preset");
    return constant_value(c);
  }
  if (name == "random") {
    auto comma = args.find(',');
    WeightPreset p;
    if (comma == std::string_view::npos) {
      p = random(default_seed, parse_int(trim(args)));
    } else {
      p = random(static_cast<std::uint64_t>(parse_int(trim(args.substr(0, comma)))),
                 parse_int(trim(args.substr(comma + 1))));
    }
    if (p.range < 1) throw ContractViolation("random preset range must be >= 1");
    return p;
  }
  throw ContractViolation("unknown weight preset: " + std::string(text));
}

std::string WeightPreset::to_string() const {
  switch (type) {
    case Type::linear:
      return "linear";
    case Type::quadratic:
      return "quadratic";
    case Type::constant: {
      std::string s = std::to_string(constant);
      return "constant(" + s + ")";
    }
    case Type::random:
      return "random(" + std::to_string(seed) + "," + std::to_string(range) + ")";
  }
  return "?";
}

double WeightPreset::weight(std::uint64_t salt, std::initializer_list<std::int64_t> gaps,
                            std::initializer_list<std::uint64_t> key) const {
  switch (type) {
    case Type::linear: {
      std::int64_t s = 0;
      for (auto g : gaps) s += g < 0 ? -g : g;
      return static_cast<double>(s);
    }
    case Type::quadratic: {
      std::int64_t s = 0;
      for (auto g : gaps) s += g * g;
      return static_cast<double>(s);
    }
    case Type::constant:
      return constant;
    case Type::random:
      return static_cast<double>(index_hash(seed, salt, key) % static_cast<std::uint64_t>(range));
  }
  return 0.0;
}

double WeightPreset::entry(std::uint64_t salt, std::size_t i, std::size_t j, bool is_signed) const {
  const auto d = static_cast<std::int64_t>(i) - static_cast<std::int64_t>(j);
  switch (type) {
    case Type::linear:
      return static_cast<double>(d < 0 ? -d : d);
    case Type::quadratic:
      return static_cast<double>(d * d);
    case Type::constant:
      return constant;
    case Type::random: {
      std::uint64_t h = index_hash(seed, salt, {i, j});
      if (!is_signed) return static_cast<double>(h % static_cast<std::uint64_t>(range));
      auto span = static_cast<std::uint64_t>(2 * range - 1);
      return static_cast<double>(static_cast<std::int64_t>(h % span) - (range - 1));
    }
  }
  return 0.0;
}

ProblemInstance make_instance(Kind kind, std::size_t n, const WeightPreset& preset,
                              const std::optional<WeightPreset>& boundary) {
  ProblemInstance in;
  in.kind = kind;
  in.n = n;
  in.preset = preset;
  using I = std::int64_t;
  const WeightPreset p = preset;
  switch (kind) {
    case Kind::lws:
      in.w = [p](std::size_t i, std::size_t j) { return p.weight(1, {I(j) - I(i)}, {i, j}); };
      break;
    case Kind::gap:
      in.w = [p](std::size_t a, std::size_t i) { return p.weight(1, {I(i) - I(a)}, {a, i}); };
      in.w_alt = [p](std::size_t q, std::size_t j) { return p.weight(2, {I(j) - I(q)}, {q, j}); };
      in.diag = [p](std::size_t i, std::size_t j) { return p.weight(3, {I(i) - I(j)}, {i, j}); };
      break;
    case Kind::rna:
      in.w4 = [p](std::size_t a, std::size_t b, std::size_t i, std::size_t j) {
        return p.weight(1, {I(i) - I(a), I(j) - I(b)}, {a, b, i, j});
      };
      in.edge = [p](std::size_t a, std::size_t j) { return p.weight(2, {I(j) - I(a)}, {a, j}); };
      break;
    case Kind::parenthesis:
      in.w3 = [p](std::size_t i, std::size_t k, std::size_t j) {
        return p.weight(1, {I(k) - I(i), I(j) - I(k)}, {i, k, j});
      };
      in.pair_init = [](std::size_t, std::size_t) { return 0.0; };
      break;
    case Kind::knapsack:
      in.a = [p](std::size_t j) { return p.weight(2, {I(j)}, {j}); };
      in.b = [p](std::size_t m) { return p.weight(3, {I(m)}, {m}); };
      in.w3 = [p](std::size_t j, std::size_t m, std::size_t i) {
        return p.weight(1, {I(j), I(m)}, {j, m, i});
      };
      break;
    case Kind::accordion:
      in.w3 = [p](std::size_t i, std::size_t j, std::size_t k) {
        return p.weight(1, {I(i) - I(j), I(j) - I(k)}, {i, j, k});
      };
      in.first_column = [](std::size_t) { return 0.0; };
      break;
    case Kind::mm:
    case Kind::mm_minplus:
    case Kind::strassen: {
      const bool sgn = kind == Kind::strassen;
      in.mat_a.resize(n * n);
      in.mat_b.resize(n * n);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
          in.mat_a[i * n + j] = p.entry(1, i, j, sgn);
          in.mat_b[i * n + j] = p.entry(2, i, j, sgn);
        }
      break;
    }
    case Kind::kleene:
      in.mat_a.assign(n * n, std::numeric_limits<double>::infinity());
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
          if (i == j) {
            in.mat_a[i * n + j] = 0.0;
          } else if (p.type != WeightPreset::Type::random || (index_hash(p.seed, 4, {i, j}) & 1)) {
            in.mat_a[i * n + j] = 1.0 + p.entry(1, i, j, false);
          }
        }
      break;
    case Kind::ge:
    case Kind::trs: {
      in.mat_a.assign(n * n, 0.0);
      for (std::size_t i = 0; i < n; ++i) {
        double off = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
          if (i == j || (kind == Kind::trs && j > i)) continue;
          double v = p.entry(1, i, j, true);
          in.mat_a[i * n + j] = v;
          off += std::fabs(v);
        }
        in.mat_a[i * n + i] = off + 1.0;
      }
      if (kind == Kind::trs) {
        in.mat_b.resize(n * n);
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t j = 0; j < n; ++j) in.mat_b[i * n + j] = p.entry(2, i, j, true);
      }
      break;
    }
  }
  if (boundary) {
    const WeightPreset b = *boundary;
    in.origin = b.weight(7, {0}, {0});
    switch (kind) {
      case Kind::rna:
        in.edge = [b](std::size_t a, std::size_t j) { return b.weight(2, {I(j) - I(a)}, {a, j}); };
        break;
      case Kind::parenthesis:
        in.pair_init = [b](std::size_t i, std::size_t j) { return b.weight(4, {I(j) - I(i)}, {i, j}); };
        break;
      case Kind::knapsack:
        in.a = [b](std::size_t j) { return b.weight(2, {I(j)}, {j}); };
        in.b = [b](std::size_t m) { return b.weight(3, {I(m)}, {m}); };
        break;
      case Kind::accordion:
        in.first_column = [b](std::size_t i) { return b.weight(5, {I(i)}, {i}); };
        break;
      default:
        break;
    }
  }
  return in;
}

}  // namespace kdgrid
