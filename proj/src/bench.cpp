#include "kdgrid/bench.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <tuple>

#include "json.hpp"
#include "kdgrid/errors.hpp"
#include "kdgrid/solvers.hpp"

namespace kdgrid::bench {

namespace {

std::string policy_name(grid::Variant v) { return v == grid::Variant::asymmetric ? "asym" : "classic"; }

grid::Variant parse_policy(const std::string& s) {
  if (s == "classic") return grid::Variant::classic;
  if (s == "asym" || s == "asymmetric") return grid::Variant::asymmetric;
  throw ContractViolation("unknown policy: " + s);
}

grid::Execution parse_execution(const std::string& s) {
  if (s == "parallel") return grid::Execution::parallel;
  if (s == "sequential") return grid::Execution::sequential;
  throw ContractViolation("unknown execution: " + s);
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(line);
  while (std::getline(is, cur, ',')) out.push_back(cur);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double to_double(const std::string& s) {
  double v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) throw ContractViolation("bad number in CSV: " + s);
  return v;
}

std::uint64_t to_u64(const std::string& s) {
  std::uint64_t v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) throw ContractViolation("bad integer in CSV: " + s);
  return v;
}

}  // namespace

std::string format_number(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, p);
}

ExperimentConfig ExperimentConfig::from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ContractViolation(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ContractViolation("config must be a JSON object");
  static const std::set<std::string> known{"kind", "sizes", "cache", "line", "omega", "policy",
                                           "execution", "threshold", "seed", "preset", "boundary", "out"};
  for (const auto& [k, v] : j.items())
    if (!known.count(k)) throw ContractViolation("unknown config field: " + k);
  ExperimentConfig c;
  try {
    auto kind = parse_kind(j.at("kind").get<std::string>());
    if (!kind) throw ContractViolation("unknown kind: " + j.at("kind").get<std::string>());
    c.kind = *kind;
    c.sizes = j.at("sizes").get<std::vector<std::size_t>>();
    if (j.contains("cache")) c.cache_entries = j["cache"].get<std::size_t>();
    if (j.contains("line")) c.line_entries = j["line"].get<std::size_t>();
    if (j.contains("omega")) {
      if (j["omega"].is_array()) c.omegas = j["omega"].get<std::vector<double>>();
      else c.omegas = {j["omega"].get<double>()};
    }
    if (j.contains("policy")) c.policy = parse_policy(j["policy"].get<std::string>());
    if (j.contains("execution")) c.execution = parse_execution(j["execution"].get<std::string>());
    if (j.contains("threshold")) c.threshold = j["threshold"].get<std::size_t>();
    if (j.contains("seed")) c.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("preset")) c.preset = j["preset"].get<std::string>();
    if (j.contains("boundary")) c.boundary = j["boundary"].get<std::string>();
    if (j.contains("out")) c.out = j["out"].get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw ContractViolation(std::string("bad config field: ") + e.what());
  }
  c.validate();
  return c;
}

void ExperimentConfig::validate() const {
  if (sizes.empty()) throw ContractViolation("config needs at least one size");
  if (omegas.empty()) throw ContractViolation("config needs at least one omega");
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    if (sizes[i] == 0) throw ContractViolation("sizes must be positive");
    if (i > 0 && sizes[i] <= sizes[i - 1]) throw ContractViolation("sizes must be strictly ascending");
  }
  for (double w : omegas)
    if (!(w >= 1.0)) throw ContractViolation("omega must be >= 1");
  sim::CacheConfig{cache_entries, line_entries, 1.0}.validate();
  if (threshold == 0) throw ContractViolation("threshold must be positive");
  (void)WeightPreset::parse(preset, seed);
  if (!boundary.empty()) (void)WeightPreset::parse(boundary, seed);
}

const std::vector<std::string>& csv_header() {
  static const std::vector<std::string> h{
      "kind", "n", "M", "B", "omega", "policy", "read_transfers", "write_transfers", "sym_Q", "asym_Q",
      "work", "span", "peak_temp_entries", "predicted_Q", "oracle_checked"};
  return h;
}

std::vector<SweepRow> run(const ExperimentConfig& config) {
  config.validate();
  const WeightPreset preset = WeightPreset::parse(config.preset, config.seed);
  std::optional<WeightPreset> boundary;
  if (!config.boundary.empty()) boundary = WeightPreset::parse(config.boundary, config.seed);
  std::vector<SweepRow> rows;
  for (std::size_t n : config.sizes) {
    ProblemInstance in = make_instance(config.kind, n, preset, boundary);
    for (double omega : config.omegas) {
      sim::CacheConfig cache{config.cache_entries, config.line_entries, omega};
      grid::GridOptions opt;
      opt.policy = config.policy == grid::Variant::asymmetric ? grid::SplitPolicy::asymmetric(omega)
                                                             : grid::SplitPolicy::classic();
      opt.execution = config.execution;
      opt.base_threshold = config.threshold;
      KernelRun r = run_kernel(in, cache, opt);
      SweepRow row;
      row.kind = std::string(kind_name(config.kind));
      row.n = n;
      row.cache_entries = cache.cache_entries;
      row.line_entries = cache.line_entries;
      row.omega = omega;
      row.policy = policy_name(config.policy);
      row.read_transfers = r.cost.read_transfers;
      row.write_transfers = r.cost.write_transfers;
      row.sym_q = r.cost.sym_q;
      row.asym_q = r.cost.asym_q;
      row.work = r.cost.work;
      row.span = r.cost.span;
      row.peak_temp_entries = r.cost.peak_temp_entries;
      row.predicted_q = grid::predict_q(grid_dimension(config.kind), static_cast<double>(term_count(config.kind, n)),
                                        cache, config.policy);
      if (n <= oracle::size_cap(config.kind)) {
        row.oracle_checked = oracle::cross_check(in, r.table).ok ? "pass" : "fail";
      } else {
        row.oracle_checked = "skip";
      }
      rows.push_back(row);
    }
  }
  return rows;
}

void write_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  const auto& h = csv_header();
  for (std::size_t i = 0; i < h.size(); ++i) out << (i ? "," : "") << h[i];
  out << '\n';
  for (const auto& r : rows) {
    out << r.kind << ',' << r.n << ',' << r.cache_entries << ',' << r.line_entries << ','
        << format_number(r.omega) << ',' << r.policy << ',' << r.read_transfers << ',' << r.write_transfers << ','
        << r.sym_q << ',' << format_number(r.asym_q) << ',' << r.work << ',' << r.span << ','
        << r.peak_temp_entries << ',' << format_number(r.predicted_q) << ',' << r.oracle_checked << '\n';
  }
}

std::vector<SweepRow> read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ContractViolation("empty CSV");
  if (split_csv_line(line) != csv_header()) throw ContractViolation("unexpected CSV header");
  std::vector<SweepRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto f = split_csv_line(line);
    if (f.size() != csv_header().size()) throw ContractViolation("CSV row has the wrong number of fields");
    SweepRow r;
    r.kind = f[0];
    r.n = to_u64(f[1]);
    r.cache_entries = to_u64(f[2]);
    r.line_entries = to_u64(f[3]);
    r.omega = to_double(f[4]);
    r.policy = f[5];
    r.read_transfers = to_u64(f[6]);
    r.write_transfers = to_u64(f[7]);
    r.sym_q = to_u64(f[8]);
    r.asym_q = to_double(f[9]);
    r.work = to_u64(f[10]);
    r.span = to_u64(f[11]);
    r.peak_temp_entries = to_u64(f[12]);
    r.predicted_q = to_double(f[13]);
    r.oracle_checked = f[14];
    rows.push_back(r);
  }
  return rows;
}

double metric_value(const SweepRow& r, const std::string& m) {
  if (m == "read_transfers") return static_cast<double>(r.read_transfers);
  if (m == "write_transfers") return static_cast<double>(r.write_transfers);
  if (m == "sym_Q") return static_cast<double>(r.sym_q);
  if (m == "asym_Q") return r.asym_q;
  if (m == "work") return static_cast<double>(r.work);
  if (m == "span") return static_cast<double>(r.span);
  if (m == "peak_temp_entries") return static_cast<double>(r.peak_temp_entries);
  if (m == "predicted_Q") return r.predicted_q;
  throw ContractViolation("unknown metric: " + m);
}

double fit_exponent(std::span<const double> sizes, std::span<const double> metric) {
  if (sizes.size() != metric.size()) throw ContractViolation("sizes and metric differ in length");
  std::set<double> distinct(sizes.begin(), sizes.end());
  if (distinct.size() < 3) throw ContractViolation("fit needs at least three distinct sizes");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double k = static_cast<double>(sizes.size());
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    if (!(sizes[i] > 0) || !(metric[i] > 0)) throw ContractViolation("fit needs positive sizes and metrics");
    const double x = std::log2(sizes[i]), y = std::log2(metric[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (k * sxy - sx * sy) / (k * sxx - sx * sx);
}

std::vector<FitResult> fit(const std::vector<SweepRow>& rows, const std::string& metric) {
  using Key = std::tuple<std::string, std::size_t, std::size_t, double, std::string>;
  std::map<Key, std::pair<std::vector<double>, std::vector<double>>> groups;
  std::vector<Key> order;
  for (const auto& r : rows) {
    Key key{r.kind, r.cache_entries, r.line_entries, r.omega, r.policy};
    auto [it, fresh] = groups.try_emplace(key);
    if (fresh) order.push_back(key);
    it->second.first.push_back(static_cast<double>(r.n));
    it->second.second.push_back(metric_value(r, metric));
  }
  std::vector<FitResult> out;
  for (const auto& key : order) {
    const auto& [xs, ys] = groups[key];
    FitResult f{std::get<0>(key), std::get<1>(key), std::get<2>(key), std::get<3>(key), std::get<4>(key),
                xs.size(), fit_exponent(xs, ys)};
    out.push_back(f);
  }
  return out;
}

oracle::MatchReport verify(Kind kind, std::size_t n, std::uint64_t seed, const VerifyOptions& options) {
  if (n > oracle::size_cap(kind))
    throw CapExceeded("size " + std::to_string(n) + " is above the checker cap of " +
                      std::to_string(oracle::size_cap(kind)));
  ProblemInstance in = make_instance(kind, n, WeightPreset::random(seed, 10));
  sim::CacheConfig cache{options.cache_entries, options.line_entries, options.grid.policy.omega};
  KernelRun r = run_kernel(in, cache, options.grid);
  if (options.inject_fault && !r.table.data.empty()) {
    double& v = r.table.data[r.table.data.size() / 2];
    v = std::isfinite(v) ? v + 1.0 : 0.0;
  }
  return oracle::cross_check(in, r.table);
}

}  // namespace kdgrid::bench
