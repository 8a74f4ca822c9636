#include "marshal/bench.hpp"

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <iomanip>
#include <map>
#include <numeric>
#include <ostream>
#include <sstream>
#include <thread>

#include "marshal/verify.hpp"

namespace marshal {

Rational blockage_likelihood(int p) {
  if (p < 1) throw DomainError("blockage likelihood needs at least one group");
  long long num = p - 1;
  long long den = 2LL * p;
  const long long g = std::gcd(num, den);
  return {num / g, den / g};
}

std::optional<double> relative_gap(int d_astar, int d_exact) {
  if (d_exact == 0) return std::nullopt;
  return static_cast<double>(d_astar - d_exact) / d_exact;
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t) {
  return std::chrono::duration<double>(Clock::now() - t).count();
}

std::pair<int, int> parse_dims(const std::string& label) {
  const auto x = label.find('x');
  if (x == std::string::npos) throw std::invalid_argument("expected AxB, got " + label);
  return {std::stoi(label.substr(0, x)), std::stoi(label.substr(x + 1))};
}

std::string fixed(double v, int digits) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(digits) << v;
  return os.str();
}

}  // namespace

Prepared prepare(const WarehouseInstance& instance, bool lane_depth, int jobs, int candidates) {
  const auto start = Clock::now();
  Prepared p;
  p.instance = instance;
  p.assignments = fix_access_directions(instance, candidates, jobs);
  p.layout = build_layout(instance);
  p.distances = all_pairs_distances(p.layout);
  p.lanes = to_virtual_lanes(instance, p.assignments, p.layout, p.distances, lane_depth);
  p.preprocessing_s = seconds_since(start);
  return p;
}

SuiteConfig suite_from_json(const Json& j) {
  SuiteConfig s;
  const bool unrestricted = j.value("unrestricted", false);
  for (const Json& c : j.at("configs")) {
    GenConfig g;
    std::tie(g.bay_columns, g.bay_rows) = parse_dims(c.at("bay").get<std::string>());
    std::tie(g.warehouse_cols, g.warehouse_rows) = parse_dims(c.at("warehouse").get<std::string>());
    g.fill = c.at("fill").get<double>();
    g.classes = c.at("classes").get<int>();
    g.unrestricted = c.value("unrestricted", unrestricted);
    validate_config(g);
    s.configs.push_back(g);
  }
  const Json& seeds = j.at("seeds");
  if (seeds.is_array()) {
    for (const Json& v : seeds) s.seeds.push_back(v.get<std::uint64_t>());
  } else {
    const auto from = seeds.at("from").get<std::uint64_t>();
    const auto to = seeds.at("to").get<std::uint64_t>();
    for (auto v = from; v <= to; ++v) s.seeds.push_back(v);
  }
  if (j.contains("algos")) {
    s.run_astar = s.run_exact = false;
    for (const Json& a : j["algos"]) {
      const auto name = a.get<std::string>();
      if (name == "astar") s.run_astar = true;
      else if (name == "exact") s.run_exact = true;
      else throw std::invalid_argument("unknown algorithm " + name);
    }
  }
  if (j.contains("timeout_s")) {
    s.astar.timeout_s = j["timeout_s"].value("astar", s.astar.timeout_s);
    s.exact.timeout_s = j["timeout_s"].value("exact", s.exact.timeout_s);
  }
  s.lane_depth = j.value("lane_depth", false);
  s.jobs = j.value("jobs", default_jobs());
  return s;
}

int default_jobs() {
  if (const char* env = std::getenv("MARSHAL_JOBS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  return 1;
}

namespace {

RunRecord base_record(const GenConfig& c, std::uint64_t seed, const char* algo) {
  RunRecord r;
  r.bay = layout_label(c.bay_columns, c.bay_rows);
  r.warehouse = layout_label(c.warehouse_cols, c.warehouse_rows);
  r.fill = c.fill;
  r.classes = c.classes;
  r.seed = seed;
  r.algo = algo;
  return r;
}

void fill_from(RunRecord& r, const Solution& s, const Prepared& p) {
  r.status = status_name(s.status);
  r.nodes = s.stats.nodes_evaluated;
  r.solve_s = s.stats.wall_time_s;
  r.timed_out = s.status == SolveStatus::TimedOut;
  if (s.solved()) {
    r.k = s.k;
    r.distance = s.total_distance;
    r.optimal_moves = s.stats.optimal_moves;
    r.optimal_distance = s.stats.optimal_distance;
    r.valid = replay(p.instance, p.assignments, s, p.lanes.lane_set().lane_depth()).valid();
  }
}

std::vector<RunRecord> run_one(const SuiteConfig& suite, const GenConfig& base,
                               std::uint64_t seed) {
  GenConfig c = base;
  c.seed = seed;
  RunRecord a = base_record(c, seed, "astar");
  RunRecord e = base_record(c, seed, "exact");
  try {
    const Prepared p = prepare(generate(c), suite.lane_depth);
    a.preprocessing_s = e.preprocessing_s = p.preprocessing_s;
    const Solution sa = solve_astar(p.lanes, suite.astar);
    fill_from(a, sa, p);
    if (suite.run_exact) {
      if (sa.solved()) {
        const Solution se = solve_exact(p.lanes, sa, suite.exact);
        fill_from(e, se, p);
        if (se.solved()) a.gap = e.gap = relative_gap(sa.total_distance, se.total_distance);
      } else {
        e.status = "skipped";
      }
    }
  } catch (const std::exception& ex) {
    a.status = e.status = "error";
    a.error = e.error = ex.what();
  }
  std::vector<RunRecord> out;
  if (suite.run_astar) out.push_back(a);
  if (suite.run_exact) out.push_back(e);
  return out;
}

}  // namespace

std::vector<RunRecord> run_suite(const SuiteConfig& suite) {
  struct Unit {
    std::size_t config;
    std::uint64_t seed;
  };
  std::vector<Unit> units;
  for (std::size_t c = 0; c < suite.configs.size(); ++c)
    for (auto seed : suite.seeds) units.push_back({c, seed});

  std::vector<std::vector<RunRecord>> results(units.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t u = next++; u < units.size(); u = next++)
      results[u] = run_one(suite, suite.configs[units[u].config], units[u].seed);
  };
  const int jobs = std::max(1, std::min<int>(suite.jobs, static_cast<int>(units.size())));
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  std::vector<RunRecord> rows;
  for (auto& r : results)
    for (auto& x : r) rows.push_back(std::move(x));
  return rows;
}

const char* const kResultColumns =
    "bay,warehouse,fill,classes,seed,algo,status,k,distance,nodes,preprocessing_s,solve_s,"
    "timed_out,optimal_moves,optimal_distance,valid,gap,error";

namespace {

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

}  // namespace

void write_results_csv(std::ostream& out, const std::vector<RunRecord>& rows) {
  out << kResultColumns << '\n';
  for (const auto& r : rows) {
    out << r.bay << ',' << r.warehouse << ',' << fixed(r.fill, 2) << ',' << r.classes << ','
        << r.seed << ',' << r.algo << ',' << r.status << ',' << r.k << ',' << r.distance << ','
        << r.nodes << ',' << fixed(r.preprocessing_s, 6) << ',' << fixed(r.solve_s, 6) << ','
        << r.timed_out << ',' << r.optimal_moves << ',' << r.optimal_distance << ',' << r.valid
        << ',' << (r.gap ? fixed(*r.gap, 6) : std::string{}) << ',' << csv_escape(r.error)
        << '\n';
  }
}

void write_summary_csv(std::ostream& out, const std::vector<RunRecord>& rows) {
  struct Agg {
    int runs = 0;
    int astar_solved = 0;
    int exact_solved = 0;
    int both_optimal = 0;
    int agree = 0;
    double per_move_sum = 0.0;
    int per_move_n = 0;
    double gap_sum = 0.0;
    int gap_n = 0;
  };
  using Key = std::tuple<std::string, std::string, std::string, int>;
  std::map<Key, Agg> aggs;
  std::vector<Key> order;
  std::map<std::tuple<Key, std::uint64_t>, std::pair<const RunRecord*, const RunRecord*>> pairs;
  for (const auto& r : rows) {
    const Key key{r.bay, r.warehouse, fixed(r.fill, 2), r.classes};
    if (!aggs.count(key)) order.push_back(key);
    Agg& a = aggs[key];
    auto& pr = pairs[{key, r.seed}];
    if (r.algo == "astar") {
      pr.first = &r;
      if (r.status == "solved") {
        ++a.astar_solved;
        if (r.k > 0) {
          a.per_move_sum += static_cast<double>(r.distance) / r.k;
          ++a.per_move_n;
        }
      }
    } else {
      pr.second = &r;
      if (r.status == "solved") ++a.exact_solved;
    }
  }
  for (const auto& [key_seed, pr] : pairs) {
    const auto& [ra, re] = pr;
    ++aggs[std::get<0>(key_seed)].runs;
    if (!ra || !re || ra->status != "solved" || re->status != "solved") continue;
    Agg& a = aggs[std::get<0>(key_seed)];
    ++a.both_optimal;
    if (ra->distance == re->distance) ++a.agree;
    if (re->gap && ra->distance != re->distance) {
      a.gap_sum += *re->gap;
      ++a.gap_n;
    }
  }
  out << "bay,warehouse,fill,classes,runs,astar_solved,exact_solved,compared,distance_agree,"
         "mean_distance_per_move,mean_gap_disagreeing\n";
  for (const auto& key : order) {
    const Agg& a = aggs[key];
    out << std::get<0>(key) << ',' << std::get<1>(key) << ',' << std::get<2>(key) << ','
        << std::get<3>(key) << ',' << a.runs << ',' << a.astar_solved << ',' << a.exact_solved
        << ',' << a.both_optimal << ',' << a.agree << ','
        << (a.per_move_n ? fixed(a.per_move_sum / a.per_move_n, 6) : std::string{}) << ','
        << (a.gap_n ? fixed(a.gap_sum / a.gap_n, 6) : std::string{}) << '\n';
  }
}

}  // namespace marshal
