#pragma once
#include <algorithm>
#include <atomic>
#include <filesystem>
#include <iomanip>
#include <map>
#include <mutex>
#include <ostream>
#include <set>
#include <sstream>
#include <thread>
#include <vector>

#include "wtsim/analysis.hpp"
#include "wtsim/output.hpp"
#include "wtsim/simulator.hpp"

namespace wtsim {

// A batch of runs: every scenario crossed with every seed.
struct GridSpec {
  std::vector<Scenario> scenarios;
  std::vector<std::uint64_t> seeds;
  SimConfig base{};  // scenario and seed are overwritten per run
  std::filesystem::path output_dir{"out"};
  unsigned jobs = 0;  // 0: one per available processor
  stats::AnalysisOptions analysis{};
  bool write_events = false;
};

// Expands "all" or a comma-separated list of labels.
inline std::vector<Scenario> parse_scenario_list(std::string_view text) {
  std::string trimmed(text);
  std::erase_if(trimmed, [](char c) { return c == '"' || c == '\''; });
  if (detail::upper(trimmed) == "ALL") return all_scenarios();
  std::vector<Scenario> out;
  std::stringstream ss(trimmed);
  for (std::string part; std::getline(ss, part, ',');) {
    if (part.find_first_not_of(" \t") == std::string::npos) continue;
    out.push_back(parse_scenario_label(part));
  }
  if (out.empty()) throw ParseError("no scenarios given");
  return out;
}

inline void validate(const GridSpec& g) {
  if (g.scenarios.empty()) throw ConfigError("grid has no scenarios");
  if (g.seeds.empty()) throw ConfigError("grid has no seeds");
  std::set<std::uint64_t> uniq(g.seeds.begin(), g.seeds.end());
  if (uniq.size() != g.seeds.size()) throw ConfigError("seeds must be distinct");
  std::set<std::string> labels;
  for (const auto& s : g.scenarios)
    if (!labels.insert(s.label()).second) throw ConfigError("scenario listed twice: " + s.label());
  if (g.analysis.tail_crossover && !(*g.analysis.tail_crossover >= 0))
    throw ConfigError("tail crossover must be non-negative");
  g.base.validate();

  std::error_code ec;
  std::filesystem::create_directories(g.output_dir, ec);
  const auto probe = g.output_dir / ".wtsim_write_probe";
  std::ofstream os(probe);
  if (ec || !os) throw ConfigError("output directory is not writable: " + g.output_dir.string());
  os.close();
  std::filesystem::remove(probe, ec);
}

struct RunRecord {
  Scenario scenario;
  std::uint64_t seed{0};
  bool ok{false};
  std::string error;
  std::size_t orders{0};
  std::size_t trades{0};
  stats::RunAnalysis analysis;
};

struct GridOutcome {
  std::vector<RunRecord> records;  // scenario-major, then seed
  int exit_code{0};
};

inline RunRecord run_one(const GridSpec& g, const Scenario& sc, std::uint64_t seed) {
  RunRecord rec{sc, seed, false, {}, 0, 0, {}};
  try {
    SimConfig cfg = g.base;
    cfg.scenario = sc;
    cfg.seed = seed;
    cfg.record_events = g.write_events;
    const RunResult r = run(cfg);
    rec.analysis = stats::analyze(r, g.analysis);
    rec.orders = r.total_orders;
    rec.trades = r.trades.size();

    const auto& dir = g.output_dir;
    const double ts = cfg.tick_size;
    io::atomic_write(dir / io::run_file("trades", r.label, seed),
                     [&](std::ostream& os) { io::write_trades_csv(os, r, ts); });
    io::atomic_write(dir / io::run_file("pending", r.label, seed),
                     [&](std::ostream& os) { io::write_pending_csv(os, r); });
    io::atomic_write(dir / io::run_file("summary", r.label, seed),
                     [&](std::ostream& os) { io::write_summary_csv(os, r, ts); });
    io::atomic_write(dir / io::run_file("fits", r.label, seed),
                     [&](std::ostream& os) { io::write_fits_csv(os, rec.analysis); });
    if (g.write_events)
      io::atomic_write(dir / io::run_file("events", r.label, seed),
                       [&](std::ostream& os) { io::write_events_csv(os, r, ts); });
    rec.ok = true;
  } catch (const std::exception& e) {
    rec.error = e.what();
  }
  return rec;
}

namespace detail {

inline constexpr std::array<std::pair<SampleKind, stats::FitModel>, 9> kFitColumns{{
  {SampleKind::bid, stats::FitModel::exponential},
  {SampleKind::bid, stats::FitModel::power_law},
  {SampleKind::bid, stats::FitModel::tail_exponential},
  {SampleKind::ask, stats::FitModel::exponential},
  {SampleKind::ask, stats::FitModel::power_law},
  {SampleKind::ask, stats::FitModel::tail_exponential},
  {SampleKind::absolute, stats::FitModel::exponential},
  {SampleKind::absolute, stats::FitModel::power_law},
  {SampleKind::absolute, stats::FitModel::tail_exponential},
}};

inline std::string opt_real(std::optional<double> v) { return v ? format_real(*v) : "nan"; }

inline double median_of(std::vector<double> v) {
  return v.empty() ? 0.0 : stats::summarize(v).median;
}

inline double mean_of(const std::vector<double>& v) {
  return v.empty() ? 0.0 : stats::summarize(v).mean;
}

} // namespace detail

inline void write_grid_summary(std::ostream& os, const std::vector<RunRecord>& recs) {
  os << "scenario,price,quantity,ranking,seed,status,orders,trades,"
        "close_min,close_q1,close_median,close_q3,close_max,close_mean";
  for (const auto& [k, m] : detail::kFitColumns)
    os << ",alpha_" << stats::to_string(m) << '_' << to_string(k);
  os << '\n';
  for (const auto& r : recs) {
    os << r.scenario.label() << ',' << to_string(r.scenario.price) << ','
       << to_string(r.scenario.quantity) << ',' << to_string(r.scenario.ranking) << ',' << r.seed
       << ',' << (r.ok ? "ok" : "failed") << ',' << r.orders << ',' << r.trades;
    const auto& c = r.analysis.closes;
    if (r.ok)
      for (double v : {c.min, c.q1, c.median, c.q3, c.max, c.mean}) os << ',' << format_real(v);
    else
      os << ",nan,nan,nan,nan,nan,nan";
    for (const auto& [k, m] : detail::kFitColumns)
      os << ',' << detail::opt_real(r.ok ? r.analysis.alpha(k, m) : std::nullopt);
    os << '\n';
  }
}

// One row per (price, quantity) pair present under both rankings.
struct RankingComparison {
  PriceModel price{};
  QuantityModel quantity{};
  double median_mi{0};
  double median_ny{0};
  double mean_mi{0};
  double mean_ny{0};
};

inline std::vector<RankingComparison> compare_rankings(const std::vector<RunRecord>& recs) {
  std::map<std::pair<int, int>, std::pair<std::vector<double>, std::vector<double>>> groups;
  for (const auto& r : recs) {
    if (!r.ok) continue;
    auto& g = groups[{static_cast<int>(r.scenario.price), static_cast<int>(r.scenario.quantity)}];
    (r.scenario.ranking == Ranking::MI ? g.first : g.second)
      .push_back(static_cast<double>(r.trades));
  }
  std::vector<RankingComparison> out;
  for (const auto& [key, g] : groups) {
    if (g.first.empty() || g.second.empty()) continue;
    out.push_back(RankingComparison{static_cast<PriceModel>(key.first),
                                    static_cast<QuantityModel>(key.second),
                                    detail::median_of(g.first), detail::median_of(g.second),
                                    detail::mean_of(g.first), detail::mean_of(g.second)});
  }
  return out;
}

inline void write_comparison_table(std::ostream& os, const std::vector<RankingComparison>& rows) {
  os << "PTQ (MI) vs PQT (NY) trade counts\n";
  os << std::left << std::setw(10) << "scenario" << std::right << std::setw(14) << "median MI"
     << std::setw(14) << "median NY" << std::setw(14) << "mean MI" << std::setw(14) << "mean NY"
     << "  winner\n";
  std::size_t mi_wins = 0;
  for (const auto& r : rows) {
    std::string name = std::string(to_string(r.price)) + " " + std::string(to_string(r.quantity));
    const bool mi = r.mean_mi >= r.mean_ny;
    mi_wins += mi;
    os << std::left << std::setw(10) << name << std::right << std::fixed << std::setprecision(1)
       << std::setw(14) << r.median_mi << std::setw(14) << r.median_ny << std::setw(14)
       << r.mean_mi << std::setw(14) << r.mean_ny << "  " << (mi ? "MI" : "NY") << '\n';
  }
  os << "MI >= NY (mean trades) in " << mi_wins << " of " << rows.size() << " pairs\n";
  os.unsetf(std::ios::floatfield);
}

inline void write_report(std::ostream& os, const GridSpec& g, const std::vector<RunRecord>& recs) {
  os << "waiting-time grid report\n";
  os << "agents " << g.base.n_agents << ", days " << g.base.n_days << ", turns "
     << g.base.turns_per_day << ", auctions " << (g.base.auctions ? "on" : "off")
     << ", validity " << to_string(g.base.validity) << ", seeds " << g.seeds.size() << "\n\n";

  os << "mean fitted exponents per scenario (continuous session)\n";
  os << std::left << std::setw(10) << "scenario" << std::right;
  for (const char* h : {"trades", "exp abs", "pl bid", "pl ask", "tail bid", "tail ask"})
    os << std::setw(14) << h;
  os << '\n';
  for (const auto& sc : g.scenarios) {
    std::vector<double> trades, e_abs, pl_b, pl_a, t_b, t_a;
    for (const auto& r : recs) {
      if (!r.ok || !(r.scenario == sc)) continue;
      trades.push_back(static_cast<double>(r.trades));
      auto push = [&](std::vector<double>& v, SampleKind k, stats::FitModel m) {
        if (auto a = r.analysis.alpha(k, m)) v.push_back(*a);
      };
      push(e_abs, SampleKind::absolute, stats::FitModel::exponential);
      push(pl_b, SampleKind::bid, stats::FitModel::power_law);
      push(pl_a, SampleKind::ask, stats::FitModel::power_law);
      push(t_b, SampleKind::bid, stats::FitModel::tail_exponential);
      push(t_a, SampleKind::ask, stats::FitModel::tail_exponential);
    }
    os << std::left << std::setw(10) << sc.label() << std::right;
    for (const auto* v : {&trades, &e_abs, &pl_b, &pl_a, &t_b, &t_a}) {
      if (v->empty()) os << std::setw(14) << "-";
      else os << std::setw(14) << std::setprecision(5) << detail::mean_of(*v);
    }
    os << '\n';
  }
  os << '\n';
  write_comparison_table(os, compare_rankings(recs));

  std::size_t failed = 0;
  for (const auto& r : recs) failed += !r.ok;
  if (failed) {
    os << "\nfailed runs:\n";
    for (const auto& r : recs)
      if (!r.ok) os << "  " << r.scenario.label() << " seed " << r.seed << ": " << r.error << '\n';
  }
}

// Runs the whole grid, `jobs` runs at a time, then writes grid_summary.csv
// and report.txt. Throws ConfigError before any run if the grid definition is invalid.
inline GridOutcome run_grid(const GridSpec& g, std::ostream& log) {
  validate(g);

  struct Job {
    Scenario sc;
    std::uint64_t seed;
  };
  std::vector<Job> jobs;
  for (const auto& sc : g.scenarios)
    for (auto seed : g.seeds) jobs.push_back({sc, seed});

  GridOutcome out;
  out.records.resize(jobs.size());
  unsigned n_threads = g.jobs ? g.jobs : std::max(1u, std::thread::hardware_concurrency());
  n_threads = std::min<unsigned>(n_threads, static_cast<unsigned>(jobs.size()));

  std::atomic<std::size_t> next{0};
  std::mutex log_mu;
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < jobs.size();) {
      out.records[i] = run_one(g, jobs[i].sc, jobs[i].seed);
      std::lock_guard lk(log_mu);
      const auto& r = out.records[i];
      log << (r.ok ? "done   " : "FAILED ") << r.scenario.label() << " seed " << r.seed;
      if (r.ok) log << "  trades " << r.trades;
      else log << "  " << r.error;
      log << '\n';
    }
  };
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < n_threads; ++t) pool.emplace_back(worker);
  }

  io::atomic_write(g.output_dir / "grid_summary.csv",
                   [&](std::ostream& os) { write_grid_summary(os, out.records); });
  io::atomic_write(g.output_dir / "report.txt",
                   [&](std::ostream& os) { write_report(os, g, out.records); });
  write_comparison_table(log, compare_rankings(out.records));

  const bool all_ok =
    std::all_of(out.records.begin(), out.records.end(), [](const auto& r) { return r.ok; });
  out.exit_code = all_ok ? 0 : 1;
  return out;
}

} // namespace wtsim
