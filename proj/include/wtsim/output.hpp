#pragma once
#include <filesystem>
#include <fstream>
#include <functional>
#include <ostream>
#include <string>

#include "wtsim/analysis.hpp"
#include "wtsim/event_log.hpp"
#include "wtsim/format.hpp"
#include "wtsim/simulator.hpp"

namespace wtsim::io {

// "MU U NY" -> "MU_U_NY"
inline std::string file_label(const std::string& label) {
  std::string s = label;
  for (char& c : s)
    if (c == ' ') c = '_';
  return s;
}

inline std::string run_file(std::string_view prefix, const std::string& label,
                            std::uint64_t seed) {
  return std::string(prefix) + "_" + file_label(label) + "_" + std::to_string(seed) + ".csv";
}

// Writes to a sibling temporary and renames it into place, so a reader never
// sees a partial file under the final name.
inline void atomic_write(const std::filesystem::path& path,
                         const std::function<void(std::ostream&)>& body) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  try {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    body(os);
    os.flush();
    if (!os) throw std::runtime_error("write failed for " + tmp.string());
  } catch (...) {
    std::error_code ec;
    std::filesystem::remove(tmp, ec);
    throw;
  }
  std::filesystem::rename(tmp, path);
}

inline void write_trades_csv(std::ostream& os, const RunResult& r, double tick_size) {
  os << "event_type,tick,side,price,quantity,maker_id,taker_id,phase\n";
  for (std::size_t i = 0; i < r.trades.size(); ++i)
    write_trade_row(os, r.trades[i], tick_size, &r.trade_phases[i]);
}

inline void write_pending_csv(std::ostream& os, const RunResult& r) {
  os << "kind,duration,execution_tick,phase\n";
  for (const auto& s : r.pending_samples)
    os << to_string(s.kind) << ',' << s.duration << ',' << s.execution_tick << ','
       << to_string(s.phase) << '\n';
}

inline void write_summary_csv(std::ostream& os, const RunResult& r, double tick_size) {
  os << "day,closing_price,trade_count\n";
  for (std::size_t d = 0; d < r.daily_closing_prices.size(); ++d)
    os << d + 1 << ',' << format_price(r.daily_closing_prices[d], tick_size) << ','
       << r.daily_trade_counts[d] << '\n';
}

inline void write_fits_csv(std::ostream& os, const stats::RunAnalysis& a) {
  os << "model,kind,alpha,A,r_squared,x_lo,x_hi,n_points,p_slope\n";
  for (const auto& kf : a.fits) {
    os << to_string(kf.model) << ',' << to_string(kf.kind) << ',';
    if (!kf.fit) {
      os << "nan,nan,nan,nan,nan,0,nan\n";
      continue;
    }
    const auto& f = *kf.fit;
    os << format_real(f.alpha) << ',' << format_real(f.A) << ',' << format_real(f.r_squared)
       << ',' << format_real(f.fit_range.lo) << ',' << format_real(f.fit_range.hi) << ','
       << f.n_points << ',' << format_real(f.p_slope) << '\n';
  }
}

inline void write_events_csv(std::ostream& os, const RunResult& r, double tick_size) {
  write_csv(os, r.events, tick_size, /*with_phase=*/true);
}

} // namespace wtsim::io
