#pragma once
#include <optional>
#include <string>
#include <vector>

#include "wtsim/simulator.hpp"
#include "wtsim/stats.hpp"

namespace wtsim::stats {

inline std::vector<Tick> durations(const RunResult& r, SampleKind kind,
                                   Phase phase = Phase::continuous) {
  std::vector<Tick> out;
  for (const auto& s : r.pending_samples)
    if (s.kind == kind && s.phase == phase) out.push_back(s.duration);
  return out;
}

struct KindFit {
  SampleKind kind{SampleKind::absolute};
  FitModel model{FitModel::exponential};
  std::optional<FitResult> fit;
  std::string error;  // why the fit is missing
};

struct AnalysisOptions {
  std::optional<double> tail_crossover;  // default: 10x median duration
};

struct RunAnalysis {
  std::vector<KindFit> fits;  // exponential, power_law, tail_exponential per kind
  SummaryStats closes;
  std::size_t trade_count{0};

  const KindFit* find(SampleKind k, FitModel m) const {
    for (const auto& f : fits)
      if (f.kind == k && f.model == m) return &f;
    return nullptr;
  }

  std::optional<double> alpha(SampleKind k, FitModel m) const {
    const KindFit* f = find(k, m);
    if (!f || !f->fit) return std::nullopt;
    return f->fit->alpha;
  }
};

// Continuous-session waiting times: exponential on unit bins, power law on
// log bins (same window), exponential tail past the crossover on unit bins.
inline std::vector<KindFit> fit_kind(std::span<const Tick> d, SampleKind kind,
                                     const AnalysisOptions& opt) {
  std::vector<KindFit> out;
  auto attempt = [&](FitModel m, auto&& fn) {
    KindFit kf{kind, m, std::nullopt, {}};
    try {
      kf.fit = fn();
    } catch (const std::exception& e) {
      kf.error = e.what();
    }
    out.push_back(std::move(kf));
  };

  bool any = false;
  for (Tick t : d) any = any || t >= 1;
  if (!any) {
    for (FitModel m : {FitModel::exponential, FitModel::power_law, FitModel::tail_exponential})
      out.push_back(KindFit{kind, m, std::nullopt, "no positive durations"});
    return out;
  }

  const FitRange range = default_fit_range(d);
  const Histogram unit = build_histogram(d, kind, Binning::unit);
  const Histogram logh = build_histogram(d, kind, Binning::log);
  const double crossover = opt.tail_crossover.value_or(default_crossover(d));

  attempt(FitModel::exponential, [&] { return fit_exponential(unit, range); });
  attempt(FitModel::power_law, [&] { return fit_power_law(logh, range); });
  attempt(FitModel::tail_exponential,
          [&] { return fit_tail_exponential(unit, crossover, range.hi); });
  return out;
}

inline RunAnalysis analyze(const RunResult& r, const AnalysisOptions& opt = {}) {
  RunAnalysis a;
  for (SampleKind k : {SampleKind::bid, SampleKind::ask, SampleKind::absolute}) {
    auto fits = fit_kind(durations(r, k), k, opt);
    a.fits.insert(a.fits.end(), fits.begin(), fits.end());
  }
  std::vector<double> closes;
  for (Price p : r.daily_closing_prices) closes.push_back(p.value());
  a.closes = summarize(closes);
  a.trade_count = r.trades.size();
  return a;
}

// Arrival offsets, relative to the window start, of the orders behind the
// auction fills of `phase`. Side kinds give each filled order's offset; the
// absolute kind gives the earlier order of each fill. Orders carried in from
// before the window are skipped.
inline std::vector<double> auction_offsets(const RunResult& r, Phase phase, SampleKind kind) {
  std::vector<double> out;
  std::size_t w = 0;
  for (const auto& s : r.pending_samples) {
    if (s.phase != phase || s.kind != kind) continue;
    while (w < r.auction_windows.size() &&
           (r.auction_windows[w].phase != phase || r.auction_windows[w].end < s.execution_tick))
      ++w;
    if (w == r.auction_windows.size()) break;
    const AuctionWindow& win = r.auction_windows[w];
    const Tick span = win.end - win.start;
    if (s.duration <= span) out.push_back(static_cast<double>(span - s.duration));
  }
  return out;
}

} // namespace wtsim::stats
