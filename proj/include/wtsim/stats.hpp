#pragma once
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/students_t.hpp>

#include "wtsim/errors.hpp"
#include "wtsim/simulator.hpp"

namespace wtsim::stats {

enum class Binning : std::uint8_t { unit, log };

inline constexpr double kLogBinRatio = 1.25;

// One histogram cell over the integer durations [lo, hi).
struct Bin {
  Tick lo{0};
  Tick hi{0};
  double x{0};  // representative abscissa used in regressions
  std::size_t count{0};
  double probability{0};  // count / total
  double density{0};      // probability / (hi - lo)
};

struct Histogram {
  SampleKind kind{SampleKind::absolute};
  Binning binning{Binning::unit};
  std::vector<Bin> bins;
  std::size_t total{0};

  std::vector<Tick> bin_edges() const {
    std::vector<Tick> e;
    for (const auto& b : bins) e.push_back(b.lo);
    if (!bins.empty()) e.push_back(bins.back().hi);
    return e;
  }

  // Curve given directly as (x, density) pairs; used for synthetic checks.
  static Histogram from_points(std::span<const double> xs, std::span<const double> ys) {
    if (xs.size() != ys.size()) throw ContractViolation("from_points: length mismatch");
    Histogram h;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      Bin b;
      b.x = xs[i];
      b.probability = b.density = ys[i];
      h.bins.push_back(b);
    }
    return h;
  }
};

// Integer bin edges 1 = e0 < e1 < ... with e_k = ceil(ratio^k), collapsing
// cells that would contain no integer, until the last edge exceeds max_value.
inline std::vector<Tick> log_bin_edges(Tick max_value, double ratio = kLogBinRatio) {
  std::vector<Tick> edges{1};
  double e = 1.0;
  while (edges.back() <= max_value) {
    e *= ratio;
    const auto next = static_cast<Tick>(std::ceil(e - 1e-9));
    if (next > edges.back()) edges.push_back(next);
  }
  return edges;
}

// Zero durations are left out: they are kept in the raw sample files but
// carry no information for log-space fits.
inline Histogram build_histogram(std::span<const Tick> durations, SampleKind kind,
                                 Binning binning) {
  std::vector<Tick> xs;
  for (Tick d : durations)
    if (d >= 1) xs.push_back(d);
  if (xs.empty()) throw EmptyInputError("build_histogram: no positive durations");
  std::sort(xs.begin(), xs.end());

  Histogram h{kind, binning, {}, xs.size()};
  const double total = static_cast<double>(xs.size());
  auto fill = [&](Tick lo, Tick hi, double x) {
    auto first = std::lower_bound(xs.begin(), xs.end(), lo);
    auto last = std::lower_bound(first, xs.end(), hi);
    Bin b{lo, hi, x, static_cast<std::size_t>(last - first), 0, 0};
    b.probability = static_cast<double>(b.count) / total;
    b.density = b.probability / static_cast<double>(hi - lo);
    h.bins.push_back(b);
  };

  if (binning == Binning::unit) {
    for (Tick v = xs.front(); v <= xs.back(); ++v) fill(v, v + 1, static_cast<double>(v));
  } else {
    const auto edges = log_bin_edges(xs.back());
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
      const double lo = static_cast<double>(edges[i]);
      const double last = static_cast<double>(edges[i + 1] - 1);
      fill(edges[i], edges[i + 1], std::sqrt(lo * last));
    }
  }
  return h;
}

inline Histogram build_histogram(std::span<const PendingSample> samples, SampleKind kind,
                                 Binning binning) {
  std::vector<Tick> d;
  for (const auto& s : samples)
    if (s.kind == kind) d.push_back(s.duration);
  return build_histogram(d, kind, binning);
}

// Ordinary least squares y = slope * x + intercept.
struct LinearFit {
  double slope{0};
  double intercept{0};
  double r_squared{0};
  double p_slope{1};
  double p_intercept{1};
  std::size_t n{0};
};

inline double two_sided_t_pvalue(double estimate, double stderr_, std::size_t dof) {
  if (dof == 0) return 1.0;
  if (stderr_ <= 0) return estimate == 0 ? 1.0 : 0.0;
  const boost::math::students_t dist(static_cast<double>(dof));
  return 2.0 * boost::math::cdf(boost::math::complement(dist, std::abs(estimate / stderr_)));
}

inline LinearFit ols(std::span<const double> x, std::span<const double> y) {
  const std::size_t n = x.size();
  if (n < 2 || y.size() != n) throw FitError("regression needs at least two points", n);
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(n);
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(n);
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx <= 0) throw FitError("regression abscissae are all equal", n);

  LinearFit f;
  f.n = n;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  double ss_res = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = y[i] - (f.slope * x[i] + f.intercept);
    ss_res += r * r;
  }
  f.r_squared = syy > 0 ? std::clamp(1.0 - ss_res / syy, 0.0, 1.0) : 1.0;

  if (n > 2) {
    const double s2 = ss_res / static_cast<double>(n - 2);
    const double se_slope = std::sqrt(s2 / sxx);
    double sum_x2 = 0;
    for (double v : x) sum_x2 += v * v;
    const double se_icpt = std::sqrt(s2 * sum_x2 / (static_cast<double>(n) * sxx));
    f.p_slope = two_sided_t_pvalue(f.slope, se_slope, n - 2);
    f.p_intercept = two_sided_t_pvalue(f.intercept, se_icpt, n - 2);
  }
  return f;
}

enum class FitModel : std::uint8_t { exponential, power_law, tail_exponential };

constexpr std::string_view to_string(FitModel m) noexcept {
  switch (m) {
    case FitModel::exponential: return "exponential";
    case FitModel::power_law: return "power_law";
    case FitModel::tail_exponential: return "tail_exponential";
  }
  return "?";
}

struct FitRange {
  double lo{1};
  double hi{std::numeric_limits<double>::infinity()};
};

// Exponential: y = e^{lnA} e^{alpha x}, A holds lnA.
// Power law:   y = A x^alpha.
struct FitResult {
  FitModel model{FitModel::exponential};
  double alpha{0};
  double A{0};
  double intercept{0};  // always the log-space intercept
  double r_squared{0};
  FitRange fit_range;
  std::size_t n_points{0};
  double p_slope{1};
  double p_intercept{1};
};

namespace detail {

inline FitResult fit_log_density(const Histogram& h, FitModel model, FitRange range,
                                 bool strict_lower) {
  const bool loglog = model == FitModel::power_law;
  std::vector<double> xs, ys;
  for (const auto& b : h.bins) {
    const bool above = strict_lower ? b.x > range.lo : b.x >= range.lo;
    if (!above || b.x > range.hi || !(b.density > 0)) continue;
    if (loglog && b.x < 1) continue;
    xs.push_back(loglog ? std::log(b.x) : b.x);
    ys.push_back(std::log(b.density));
  }
  if (xs.size() < 3) throw FitError(std::string(to_string(model)) + " fit needs >= 3 positive bins",
                                    xs.size());
  const LinearFit lf = ols(xs, ys);

  FitResult r;
  r.model = model;
  r.alpha = lf.slope;
  r.intercept = lf.intercept;
  r.A = loglog ? std::exp(lf.intercept) : lf.intercept;
  r.r_squared = lf.r_squared;
  r.n_points = lf.n;
  r.p_slope = lf.p_slope;
  r.p_intercept = lf.p_intercept;
  r.fit_range = range;
  return r;
}

} // namespace detail

// OLS of ln(density) on x over positive bins inside the range.
inline FitResult fit_exponential(const Histogram& h, FitRange range = {}) {
  return detail::fit_log_density(h, FitModel::exponential, range, false);
}

// OLS of ln(density) on ln(x) over positive bins with x >= 1 inside the range.
inline FitResult fit_power_law(const Histogram& h, FitRange range = {}) {
  return detail::fit_log_density(h, FitModel::power_law, range, false);
}

// Exponential restricted to x > crossover (and x <= upper).
inline FitResult fit_tail_exponential(const Histogram& h, double crossover,
                                      double upper = std::numeric_limits<double>::infinity()) {
  return detail::fit_log_density(h, FitModel::tail_exponential, FitRange{crossover, upper}, true);
}

struct SummaryStats {
  double min{0};
  double q1{0};
  double median{0};
  double q3{0};
  double max{0};
  double mean{0};
  std::size_t n{0};
};

// Linear interpolation between closest ranks, q in [0, 1], input sorted.
inline double quantile_sorted(std::span<const double> sorted, double q) {
  if (sorted.empty()) throw EmptyInputError("quantile of an empty sample");
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto i = static_cast<std::size_t>(std::floor(pos));
  if (i + 1 >= sorted.size()) return sorted.back();
  const double frac = pos - static_cast<double>(i);
  return sorted[i] + frac * (sorted[i + 1] - sorted[i]);
}

inline SummaryStats summarize(std::span<const double> values) {
  if (values.empty()) throw EmptyInputError("summarize: empty input");
  std::vector<double> v(values.begin(), values.end());
  std::sort(v.begin(), v.end());
  SummaryStats s;
  s.n = v.size();
  s.min = v.front();
  s.max = v.back();
  s.q1 = quantile_sorted(v, 0.25);
  s.median = quantile_sorted(v, 0.5);
  s.q3 = quantile_sorted(v, 0.75);
  s.mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
  return s;
}

// Default fit window [1, x_hi] with x_hi the largest duration seen at least
// `min_count` times (the largest duration at all if none qualifies).
inline FitRange default_fit_range(std::span<const Tick> durations, std::size_t min_count = 5) {
  std::vector<Tick> xs;
  for (Tick d : durations)
    if (d >= 1) xs.push_back(d);
  if (xs.empty()) throw EmptyInputError("default_fit_range: no positive durations");
  std::sort(xs.begin(), xs.end());
  Tick best = 0;
  for (std::size_t i = 0; i < xs.size();) {
    std::size_t j = i;
    while (j < xs.size() && xs[j] == xs[i]) ++j;
    if (j - i >= min_count) best = xs[i];
    i = j;
  }
  return FitRange{1.0, static_cast<double>(best ? best : xs.back())};
}

// Ten times the median positive duration.
inline double default_crossover(std::span<const Tick> durations) {
  std::vector<double> xs;
  for (Tick d : durations)
    if (d >= 1) xs.push_back(static_cast<double>(d));
  if (xs.empty()) throw EmptyInputError("default_crossover: no positive durations");
  std::sort(xs.begin(), xs.end());
  return 10.0 * quantile_sorted(xs, 0.5);
}

struct ChiSquare {
  double statistic{0};
  std::size_t dof{0};
  double p_value{1};
};

// Goodness of fit of `values` to the uniform law on [lo, hi) with equal bins.
inline ChiSquare chi_square_uniform(std::span<const double> values, double lo, double hi,
                                    std::size_t bins) {
  if (values.empty()) throw EmptyInputError("chi_square_uniform: empty input");
  if (bins < 2 || !(hi > lo)) throw ContractViolation("chi_square_uniform: bad binning");
  std::vector<std::size_t> counts(bins, 0);
  const double width = (hi - lo) / static_cast<double>(bins);
  for (double v : values) {
    auto k = static_cast<std::size_t>(std::floor((v - lo) / width));
    counts[std::min(k, bins - 1)]++;
  }
  const double expected = static_cast<double>(values.size()) / static_cast<double>(bins);
  ChiSquare c;
  for (auto n : counts) c.statistic += (n - expected) * (n - expected) / expected;
  c.dof = bins - 1;
  const boost::math::chi_squared dist(static_cast<double>(c.dof));
  c.p_value = boost::math::cdf(boost::math::complement(dist, c.statistic));
  return c;
}

// Counts per equal-width bin on [lo, hi).
inline std::vector<std::size_t> equal_width_counts(std::span<const double> values, double lo,
                                                   double hi, std::size_t bins) {
  std::vector<std::size_t> counts(bins, 0);
  const double width = (hi - lo) / static_cast<double>(bins);
  for (double v : values) {
    if (v < lo || v >= hi) continue;
    auto k = static_cast<std::size_t>(std::floor((v - lo) / width));
    counts[std::min(k, bins - 1)]++;
  }
  return counts;
}

} // namespace wtsim::stats
