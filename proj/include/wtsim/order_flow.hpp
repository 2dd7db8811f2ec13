#pragma once
#include <array>
#include <cctype>
#include <cmath>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "wtsim/priority.hpp"
#include "wtsim/rng.hpp"
#include "wtsim/types.hpp"

namespace wtsim {

// How a zero-intelligence agent picks its limit price from the last trade price p.
//   G   p + N(0, sigma)          MG  p * N(1, sigma)       MU  p * U[mult_lo, mult_hi]
//   AG  p + N(0, sigma)          AU  p + U[add_lo, add_hi]  E   p * exp(delta * N(0,1))
enum class PriceModel : std::uint8_t { G, MG, MU, AG, AU, E };

// Order size: G rounds N(mean, sd) and redraws below 1, U is uniform on
// [lo, hi], S is always one share.
enum class QuantityModel : std::uint8_t { G, U, S };

enum class Ranking : std::uint8_t { MI, NY };

inline constexpr std::array<PriceModel, 6> kPriceModels{PriceModel::G,  PriceModel::MG,
                                                        PriceModel::MU, PriceModel::AG,
                                                        PriceModel::AU, PriceModel::E};
inline constexpr std::array<QuantityModel, 3> kQuantityModels{QuantityModel::G, QuantityModel::U,
                                                              QuantityModel::S};
inline constexpr std::array<Ranking, 2> kRankings{Ranking::MI, Ranking::NY};

constexpr std::string_view to_string(PriceModel m) noexcept {
  constexpr std::array<std::string_view, 6> names{"G", "MG", "MU", "AG", "AU", "E"};
  return names[static_cast<std::size_t>(m)];
}

constexpr std::string_view to_string(QuantityModel m) noexcept {
  constexpr std::array<std::string_view, 3> names{"G", "U", "S"};
  return names[static_cast<std::size_t>(m)];
}

constexpr std::string_view to_string(Ranking r) noexcept { return r == Ranking::MI ? "MI" : "NY"; }

constexpr PriorityRule rule_for(Ranking r) noexcept {
  return r == Ranking::MI ? PriorityRule::ptq : PriorityRule::pqt;
}

struct PriceParams {
  double sigma = 0.2;
  double mult_lo = 0.5;
  double mult_hi = 1.5;
  double add_lo = -1.0;
  double add_hi = 1.0;
  double delta = 0.02;
  int max_attempts = 100;
};

struct QuantityParams {
  double gaussian_mean = 2.0;
  double gaussian_sd = 50.0;
  Quantity uniform_lo = 1;
  Quantity uniform_hi = 100;
};

struct Scenario {
  PriceModel price{PriceModel::G};
  QuantityModel quantity{QuantityModel::G};
  Ranking ranking{Ranking::MI};

  PriorityRule rule() const noexcept { return rule_for(ranking); }

  std::string label() const {
    std::string s;
    s += to_string(price);
    s += ' ';
    s += to_string(quantity);
    s += ' ';
    s += to_string(ranking);
    return s;
  }

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

// Every price x quantity x ranking combination, ranking varying slowest.
inline std::vector<Scenario> all_scenarios() {
  std::vector<Scenario> out;
  for (Ranking r : kRankings)
    for (PriceModel p : kPriceModels)
      for (QuantityModel q : kQuantityModels) out.push_back(Scenario{p, q, r});
  return out;
}

namespace detail {

inline std::string upper(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return out;
}

template <typename Enum, std::size_t N>
Enum parse_token(const std::string& tok, const std::array<Enum, N>& values, std::string_view what) {
  const std::string up = upper(tok);
  for (Enum v : values)
    if (up == to_string(v)) return v;
  std::string valid;
  for (Enum v : values) {
    if (!valid.empty()) valid += ", ";
    valid += to_string(v);
  }
  throw ParseError("unknown " + std::string(what) + " '" + tok + "' (expected one of " + valid +
                   ")");
}

} // namespace detail

// Parses "<price> <quantity> <ranking>", e.g. "AU G MI". Case-insensitive.
inline Scenario parse_scenario_label(std::string_view label) {
  std::istringstream in{std::string(label)};
  std::vector<std::string> toks;
  for (std::string t; in >> t;) toks.push_back(t);
  if (toks.size() != 3)
    throw ParseError("scenario label '" + std::string(label) +
                     "' must have three tokens: <price> <quantity> <ranking>");
  return Scenario{detail::parse_token(toks[0], kPriceModels, "price process"),
                  detail::parse_token(toks[1], kQuantityModels, "quantity process"),
                  detail::parse_token(toks[2], kRankings, "ranking")};
}

inline Side next_side(Rng& rng) { return rng.coin() ? Side::buy : Side::sell; }

// Raw draw feeding a price model: a standard normal for G/MG/AG/E, a
// canonical uniform in [0,1) for MU/AU.
inline double draw_price_noise(PriceModel m, Rng& rng) {
  if (m == PriceModel::MU || m == PriceModel::AU) return rng.uniform(0.0, 1.0);
  return rng.normal(0.0, 1.0);
}

// Unquantized order price for a given noise draw.
inline double price_from_noise(PriceModel m, const PriceParams& pp, double p_last, double xi) {
  switch (m) {
    case PriceModel::G: return p_last + pp.sigma * xi;
    case PriceModel::MG: return p_last * (1.0 + pp.sigma * xi);
    case PriceModel::MU: return p_last * (pp.mult_lo + (pp.mult_hi - pp.mult_lo) * xi);
    case PriceModel::AG: return p_last + pp.sigma * xi;
    case PriceModel::AU: return p_last + pp.add_lo + (pp.add_hi - pp.add_lo) * xi;
    case PriceModel::E: return p_last * std::exp(pp.delta * xi);
  }
  return p_last;
}

// One quantized, strictly positive limit price; nullopt when every attempt
// lands at or below zero (the agent then skips its turn).
inline std::optional<Price> next_price(PriceModel m, const PriceParams& pp, Price p_last,
                                       double tick_size, Rng& rng) {
  if (p_last.ticks <= 0) throw ContractViolation("next_price: last price must be positive");
  const double p = p_last.value(tick_size);
  for (int i = 0; i < pp.max_attempts; ++i) {
    const Price out = Price::from_value(price_from_noise(m, pp, p, draw_price_noise(m, rng)),
                                        tick_size);
    if (out.ticks > 0) return out;
  }
  return std::nullopt;
}

inline Quantity next_quantity(QuantityModel m, const QuantityParams& qp, Rng& rng) {
  switch (m) {
    case QuantityModel::S: return 1;
    case QuantityModel::U: return rng.uniform_int(qp.uniform_lo, qp.uniform_hi);
    case QuantityModel::G:
      for (;;) {
        const auto q = std::llround(rng.normal(qp.gaussian_mean, qp.gaussian_sd));
        if (q >= 1) return q;
      }
  }
  return 1;
}

struct OrderFlowParams {
  PriceParams price;
  QuantityParams quantity;
  double tick_size = kDefaultTickSize;
};

// Side, then price, then size; the agent sees only the last trade price.
inline std::optional<Order> make_order(const Scenario& sc, Price p_last, Tick tick, Rng& rng,
                                       const OrderFlowParams& params = {}) {
  const Side side = next_side(rng);
  const auto price = next_price(sc.price, params.price, p_last, params.tick_size, rng);
  if (!price) return std::nullopt;
  const Quantity qty = next_quantity(sc.quantity, params.quantity, rng);
  return Order::limit(side, *price, qty, tick);
}

} // namespace wtsim
