#pragma once
#include <charconv>
#include <functional>
#include <istream>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "wtsim/grid.hpp"

namespace wtsim::config {

// Flat "key = value" text. "[section]" headers group keys; '#' and ';'
// start comments. Keys come back as "section.key" (or "key" before any header).
using Entries = std::vector<std::pair<std::string, std::string>>;

namespace detail {

inline std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

template <typename T>
T parse_number(const std::string& key, const std::string& v) {
  T out{};
  auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || p != v.data() + v.size())
    throw ConfigError("bad value for " + key + ": '" + v + "'");
  return out;
}

inline bool parse_bool(const std::string& key, const std::string& v) {
  const std::string u = wtsim::detail::upper(v);
  if (u == "1" || u == "TRUE" || u == "ON" || u == "YES") return true;
  if (u == "0" || u == "FALSE" || u == "OFF" || u == "NO") return false;
  throw ConfigError("bad boolean for " + key + ": '" + v + "'");
}

} // namespace detail

inline Entries parse(std::istream& in) {
  Entries out;
  std::string section;
  std::string line;
  for (std::size_t lineno = 1; std::getline(in, line); ++lineno) {
    if (auto c = line.find_first_of("#;"); c != std::string::npos) line.erase(c);
    const std::string t = detail::trim(line);
    if (t.empty()) continue;
    if (t.front() == '[') {
      if (t.back() != ']') throw ConfigError("line " + std::to_string(lineno) + ": bad section");
      section = detail::trim(std::string_view(t).substr(1, t.size() - 2));
      continue;
    }
    const auto eq = t.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
    std::string key = detail::trim(std::string_view(t).substr(0, eq));
    std::string val = detail::trim(std::string_view(t).substr(eq + 1));
    if (val.size() >= 2 && (val.front() == '"' || val.front() == '\'') && val.back() == val.front())
      val = val.substr(1, val.size() - 2);
    out.emplace_back(section.empty() ? key : section + "." + key, val);
  }
  return out;
}

// "1,2,3", "1-5" or a mix of both.
inline std::vector<std::uint64_t> parse_seed_list(std::string_view text) {
  std::vector<std::uint64_t> out;
  std::stringstream ss{std::string(text)};
  for (std::string part; std::getline(ss, part, ',');) {
    part = detail::trim(part);
    if (part.empty()) continue;
    if (auto dash = part.find('-'); dash != std::string::npos && dash > 0) {
      const auto lo = detail::parse_number<std::uint64_t>("seeds", detail::trim(part.substr(0, dash)));
      const auto hi = detail::parse_number<std::uint64_t>("seeds", detail::trim(part.substr(dash + 1)));
      if (hi < lo) throw ConfigError("seed range '" + part + "' is reversed");
      for (auto s = lo; s <= hi; ++s) out.push_back(s);
    } else {
      out.push_back(detail::parse_number<std::uint64_t>("seeds", part));
    }
  }
  if (out.empty()) throw ConfigError("no seeds given");
  return out;
}

inline OrderValidity parse_validity(const std::string& v) {
  const std::string u = wtsim::detail::upper(v);
  if (u == "DAY") return OrderValidity::day;
  if (u == "GOOD_TILL_RUN" || u == "GTR") return OrderValidity::good_till_run;
  throw ConfigError("validity must be 'day' or 'good_till_run', got '" + v + "'");
}

// Setting names shared by the config file and the command line. The value of
// each is applied to a GridSpec by `apply`.
struct Setting {
  std::string_view section;
  std::string_view key;
  std::function<void(GridSpec&, const std::string&)> apply;
};

inline const std::vector<Setting>& settings() {
  using detail::parse_bool;
  using detail::parse_number;
  static const std::vector<Setting> table{
    {"grid", "scenarios", [](GridSpec& g, const std::string& v) {
       try {
         g.scenarios = parse_scenario_list(v);
       } catch (const ParseError& e) {
         throw ConfigError(e.what());
       }
     }},
    {"grid", "seeds", [](GridSpec& g, const std::string& v) { g.seeds = parse_seed_list(v); }},
    {"grid", "out", [](GridSpec& g, const std::string& v) { g.output_dir = v; }},
    {"grid", "jobs", [](GridSpec& g, const std::string& v) { g.jobs = parse_number<unsigned>("jobs", v); }},
    {"grid", "tail_crossover", [](GridSpec& g, const std::string& v) {
       g.analysis.tail_crossover = parse_number<double>("tail_crossover", v);
     }},
    {"grid", "events", [](GridSpec& g, const std::string& v) { g.write_events = parse_bool("events", v); }},
    {"sim", "days", [](GridSpec& g, const std::string& v) { g.base.n_days = parse_number<std::size_t>("days", v); }},
    {"sim", "agents", [](GridSpec& g, const std::string& v) { g.base.n_agents = parse_number<std::size_t>("agents", v); }},
    {"sim", "turns", [](GridSpec& g, const std::string& v) { g.base.turns_per_day = parse_number<std::size_t>("turns", v); }},
    {"sim", "auctions", [](GridSpec& g, const std::string& v) { g.base.auctions = parse_bool("auctions", v); }},
    {"sim", "p0", [](GridSpec& g, const std::string& v) { g.base.initial_price = parse_number<double>("p0", v); }},
    {"sim", "validity", [](GridSpec& g, const std::string& v) { g.base.validity = parse_validity(v); }},
    {"sim", "tick_size", [](GridSpec& g, const std::string& v) { g.base.tick_size = parse_number<double>("tick_size", v); }},
    {"flow", "qty_mean", [](GridSpec& g, const std::string& v) { g.base.quantity_params.gaussian_mean = parse_number<double>("qty_mean", v); }},
    {"flow", "qty_sd", [](GridSpec& g, const std::string& v) { g.base.quantity_params.gaussian_sd = parse_number<double>("qty_sd", v); }},
    {"flow", "price_sigma", [](GridSpec& g, const std::string& v) { g.base.price_params.sigma = parse_number<double>("price_sigma", v); }},
    {"flow", "price_delta", [](GridSpec& g, const std::string& v) { g.base.price_params.delta = parse_number<double>("price_delta", v); }},
  };
  return table;
}

// Accepts "key" or "section.key"; unknown keys are configuration errors.
inline void apply(GridSpec& g, const std::string& name, const std::string& value) {
  for (const auto& s : settings()) {
    const std::string full = std::string(s.section) + "." + std::string(s.key);
    if (name == s.key || name == full) {
      s.apply(g, value);
      return;
    }
  }
  throw ConfigError("unknown setting '" + name + "'");
}

inline void apply(GridSpec& g, const Entries& entries) {
  for (const auto& [k, v] : entries) apply(g, k, v);
}

} // namespace wtsim::config
