#include "lobresp/synth/config.hpp"

#include <charconv>
#include <cstdlib>
#include <functional>
#include <map>
#include <string>

#include "lobresp/error.hpp"

namespace lobresp::synth {

namespace {

[[noreturn]] void invalid(const std::string& why) { throw Error(ErrorCode::InvalidConfig, why); }

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

template <class T>
T parse_number(const std::string& key, const std::string& text) {
  T value{};
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
    invalid("config key '" + key + "': bad value '" + text + "'");
  }
  return value;
}

Timestamp parse_time(const std::string& key, const std::string& text) {
  auto t = parse_clock(text);
  if (!t) invalid("config key '" + key + "': bad clock time '" + text + "'");
  return *t;
}

std::vector<Symbol> parse_symbols(const std::string& text) {
  std::vector<Symbol> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto comma = text.find(',', start);
    if (comma == std::string::npos) comma = text.size();
    const auto item = trim(std::string_view(text).substr(start, comma - start));
    if (!item.empty()) out.emplace_back(item);
    start = comma + 1;
  }
  return out;
}

}  // namespace

void GeneratorConfig::validate() const {
  if (symbols.empty()) invalid("generator needs at least one symbol");
  if (session.close <= session.open) invalid("session close must be after open");
  if (rates.placement < 0.0 || rates.cancellation < 0.0 || rates.market < 0.0 || rates.replace < 0.0 ||
      rates.background < 0.0) {
    invalid("rates must be non-negative");
  }
  if (background_min_ticks < 1 || background_max_ticks < background_min_ticks) {
    invalid("background depth range must satisfy 1 <= min <= max");
  }
  if (!(depth_p > 0.0 && depth_p < 1.0)) invalid("depth_p must lie in (0, 1)");
  if (initial_price < 2 || initial_levels < 1 || initial_orders_per_level < 1) invalid("bad initial book");
  if (initial_price <= initial_levels) invalid("initial_price must exceed initial_levels");
  if (lot == 0 || min_lots < 1 || max_lots < min_lots) invalid("bad share size distribution");
  if (market_min_lots < 1 || market_max_lots < market_min_lots) invalid("bad market order size distribution");
  for (double p : {partial_cancel_prob, cancel_as_reduce_prob, priced_execution_prob}) {
    if (p < 0.0 || p > 1.0) invalid("probabilities must lie in [0, 1]");
  }
  if (impact.strength < 0.0 || impact.strength > 0.5) invalid("impact_strength must lie in [0, 0.5]");
  if (impact.timescale_seconds <= 0.0) invalid("impact_timescale must be positive");
}

GeneratorConfig load_config(std::istream& in, GeneratorConfig c) {
  using Setter = std::function<void(const std::string&, const std::string&)>;
  auto real = [](double& field) -> Setter {
    return [&field](const std::string& k, const std::string& v) { field = parse_number<double>(k, v); };
  };
  auto integer = [](int& field) -> Setter {
    return [&field](const std::string& k, const std::string& v) { field = parse_number<int>(k, v); };
  };
  const std::map<std::string, Setter> setters{
      {"seed", [&](const std::string& k, const std::string& v) { c.seed = parse_number<std::uint64_t>(k, v); }},
      {"symbols", [&](const std::string&, const std::string& v) { c.symbols = parse_symbols(v); }},
      {"session_open", [&](const std::string& k, const std::string& v) { c.session.open = parse_time(k, v); }},
      {"session_close", [&](const std::string& k, const std::string& v) { c.session.close = parse_time(k, v); }},
      {"placement_rate", real(c.rates.placement)},
      {"cancellation_rate", real(c.rates.cancellation)},
      {"market_rate", real(c.rates.market)},
      {"replace_rate", real(c.rates.replace)},
      {"background_rate", real(c.rates.background)},
      {"background_min_ticks", integer(c.background_min_ticks)},
      {"background_max_ticks", integer(c.background_max_ticks)},
      {"depth_p", real(c.depth_p)},
      {"initial_price", [&](const std::string& k, const std::string& v) { c.initial_price = parse_number<Ticks>(k, v); }},
      {"initial_levels", integer(c.initial_levels)},
      {"initial_orders_per_level", integer(c.initial_orders_per_level)},
      {"lot", [&](const std::string& k, const std::string& v) { c.lot = parse_number<Shares>(k, v); }},
      {"min_lots", integer(c.min_lots)},
      {"max_lots", integer(c.max_lots)},
      {"market_min_lots", integer(c.market_min_lots)},
      {"market_max_lots", integer(c.market_max_lots)},
      {"partial_cancel_prob", real(c.partial_cancel_prob)},
      {"cancel_as_reduce_prob", real(c.cancel_as_reduce_prob)},
      {"priced_execution_prob", real(c.priced_execution_prob)},
      {"impact_strength", real(c.impact.strength)},
      {"impact_timescale", real(c.impact.timescale_seconds)},
      {"checkpoint_every",
       [&](const std::string& k, const std::string& v) { c.checkpoint_every = parse_number<std::uint64_t>(k, v); }},
  };

  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const std::string body = trim(line);
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) invalid("config line " + std::to_string(line_no) + ": expected key = value");
    const std::string key = trim(std::string_view(body).substr(0, eq));
    const std::string value = trim(std::string_view(body).substr(eq + 1));
    auto it = setters.find(key);
    if (it == setters.end()) invalid("config line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    it->second(key, value);
  }
  c.validate();
  return c;
}

void save_config(std::ostream& out, const GeneratorConfig& c) {
  out << "seed = " << c.seed << "\nsymbols = ";
  for (std::size_t i = 0; i < c.symbols.size(); ++i) out << (i ? "," : "") << c.symbols[i];
  out << "\nsession_open = " << format_clock(c.session.open) << "\nsession_close = " << format_clock(c.session.close)
      << "\nplacement_rate = " << format_double(c.rates.placement)
      << "\ncancellation_rate = " << format_double(c.rates.cancellation)
      << "\nmarket_rate = " << format_double(c.rates.market) << "\nreplace_rate = " << format_double(c.rates.replace)
      << "\nbackground_rate = " << format_double(c.rates.background)
      << "\nbackground_min_ticks = " << c.background_min_ticks
      << "\nbackground_max_ticks = " << c.background_max_ticks << "\ndepth_p = " << format_double(c.depth_p) << "\ninitial_price = " << c.initial_price
      << "\ninitial_levels = " << c.initial_levels << "\ninitial_orders_per_level = " << c.initial_orders_per_level
      << "\nlot = " << c.lot << "\nmin_lots = " << c.min_lots << "\nmax_lots = " << c.max_lots
      << "\nmarket_min_lots = " << c.market_min_lots << "\nmarket_max_lots = " << c.market_max_lots
      << "\npartial_cancel_prob = " << format_double(c.partial_cancel_prob)
      << "\ncancel_as_reduce_prob = " << format_double(c.cancel_as_reduce_prob)
      << "\npriced_execution_prob = " << format_double(c.priced_execution_prob)
      << "\nimpact_strength = " << format_double(c.impact.strength)
      << "\nimpact_timescale = " << format_double(c.impact.timescale_seconds)
      << "\ncheckpoint_every = " << c.checkpoint_every << '\n';
}

GeneratorConfig calibrated_config(std::uint64_t seed, std::vector<Symbol> symbols) {
  GeneratorConfig c;
  c.seed = seed;
  c.symbols = std::move(symbols);
  return c;
}

}  // namespace lobresp::synth
