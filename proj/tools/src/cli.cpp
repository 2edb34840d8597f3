#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <memory>
#include <sstream>

#include "dataset.hpp"
#include "lobresp/book/spread.hpp"
#include "lobresp/error.hpp"
#include "lobresp/feed/csv.hpp"
#include "lobresp/response/lag_grid.hpp"
#include "lobresp/synth/config.hpp"
#include "lobresp/synth/encoder.hpp"
#include "lobresp/synth/generator.hpp"

namespace lobresp::cli {

namespace fs = std::filesystem;
using classify::SpreadChangeKind;
using response::TimeScale;

namespace {

/// Bad flag combinations found after CLI11 accepted the command line.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

constexpr const char* kDefaultCrossTaus = "1,2,50,500,2000,10000";

fs::path resolve_output(const std::string& path) {
  fs::path p(path);
  if (p.is_relative()) {
    if (const char* dir = std::getenv("LOBRESP_OUTPUT_DIR"); dir && *dir) p = fs::path(dir) / p;
  }
  return p;
}

/// Output stream that is either a file (when a path is given) or `fallback`.
class Output {
 public:
  Output(const std::string& path, std::ostream& fallback, bool binary = false) : stream_(&fallback) {
    if (path.empty() || path == "-") return;
    const fs::path p = resolve_output(path);
    if (p.has_parent_path()) fs::create_directories(p.parent_path());
    file_ = std::make_unique<std::ofstream>(p, binary ? std::ios::out | std::ios::binary : std::ios::out);
    if (!*file_) throw Error(ErrorCode::Io, "cannot write " + p.string());
    stream_ = file_.get();
  }

  std::ostream& stream() { return *stream_; }
  void close() {
    stream_->flush();
    if (file_) {
      file_->close();
      if (file_->fail()) throw Error(ErrorCode::Io, "write failed");
    }
  }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_;
};

struct CommonOptions {
  std::vector<std::string> inputs;
  std::string format{"auto"};
  std::string universe;
  std::string open{"09:40"};
  std::string close{"15:50"};
  std::string output;
};

void add_common(CLI::App* cmd, CommonOptions& o, bool with_session = true) {
  cmd->add_option("-i,--input", o.inputs, "Input file (one trading day per file); repeatable")
      ->required()
      ->check(CLI::ExistingFile);
  cmd->add_option("--format", o.format, "Input format (default: csv for .csv files, else binary)")
      ->check(CLI::IsMember({"auto", "binary", "csv"}));
  cmd->add_option("--universe", o.universe, "File listing the symbols to keep, one per line")
      ->check(CLI::ExistingFile);
  if (with_session) {
    cmd->add_option("--open", o.open, "Session open, HH:MM[:SS]");
    cmd->add_option("--close", o.close, "Session close, HH:MM[:SS]");
  }
  cmd->add_option("-o,--output", o.output, "Output file (default: stdout)");
}

InputFormat parse_format(const std::string& text) {
  if (text == "binary") return InputFormat::Binary;
  if (text == "csv") return InputFormat::Csv;
  return InputFormat::Auto;
}

Session parse_session(const CommonOptions& o) {
  auto open = parse_clock(o.open);
  auto close = parse_clock(o.close);
  if (!open) throw UsageError("bad --open time '" + o.open + "'");
  if (!close) throw UsageError("bad --close time '" + o.close + "'");
  if (*close <= *open) throw UsageError("--close must be after --open");
  return {*open, *close};
}

std::optional<feed::Universe> load_universe(const std::string& path) {
  if (path.empty()) return std::nullopt;
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path);
  return feed::Universe::load(in);
}

std::vector<fs::path> input_paths(const CommonOptions& o) {
  return {o.inputs.begin(), o.inputs.end()};
}

Dataset load(const CommonOptions& o, bool merge_trades = true) {
  auto universe = load_universe(o.universe);
  LoadOptions options;
  options.format = parse_format(o.format);
  options.universe = universe ? &*universe : nullptr;
  options.session = parse_session(o);
  options.merge_trades = merge_trades;
  return load_dataset(input_paths(o), options);
}

SpreadChangeKind parse_kind(const std::string& text) {
  auto kind = classify::spread_change_kind_from_string(text);
  if (!kind) throw UsageError("unknown kind '" + text + "'");
  return *kind;
}

std::vector<std::int64_t> lag_grid(const std::string& tau_list, std::int64_t max_lag) {
  if (!tau_list.empty()) return response::parse_lag_list(tau_list);
  if (max_lag < 1) throw UsageError("--max-lag must be at least 1");
  return response::log_lag_grid(max_lag);
}

Symbol pick_symbol(const Dataset& data, const std::string& requested) {
  if (!requested.empty()) {
    const Symbol s(requested);
    if (!data.symbols.contains(s)) throw Error(ErrorCode::NoEvents, "symbol " + requested + " not in input");
    return s;
  }
  if (data.symbols.empty()) throw Error(ErrorCode::NoEvents, "input holds no order events");
  if (data.symbols.size() > 1) throw UsageError("input holds several symbols; choose one with --symbol");
  return data.symbols.begin()->first;
}

/// Prefixes every line written by `write` with `prefix`.
template <class Write>
void prefixed(std::ostream& out, const std::string& prefix, Write&& write) {
  std::ostringstream buffer;
  write(buffer);
  std::istringstream lines(buffer.str());
  for (std::string line; std::getline(lines, line);) out << prefix << line << '\n';
}

// parse -----------------------------------------------------------------------

struct ParseOptions {
  CommonOptions common;
  std::string events_out;
};

void run_parse(const ParseOptions& o, std::ostream& stdout_stream) {
  auto universe = load_universe(o.common.universe);
  const auto format = parse_format(o.common.format);
  Output out(o.common.output, stdout_stream);
  std::unique_ptr<Output> events;
  if (!o.events_out.empty()) {
    events = std::make_unique<Output>(o.events_out, stdout_stream);
    feed::write_csv_header(events->stream());
  }
  out.stream() << "date,symbols,parsed,skipped,dropped\n";
  for (const auto& path : input_paths(o.common)) {
    auto parsed = read_events(path, format, universe ? &*universe : nullptr);
    out.stream() << path.stem().string() << ',' << parsed.partitions.size() << ',' << parsed.stats.parsed << ','
                 << parsed.stats.skipped << ',' << parsed.stats.dropped << '\n';
    if (events) {
      for (const auto& [symbol, list] : parsed.partitions) {
        for (const auto& e : list) feed::write_csv_row(events->stream(), e);
      }
    }
  }
  if (events) events->close();
  out.close();
}

// replay ----------------------------------------------------------------------

void run_replay(const CommonOptions& o, std::ostream& stdout_stream) {
  const Dataset data = load(o);
  Output out(o.output, stdout_stream);
  out.stream() << "symbol,date,events,deltas,spread_changes,tw_spread_ticks\n";
  for (const auto& [symbol, days] : data.symbols) {
    for (std::size_t d = 0; d < days.size(); ++d) {
      const auto& day = days[d];
      if (day.events.empty()) continue;
      const auto changes = std::count_if(day.deltas.begin(), day.deltas.end(),
                                         [](const book::BookDelta& x) { return x.spread_changed; });
      out.stream() << symbol << ',' << data.days[d].date << ',' << day.events.size() << ',' << day.deltas.size()
                   << ',' << changes << ',';
      try {
        out.stream() << format_double(book::time_weighted_average_spread_ticks(day.deltas, data.session));
      } catch (const Error& e) {
        if (e.code() != ErrorCode::NoDefinedSpread) throw;
      }
      out.stream() << '\n';
    }
  }
  out.close();
}

// classify --------------------------------------------------------------------

struct ClassifyOptions {
  CommonOptions common;
  bool no_merge{false};
  std::string events_out;
};

void run_classify(const ClassifyOptions& o, std::ostream& stdout_stream) {
  const Dataset data = load(o.common, !o.no_merge);
  Output out(o.common.output, stdout_stream);
  std::unique_ptr<Output> events;
  if (!o.events_out.empty()) {
    events = std::make_unique<Output>(o.events_out, stdout_stream);
    classify::write_events_header(events->stream());
  }
  classify::write_amounts_header(out.stream());
  for (const auto& [symbol, days] : data.symbols) {
    for (std::size_t d = 0; d < days.size(); ++d) {
      if (days[d].events.empty()) continue;
      classify::write_amounts_row(out.stream(), symbol, data.days[d].date,
                                  classify::relative_amounts(days[d].classified));
      if (events) classify::write_events_rows(events->stream(), data.days[d].date, days[d].classified);
    }
  }
  if (events) events->close();
  out.close();
}

// respond ---------------------------------------------------------------------

struct RespondOptions {
  CommonOptions common;
  std::string kind{"trade"};
  std::string scale{"physical"};
  bool all_events{false};
  bool per_day{false};
  std::string symbol;
  std::int64_t max_lag{1000};
  std::string tau_list;
};

response::ResponseCurve self_curve(const Dataset& data, const Symbol& symbol, SpreadChangeKind kind, TimeScale scale,
                                   bool all_events, std::span<const std::int64_t> lags,
                                   std::optional<std::size_t> only_day = std::nullopt) {
  auto events = all_events ? data.all_events(symbol, kind) : data.events(symbol, kind);
  auto trajectories = data.trajectories(symbol);
  if (only_day) {
    events = {events[*only_day]};
    trajectories = {trajectories[*only_day]};
  }
  if (scale == TimeScale::Event) return response::self_response_event_scale(events, data.session, lags);
  if (all_events) return response::self_response_all_events(events, trajectories, lags);
  return response::self_response_physical(events, trajectories, lags);
}

void run_respond(const RespondOptions& o, std::ostream& stdout_stream) {
  const auto kind = parse_kind(o.kind);
  const auto scale = o.scale == "event" ? TimeScale::Event : TimeScale::Physical;
  if (o.all_events && scale == TimeScale::Event) throw UsageError("--all-events needs --scale physical");
  const auto lags = lag_grid(o.tau_list, o.max_lag);
  const Dataset data = load(o.common);
  const Symbol symbol = pick_symbol(data, o.symbol);

  Output out(o.common.output, stdout_stream);
  response::write_curve_header(out.stream(), o.per_day);
  if (!o.per_day) {
    response::write_curve_rows(out.stream(), o.kind, scale,
                               self_curve(data, symbol, kind, scale, o.all_events, lags));
  } else {
    const auto days = o.all_events ? data.all_events(symbol, kind) : data.events(symbol, kind);
    bool any = false;
    for (std::size_t d = 0; d < days.size(); ++d) {
      if (days[d].empty()) continue;
      any = true;
      response::write_curve_rows(out.stream(), o.kind, scale,
                                 self_curve(data, symbol, kind, scale, o.all_events, lags, d), data.days[d].date);
    }
    if (!any) throw Error(ErrorCode::NoEvents, "no " + o.kind + " events on any day");
  }
  out.close();
}

// cross / market --------------------------------------------------------------

struct CrossOptions {
  CommonOptions common;
  std::string kind{"trade"};
  std::string tau_list{kDefaultCrossTaus};
  std::string active_passive_out;
};

void run_cross(const CrossOptions& o, std::ostream& stdout_stream) {
  const auto kind = parse_kind(o.kind);
  const auto taus = response::parse_lag_list(o.tau_list);
  const Dataset data = load(o.common);
  const auto matrices = response::cross_matrices(data.market(), taus, kind);

  Output out(o.common.output, stdout_stream);
  response::write_matrix_header(out.stream());
  for (const auto& m : matrices) response::write_matrix_rows(out.stream(), m);
  out.close();

  if (!o.active_passive_out.empty()) {
    Output ap(o.active_passive_out, stdout_stream);
    response::write_active_passive_header(ap.stream());
    for (const auto& m : matrices) response::write_active_passive_rows(ap.stream(), m, response::active_passive(m));
    ap.close();
  }
}

struct MarketOptions {
  CommonOptions common;
  std::string kind{"trade"};
  std::int64_t max_lag{1000};
  std::string tau_list;
};

void run_market(const MarketOptions& o, std::ostream& stdout_stream) {
  const auto kind = parse_kind(o.kind);
  const auto lags = lag_grid(o.tau_list, o.max_lag);
  const Dataset data = load(o.common);
  const auto matrices = response::cross_matrices(data.market(), lags, kind);

  Output out(o.common.output, stdout_stream);
  response::write_curve_header(out.stream());
  response::write_curve_rows(out.stream(), o.kind, TimeScale::Physical, response::market_response(matrices));
  out.close();
}

// generate --------------------------------------------------------------------

struct GenerateOptions {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string symbols;
  std::string format{"auto"};
  std::string output;
  std::string truth_out;
  bool print_config{false};
};

std::vector<Symbol> parse_symbol_list(const std::string& text) {
  std::vector<Symbol> out;
  std::stringstream in(text);
  for (std::string item; std::getline(in, item, ',');) {
    if (!item.empty()) out.emplace_back(item);
  }
  return out;
}

void run_generate(const GenerateOptions& o, std::ostream& stdout_stream) {
  synth::GeneratorConfig config;
  const auto flag_symbols = parse_symbol_list(o.symbols);
  if (!o.config.empty()) {
    std::ifstream in(o.config);
    if (!in) throw Error(ErrorCode::Io, "cannot open " + o.config);
    config.symbols = flag_symbols;  // so that validation sees them; the flag wins below
    config = synth::load_config(in, config);
  }
  if (o.seed) config.seed = *o.seed;
  if (!flag_symbols.empty()) config.symbols = flag_symbols;
  if (config.symbols.empty()) throw UsageError("no symbols: pass --symbols or set symbols in --config");
  config.validate();

  if (o.print_config) {
    synth::save_config(stdout_stream, config);
    return;
  }
  if (o.output.empty()) throw UsageError("generate needs --output");

  const auto day = synth::generate(config);
  const auto merged = day.merged();
  const bool csv = format_for(o.output, parse_format(o.format)) == InputFormat::Csv;
  Output out(o.output, stdout_stream, !csv);
  if (csv) {
    feed::write_csv(out.stream(), merged);
  } else {
    synth::StreamEncoder encoder(out.stream(), config.symbols, config.session.open);
    for (const auto& e : merged) encoder.write(e);
    encoder.flush();
  }
  out.close();

  if (!o.truth_out.empty()) {
    Output truth(o.truth_out, stdout_stream);
    truth.stream() << "symbol,event_index,leg,kind,sign,timestamp_ns\n";
    for (const auto& [symbol, t] : day.truth) {
      for (const auto& l : t.labels) {
        const char* leg = l.leg == book::Leg::Single          ? "single"
                          : l.leg == book::Leg::ReplaceDelete ? "replace_delete"
                                                              : "replace_add";
        truth.stream() << symbol << ',' << l.event_index << ',' << leg << ',' << classify::to_string(l.kind) << ','
                       << l.sign << ',' << l.timestamp << '\n';
      }
    }
    truth.close();
  }
}

// figures ---------------------------------------------------------------------

struct FiguresOptions {
  CommonOptions common;
  std::string output_dir;
  std::int64_t max_lag{1000};
  std::int64_t max_lag_events{1000};
  std::string cross_taus{kDefaultCrossTaus};
};

constexpr SpreadChangeKind kKinds[] = {SpreadChangeKind::Trade, SpreadChangeKind::Deletion,
                                       SpreadChangeKind::Placement};

/// Pooled or single-day self response; nullopt when the symbol has no events
/// of that kind there.
std::optional<response::ResponseCurve> try_curve(const Dataset& data, const Symbol& symbol, SpreadChangeKind kind,
                                                 TimeScale scale, bool all_events,
                                                 std::span<const std::int64_t> lags,
                                                 std::optional<std::size_t> only_day = std::nullopt) {
  try {
    return self_curve(data, symbol, kind, scale, all_events, lags, only_day);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NoEvents) throw;
    return std::nullopt;
  }
}

void run_figures(const FiguresOptions& o, std::ostream& stdout_stream) {
  const Dataset data = load(o.common);
  const auto physical_lags = response::log_lag_grid(o.max_lag);
  const auto event_lags = response::log_lag_grid(o.max_lag_events);
  const auto taus = response::parse_lag_list(o.cross_taus);
  const fs::path dir = resolve_output(o.output_dir);
  fs::create_directories(dir);
  auto file = [&](const char* name) { return Output((dir / name).string(), stdout_stream); };

  {
    auto amounts = file("fig01_amounts.csv");
    auto spread = file("fig04_spread_vs_amounts.csv");
    classify::write_amounts_header(amounts.stream());
    spread.stream() << "symbol,date,tw_spread_ticks,O,D,T\n";
    for (const auto& [symbol, days] : data.symbols) {
      for (std::size_t d = 0; d < days.size(); ++d) {
        if (days[d].classified.empty()) continue;
        const auto a = classify::relative_amounts(days[d].classified);
        classify::write_amounts_row(amounts.stream(), symbol, data.days[d].date, a);
        try {
          const double s = book::time_weighted_average_spread_ticks(days[d].deltas, data.session);
          spread.stream() << symbol << ',' << data.days[d].date << ',' << format_double(s) << ','
                          << format_double(a.placement_share()) << ',' << format_double(a.deletion_share()) << ','
                          << format_double(a.trade_share()) << '\n';
        } catch (const Error& e) {
          if (e.code() != ErrorCode::NoDefinedSpread) throw;
        }
      }
    }
    amounts.close();
    spread.close();
  }

  struct ScaleFiles {
    TimeScale scale;
    const char* per_day;
    const char* mean;
    std::span<const std::int64_t> lags;
  };
  const ScaleFiles scales[] = {
      {TimeScale::Event, "fig06_event_response_per_day.csv", "fig07_event_response_mean.csv", event_lags},
      {TimeScale::Physical, "fig08_physical_response_per_day.csv", "fig09_physical_response_mean.csv",
       physical_lags},
  };
  for (const auto& sf : scales) {
    auto per_day = file(sf.per_day);
    auto mean = file(sf.mean);
    per_day.stream() << "symbol,";
    response::write_curve_header(per_day.stream(), true);
    mean.stream() << "symbol,";
    response::write_curve_header(mean.stream());
    for (const auto& symbol : data.symbol_list()) {
      const std::string prefix = symbol.str() + ",";
      for (auto kind : kKinds) {
        const auto name = classify::to_string(kind);
        for (std::size_t d = 0; d < data.days.size(); ++d) {
          if (auto c = try_curve(data, symbol, kind, sf.scale, false, sf.lags, d)) {
            prefixed(per_day.stream(), prefix, [&](std::ostream& os) {
              response::write_curve_rows(os, name, sf.scale, *c, data.days[d].date);
            });
          }
        }
        if (auto c = try_curve(data, symbol, kind, sf.scale, false, sf.lags)) {
          prefixed(mean.stream(), prefix,
                   [&](std::ostream& os) { response::write_curve_rows(os, name, sf.scale, *c); });
        }
      }
    }
    per_day.close();
    mean.close();
  }

  {
    auto all = file("fig10_all_events_response.csv");
    all.stream() << "symbol,events,";
    response::write_curve_header(all.stream());
    for (const auto& symbol : data.symbol_list()) {
      for (auto kind : kKinds) {
        const auto name = classify::to_string(kind);
        for (bool every : {false, true}) {
          if (auto c = try_curve(data, symbol, kind, TimeScale::Physical, every, physical_lags)) {
            prefixed(all.stream(), symbol.str() + (every ? ",all," : ",spread_changing,"), [&](std::ostream& os) {
              response::write_curve_rows(os, name, TimeScale::Physical, *c);
            });
          }
        }
      }
    }
    all.close();
  }

  if (data.symbols.size() >= 2) {
    const auto market = data.market();
    auto matrix = file("fig11_cross_matrix.csv");
    auto ap = file("fig11_active_passive.csv");
    auto mr = file("fig12_market_response.csv");
    matrix.stream() << "kind,";
    response::write_matrix_header(matrix.stream());
    ap.stream() << "kind,";
    response::write_active_passive_header(ap.stream());
    response::write_curve_header(mr.stream());
    for (auto kind : kKinds) {
      const std::string prefix = std::string(classify::to_string(kind)) + ",";
      for (const auto& m : response::cross_matrices(market, taus, kind)) {
        prefixed(matrix.stream(), prefix, [&](std::ostream& os) { response::write_matrix_rows(os, m); });
        prefixed(ap.stream(), prefix,
                 [&](std::ostream& os) { response::write_active_passive_rows(os, m, response::active_passive(m)); });
      }
      const auto curve = response::market_response(response::cross_matrices(market, physical_lags, kind));
      response::write_curve_rows(mr.stream(), classify::to_string(kind), TimeScale::Physical, curve);
    }
    matrix.close();
    ap.close();
    mr.close();
  }
}

void report(std::ostream& err, std::string_view code, const std::string& message,
            std::optional<std::uint64_t> offset = std::nullopt, std::optional<std::uint64_t> line = std::nullopt) {
  err << "error: code=" << code;
  if (offset) err << " offset=" << *offset;
  if (line) err << " line=" << *line;
  err << " message=" << message << '\n';
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Limit order book reconstruction, spread-change classification and price responses", "lobresp"};
  app.require_subcommand(1);

  ParseOptions parse;
  auto* parse_cmd = app.add_subcommand("parse", "Decode inputs and report message statistics per file");
  add_common(parse_cmd, parse.common, false);
  parse_cmd->add_option("--events-out", parse.events_out, "Also write the decoded events as CSV");

  CommonOptions replay;
  auto* replay_cmd = app.add_subcommand("replay", "Rebuild every book and report the time-weighted spread");
  add_common(replay_cmd, replay);

  ClassifyOptions cls;
  auto* classify_cmd = app.add_subcommand("classify", "Relative amounts of spread-changing events per symbol and day");
  add_common(classify_cmd, cls.common);
  classify_cmd->add_flag("--no-merge-trades", cls.no_merge, "Count every execution leg as its own trade");
  classify_cmd->add_option("--events-out", cls.events_out, "Also write the classified events as CSV");

  RespondOptions respond;
  auto* respond_cmd = app.add_subcommand("respond", "Self response of one symbol");
  add_common(respond_cmd, respond.common);
  respond_cmd->add_option("--kind", respond.kind, "Event kind")->check(CLI::IsMember({"trade", "deletion", "placement"}));
  respond_cmd->add_option("--scale", respond.scale, "Time scale")->check(CLI::IsMember({"event", "physical"}));
  respond_cmd->add_flag("--all-events", respond.all_events, "Use every event of the kind, not only spread changes");
  respond_cmd->add_flag("--per-day", respond.per_day, "One curve per input day instead of the pooled curve");
  respond_cmd->add_option("--symbol", respond.symbol, "Symbol (required when the input holds several)");
  respond_cmd->add_option("--max-lag", respond.max_lag, "End of the logarithmic lag grid (seconds or events)");
  respond_cmd->add_option("--tau-list", respond.tau_list, "Explicit comma-separated lags instead of the grid");

  CrossOptions cross;
  auto* cross_cmd = app.add_subcommand("cross", "Cross-response matrices at fixed lags");
  add_common(cross_cmd, cross.common);
  cross_cmd->add_option("--kind", cross.kind, "Event kind")->check(CLI::IsMember({"trade", "deletion", "placement"}));
  cross_cmd->add_option("--tau-list", cross.tau_list, "Comma-separated lags in seconds");
  cross_cmd->add_option("--active-passive-out", cross.active_passive_out, "Also write active/passive averages");

  MarketOptions market;
  auto* market_cmd = app.add_subcommand("market", "Market response: mean off-diagonal cross response");
  add_common(market_cmd, market.common);
  market_cmd->add_option("--kind", market.kind, "Event kind")->check(CLI::IsMember({"trade", "deletion", "placement"}));
  market_cmd->add_option("--max-lag", market.max_lag, "End of the logarithmic lag grid in seconds");
  market_cmd->add_option("--tau-list", market.tau_list, "Explicit comma-separated lags instead of the grid");

  GenerateOptions gen;
  auto* generate_cmd = app.add_subcommand("generate", "Generate a synthetic trading day");
  generate_cmd->add_option("--config", gen.config, "Generator config (key = value lines)")->check(CLI::ExistingFile);
  generate_cmd->add_option("--seed", gen.seed, "Override the seed");
  generate_cmd->add_option("--symbols", gen.symbols, "Override the symbols, comma separated");
  generate_cmd->add_option("--format", gen.format, "Output format (default: csv for .csv paths, else binary)")
      ->check(CLI::IsMember({"auto", "binary", "csv"}));
  generate_cmd->add_option("-o,--output", gen.output, "Output file");
  generate_cmd->add_option("--truth-out", gen.truth_out, "Also write the generator's own spread-change labels");
  generate_cmd->add_flag("--print-config", gen.print_config, "Print the effective config and exit");

  FiguresOptions fig;
  auto* figures_cmd = app.add_subcommand("figures", "Write the CSV tables behind every figure");
  add_common(figures_cmd, fig.common);
  figures_cmd->remove_option(figures_cmd->get_option("--output"));
  figures_cmd->add_option("--output-dir", fig.output_dir, "Directory for the CSV files")->required();
  figures_cmd->add_option("--max-lag", fig.max_lag, "Physical lag grid end in seconds");
  figures_cmd->add_option("--max-lag-events", fig.max_lag_events, "Event lag grid end");
  figures_cmd->add_option("--cross-taus", fig.cross_taus, "Lags of the cross-response matrices");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    report(err, "Usage", e.what());
    return 2;
  }

  try {
    if (*parse_cmd) run_parse(parse, out);
    else if (*replay_cmd) run_replay(replay, out);
    else if (*classify_cmd) run_classify(cls, out);
    else if (*respond_cmd) run_respond(respond, out);
    else if (*cross_cmd) run_cross(cross, out);
    else if (*market_cmd) run_market(market, out);
    else if (*generate_cmd) run_generate(gen, out);
    else if (*figures_cmd) run_figures(fig, out);
    return 0;
  } catch (const UsageError& e) {
    report(err, "Usage", e.what());
    return 2;
  } catch (const Error& e) {
    report(err, to_string(e.code()), e.what(), e.offset(), e.line());
    return 1;
  } catch (const fs::filesystem_error& e) {
    report(err, "Io", e.what());
    return 1;
  }
}

}  // namespace lobresp::cli
