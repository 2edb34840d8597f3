#include <benchmark/benchmark.h>

#include <unordered_map>

#include "lobresp/book/order_book.hpp"
#include "lobresp/classify/classifier.hpp"
#include "lobresp/feed/itch.hpp"
#include "lobresp/response/cross.hpp"
#include "lobresp/response/lag_grid.hpp"
#include "lobresp/response/response.hpp"
#include "lobresp/synth/config.hpp"
#include "lobresp/synth/encoder.hpp"
#include "lobresp/synth/generator.hpp"

using namespace lobresp;

namespace {

const synth::GeneratedDay& day_of(int symbols) {
  static std::unordered_map<int, synth::GeneratedDay> cache;
  auto it = cache.find(symbols);
  if (it == cache.end()) {
    std::vector<Symbol> names;
    for (int k = 0; k < symbols; ++k) names.emplace_back("S" + std::to_string(100 + k));
    it = cache.emplace(symbols, synth::generate(synth::calibrated_config(7, names))).first;
  }
  return it->second;
}

const std::vector<std::uint8_t>& wire_of(int symbols) {
  static std::unordered_map<int, std::vector<std::uint8_t>> cache;
  auto it = cache.find(symbols);
  if (it == cache.end()) it = cache.emplace(symbols, synth::encode(day_of(symbols).merged())).first;
  return it->second;
}

}  // namespace

static void BM_DecodeOnly(benchmark::State& state) {
  const auto& bytes = wire_of(4);
  std::uint64_t n = 0;
  for (auto _ : state) {
    feed::FrameReader reader(bytes);
    feed::FeedDecoder decoder;
    feed::Frame frame;
    while (reader.next(frame)) {
      auto e = decoder.decode(frame);
      benchmark::DoNotOptimize(e);
      ++n;
    }
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(n));
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * bytes.size()));
}
BENCHMARK(BM_DecodeOnly)->Unit(benchmark::kMillisecond);

static void BM_DecodeAndApply(benchmark::State& state) {
  const auto& bytes = wire_of(4);
  std::uint64_t n = 0;
  for (auto _ : state) {
    feed::FrameReader reader(bytes);
    feed::FeedDecoder decoder;
    std::unordered_map<Symbol, book::OrderBook> books;
    feed::Frame frame;
    while (reader.next(frame)) {
      ++n;
      if (auto e = decoder.decode(frame)) {
        auto b = books.find(e->symbol);
        if (b == books.end()) b = books.emplace(e->symbol, book::OrderBook(e->symbol)).first;
        b->second.apply(*e);
      }
    }
    benchmark::DoNotOptimize(books);
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(n));
}
BENCHMARK(BM_DecodeAndApply)->Unit(benchmark::kMillisecond);

static void BM_ReplayAndClassify(benchmark::State& state) {
  const auto& events = day_of(1).streams.begin()->second;
  for (auto _ : state) {
    book::OrderBook b;
    auto changes = classify::aggregate_trades(classify::classify_all(book::replay(events, b)));
    benchmark::DoNotOptimize(changes);
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * events.size()));
}
BENCHMARK(BM_ReplayAndClassify)->Unit(benchmark::kMillisecond);

static void BM_SelfResponsePhysical(benchmark::State& state) {
  const auto& [symbol, events] = *day_of(1).streams.begin();
  book::OrderBook b;
  const auto deltas = book::replay(events, b);
  const std::vector<response::MidpointTrajectory> traj{
      response::MidpointTrajectory::from_deltas(symbol, deltas, Session::regular())};
  const std::vector<response::EventSeries> trades{
      classify::filter_kind(classify::aggregate_trades(classify::classify_all(deltas)), classify::SpreadChangeKind::Trade)};
  const auto lags = response::log_lag_grid(state.range(0));
  for (auto _ : state) {
    auto curve = response::self_response_physical(trades, traj, lags);
    benchmark::DoNotOptimize(curve);
  }
}
BENCHMARK(BM_SelfResponsePhysical)->Arg(100)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

static void BM_CrossMatrices(benchmark::State& state) {
  const auto& day = day_of(static_cast<int>(state.range(0)));
  std::vector<response::SymbolSeries> market;
  for (const auto& [symbol, events] : day.streams) {
    book::OrderBook b;
    const auto deltas = book::replay(events, b);
    market.push_back({symbol,
                      {classify::aggregate_trades(classify::classify_all(deltas))},
                      {response::MidpointTrajectory::from_deltas(symbol, deltas, Session::regular())}});
  }
  const std::vector<std::int64_t> taus{1, 2, 50, 500, 2000, 10000};
  for (auto _ : state) {
    auto m = response::cross_matrices(market, taus, classify::SpreadChangeKind::Trade);
    benchmark::DoNotOptimize(m);
  }
}
BENCHMARK(BM_CrossMatrices)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
