#include <benchmark/benchmark.h>

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "tsann/ann_five.hpp"
#include "tsann/ann_two.hpp"
#include "tsann/corpus.hpp"
#include "tsann/frechet.hpp"
#include "tsann/lsh.hpp"
#include "tsann/signature.hpp"
#include "tsann/time_series.hpp"

namespace tsann {
namespace {

/** Random walk with unit-bounded steps, deterministic per seed. */
TimeSeries random_walk(std::uint64_t seed, std::size_t length) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> step(-1.0, 1.0);
  std::vector<double> values(length);
  double level = 0.0;
  for (std::size_t i = 0; i < length; ++i) {
    level += step(rng);
    values[i] = level;
  }
  return TimeSeries(std::move(values));
}

/**
 * Corpus of short curves in a narrow value band, the regime the grid
 * enumeration is designed for.  Lengths vary from 1 to max_length.
 */
Corpus narrow_corpus(std::size_t n, std::size_t max_length,
                     std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> value(48.0, 52.0);
  Corpus corpus;
  corpus.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> values(1 + rng() % max_length);
    for (double& v : values) v = value(rng);
    corpus.push_back({"c" + std::to_string(i), TimeSeries(std::move(values))});
  }
  return corpus;
}

/** Queries obtained by nudging corpus curves, so lookups mostly hit. */
std::vector<TimeSeries> near_queries(const Corpus& corpus, double radius,
                                     std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> nudge(-0.5 * radius, 0.5 * radius);
  std::vector<TimeSeries> queries;
  queries.reserve(corpus.size());
  for (const CorpusEntry& entry : corpus) {
    std::vector<double> values = entry.curve.values;
    for (double& v : values) v += nudge(rng);
    queries.emplace_back(std::move(values));
  }
  return queries;
}

void BM_DecideContinuous(benchmark::State& state) {
  const auto length = static_cast<std::size_t>(state.range(0));
  const TimeSeries a = random_walk(1, length);
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> nudge(-0.5, 0.5);
  std::vector<double> shifted = a.values;
  for (double& v : shifted) v += nudge(rng);
  const TimeSeries b(std::move(shifted));
  for (auto _ : state) {
    benchmark::DoNotOptimize(decide_continuous(a, b, 1.0));
  }
  state.SetItemsProcessed(state.iterations());
}

void BM_DiscreteFrechet(benchmark::State& state) {
  const auto length = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> coord(-10.0, 10.0);
  PointSequence p{2, {}};
  PointSequence q{2, {}};
  for (std::size_t i = 0; i < length; ++i) {
    p.points.push_back({coord(rng), coord(rng)});
    q.points.push_back({coord(rng), coord(rng)});
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(discrete_frechet(p, q));
  }
}

void BM_ComputeSignature(benchmark::State& state) {
  const auto length = static_cast<std::size_t>(state.range(0));
  const TimeSeries ts = random_walk(4, length);
  for (auto _ : state) {
    benchmark::DoNotOptimize(compute_signature(ts, 1.0));
  }
  state.SetItemsProcessed(state.iterations() * length);
}

void BM_BuildFiveEps(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Corpus corpus = narrow_corpus(n, 3, 5);
  const DictionaryParams params{1.0, 3, 1.0};
  for (auto _ : state) {
    benchmark::DoNotOptimize(IndexFiveEps::build(corpus, params));
  }
  state.SetItemsProcessed(state.iterations() * n);
}

void BM_QueryFiveEps(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Corpus corpus = narrow_corpus(n, 3, 6);
  const IndexFiveEps index =
      IndexFiveEps::build(corpus, DictionaryParams{1.0, 3, 1.0});
  const std::vector<TimeSeries> queries = near_queries(corpus, 1.0, 7);
  std::size_t next = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(index.query(queries[next]));
    next = (next + 1) % queries.size();
  }
  state.SetItemsProcessed(state.iterations());
}

void BM_QueryTwoEps(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Corpus corpus = narrow_corpus(n, 2, 8);
  const IndexTwoEps index =
      IndexTwoEps::build(corpus, DictionaryParams{1.0, 2, 1.0});
  const std::vector<TimeSeries> queries = near_queries(corpus, 1.0, 9);
  std::size_t next = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(index.query(queries[next]));
    next = (next + 1) % queries.size();
  }
  state.SetItemsProcessed(state.iterations());
}

void BM_QueryLsh(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Corpus corpus = narrow_corpus(n, 8, 10);
  const IndexLsh index = IndexLsh::build(corpus, LshParams{8, 1.0, 0, 0, 11});
  const std::vector<TimeSeries> queries = near_queries(corpus, 1.0, 12);
  std::size_t next = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(index.query(queries[next]));
    next = (next + 1) % queries.size();
  }
  state.SetItemsProcessed(state.iterations());
}

BENCHMARK(BM_DecideContinuous)->Arg(16)->Arg(64)->Arg(256)->Arg(1024);
BENCHMARK(BM_DiscreteFrechet)->Arg(16)->Arg(64)->Arg(256);
BENCHMARK(BM_ComputeSignature)->Arg(64)->Arg(256)->Arg(1024)->Arg(4096);
BENCHMARK(BM_BuildFiveEps)->Arg(4)->Arg(16)->Arg(64);
BENCHMARK(BM_QueryFiveEps)->Arg(16)->Arg(256);
BENCHMARK(BM_QueryTwoEps)->Arg(16)->Arg(256);
BENCHMARK(BM_QueryLsh)->Arg(16)->Arg(256);

}  // namespace
}  // namespace tsann

BENCHMARK_MAIN();
