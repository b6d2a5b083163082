#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "helpers.hpp"
#include "tsann/frechet.hpp"
#include "tsann/lsh.hpp"
#include "tsann/signature.hpp"
#include "tsann/time_series.hpp"

using namespace tsann;

TEST_CASE("defaults are resolved from k and the corpus size") {
  Corpus corpus = {{"a", TimeSeries{0.0, 10.0}},
                   {"b", TimeSeries{5.0, -5.0}},
                   {"c", TimeSeries{1.0, 2.0}}};
  LshParams params;
  params.k = 3;
  params.r = 1.0;
  IndexLsh index = IndexLsh::build(corpus, params);
  CHECK(index.params().w == 36.0);
  CHECK(index.params().s == 4);  // ceil(2 * log2(4))
  CHECK(index.shifts().size() == 4);
  CHECK(index.tables().size() == 4);
  for (double z : index.shifts()) {
    CHECK(z >= 0.0);
    CHECK(z < 36.0);
  }
}

TEST_CASE("an indexed curve hashes to its own key in every repetition") {
  std::mt19937_64 rng(131);
  for (int trial = 0; trial < 30; ++trial) {
    TimeSeries curve = test::random_series(rng, 1 + rng() % 6, 0.0, 50.0);
    LshParams params;
    params.k = 8;
    params.r = 2.0;
    params.seed = rng();
    IndexLsh index = IndexLsh::build({{"self", curve}}, params);
    if (index.build_stats()[0].skipped) continue;
    QueryResult res = index.query(curve);
    REQUIRE(res.match.has_value());
    CHECK(*res.match == "self");
    CHECK(res.probes == 1);
  }
}

TEST_CASE("far queries miss") {
  LshParams params;
  params.k = 2;
  params.r = 1.0;
  IndexLsh index = IndexLsh::build({{"c0", TimeSeries{0.0, 10.0}}}, params);
  QueryResult res = index.query({0.0, 10000.0});
  CHECK_FALSE(res.match.has_value());
  CHECK(res.probes == index.params().s);
}

TEST_CASE("identical seeds give identical indexes") {
  std::mt19937_64 rng(137);
  Corpus corpus;
  for (int i = 0; i < 8; ++i) {
    corpus.push_back({"c" + std::to_string(i),
                      test::random_series(rng, 1 + rng() % 5, 0.0, 40.0)});
  }
  LshParams params;
  params.k = 4;
  params.r = 2.0;
  params.seed = 42;
  IndexLsh a = IndexLsh::build(corpus, params);
  IndexLsh b = IndexLsh::build(corpus, params, 4);
  CHECK(a.shifts() == b.shifts());
  CHECK(a.tables() == b.tables());

  params.seed = 43;
  IndexLsh c = IndexLsh::build(corpus, params);
  CHECK(a.shifts() != c.shifts());
}

TEST_CASE("curves with long signatures are skipped") {
  TimeSeries zigzag{0.0, 100.0, 0.0, 100.0, 0.0};
  LshParams params;
  params.k = 2;
  params.r = 1.0;
  params.w = 3.0;
  IndexLsh index = IndexLsh::build({{"z", zigzag}}, params);
  CHECK(index.build_stats()[0].skipped);
  for (const auto& table : index.tables()) CHECK(table.empty());
}

TEST_CASE("stored keys are canonical signatures of at most k cells") {
  std::mt19937_64 rng(139);
  Corpus corpus;
  for (int i = 0; i < 10; ++i) {
    corpus.push_back({"c" + std::to_string(i),
                      test::random_series(rng, 1 + rng() % 8, 0.0, 60.0)});
  }
  LshParams params;
  params.k = 5;
  params.r = 2.0;
  params.seed = 7;
  IndexLsh index = IndexLsh::build(corpus, params);
  for (const auto& table : index.tables()) {
    for (const auto& [key, slot] : table) {
      CHECK(key == canonicalize_key(key));
      CHECK(key.size() <= params.k);
      CHECK(slot < corpus.size());
    }
  }
}

TEST_CASE("an alternating signature maps to the alternating cell key") {
  // signature values 2.5, 4.5, 0.5, 4.5, 2.5 on an unshifted width-2 grid
  // fall in cells 1, 2, 0, 2, 1 -- the middle/high/low alternation pattern
  // is preserved by hashing
  TimeSeries curve{2.5, 4.5, 0.5, 4.5, 2.5};
  LshParams params;
  params.k = 5;
  params.r = 1.0;
  params.w = 2.0;
  params.s = 1;
  params.seed = 999;
  IndexLsh index = IndexLsh::build({{"alt", curve}}, params);
  REQUIRE(index.tables().size() == 1);
  REQUIRE(index.tables()[0].size() == 1);
  const GridKey& key = index.tables()[0].begin()->first;
  double z = index.shifts()[0];
  GridKey want;
  for (double v : std::vector<double>{2.5, 4.5, 0.5, 4.5, 2.5}) {
    want.push_back(static_cast<std::int64_t>(std::floor((v - z) / 2.0)));
  }
  CHECK(key == canonicalize_key(want));
  QueryResult res = index.query(curve);
  REQUIRE(res.match.has_value());
  CHECK(*res.match == "alt");
}

TEST_CASE("parameters are validated") {
  Corpus corpus = {{"c0", TimeSeries{0.0, 1.0}}};
  LshParams params;
  params.k = 0;
  CHECK_THROWS_AS(IndexLsh::build(corpus, params), std::invalid_argument);
  params.k = 1;
  params.r = 0.0;
  CHECK_THROWS_AS(IndexLsh::build(corpus, params), std::invalid_argument);
  params.r = 1.0;
  params.w = -1.0;
  CHECK_THROWS_AS(IndexLsh::build(corpus, params), std::invalid_argument);
  params.w = 0.0;
  CHECK_THROWS_AS(IndexLsh::build({{"bad", TimeSeries{}}}, params),
                  std::invalid_argument);
  IndexLsh index = IndexLsh::build(corpus, params);
  CHECK_THROWS_AS(index.query({}), std::invalid_argument);
  CHECK_FALSE(index.completeness_guaranteed({1.0}));
}

TEST_CASE("an empty corpus builds empty tables") {
  LshParams params;
  params.k = 2;
  params.s = 3;
  IndexLsh index = IndexLsh::build({}, params);
  CHECK(index.tables().size() == 3);
  for (const auto& table : index.tables()) CHECK(table.empty());
  CHECK_FALSE(index.query({1.0, 2.0}).match.has_value());
}

TEST_CASE("a random shift splits an interval with probability length/width") {
  // an interval of length D is cut by a width-w grid cell boundary with
  // probability min(D/w, 1) over a uniform shift
  std::mt19937_64 rng(149);
  const double w = 10.0;
  const double lengths[] = {2.0, 5.0, 9.0};
  for (double d : lengths) {
    int split = 0;
    const int samples = 20000;
    for (int i = 0; i < samples; ++i) {
      double z = std::uniform_real_distribution<double>(0.0, w)(rng);
      double lo = std::uniform_real_distribution<double>(-50.0, 50.0)(rng);
      double hi = lo + d;
      std::int64_t cell_lo =
          static_cast<std::int64_t>(std::floor((lo - z) / w));
      std::int64_t cell_hi =
          static_cast<std::int64_t>(std::floor((hi - z) / w));
      if (cell_lo != cell_hi) ++split;
    }
    double freq = static_cast<double>(split) / samples;
    CHECK(std::fabs(freq - d / w) < 0.02);
  }
}

TEST_CASE("near twins collide in most repetitions at the default width") {
  // vertex-wise perturbation by r/2 keeps curves within r; with w = 12k the
  // chance that any single signature vertex changes cell is small, so a
  // large majority of repetitions should still match
  std::mt19937_64 rng(151);
  int hits = 0, total = 0;
  for (int trial = 0; trial < 60; ++trial) {
    TimeSeries base = test::random_wiggly_series(rng, 4, 0.0, 100.0);
    LshParams params;
    params.k = 4;
    params.r = 2.0;
    params.s = 8;
    params.seed = rng();
    IndexLsh index = IndexLsh::build({{"base", base}}, params);
    if (index.build_stats()[0].skipped) continue;
    TimeSeries near = test::perturb_series(rng, base, params.r / 2);
    for (std::size_t rep = 0; rep < index.params().s; ++rep) {
      const auto& table = index.tables()[rep];
      TimeSeries canonical = canonicalize(scale(near, params.r));
      GridKey key = canonicalize_key(snap_shifted(
          canonical, ShiftedGrid{index.params().w, index.shifts()[rep]}));
      ++total;
      if (table.count(key)) ++hits;
    }
  }
  REQUIRE(total > 100);
  CHECK(static_cast<double>(hits) / static_cast<double>(total) > 0.5);
}
