#include <doctest.h>

#include <cmath>
#include <random>
#include <set>
#include <stdexcept>
#include <vector>

#include "helpers.hpp"
#include "tsann/ann_two.hpp"
#include "tsann/frechet.hpp"
#include "tsann/oracle.hpp"
#include "tsann/signature.hpp"
#include "tsann/time_series.hpp"

using namespace tsann;

namespace {

Corpus one_ramp() { return {{"c0", TimeSeries{0.0, 10.0}}}; }

std::size_t subset_exponent(const IndexTwoEps& index, const TimeSeries& tau) {
  TimeSeries canonical = canonicalize(scale(tau, index.params().r));
  Signature sig = compute_signature(canonical, 1.0);
  return canonical.size() - sig.indices.size();
}

}  // namespace

TEST_CASE("subset-enumeration index on a pinned ramp corpus") {
  DictionaryParams params{1.0, 2, 2.0};
  IndexTwoEps index = IndexTwoEps::build(one_ramp(), params);

  REQUIRE(index.build_stats().size() == 1);
  const CurveBuildStats& stats = index.build_stats()[0];
  CHECK(stats.generated == 1121);
  CHECK(stats.kept == 49);
  CHECK_FALSE(stats.skipped);
  CHECK(index.dictionary().size() == 49);

  // per-curve key bound: C(k+m-1, k) * (4/epsilon + 2)^k, k=2, m=2, eps=1
  CHECK(stats.kept <= 3 * 36);

  QueryResult hit = index.query({0.3, 9.7});
  REQUIRE(hit.match.has_value());
  CHECK(*hit.match == "c0");
  CHECK(hit.probes == 1);

  QueryResult miss = index.query({0.0, 14.0});
  CHECK_FALSE(miss.match.has_value());
}

TEST_CASE("no curve is skipped regardless of signature length") {
  TimeSeries zigzag{0.0, 10.0, 0.0, 10.0, 0.0};
  IndexTwoEps index = IndexTwoEps::build({{"z", zigzag}}, {1.0, 2, 1.0});
  CHECK_FALSE(index.build_stats()[0].skipped);
  CHECK(index.build_stats()[0].signature_length == 5);
}

TEST_CASE("a singleton curve stores exactly the in-range grid points") {
  // curve <5>, r=1, epsilon=1: keys are all single grid indices g with
  // |0.5*g - 5| <= 1 + 0.5, i.e. g in {7..13}
  IndexTwoEps index =
      IndexTwoEps::build({{"flat", TimeSeries{5.0}}}, {1.0, 1, 1.0});
  std::set<GridKey> keys;
  for (const auto& [key, slot] : index.dictionary()) keys.insert(key);
  std::set<GridKey> want;
  for (std::int64_t g = 7; g <= 13; ++g) want.insert(GridKey{g});
  CHECK(keys == want);
}

TEST_CASE("a query whose vertices are all signature vertices probes once") {
  IndexTwoEps index = IndexTwoEps::build(one_ramp(), {1.0, 2, 2.0});
  // scaled query <0, 5> is a pure zig: signature == canonical
  CHECK(subset_exponent(index, {0.0, 10.0}) == 0);
  QueryResult res = index.query({0.0, 10.0});
  CHECK(res.probes == 1);

  // a miss with no free positions is also a single lookup
  QueryResult miss = index.query({0.0, 100.0});
  CHECK(miss.probes == 1);
  CHECK_FALSE(miss.match.has_value());
}

TEST_CASE("probe count is bounded by the subset count") {
  std::mt19937_64 rng(113);
  IndexTwoEps index = IndexTwoEps::build(one_ramp(), {1.0, 3, 2.0});
  for (int trial = 0; trial < 80; ++trial) {
    TimeSeries tau = test::random_series(rng, 1 + rng() % 6, 0.0, 12.0);
    std::size_t exponent = subset_exponent(index, tau);
    if (exponent > 24) continue;
    QueryResult res = index.query(tau);
    CHECK(res.probes >= 1);
    CHECK(res.probes <= (std::size_t{1} << exponent));
  }
}

TEST_CASE("queries over the subset budget are refused") {
  // a gentle staircase canonicalizes to many vertices but has a two-vertex
  // 1-signature once scaled, so the subset exponent exceeds 24
  std::vector<double> values;
  for (int i = 0; i < 30; ++i) {
    values.push_back(static_cast<double>(i) * 0.5);
    values.push_back(static_cast<double>(i) * 0.5 + 0.9);
  }
  TimeSeries staircase(values);
  IndexTwoEps index = IndexTwoEps::build(one_ramp(), {1.0, 2, 1.0});
  REQUIRE(subset_exponent(index, staircase) > 24);
  CHECK_THROWS_AS(index.query(staircase), QueryBudgetError);
}

TEST_CASE("build validates parameters") {
  CHECK_THROWS_AS(IndexTwoEps::build(one_ramp(), {1.5, 2, 2.0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(IndexTwoEps::build(one_ramp(), {1.0, 0, 2.0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(IndexTwoEps::build(one_ramp(), {1.0, 2, -1.0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(IndexTwoEps::build(one_ramp(), {1.0, 2, 2.0}).query({}),
                  std::invalid_argument);
}

TEST_CASE("answers are sound and complete on random mini-corpora") {
  std::mt19937_64 rng(127);
  const double oracle_tol = 1e-9;
  for (int round = 0; round < 8; ++round) {
    Corpus corpus;
    std::size_t n = 1 + rng() % 4;
    for (std::size_t i = 0; i < n; ++i) {
      corpus.push_back({"c" + std::to_string(i),
                        test::random_series(rng, 1 + rng() % 3, 0.0, 20.0)});
    }
    DictionaryParams params{1.0, 3, 2.0};
    IndexTwoEps index = IndexTwoEps::build(corpus, params);
    double c = 2.0 + params.epsilon;
    for (int q = 0; q < 10; ++q) {
      TimeSeries tau = test::random_series(rng, 1 + rng() % 3, 0.0, 20.0);
      QueryResult res = index.query(tau);
      OracleAnswer truth = scan(corpus, tau, params.r, oracle_tol);
      IndexAnswer answer{res.match, index.completeness_guaranteed(tau)};
      ValidationResult v = validate(corpus, tau, answer, truth, c, params.r,
                                    1e-6, oracle_tol);
      INFO("round ", round, " query ", q, " outcome ",
           to_string(v.outcome));
      CHECK(v.outcome == ValidationOutcome::kPass);
    }
  }
}
