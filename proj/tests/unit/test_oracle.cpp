#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

#include "helpers.hpp"
#include "tsann/frechet.hpp"
#include "tsann/oracle.hpp"
#include "tsann/time_series.hpp"

using namespace tsann;

namespace {
constexpr double kTol = 1e-9;
}

TEST_CASE("scan on pinned instances") {
  Corpus corpus = {{"c0", TimeSeries{0.0, 10.0}}};
  OracleAnswer a = scan(corpus, {0.2, 9.8}, 1.0, kTol);
  CHECK(a.any_within_r);
  REQUIRE(a.best_id.has_value());
  CHECK(*a.best_id == "c0");
  CHECK(a.best_distance == doctest::Approx(0.2).epsilon(1e-8));

  OracleAnswer empty = scan({}, {1.0, 2.0}, 1.0, kTol);
  CHECK_FALSE(empty.any_within_r);
  CHECK_FALSE(empty.best_id.has_value());

  TimeSeries tau{3.0, -1.0, 4.0};
  OracleAnswer self = scan({{"me", tau}}, tau, 0.5, kTol);
  CHECK(self.any_within_r);
  CHECK(self.best_distance == doctest::Approx(0.0).epsilon(1e-8));
}

TEST_CASE("scan validates parameters") {
  Corpus corpus = {{"c0", TimeSeries{0.0, 10.0}}};
  CHECK_THROWS_AS(scan(corpus, {1.0}, 0.0, kTol), std::invalid_argument);
  CHECK_THROWS_AS(scan(corpus, {1.0}, 1.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(scan(corpus, {}, 1.0, kTol), std::invalid_argument);
}

TEST_CASE("a positive scan answer is within r of the query") {
  std::mt19937_64 rng(157);
  for (int trial = 0; trial < 60; ++trial) {
    Corpus corpus;
    for (int i = 0; i < 5; ++i) {
      corpus.push_back({"c" + std::to_string(i),
                        test::random_series(rng, 1 + rng() % 6, 0.0, 20.0)});
    }
    TimeSeries tau = test::random_series(rng, 1 + rng() % 6, 0.0, 20.0);
    double r = std::uniform_real_distribution<double>(0.5, 6.0)(rng);
    OracleAnswer a = scan(corpus, tau, r, kTol);
    if (a.any_within_r) {
      CHECK(a.best_distance <= r + kTol);
      REQUIRE(a.best_id.has_value());
    } else {
      for (const CorpusEntry& entry : corpus) {
        CHECK_FALSE(decide_continuous(entry.curve, tau, r));
      }
    }
  }
}

TEST_CASE("a match at exactly c*r passes validation") {
  Corpus corpus = {{"c0", TimeSeries{0.0, 0.0}}};
  TimeSeries tau{6.0, 6.0};  // distance 6 == c*r for c = 3, r = 2
  OracleAnswer truth = scan(corpus, tau, 2.0, kTol);
  ValidationResult v = validate(corpus, tau, IndexAnswer{"c0", true}, truth,
                                3.0, 2.0, 1e-6, kTol);
  CHECK(v.outcome == ValidationOutcome::kPass);
  CHECK(v.matched_distance == doctest::Approx(6.0).epsilon(1e-8));
}

TEST_CASE("a match just beyond c*r fails soundness") {
  Corpus corpus = {{"c0", TimeSeries{0.0, 0.0}}};
  TimeSeries tau{7.0, 7.0};  // distance 7 == c*r + 1
  OracleAnswer truth = scan(corpus, tau, 2.0, kTol);
  ValidationResult v = validate(corpus, tau, IndexAnswer{"c0", true}, truth,
                                3.0, 2.0, 1e-6, kTol);
  CHECK(v.outcome == ValidationOutcome::kFailSoundness);
}

TEST_CASE("a guaranteed miss with a near curve fails completeness") {
  Corpus corpus = {{"c0", TimeSeries{0.0, 10.0}}};
  TimeSeries tau{0.2, 9.8};
  OracleAnswer truth = scan(corpus, tau, 1.0, kTol);
  REQUIRE(truth.any_within_r);

  ValidationResult guaranteed = validate(
      corpus, tau, IndexAnswer{std::nullopt, true}, truth, 5.0, 1.0);
  CHECK(guaranteed.outcome == ValidationOutcome::kFailCompleteness);

  ValidationResult unguaranteed = validate(
      corpus, tau, IndexAnswer{std::nullopt, false}, truth, 5.0, 1.0);
  CHECK(unguaranteed.outcome == ValidationOutcome::kSkippedPrecondition);

  OracleAnswer far = scan(corpus, {100.0, 200.0}, 1.0, kTol);
  ValidationResult clean_miss =
      validate(corpus, {100.0, 200.0}, IndexAnswer{std::nullopt, true}, far,
               5.0, 1.0);
  CHECK(clean_miss.outcome == ValidationOutcome::kPass);
  CHECK(std::isnan(clean_miss.matched_distance));
}

TEST_CASE("a match naming an unknown curve is rejected") {
  Corpus corpus = {{"c0", TimeSeries{0.0, 10.0}}};
  OracleAnswer truth = scan(corpus, {1.0, 9.0}, 1.0, kTol);
  CHECK_THROWS_AS(validate(corpus, {1.0, 9.0}, IndexAnswer{"ghost", true},
                           truth, 5.0, 1.0),
                  std::invalid_argument);
}

TEST_CASE("outcome labels are stable") {
  CHECK(std::string(to_string(ValidationOutcome::kPass)) == "PASS");
  CHECK(std::string(to_string(ValidationOutcome::kFailSoundness)) ==
        "FAIL(soundness)");
  CHECK(std::string(to_string(ValidationOutcome::kFailCompleteness)) ==
        "FAIL(completeness)");
  CHECK(std::string(to_string(ValidationOutcome::kSkippedPrecondition)) ==
        "SKIPPED-PRECONDITION");
}
