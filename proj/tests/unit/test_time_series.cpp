#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "helpers.hpp"
#include "tsann/frechet.hpp"
#include "tsann/time_series.hpp"

using namespace tsann;

TEST_CASE("canonicalize drops interior vertices of monotone runs") {
  CHECK(canonicalize({1.0, 2.0, 3.0}) == TimeSeries{1.0, 3.0});
  // alternation with repeats: b,c,b,b,a,c,b for a < b < c
  CHECK(canonicalize({2.0, 3.0, 2.0, 2.0, 1.0, 3.0, 2.0}) ==
        TimeSeries{2.0, 3.0, 1.0, 3.0, 2.0});
  CHECK(canonicalize({5.0}) == TimeSeries{5.0});
}

TEST_CASE("canonicalize is idempotent and alternation-checked") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    TimeSeries ts = test::random_series(rng, 1 + rng() % 20, -10.0, 10.0);
    TimeSeries canon = canonicalize(ts);
    CHECK(is_canonical(canon));
    CHECK(canonicalize(canon) == canon);
    // removing straight-line vertices never changes the polyline
    CHECK(decide_continuous(ts, canon, 0.0));
  }
}

TEST_CASE("canonicalize rejects empty input") {
  CHECK_THROWS_AS(canonicalize({}), std::invalid_argument);
}

TEST_CASE("snap_nearest rounds to the closest grid value, ties upward") {
  CHECK(snap_nearest({0.3}, UniformGrid{0.5}) == TimeSeries{0.5});
  CHECK(snap_nearest({0.25}, UniformGrid{0.5}) == TimeSeries{0.5});
  CHECK(snap_nearest({-1.2, 4.9}, UniformGrid{1.0}) == TimeSeries{-1.0, 5.0});
}

TEST_CASE("snap_nearest moves every vertex by at most half a grid cell") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    double w = 0.1 + std::uniform_real_distribution<double>(0.0, 3.0)(rng);
    TimeSeries ts = test::random_series(rng, 1 + rng() % 15, -20.0, 20.0);
    TimeSeries snapped = snap_nearest(ts, UniformGrid{w});
    REQUIRE(snapped.size() == ts.size());
    for (std::size_t i = 0; i < ts.size(); ++i) {
      CHECK(std::fabs(snapped[i] - ts[i]) <= w / 2 + 1e-12);
      // snapped values sit exactly on the grid
      double cells = snapped[i] / w;
      CHECK(std::fabs(cells - std::round(cells)) < 1e-9);
    }
    // vertex-wise perturbation bounds the Frechet distance
    CHECK(decide_continuous(ts, snapped, w / 2 + 1e-12));
  }
}

TEST_CASE("snap_nearest validates the grid") {
  CHECK_THROWS_AS(snap_nearest({1.0}, UniformGrid{0.0}), std::invalid_argument);
  CHECK_THROWS_AS(snap_nearest({1.0}, UniformGrid{-1.0}),
                  std::invalid_argument);
}

TEST_CASE("snap_nearest_indices returns integer cell labels") {
  CHECK(snap_nearest_indices({0.3}, UniformGrid{0.5}) ==
        std::vector<std::int64_t>{1});
  CHECK(snap_nearest_indices({-1.2, 4.9}, UniformGrid{1.0}) ==
        std::vector<std::int64_t>{-1, 5});
}

TEST_CASE("snap_shifted floors into shifted cells") {
  CHECK(snap_shifted({3.0}, ShiftedGrid{2.0, 0.5}) ==
        std::vector<std::int64_t>{1});
  CHECK(snap_shifted({0.0}, ShiftedGrid{1.0, 0.0}) ==
        std::vector<std::int64_t>{0});
  CHECK(snap_shifted({-0.1}, ShiftedGrid{1.0, 0.0}) ==
        std::vector<std::int64_t>{-1});
}

TEST_CASE("snap_shifted cell labels are consistent with cell boundaries") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 200; ++trial) {
    double w = 0.1 + std::uniform_real_distribution<double>(0.0, 3.0)(rng);
    double z = std::uniform_real_distribution<double>(0.0, w)(rng);
    TimeSeries ts = test::random_series(rng, 1 + rng() % 10, -20.0, 20.0);
    auto cells = snap_shifted(ts, ShiftedGrid{w, z});
    for (std::size_t i = 0; i < ts.size(); ++i) {
      double lo = static_cast<double>(cells[i]) * w + z;
      CHECK(ts[i] >= lo - 1e-9);
      CHECK(ts[i] < lo + w + 1e-9);
    }
  }
}

TEST_CASE("arclength sums vertex-to-vertex movement") {
  CHECK(arclength({0.0, 4.0, 0.0}) == doctest::Approx(8.0));
  CHECK(arclength({5.0}) == 0.0);
  CHECK(arclength({0.0, 8.0, 4.0, 17.0}) == doctest::Approx(25.0));
}

TEST_CASE("scale divides values by the radius") {
  CHECK(scale({0.0, 10.0}, 2.0) == TimeSeries{0.0, 5.0});
  CHECK(scale({-4.0, 4.0}, 4.0) == TimeSeries{-1.0, 1.0});
  CHECK_THROWS_AS(scale({1.0}, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(scale({1.0}, -2.0), std::invalid_argument);
}

TEST_CASE("scaling divides arclength by the same factor") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    TimeSeries ts = test::random_series(rng, 2 + rng() % 12, -50.0, 50.0);
    double r = std::uniform_real_distribution<double>(0.25, 8.0)(rng);
    double got = arclength(scale(ts, r));
    double want = arclength(ts) / r;
    CHECK(got == doctest::Approx(want).epsilon(1e-12));
  }
}

TEST_CASE("concat joins series sharing an endpoint") {
  TimeSeries joined = concat({0.0, 3.0}, {3.0, 1.0, 4.0});
  CHECK(joined == TimeSeries{0.0, 3.0, 1.0, 4.0});
  CHECK_THROWS_AS(concat({0.0, 3.0}, {2.9, 1.0}), std::invalid_argument);
}
