#pragma once

#include <cstddef>
#include <random>
#include <vector>

#include "tsann/time_series.hpp"

namespace tsann::test {

/** Random series with values drawn uniformly from [lo, hi]. */
inline TimeSeries random_series(std::mt19937_64& rng, std::size_t length,
                                double lo, double hi) {
  std::uniform_real_distribution<double> value(lo, hi);
  std::vector<double> values(length);
  for (auto& v : values) v = value(rng);
  return TimeSeries(std::move(values));
}

/** Random series whose consecutive values differ (no flat segments). */
inline TimeSeries random_wiggly_series(std::mt19937_64& rng,
                                       std::size_t length, double lo,
                                       double hi) {
  std::uniform_real_distribution<double> value(lo, hi);
  std::vector<double> values(length);
  for (std::size_t i = 0; i < length; ++i) {
    values[i] = value(rng);
    while (i > 0 && values[i] == values[i - 1]) values[i] = value(rng);
  }
  return TimeSeries(std::move(values));
}

/** Per-vertex perturbation of `ts` by at most `amount` in either direction. */
inline TimeSeries perturb_series(std::mt19937_64& rng, const TimeSeries& ts,
                                 double amount) {
  std::uniform_real_distribution<double> bump(-amount, amount);
  std::vector<double> values = ts.values;
  for (auto& v : values) v += bump(rng);
  return TimeSeries(std::move(values));
}

}  // namespace tsann::test
