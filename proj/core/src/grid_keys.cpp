#include "tsann/grid_keys.hpp"

#include <functional>

namespace tsann {

GridKey canonicalize_key(const GridKey& key) {
  GridKey out;
  out.reserve(key.size());
  for (std::int64_t x : key) {
    if (!out.empty() && x == out.back()) continue;
    while (out.size() >= 2) {
      const std::int64_t a = out[out.size() - 2];
      const std::int64_t b = out.back();
      if ((a < b && b < x) || (a > b && b > x)) {
        out.pop_back();
      } else {
        break;
      }
    }
    out.push_back(x);
  }
  return out;
}

TimeSeries key_curve(const GridKey& key, double width) {
  std::vector<double> values;
  values.reserve(key.size());
  for (std::int64_t cell : key) {
    values.push_back(static_cast<double>(cell) * width);
  }
  return TimeSeries(std::move(values));
}

std::size_t GridKeyHash::operator()(const GridKey& key) const {
  std::size_t seed = key.size();
  for (std::int64_t v : key) {
    seed ^= std::hash<std::int64_t>{}(v) + 0x9e3779b9 + (seed << 6) +
            (seed >> 2);
  }
  return seed;
}

}  // namespace tsann
