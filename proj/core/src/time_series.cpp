#include "tsann/time_series.hpp"

#include <cmath>
#include <stdexcept>

namespace tsann {

namespace {

void require_nonempty(const TimeSeries& ts, const char* op) {
  if (ts.empty()) {
    throw std::invalid_argument(std::string(op) + ": time series is empty");
  }
}

void require_grid(double width, const char* op) {
  if (!(width > 0) || !std::isfinite(width)) {
    throw std::invalid_argument(std::string(op) +
                                ": grid width must be positive and finite");
  }
}

}  // namespace

TimeSeries canonicalize(const TimeSeries& ts) {
  require_nonempty(ts, "canonicalize");
  const std::vector<double>& v = ts.values;
  std::vector<double> out;
  out.reserve(v.size());
  out.push_back(v.front());
  for (std::size_t i = 1; i < v.size(); ++i) {
    const double x = v[i];
    if (x == out.back()) continue;
    // Drop the previous vertex while it is not a strict extremum between its
    // new neighbours.  Equal neighbours cannot occur here: equal-consecutive
    // values were collapsed by the branch above.
    while (out.size() >= 2) {
      const double a = out[out.size() - 2];
      const double b = out.back();
      if ((a < b && b < x) || (a > b && b > x)) {
        out.pop_back();
      } else {
        break;
      }
    }
    out.push_back(x);
  }
  return TimeSeries(std::move(out));
}

bool is_canonical(const TimeSeries& ts) {
  return !ts.empty() && canonicalize(ts) == ts;
}

namespace {

std::int64_t nearest_index(double x, double width) {
  // Round half up: ties go toward +infinity.
  return static_cast<std::int64_t>(std::floor(x / width + 0.5));
}

}  // namespace

TimeSeries snap_nearest(const TimeSeries& ts, const UniformGrid& grid) {
  require_nonempty(ts, "snap_nearest");
  require_grid(grid.width, "snap_nearest");
  std::vector<double> out;
  out.reserve(ts.size());
  for (double x : ts.values) {
    out.push_back(static_cast<double>(nearest_index(x, grid.width)) *
                  grid.width);
  }
  return TimeSeries(std::move(out));
}

std::vector<std::int64_t> snap_nearest_indices(const TimeSeries& ts,
                                               const UniformGrid& grid) {
  require_nonempty(ts, "snap_nearest_indices");
  require_grid(grid.width, "snap_nearest_indices");
  std::vector<std::int64_t> out;
  out.reserve(ts.size());
  for (double x : ts.values) out.push_back(nearest_index(x, grid.width));
  return out;
}

std::vector<std::int64_t> snap_shifted(const TimeSeries& ts,
                                       const ShiftedGrid& grid) {
  require_nonempty(ts, "snap_shifted");
  require_grid(grid.width, "snap_shifted");
  if (!(grid.shift >= 0 && grid.shift <= grid.width)) {
    throw std::invalid_argument("snap_shifted: shift must lie in [0, width]");
  }
  std::vector<std::int64_t> out;
  out.reserve(ts.size());
  for (double x : ts.values) {
    out.push_back(
        static_cast<std::int64_t>(std::floor((x - grid.shift) / grid.width)));
  }
  return out;
}

double arclength(const TimeSeries& ts) {
  require_nonempty(ts, "arclength");
  double total = 0;
  for (std::size_t i = 1; i < ts.size(); ++i) {
    total += std::fabs(ts[i] - ts[i - 1]);
  }
  return total;
}

TimeSeries scale(const TimeSeries& ts, double r) {
  require_nonempty(ts, "scale");
  if (!(r > 0) || !std::isfinite(r)) {
    throw std::invalid_argument("scale: factor must be positive and finite");
  }
  std::vector<double> out;
  out.reserve(ts.size());
  for (double x : ts.values) out.push_back(x / r);
  return TimeSeries(std::move(out));
}

TimeSeries concat(const TimeSeries& a, const TimeSeries& b) {
  require_nonempty(a, "concat");
  require_nonempty(b, "concat");
  if (a.back() != b.front()) {
    throw std::invalid_argument("concat: curves must share the junction vertex");
  }
  std::vector<double> out = a.values;
  out.insert(out.end(), b.values.begin() + 1, b.values.end());
  return TimeSeries(std::move(out));
}

}  // namespace tsann
