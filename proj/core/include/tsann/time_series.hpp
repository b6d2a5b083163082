#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <vector>

namespace tsann {

/**
 * A one-dimensional polygonal curve ("time series").  The values are the
 * vertices; consecutive vertices are joined by linear interpolation and the
 * curve is traversed from front to back.  Nothing in the library ever
 * materializes a parametrization -- all algorithms work on the vertex list.
 */
struct TimeSeries {
  std::vector<double> values;

  TimeSeries() = default;
  TimeSeries(std::initializer_list<double> init) : values(init) {}
  explicit TimeSeries(std::vector<double> v) : values(std::move(v)) {}

  std::size_t size() const { return values.size(); }
  bool empty() const { return values.empty(); }
  double operator[](std::size_t i) const { return values[i]; }
  double front() const { return values.front(); }
  double back() const { return values.back(); }

  bool operator==(const TimeSeries&) const = default;
};

/** The uniform grid { i * width : i integer }, width > 0. */
struct UniformGrid {
  double width;
};

/**
 * A uniform grid shifted by `shift`: cell c covers
 * [shift + c*width, shift + (c+1)*width).  Requires 0 <= shift <= width.
 */
struct ShiftedGrid {
  double width;
  double shift;
};

/**
 * Removes every vertex that is not a strict local extremum of the value
 * sequence (equal consecutive values are collapsed first).  The first and
 * last vertices always survive.  The result traces the same curve; applying
 * canonicalize twice gives the same result as applying it once.
 */
TimeSeries canonicalize(const TimeSeries& ts);

/** True iff canonicalize(ts) == ts. */
bool is_canonical(const TimeSeries& ts);

/**
 * Snaps every value to the nearest point of `grid` (ties round up, i.e.
 * toward +infinity).  No value moves by more than width/2.
 */
TimeSeries snap_nearest(const TimeSeries& ts, const UniformGrid& grid);

/** Same as snap_nearest but returns the integer grid indices. */
std::vector<std::int64_t> snap_nearest_indices(const TimeSeries& ts,
                                               const UniformGrid& grid);

/**
 * Maps every value to the index of the shifted grid cell containing it:
 * floor((x - shift) / width).
 */
std::vector<std::int64_t> snap_shifted(const TimeSeries& ts,
                                       const ShiftedGrid& grid);

/** Total variation of the vertex sequence: sum of |v[i+1] - v[i]|. */
double arclength(const TimeSeries& ts);

/** Divides every value by r.  r must be positive and finite. */
TimeSeries scale(const TimeSeries& ts, double r);

/**
 * Joins two curves that share an endpoint (a.back() == b.front()); the
 * duplicated junction vertex is kept once.
 */
TimeSeries concat(const TimeSeries& a, const TimeSeries& b);

}  // namespace tsann
