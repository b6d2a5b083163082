#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "tsann/grid_keys.hpp"
#include "tsann/time_series.hpp"

namespace tsann {

/** A closed value interval [lo, hi]. */
struct ValueRange {
  double lo = 0;
  double hi = 0;
};

/** Inputs for grid-candidate enumeration around a target curve. */
struct CandidateParams {
  std::vector<ValueRange> ranges;  // ordered ranges, one per target anchor
  double width = 0;                // grid cell width, > 0
  std::size_t max_vertices = 0;    // candidate length budget, >= 1
  double filter_delta = 0;         // keep iff within this of the target
};

/** Counters reported by one enumeration run. */
struct CandidateStats {
  std::uint64_t generated = 0;  // order-respecting grid sequences (saturates)
  std::uint64_t kept = 0;       // distinct canonical keys passing the filter
};

/**
 * Enumerates grid curves drawn from the given ranges and reports every
 * distinct canonical key whose curve lies within filter_delta of `target`
 * under the continuous Frechet distance.
 *
 * The enumerated family consists of all sequences of at most max_vertices
 * grid points, where consecutive points are drawn from ranges with
 * non-decreasing index (points may repeat a range).  `generated` counts those
 * sequences combinatorially, saturating at the uint64 maximum.  Since a
 * sequence and its canonical form trace the same curve, and every canonical
 * form is itself such a sequence (a subsequence inherits in-range values and
 * ordered range witnesses), the distinct keys of the filtered family equal
 * the distinct filtered canonical keys — which is what the search walks
 * directly: it grows canonical keys one vertex at a time, keeps only the
 * smallest usable range index per key (continuations of a larger index are a
 * subset of those of a smaller one), advances an incremental free-space
 * frontier per appended vertex, and prunes keys whose frontier can never
 * accept again.  Keys are emitted in deterministic order: by length, then
 * lexicographically.
 *
 * Throws std::invalid_argument for width <= 0, max_vertices == 0,
 * filter_delta < 0, empty ranges, or an empty target.
 */
CandidateStats enumerate_candidates(
    const TimeSeries& target, const CandidateParams& params,
    const std::function<void(const GridKey&)>& emit);

}  // namespace tsann
