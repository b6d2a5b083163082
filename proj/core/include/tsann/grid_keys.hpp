#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "tsann/time_series.hpp"

namespace tsann {

/**
 * Dictionary lookup token: a sequence of integer grid indices.  Stored keys
 * are always canonical (extrema only), so two grid curves tracing the same
 * polyline compare equal.
 */
using GridKey = std::vector<std::int64_t>;

/**
 * Extrema-only canonical form of a key: equal consecutive entries are
 * collapsed and entries that are not strict local extrema are removed, the
 * same rule canonicalize applies to curves.
 */
GridKey canonicalize_key(const GridKey& key);

/** The polygonal curve traced by a key on the grid of the given width. */
TimeSeries key_curve(const GridKey& key, double width);

struct GridKeyHash {
  std::size_t operator()(const GridKey& key) const;
};

}  // namespace tsann
