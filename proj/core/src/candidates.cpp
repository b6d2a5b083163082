#include "tsann/candidates.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>
#include <utility>

#include "tsann/detail/free_space.hpp"

namespace tsann {

namespace {

/** Inclusive integer grid-index bounds of a value range on the width-w grid. */
struct IndexSpan {
  std::int64_t lo = 0;
  std::int64_t hi = -1;
  std::int64_t count() const { return hi < lo ? 0 : hi - lo + 1; }
};

IndexSpan range_span(const ValueRange& r, double w) {
  IndexSpan s;
  s.lo = static_cast<std::int64_t>(std::ceil(r.lo / w));
  s.hi = static_cast<std::int64_t>(std::floor(r.hi / w));
  return s;
}

/**
 * Number of sequences of 1..max_len grid points drawn from the spans with
 * non-decreasing span index, computed combinatorially (the enumeration's
 * recursion tree size), saturating at the uint64 maximum.
 */
std::uint64_t count_generated(const std::vector<IndexSpan>& spans,
                              std::size_t max_len) {
  const std::size_t L = spans.size();
  // f[j] = number of length-t sequences ending in span j.
  std::vector<long double> f(L);
  long double total = 0;
  for (std::size_t j = 0; j < L; ++j) {
    f[j] = static_cast<long double>(spans[j].count());
    total += f[j];
  }
  for (std::size_t t = 2; t <= max_len; ++t) {
    long double acc = 0;
    for (std::size_t j = 0; j < L; ++j) {
      acc += f[j];  // sequences of length t-1 ending at or before span j
      f[j] = acc * static_cast<long double>(spans[j].count());
      total += f[j];
    }
  }
  const long double cap =
      static_cast<long double>(std::numeric_limits<std::uint64_t>::max());
  if (!(total < cap)) return std::numeric_limits<std::uint64_t>::max();
  return static_cast<std::uint64_t>(total);
}

struct NodeState {
  std::size_t min_range;  // smallest span index usable for the next vertex
  detail::FreeSpaceFrontier frontier;
};

}  // namespace

CandidateStats enumerate_candidates(
    const TimeSeries& target, const CandidateParams& params,
    const std::function<void(const GridKey&)>& emit) {
  if (target.empty()) {
    throw std::invalid_argument("enumerate_candidates: target is empty");
  }
  if (!(params.width > 0) || !std::isfinite(params.width)) {
    throw std::invalid_argument(
        "enumerate_candidates: width must be positive and finite");
  }
  if (params.max_vertices == 0) {
    throw std::invalid_argument(
        "enumerate_candidates: max_vertices must be at least 1");
  }
  if (!(params.filter_delta >= 0) || !std::isfinite(params.filter_delta)) {
    throw std::invalid_argument(
        "enumerate_candidates: filter_delta must be non-negative and finite");
  }
  if (params.ranges.empty()) {
    throw std::invalid_argument("enumerate_candidates: no ranges given");
  }

  const double w = params.width;
  std::vector<IndexSpan> spans;
  spans.reserve(params.ranges.size());
  for (const ValueRange& r : params.ranges) spans.push_back(range_span(r, w));

  CandidateStats stats;
  stats.generated = count_generated(spans, params.max_vertices);

  const std::vector<double>& q = target.values;

  // Breadth-first walk over canonical keys, one level per key length.  A key
  // appears in exactly one level (appends never shrink it), keyed by its
  // unique length-minus-one prefix, so each key is examined exactly once.
  std::map<GridKey, NodeState> level;
  for (std::size_t j = 0; j < spans.size(); ++j) {
    for (std::int64_t g = spans[j].lo; g <= spans[j].hi; ++g) {
      GridKey key{g};
      if (level.count(key)) continue;  // a smaller span already offers g
      detail::FreeSpaceFrontier frontier(&q, params.filter_delta);
      frontier.reset(static_cast<double>(g) * w);
      if (frontier.dead()) continue;
      level.emplace(std::move(key), NodeState{j, std::move(frontier)});
    }
  }

  for (std::size_t len = 1; len <= params.max_vertices && !level.empty();
       ++len) {
    for (const auto& [key, node] : level) {
      if (node.frontier.accepts()) {
        ++stats.kept;
        emit(key);
      }
    }
    if (len == params.max_vertices) break;
    std::map<GridKey, NodeState> next;
    for (const auto& [key, node] : level) {
      const std::int64_t back = key.back();
      const bool has2 = key.size() >= 2;
      const std::int64_t prior = has2 ? key[key.size() - 2] : 0;
      for (std::size_t j = node.min_range; j < spans.size(); ++j) {
        for (std::int64_t g = spans[j].lo; g <= spans[j].hi; ++g) {
          if (g == back) continue;
          if (has2 &&
              ((prior < back && back < g) || (prior > back && back > g))) {
            // Appending g would erase the last extremum; the shorter key it
            // collapses to is walked on its own.
            continue;
          }
          GridKey child = key;
          child.push_back(g);
          if (next.count(child)) continue;  // smaller witness already stored
          detail::FreeSpaceFrontier frontier = node.frontier;
          frontier.advance(static_cast<double>(g) * w);
          if (frontier.dead()) continue;
          next.emplace(std::move(child), NodeState{j, std::move(frontier)});
        }
      }
    }
    level = std::move(next);
  }
  return stats;
}

}  // namespace tsann
