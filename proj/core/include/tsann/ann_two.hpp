#pragma once

#include <cstddef>
#include <cstdint>
#include <unordered_map>
#include <vector>

#include "tsann/corpus.hpp"
#include "tsann/grid_keys.hpp"
#include "tsann/time_series.hpp"

namespace tsann {

/**
 * Near-neighbour index trading query work for a tighter (2+epsilon)
 * distance guarantee.
 *
 * Build: like the (5+epsilon) index, but candidate grid points are drawn
 * from wider windows (4 + epsilon/2) around ALL canonical vertices of the
 * scaled curve rather than its signature values, the distance filter is the
 * tight 1 + epsilon/2, and no curve is skipped.
 *
 * Query: the scaled query's 1-signature vertices must appear in any key
 * close to it; the remaining canonical vertices may or may not.  The query
 * therefore tries every subset of the non-signature positions — smallest
 * subsets first, lexicographic within a size — and returns the first hit.
 * With h canonical vertices and l signature vertices that is at most
 * 2^(h-l) lookups; queries with h - l > 24 are refused with a
 * QueryBudgetError rather than enumerating millions of subsets.
 */
class IndexTwoEps {
 public:
  using Dictionary = std::unordered_map<GridKey, std::uint32_t, GridKeyHash>;

  /** Builds the index; same threading and error contract as IndexFiveEps. */
  static IndexTwoEps build(const Corpus& corpus, const DictionaryParams& params,
                           unsigned threads = 1);

  /**
   * Runs the subset-enumeration query; probes reports the number of lookups
   * actually performed.  Throws QueryBudgetError when the subset count
   * exceeds 2^24.
   */
  QueryResult query(const TimeSeries& tau) const;

  /** True iff a no-match answer for this query curve is conclusive. */
  bool completeness_guaranteed(const TimeSeries& tau) const;

  const DictionaryParams& params() const { return params_; }
  /** Grid cell width used for keys (epsilon/2, in scaled units). */
  double grid_width() const { return width_; }
  const Corpus& corpus() const { return corpus_; }
  const std::vector<CurveBuildStats>& build_stats() const { return stats_; }
  const Dictionary& dictionary() const { return dict_; }

  /** Reassembles an index from stored parts (the deserialization path). */
  static IndexTwoEps from_parts(Corpus corpus, DictionaryParams params,
                                std::vector<CurveBuildStats> stats,
                                Dictionary dict);

 private:
  IndexTwoEps() = default;

  DictionaryParams params_;
  double width_ = 0;
  Corpus corpus_;
  std::vector<CurveBuildStats> stats_;
  Dictionary dict_;
};

}  // namespace tsann
