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
 * Near-neighbour index that answers a radius-r query with one dictionary
 * lookup and a (5+epsilon) distance guarantee.
 *
 * Build: every input curve is scaled by 1/r and its 1-signature taken; a
 * curve whose signature has more than k vertices contributes no keys.
 * Otherwise all canonical curves with at most k vertices, drawn from
 * width-(epsilon/2) grid points within 2 + epsilon/2 of the ordered
 * signature values and lying within Frechet distance 3 + epsilon/2 of the
 * scaled curve, become dictionary keys for that curve (first writer wins).
 *
 * Query: look up the snapped 2-signature of the scaled query.  Any hit is
 * within (5+epsilon)*r of the query.  A miss means no stored curve lies
 * within r, provided the scaled query canonicalizes to at most k vertices
 * (see completeness_guaranteed).
 */
class IndexFiveEps {
 public:
  using Dictionary = std::unordered_map<GridKey, std::uint32_t, GridKeyHash>;

  /**
   * Builds the index over the corpus.  Candidate generation fans out across
   * `threads` workers; the dictionary merge is serial in corpus order, so
   * the result does not depend on the thread count.  Throws
   * std::invalid_argument for parameters outside their domain (see
   * DictionaryParams) or an empty corpus curve.
   */
  static IndexFiveEps build(const Corpus& corpus,
                            const DictionaryParams& params,
                            unsigned threads = 1);

  /** Runs the single-lookup query; probes is always 1. */
  QueryResult query(const TimeSeries& tau) const;

  /**
   * True iff a no-match answer for this query curve is conclusive: the
   * guarantee requires the scaled query to canonicalize to at most k
   * vertices.
   */
  bool completeness_guaranteed(const TimeSeries& tau) const;

  const DictionaryParams& params() const { return params_; }
  /** Grid cell width used for keys (epsilon/2, in scaled units). */
  double grid_width() const { return width_; }
  const Corpus& corpus() const { return corpus_; }
  const std::vector<CurveBuildStats>& build_stats() const { return stats_; }
  const Dictionary& dictionary() const { return dict_; }

  /** Reassembles an index from stored parts (the deserialization path). */
  static IndexFiveEps from_parts(Corpus corpus, DictionaryParams params,
                                 std::vector<CurveBuildStats> stats,
                                 Dictionary dict);

 private:
  IndexFiveEps() = default;

  DictionaryParams params_;
  double width_ = 0;
  Corpus corpus_;
  std::vector<CurveBuildStats> stats_;
  Dictionary dict_;
};

}  // namespace tsann
