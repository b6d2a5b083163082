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
 * Construction parameters of the randomized index.  Zero in `w` or `s`
 * selects the default (resolved values are reported by IndexLsh::params).
 */
struct LshParams {
  std::size_t k = 1;      // complexity budget for stored signatures, >= 1
  double r = 1.0;         // query radius the index certifies, > 0
  double w = 0;           // grid width in scaled units; 0 means 12*k
  std::size_t s = 0;      // repetitions; 0 means ceil(2*log2(n+1)), min 1
  std::uint64_t seed = 0; // seeds the grid shifts
};

/**
 * Randomized near-neighbour index hashing 1-signatures to randomly shifted
 * grid cells.
 *
 * Build: each curve is scaled by 1/r; curves whose 1-signature exceeds k
 * vertices are skipped.  For each of s repetitions a shift z_i is drawn
 * uniformly from [0, w); the key of a curve in repetition i is the canonical
 * cell-index sequence of its signature under the grid shifted by z_i (first
 * writer wins per repetition).
 *
 * Query: the scaled query's canonical vertices are hashed the same way
 * against every repetition; the first hit is returned.  Any hit is within
 * (2w+1)*r of the query (the default w = 12k gives (24k+1)*r).  A curve
 * within r of the query is missed by a single repetition with probability at
 * most 6k/w (1/2 at the default width), so by all s repetitions with
 * probability at most 2^-s; misses are never certificates, hence
 * completeness_guaranteed is always false.
 */
class IndexLsh {
 public:
  using Dictionary = std::unordered_map<GridKey, std::uint32_t, GridKeyHash>;

  /**
   * Builds the index; per-curve hashing fans out across `threads` workers
   * with a serial corpus-order merge, so the result depends only on the
   * parameters and the seed.  Throws std::invalid_argument for k == 0,
   * r <= 0, a negative or non-finite width, or an empty corpus curve.
   */
  static IndexLsh build(const Corpus& corpus, const LshParams& params,
                        unsigned threads = 1);

  /** Tries the repetitions in order; probes counts lookups performed. */
  QueryResult query(const TimeSeries& tau) const;

  /** Always false: a miss is probabilistic evidence, not a certificate. */
  bool completeness_guaranteed(const TimeSeries& tau) const;

  /** Parameters with defaults resolved (w, s filled in). */
  const LshParams& params() const { return params_; }
  const Corpus& corpus() const { return corpus_; }
  const std::vector<double>& shifts() const { return shifts_; }
  const std::vector<Dictionary>& tables() const { return tables_; }
  /** Build-time diagnostics; zeroed on a deserialized index. */
  const std::vector<CurveBuildStats>& build_stats() const { return stats_; }

  /** Reassembles an index from stored parts (the deserialization path). */
  static IndexLsh from_parts(Corpus corpus, LshParams params,
                             std::vector<double> shifts,
                             std::vector<Dictionary> tables);

 private:
  IndexLsh() = default;

  LshParams params_;
  Corpus corpus_;
  std::vector<double> shifts_;
  std::vector<Dictionary> tables_;
  std::vector<CurveBuildStats> stats_;
};

}  // namespace tsann
