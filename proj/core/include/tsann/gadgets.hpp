#pragma once

#include <cstddef>
#include <cstdint>
#include <set>
#include <utility>
#include <vector>

#include "tsann/frechet.hpp"
#include "tsann/time_series.hpp"

namespace tsann {

/**
 * A set-disjointness instance: two subsets of {1..universe}.  The generators
 * below turn such instances into curve pairs whose Frechet distance is small
 * exactly when the subsets intersect (or exactly when they are disjoint,
 * depending on the family), with a guaranteed gap between the two cases.
 * They serve as adversarial corpora and as hard test instances.
 */
struct SetPair {
  std::size_t universe = 0;   // U >= 1
  std::set<std::size_t> a;    // subset of {1..U}
  std::set<std::size_t> b;    // subset of {1..U}
};

/**
 * One-dimensional pair (x, y), both canonicalized.  If a and b are disjoint
 * then d_F(x, y) <= 1; if they intersect then d_F(x, y) >= 2.  The raw
 * vertex lists interleave per-element peaks: x rises to 4i+4 at element i
 * when i is in a (else stays at 4i), y dips per element unless i is in b.
 * Vertex counts after canonicalization: |x| = 2|a|+2, |y| = 2(U-|b|)+2;
 * arclengths are exactly 4U+5+8|a| and 4U+5+4(U-|b|), so at most 12U+5.
 * Throws std::invalid_argument for universe == 0 or elements outside
 * {1..U}.
 */
std::pair<TimeSeries, TimeSeries> continuous_gadget(const SetPair& sp);

/** A 0/1 vector; all vectors of one gadget share the same even length. */
using BitVector = std::vector<int>;

/**
 * Planar pair (P, Q) of point sequences in R^2 for two families of D-bit
 * vectors.  If some a-vector equals some b-vector then the discrete Frechet
 * distance is at most 1; if all pairs differ it is at least 1.11.  Each
 * vector becomes a fixed zig-zag over four anchor points selected by bit
 * value and coordinate parity; Q concatenates the a-gadgets between
 * per-vector separator points, P embeds the b-gadgets in a long walking
 * frame so that |P| = 3Dm + m + 3 and |Q| = k(D+2) for k a-vectors and m
 * b-vectors.  Throws std::invalid_argument for an odd or zero D, an empty
 * family, ragged vector lengths, or entries other than 0/1.
 */
std::pair<PointSequence, PointSequence> discrete_planar_gadget(
    const std::vector<BitVector>& a_vectors,
    const std::vector<BitVector>& b_vectors);

/**
 * Pair (P, Q) in R^(U+2) for a set-disjointness instance.  If the sets
 * intersect then the discrete Frechet distance is at most sqrt(2); if they
 * are disjoint it is at least sqrt(3).  Element i is encoded by the unit
 * vector e_i in the trailing U coordinates; |P| = 2|b|+5 and |Q| = 3|a|.
 * Throws std::invalid_argument for universe == 0, an empty a or b, or
 * elements outside {1..U}.
 */
std::pair<PointSequence, PointSequence> highdim_gadget(const SetPair& sp);

/**
 * A dense sign matrix mapping R^source_dim to R^target_dim.  Applying it
 * preserves pairwise squared distances up to a (1 +- eps) factor of
 * target_dim times the original, with high probability over the random
 * draw (no normalization is applied).  Integer inputs give integer outputs.
 */
class SignProjection {
 public:
  /** Entries drawn independently and uniformly from {-1, +1}. */
  static SignProjection random(std::size_t target_dim, std::size_t source_dim,
                               std::uint64_t seed);

  /** The identity matrix; a diagnostic mode that maps every point to itself. */
  static SignProjection identity(std::size_t dim);

  /** Maps every point of the sequence; points.dim must equal source_dim. */
  PointSequence apply(const PointSequence& points) const;

  std::size_t target_dim() const { return target_dim_; }
  std::size_t source_dim() const { return source_dim_; }

 private:
  SignProjection(std::size_t target_dim, std::size_t source_dim)
      : target_dim_(target_dim), source_dim_(source_dim) {}

  std::size_t target_dim_;
  std::size_t source_dim_;
  std::vector<double> entries_;  // row-major target_dim x source_dim
};

/** Convenience wrapper: apply a fresh random sign matrix to the points. */
PointSequence random_sign_projection(const PointSequence& points,
                                     std::size_t target_dim,
                                     std::uint64_t seed);

}  // namespace tsann
