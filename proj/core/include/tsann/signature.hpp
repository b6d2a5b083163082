#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "tsann/time_series.hpp"

namespace tsann {

/**
 * A delta-signature: a structure-preserving simplification of a curve.  It is
 * a subsequence of the canonicalized source curve that keeps the "large"
 * oscillations (those that matter at resolution delta) and is itself within
 * continuous Frechet distance delta of the source.
 *
 * `indices` are strictly increasing positions into canonicalize(source); the
 * first is always 0 and the last is always the final canonical vertex.
 * `values` caches the canonical values at those positions.  For a constant
 * curve the signature degenerates to the single vertex {0}.
 */
struct Signature {
  std::vector<std::size_t> indices;
  std::vector<double> values;
  double delta = 0.0;
};

/** Result of checking the signature properties; `reason` names the first
 * violated property ("degeneracy", "direction", "edge-length", "range"). */
struct SignatureCheck {
  bool ok = false;
  std::string reason;
  explicit operator bool() const { return ok; }
};

/**
 * Computes a delta-signature of ts.  delta must be >= 0 and finite; with
 * delta = 0 the signature is exactly the canonicalized curve.  The result
 * always passes verify_signature for the same delta.
 */
Signature compute_signature(const TimeSeries& ts, double delta);

/**
 * Checks whether `sig` is a valid delta-signature of ts:
 *  - every interior signature vertex lies strictly outside the segment
 *    spanned by its two signature neighbours;
 *  - on an ascending signature edge the covered piece of the source never
 *    drops by more than 2*delta (symmetrically for descending edges);
 *  - when the signature has at least 3 vertices, interior edges are longer
 *    than 2*delta and the first/last edge longer than delta;
 *  - the values covered by an edge stay inside the edge's value range,
 *    widened by [+-delta] around the first vertex on the first edge and
 *    around the last vertex on the last edge.
 * Malformed indices (not strictly increasing, out of range, not spanning the
 * canonical curve) raise std::invalid_argument.
 */
SignatureCheck verify_signature(const TimeSeries& ts, const Signature& sig,
                                double delta);

/**
 * The signature's own vertex sequence as a curve.  A single-vertex signature
 * (constant source) is returned as the degenerate two-endpoint segment.
 */
TimeSeries signature_curve(const Signature& sig);

}  // namespace tsann
