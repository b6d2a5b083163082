#pragma once

#include <iosfwd>
#include <variant>

#include "tsann/ann_five.hpp"
#include "tsann/ann_two.hpp"
#include "tsann/lsh.hpp"

namespace tsann {

/** Any of the three index types, as stored in an archive. */
using AnyIndex = std::variant<IndexFiveEps, IndexTwoEps, IndexLsh>;

/** The archive kind tag of an index: "five-eps", "two-eps" or "lsh". */
const char* index_kind(const AnyIndex& idx);

/**
 * Writes a line-based text archive: a versioned header naming the index
 * kind and parameters, the corpus (identifiers percent-encoded, values as
 * exact hexadecimal floats), build statistics, and every dictionary entry.
 * Entries are emitted in sorted key order, so saving the same index twice
 * produces byte-identical output.  Throws std::invalid_argument for an
 * empty curve identifier (identifiers must be non-empty to round-trip).
 */
void save_index(std::ostream& out, const AnyIndex& idx);

/**
 * Parses an archive written by save_index and reassembles the index.
 * Malformed input raises std::runtime_error naming the offending line.
 */
AnyIndex load_index(std::istream& in);

}  // namespace tsann
