#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "tsann/time_series.hpp"

namespace tsann {

/** One stored input curve with its external identifier. */
struct CorpusEntry {
  std::string id;
  TimeSeries curve;
};

using Corpus = std::vector<CorpusEntry>;

/** Outcome of a single index lookup batch. */
struct QueryResult {
  std::optional<std::string> match;  // identifier of the reported curve
  std::size_t probes = 0;            // dictionary lookups performed
};

/**
 * Thrown when a query would require enumerating more dictionary probes than
 * the configured hard ceiling allows.
 */
class QueryBudgetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/** Shared construction parameters of the dictionary-based indexes. */
struct DictionaryParams {
  double epsilon = 1.0;  // approximation knob, in (0, 1]
  std::size_t k = 1;     // complexity budget for stored keys, >= 1
  double r = 1.0;        // query radius the index certifies, > 0
};

/** Per-curve bookkeeping recorded while building a dictionary index. */
struct CurveBuildStats {
  std::uint64_t generated = 0;       // enumerated grid sequences (saturating)
  std::uint64_t kept = 0;            // distinct keys that passed the filter
  std::size_t canonical_length = 0;  // |V(curve / r)|
  std::size_t signature_length = 0;  // |V(1-signature of curve / r)|
  bool skipped = false;              // curve contributed no keys
};

}  // namespace tsann
