#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "tsann/corpus.hpp"
#include "tsann/frechet.hpp"

namespace tsann::tool {

/** Error in a dataset file; the message names the file and line. */
class DatasetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/**
 * Reads a JSON-lines dataset: one object {"id": string, "values": [numbers]}
 * per line, blank lines ignored.  Identifiers must be non-empty and unique;
 * values must be non-empty lists of finite reals.  Violations raise
 * DatasetError naming the file, line and record.
 */
Corpus read_series_dataset(const std::string& path);

/** Writes a corpus in the same JSON-lines format, one record per line. */
void write_series_dataset(const std::string& path, const Corpus& corpus);

/** One multi-dimensional record, as exported for the planar and
 * high-dimensional gadget families. */
struct PointRecord {
  std::string id;
  PointSequence points;
};

/**
 * Reads a JSON-lines dataset of multi-dimensional records
 * {"id": string, "dim": integer, "points": [[numbers]]}.
 */
std::vector<PointRecord> read_points_dataset(const std::string& path);

/** Writes multi-dimensional records, one JSON object per line. */
void write_points_dataset(const std::string& path,
                          const std::vector<PointRecord>& records);

}  // namespace tsann::tool
