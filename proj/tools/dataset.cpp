#include "dataset.hpp"

#include <cmath>
#include <fstream>
#include <unordered_set>
#include <utility>

#include <json.hpp>

namespace tsann::tool {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

struct LineReader {
  std::string path;
  std::ifstream in;
  std::size_t line_no = 0;

  explicit LineReader(const std::string& p) : path(p), in(p) {
    if (!in) throw DatasetError(path + ": cannot open");
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw DatasetError(path + " line " + std::to_string(line_no) + ": " + what);
  }

  /** Next non-blank line parsed as a JSON object, or false at end of file. */
  bool next_record(json& record) {
    std::string line;
    while (std::getline(in, line)) {
      ++line_no;
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      try {
        record = json::parse(line);
      } catch (const json::exception& e) {
        fail(e.what());
      }
      if (!record.is_object()) fail("record is not a JSON object");
      return true;
    }
    return false;
  }

  std::string record_id(const json& record,
                        std::unordered_set<std::string>& seen) const {
    if (!record.contains("id") || !record["id"].is_string()) {
      fail("record needs a string \"id\"");
    }
    std::string id = record["id"].get<std::string>();
    if (id.empty()) fail("record \"id\" is empty");
    if (!seen.insert(id).second) fail("duplicate id \"" + id + "\"");
    return id;
  }

  double finite_number(const json& value, const std::string& id) const {
    if (!value.is_number()) fail("non-numeric value in record \"" + id + "\"");
    const double x = value.get<double>();
    if (!std::isfinite(x)) fail("non-finite value in record \"" + id + "\"");
    return x;
  }
};

std::ofstream open_for_write(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw DatasetError(path + ": cannot open for writing");
  return out;
}

void finish_write(std::ofstream& out, const std::string& path) {
  out.flush();
  if (!out) throw DatasetError(path + ": write failed");
}

}  // namespace

Corpus read_series_dataset(const std::string& path) {
  LineReader reader(path);
  Corpus corpus;
  std::unordered_set<std::string> seen;
  json record;
  while (reader.next_record(record)) {
    CorpusEntry entry;
    entry.id = reader.record_id(record, seen);
    if (record.contains("points")) {
      reader.fail("record \"" + entry.id +
                  "\" is multi-dimensional; this command needs 1-d \"values\"");
    }
    if (!record.contains("values") || !record["values"].is_array()) {
      reader.fail("record \"" + entry.id + "\" needs a \"values\" array");
    }
    for (const json& v : record["values"]) {
      entry.curve.values.push_back(reader.finite_number(v, entry.id));
    }
    if (entry.curve.empty()) {
      reader.fail("record \"" + entry.id + "\" has an empty \"values\" list");
    }
    corpus.push_back(std::move(entry));
  }
  return corpus;
}

void write_series_dataset(const std::string& path, const Corpus& corpus) {
  std::ofstream out = open_for_write(path);
  for (const CorpusEntry& entry : corpus) {
    ordered_json record;
    record["id"] = entry.id;
    record["values"] = entry.curve.values;
    out << record.dump() << '\n';
  }
  finish_write(out, path);
}

std::vector<PointRecord> read_points_dataset(const std::string& path) {
  LineReader reader(path);
  std::vector<PointRecord> records;
  std::unordered_set<std::string> seen;
  json record;
  while (reader.next_record(record)) {
    PointRecord rec;
    rec.id = reader.record_id(record, seen);
    if (!record.contains("dim") || !record["dim"].is_number_unsigned() ||
        record["dim"].get<std::uint64_t>() == 0) {
      reader.fail("record \"" + rec.id + "\" needs a positive \"dim\"");
    }
    rec.points.dim = record["dim"].get<std::uint64_t>();
    if (!record.contains("points") || !record["points"].is_array()) {
      reader.fail("record \"" + rec.id + "\" needs a \"points\" array");
    }
    for (const json& pt : record["points"]) {
      if (!pt.is_array() || pt.size() != rec.points.dim) {
        reader.fail("record \"" + rec.id + "\" has a point of wrong dimension");
      }
      std::vector<double> coords;
      coords.reserve(rec.points.dim);
      for (const json& v : pt) coords.push_back(reader.finite_number(v, rec.id));
      rec.points.points.push_back(std::move(coords));
    }
    if (rec.points.points.empty()) {
      reader.fail("record \"" + rec.id + "\" has an empty \"points\" list");
    }
    records.push_back(std::move(rec));
  }
  return records;
}

void write_points_dataset(const std::string& path,
                          const std::vector<PointRecord>& records) {
  std::ofstream out = open_for_write(path);
  for (const PointRecord& rec : records) {
    ordered_json record;
    record["id"] = rec.id;
    record["dim"] = rec.points.dim;
    record["points"] = rec.points.points;
    out << record.dump() << '\n';
  }
  finish_write(out, path);
}

}  // namespace tsann::tool
