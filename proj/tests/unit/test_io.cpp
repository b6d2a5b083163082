#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>

#include "dataset.hpp"
#include "helpers.hpp"
#include "tsann/archive.hpp"
#include "tsann/time_series.hpp"

using namespace tsann;

namespace {

std::string save_to_string(const AnyIndex& idx) {
  std::ostringstream out;
  save_index(out, idx);
  return out.str();
}

AnyIndex load_from_string(const std::string& text) {
  std::istringstream in(text);
  return load_index(in);
}

Corpus sample_corpus() {
  return {{"ramp", TimeSeries{0.0, 10.0}},
          {"vee", TimeSeries{3.0, -2.0, 5.0}},
          {"flat", TimeSeries{1.5}}};
}

/** Temporary file that removes itself; contents written on construction. */
struct TempFile {
  std::string path;
  explicit TempFile(const std::string& contents = "") {
    static int counter = 0;
    path = "tsann_test_" + std::to_string(counter++) + ".tmp";
    std::ofstream out(path, std::ios::binary);
    out << contents;
  }
  ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("archives of every index kind round-trip byte-identically") {
  DictionaryParams dict_params{1.0, 3, 2.0};
  LshParams lsh_params;
  lsh_params.k = 3;
  lsh_params.r = 2.0;
  lsh_params.seed = 11;

  AnyIndex indexes[] = {
      AnyIndex(IndexFiveEps::build(sample_corpus(), dict_params)),
      AnyIndex(IndexTwoEps::build(sample_corpus(), dict_params)),
      AnyIndex(IndexLsh::build(sample_corpus(), lsh_params)),
  };
  for (const AnyIndex& idx : indexes) {
    std::string first = save_to_string(idx);
    AnyIndex reloaded = load_from_string(first);
    CHECK(std::string(index_kind(reloaded)) == index_kind(idx));
    std::string second = save_to_string(reloaded);
    CHECK(first == second);
  }
}

TEST_CASE("a reloaded index answers queries identically") {
  std::mt19937_64 rng(173);
  DictionaryParams params{1.0, 3, 1.5};
  AnyIndex built(IndexFiveEps::build(sample_corpus(), params));
  AnyIndex reloaded = load_from_string(save_to_string(built));
  const auto& a = std::get<IndexFiveEps>(built);
  const auto& b = std::get<IndexFiveEps>(reloaded);
  CHECK(a.dictionary() == b.dictionary());
  for (int trial = 0; trial < 50; ++trial) {
    TimeSeries tau = test::random_series(rng, 1 + rng() % 5, -5.0, 15.0);
    QueryResult ra = a.query(tau);
    QueryResult rb = b.query(tau);
    CHECK(ra.match == rb.match);
    CHECK(ra.probes == rb.probes);
  }
}

TEST_CASE("identifiers with spaces, percent signs and bytes round-trip") {
  Corpus corpus = {{"with space", TimeSeries{0.0, 1.0}},
                   {"percent%20sign", TimeSeries{1.0, 2.0}},
                   {"tab\tand\nnewline", TimeSeries{2.0, 3.0}},
                   {"caf\xc3\xa9", TimeSeries{3.0, 4.0}}};
  DictionaryParams params{1.0, 2, 1.0};
  AnyIndex built(IndexFiveEps::build(corpus, params));
  AnyIndex reloaded = load_from_string(save_to_string(built));
  const auto& loaded_corpus = std::get<IndexFiveEps>(reloaded).corpus();
  REQUIRE(loaded_corpus.size() == corpus.size());
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    CHECK(loaded_corpus[i].id == corpus[i].id);
    CHECK(loaded_corpus[i].curve == corpus[i].curve);
  }
}

TEST_CASE("an empty identifier cannot be archived") {
  Corpus corpus = {{"", TimeSeries{0.0, 1.0}}};
  AnyIndex built(IndexFiveEps::build(corpus, {1.0, 2, 1.0}));
  std::ostringstream out;
  CHECK_THROWS_AS(save_index(out, built), std::invalid_argument);
}

TEST_CASE("archived values survive exactly, including awkward doubles") {
  Corpus corpus = {
      {"awkward", TimeSeries{0.1, 1.0 / 3.0, -2.5e-308, 1e308, -0.0}}};
  LshParams params;
  params.k = 8;
  params.r = 0.125;
  AnyIndex built(IndexLsh::build(corpus, params));
  AnyIndex reloaded = load_from_string(save_to_string(built));
  const auto& loaded = std::get<IndexLsh>(reloaded);
  CHECK(loaded.corpus()[0].curve == corpus[0].curve);
  CHECK(loaded.params().r == 0.125);
  CHECK(loaded.shifts() == std::get<IndexLsh>(built).shifts());
}

TEST_CASE("malformed archives report the offending line") {
  AnyIndex built(IndexFiveEps::build(sample_corpus(), {1.0, 2, 2.0}));
  std::string good = save_to_string(built);

  SUBCASE("wrong magic") {
    std::string bad = "nonsense 1\n" + good.substr(good.find('\n') + 1);
    CHECK_THROWS_WITH_AS(load_from_string(bad),
                         doctest::Contains("archive line 1"),
                         std::runtime_error);
  }
  SUBCASE("unsupported version") {
    std::string bad = good;
    bad.replace(0, bad.find('\n'), "tsannidx 2");
    CHECK_THROWS_AS(load_from_string(bad), std::runtime_error);
  }
  SUBCASE("truncated file") {
    std::string bad = good.substr(0, good.rfind("end"));
    CHECK_THROWS_AS(load_from_string(bad), std::runtime_error);
  }
  SUBCASE("garbled number") {
    std::string bad = good;
    std::size_t at = bad.find("stats");
    bad.replace(at + 6, 1, "x");
    CHECK_THROWS_AS(load_from_string(bad), std::runtime_error);
  }
  SUBCASE("double spacing") {
    std::string bad = good;
    bad.insert(bad.find("curve") + 5, " ");
    CHECK_THROWS_AS(load_from_string(bad), std::runtime_error);
  }
}

TEST_CASE("series datasets round-trip") {
  Corpus corpus = sample_corpus();
  corpus.push_back({"spaced id", TimeSeries{-1.0, 0.25, 1e-9}});
  TempFile file;
  tool::write_series_dataset(file.path, corpus);
  Corpus reread = tool::read_series_dataset(file.path);
  REQUIRE(reread.size() == corpus.size());
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    CHECK(reread[i].id == corpus[i].id);
    CHECK(reread[i].curve == corpus[i].curve);
  }
}

TEST_CASE("series datasets skip blank lines") {
  TempFile file("\n{\"id\":\"a\",\"values\":[1,2]}\n\n"
                "{\"id\":\"b\",\"values\":[3]}\n\n");
  Corpus corpus = tool::read_series_dataset(file.path);
  REQUIRE(corpus.size() == 2);
  CHECK(corpus[0].id == "a");
  CHECK(corpus[1].curve == TimeSeries{3.0});
}

TEST_CASE("series dataset errors name the line and record") {
  SUBCASE("broken JSON") {
    TempFile file("{\"id\":\"a\",\"values\":[1,2]}\nnot json\n");
    CHECK_THROWS_WITH_AS(tool::read_series_dataset(file.path),
                         doctest::Contains("line 2"), tool::DatasetError);
  }
  SUBCASE("empty values") {
    TempFile file("{\"id\":\"x\",\"values\":[]}\n");
    CHECK_THROWS_WITH_AS(tool::read_series_dataset(file.path),
                         doctest::Contains("\"x\""), tool::DatasetError);
  }
  SUBCASE("duplicate id") {
    TempFile file("{\"id\":\"a\",\"values\":[1]}\n"
                  "{\"id\":\"a\",\"values\":[2]}\n");
    CHECK_THROWS_AS(tool::read_series_dataset(file.path), tool::DatasetError);
  }
  SUBCASE("non-finite value") {
    TempFile file("{\"id\":\"a\",\"values\":[1e999]}\n");
    CHECK_THROWS_AS(tool::read_series_dataset(file.path), tool::DatasetError);
  }
  SUBCASE("multi-dimensional record in a series file") {
    TempFile file("{\"id\":\"a\",\"dim\":2,\"points\":[[0,0]]}\n");
    CHECK_THROWS_WITH_AS(tool::read_series_dataset(file.path),
                         doctest::Contains("values"), tool::DatasetError);
  }
  SUBCASE("missing file") {
    CHECK_THROWS_AS(tool::read_series_dataset("definitely_not_here.jsonl"),
                    tool::DatasetError);
  }
}

TEST_CASE("point datasets round-trip") {
  std::vector<tool::PointRecord> records;
  records.push_back({"P", PointSequence{2, {{0.0, 1.0}, {2.0, -3.5}}}});
  records.push_back({"Q", PointSequence{2, {{1.61, 0.5}}}});
  TempFile file;
  tool::write_points_dataset(file.path, records);
  auto reread = tool::read_points_dataset(file.path);
  REQUIRE(reread.size() == 2);
  CHECK(reread[0].id == "P");
  CHECK(reread[0].points.dim == 2);
  CHECK(reread[0].points.points == records[0].points.points);
  CHECK(reread[1].points.points == records[1].points.points);
}

TEST_CASE("point dataset errors are reported") {
  SUBCASE("ragged point") {
    TempFile file("{\"id\":\"P\",\"dim\":2,\"points\":[[0,0],[1]]}\n");
    CHECK_THROWS_AS(tool::read_points_dataset(file.path), tool::DatasetError);
  }
  SUBCASE("series record in a points file") {
    TempFile file("{\"id\":\"P\",\"values\":[1,2]}\n");
    CHECK_THROWS_AS(tool::read_points_dataset(file.path), tool::DatasetError);
  }
}
