#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "dataset.hpp"
#include "tsann/ann_five.hpp"
#include "tsann/ann_two.hpp"
#include "tsann/archive.hpp"
#include "tsann/detail/build_common.hpp"
#include "tsann/gadgets.hpp"
#include "tsann/lsh.hpp"
#include "tsann/oracle.hpp"

namespace {

using nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

/** Options shared by the index-constructing subcommands (build, bench). */
struct IndexOpts {
  std::string kind;
  double epsilon = 1.0;
  std::size_t k = 1;
  double radius = 1.0;
  double width = 0;
  std::size_t reps = 0;
  std::uint64_t seed = 0;
  unsigned threads = 1;
};

void add_index_options(CLI::App* cmd, IndexOpts& opts) {
  cmd->add_option("--kind", opts.kind, "Index kind")
      ->required()
      ->check(CLI::IsMember({"five-eps", "two-eps", "lsh"}));
  cmd->add_option("--epsilon", opts.epsilon,
                  "Approximation knob in (0,1]; five-eps/two-eps only")
      ->capture_default_str();
  cmd->add_option("--k", opts.k, "Complexity budget for stored keys")
      ->required();
  cmd->add_option("--radius", opts.radius,
                  "Query radius the index certifies")
      ->required();
  cmd->add_option("--width", opts.width,
                  "lsh only: grid width in scaled units (0 = default 12k)");
  cmd->add_option("--reps", opts.reps,
                  "lsh only: repetitions (0 = default ceil(2*log2(n+1)))");
  cmd->add_option("--seed", opts.seed, "Seed for all randomness")
      ->capture_default_str();
  cmd->add_option("--threads", opts.threads, "Worker threads")
      ->capture_default_str();
}

tsann::AnyIndex build_any(const tsann::Corpus& corpus, const IndexOpts& o) {
  if (o.kind == "lsh") {
    return tsann::IndexLsh::build(
        corpus, tsann::LshParams{o.k, o.radius, o.width, o.reps, o.seed},
        o.threads);
  }
  const tsann::DictionaryParams params{o.epsilon, o.k, o.radius};
  if (o.kind == "five-eps") {
    return tsann::IndexFiveEps::build(corpus, params, o.threads);
  }
  return tsann::IndexTwoEps::build(corpus, params, o.threads);
}

const tsann::Corpus& index_corpus(const tsann::AnyIndex& idx) {
  return std::visit(
      [](const auto& i) -> const tsann::Corpus& { return i.corpus(); }, idx);
}

tsann::QueryResult query_any(const tsann::AnyIndex& idx,
                             const tsann::TimeSeries& tau) {
  return std::visit([&](const auto& i) { return i.query(tau); }, idx);
}

bool guarantee_any(const tsann::AnyIndex& idx, const tsann::TimeSeries& tau) {
  return std::visit(
      [&](const auto& i) { return i.completeness_guaranteed(tau); }, idx);
}

double index_radius(const tsann::AnyIndex& idx) {
  return std::visit([](const auto& i) { return i.params().r; }, idx);
}

/** The multiplier c in the index's "returned curve is within c*r" promise. */
double approximation_factor(const tsann::AnyIndex& idx) {
  if (const auto* five = std::get_if<tsann::IndexFiveEps>(&idx)) {
    return 5.0 + five->params().epsilon;
  }
  if (const auto* two = std::get_if<tsann::IndexTwoEps>(&idx)) {
    return 2.0 + two->params().epsilon;
  }
  return 2.0 * std::get<tsann::IndexLsh>(idx).params().w + 1.0;
}

std::uint64_t lsh_seed_or_zero(const tsann::AnyIndex& idx) {
  if (const auto* lsh = std::get_if<tsann::IndexLsh>(&idx)) {
    return lsh->params().seed;
  }
  return 0;
}

ordered_json index_info(const tsann::AnyIndex& idx) {
  ordered_json info;
  info["kind"] = tsann::index_kind(idx);
  info["corpus_size"] = index_corpus(idx).size();
  if (const auto* lsh = std::get_if<tsann::IndexLsh>(&idx)) {
    info["k"] = lsh->params().k;
    info["radius"] = lsh->params().r;
    info["width"] = lsh->params().w;
    info["reps"] = lsh->params().s;
    info["seed"] = lsh->params().seed;
    ordered_json sizes = ordered_json::array();
    for (const auto& table : lsh->tables()) sizes.push_back(table.size());
    info["table_sizes"] = std::move(sizes);
    return info;
  }
  const auto fill = [&info](const auto& index) {
    info["epsilon"] = index.params().epsilon;
    info["k"] = index.params().k;
    info["radius"] = index.params().r;
    info["grid_width"] = index.grid_width();
    info["dictionary_size"] = index.dictionary().size();
  };
  if (const auto* five = std::get_if<tsann::IndexFiveEps>(&idx)) {
    fill(*five);
  } else {
    fill(std::get<tsann::IndexTwoEps>(idx));
  }
  return info;
}

ordered_json curve_stats_json(const tsann::Corpus& corpus,
                              const std::vector<tsann::CurveBuildStats>& stats) {
  ordered_json rows = ordered_json::array();
  for (std::size_t i = 0; i < stats.size(); ++i) {
    ordered_json row;
    row["id"] = corpus[i].id;
    row["generated"] = stats[i].generated;
    row["kept"] = stats[i].kept;
    row["canonical_length"] = stats[i].canonical_length;
    row["signature_length"] = stats[i].signature_length;
    row["skipped"] = stats[i].skipped;
    rows.push_back(std::move(row));
  }
  return rows;
}

const std::vector<tsann::CurveBuildStats>* any_build_stats(
    const tsann::AnyIndex& idx) {
  return std::visit(
      [](const auto& i) { return &i.build_stats(); }, idx);
}

// ---------------------------------------------------------------- build ----

int run_build(const IndexOpts& opts, const std::string& dataset_path,
              const std::string& out_path) {
  const tsann::Corpus corpus = tsann::tool::read_series_dataset(dataset_path);
  const auto t0 = Clock::now();
  const tsann::AnyIndex idx = build_any(corpus, opts);
  const double build_ms = elapsed_ms(t0);

  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw std::runtime_error(out_path + ": cannot open for writing");
  tsann::save_index(out, idx);
  out.flush();
  if (!out) throw std::runtime_error(out_path + ": write failed");

  std::uint64_t entries = 0;
  if (const auto* lsh = std::get_if<tsann::IndexLsh>(&idx)) {
    for (const auto& table : lsh->tables()) entries += table.size();
  } else if (const auto* five = std::get_if<tsann::IndexFiveEps>(&idx)) {
    entries = five->dictionary().size();
  } else {
    entries = std::get<tsann::IndexTwoEps>(idx).dictionary().size();
  }
  std::uint64_t max_kept = 0;
  std::size_t skipped = 0;
  for (const tsann::CurveBuildStats& st : *any_build_stats(idx)) {
    max_kept = std::max(max_kept, st.kept);
    if (st.skipped) ++skipped;
  }
  std::cout << "kind=" << tsann::index_kind(idx) << " curves=" << corpus.size()
            << " entries=" << entries << " max_kept=" << max_kept
            << " skipped=" << skipped << " build_ms=" << build_ms << '\n';
  return 0;
}

// ---------------------------------------------------------------- query ----

struct QueryRow {
  std::string id;
  std::string result;  // HIT / NO / BUDGET
  std::optional<std::string> match;
  std::size_t probes = 0;
  double time_ms = 0;
  bool guaranteed = false;
  std::string verdict;  // empty when not validated
  double matched_distance = std::numeric_limits<double>::quiet_NaN();
  double oracle_best = std::numeric_limits<double>::quiet_NaN();
};

struct QuerySummary {
  std::size_t hits = 0;
  std::size_t misses = 0;
  std::size_t budget_errors = 0;
  std::size_t pass = 0;
  std::size_t fail_soundness = 0;
  std::size_t fail_completeness = 0;
  std::size_t skipped_precondition = 0;
};

QuerySummary summarize(const std::vector<QueryRow>& rows) {
  QuerySummary s;
  for (const QueryRow& row : rows) {
    if (row.result == "HIT") ++s.hits;
    if (row.result == "NO") ++s.misses;
    if (row.result == "BUDGET") ++s.budget_errors;
    if (row.verdict == "PASS") ++s.pass;
    if (row.verdict == "FAIL(soundness)") ++s.fail_soundness;
    if (row.verdict == "FAIL(completeness)") ++s.fail_completeness;
    if (row.verdict == "SKIPPED-PRECONDITION") ++s.skipped_precondition;
  }
  return s;
}

void write_query_report(const std::string& path, const tsann::AnyIndex& idx,
                        const std::vector<QueryRow>& rows, double c, double r,
                        bool validated) {
  ordered_json report;
  report["command"] = "query";
  report["index"] = index_info(idx);
  report["approximation_factor"] = c;
  report["radius"] = r;
  report["seed"] = lsh_seed_or_zero(idx);
  report["validated"] = validated;
  if (!std::holds_alternative<tsann::IndexLsh>(idx)) {
    report["curves"] = curve_stats_json(index_corpus(idx), *any_build_stats(idx));
  }
  ordered_json queries = ordered_json::array();
  for (const QueryRow& row : rows) {
    ordered_json q;
    q["id"] = row.id;
    q["result"] = row.result;
    if (row.match) q["match"] = *row.match;
    q["probes"] = row.probes;
    q["time_ms"] = row.time_ms;
    if (!row.verdict.empty()) {
      q["verdict"] = row.verdict;
      q["completeness_guaranteed"] = row.guaranteed;
      if (!std::isnan(row.matched_distance)) {
        q["matched_distance"] = row.matched_distance;
      }
      if (!std::isnan(row.oracle_best) && std::isfinite(row.oracle_best)) {
        q["oracle_best"] = row.oracle_best;
      }
    }
    queries.push_back(std::move(q));
  }
  report["queries"] = std::move(queries);
  const QuerySummary s = summarize(rows);
  report["summary"] = {{"hits", s.hits},
                       {"misses", s.misses},
                       {"budget_errors", s.budget_errors},
                       {"pass", s.pass},
                       {"fail_soundness", s.fail_soundness},
                       {"fail_completeness", s.fail_completeness},
                       {"skipped_precondition", s.skipped_precondition}};
  std::ofstream out(path);
  if (!out) throw std::runtime_error(path + ": cannot open for writing");
  out << report.dump(2) << '\n';
  out.flush();
  if (!out) throw std::runtime_error(path + ": write failed");
}

int run_query(const std::string& index_path, const std::string& queries_path,
              bool do_validate, const std::string& report_path,
              unsigned threads) {
  std::ifstream in(index_path, std::ios::binary);
  if (!in) throw std::runtime_error(index_path + ": cannot open");
  const tsann::AnyIndex idx = tsann::load_index(in);
  const tsann::Corpus queries = tsann::tool::read_series_dataset(queries_path);
  const tsann::Corpus& corpus = index_corpus(idx);
  const double c = approximation_factor(idx);
  const double r = index_radius(idx);

  std::vector<QueryRow> rows(queries.size());
  tsann::detail::parallel_for_index(
      queries.size(), threads, [&](std::size_t i) {
        QueryRow& row = rows[i];
        row.id = queries[i].id;
        const auto t0 = Clock::now();
        tsann::QueryResult res;
        bool budget = false;
        try {
          res = query_any(idx, queries[i].curve);
        } catch (const tsann::QueryBudgetError&) {
          budget = true;
        }
        row.time_ms = elapsed_ms(t0);
        if (budget) {
          row.result = "BUDGET";
          return;
        }
        row.match = res.match;
        row.probes = res.probes;
        row.result = res.match ? "HIT" : "NO";
        if (do_validate) {
          row.guaranteed = guarantee_any(idx, queries[i].curve);
          const tsann::OracleAnswer oracle =
              tsann::scan(corpus, queries[i].curve, r, 1e-9);
          row.oracle_best = oracle.best_distance;
          const tsann::ValidationResult vr = tsann::validate(
              corpus, queries[i].curve,
              tsann::IndexAnswer{row.match, row.guaranteed}, oracle, c, r);
          row.verdict = tsann::to_string(vr.outcome);
          row.matched_distance = vr.matched_distance;
        }
      });

  std::sort(rows.begin(), rows.end(),
            [](const QueryRow& a, const QueryRow& b) { return a.id < b.id; });

  for (const QueryRow& row : rows) {
    std::cout << row.id << ' ' << row.result;
    if (row.match) std::cout << ' ' << *row.match;
    if (!row.verdict.empty()) std::cout << ' ' << row.verdict;
    std::cout << '\n';
  }
  const QuerySummary s = summarize(rows);
  std::cout << "queries=" << rows.size() << " hits=" << s.hits
            << " misses=" << s.misses << " budget_errors=" << s.budget_errors;
  if (do_validate) {
    std::cout << " pass=" << s.pass << " fail_soundness=" << s.fail_soundness
              << " fail_completeness=" << s.fail_completeness
              << " skipped_precondition=" << s.skipped_precondition;
  }
  std::cout << '\n';

  if (!report_path.empty()) {
    write_query_report(report_path, idx, rows, c, r, do_validate);
  }
  return (s.fail_soundness + s.fail_completeness) > 0 ? 1 : 0;
}

// -------------------------------------------------------------- gadgets ----

std::set<std::size_t> parse_set(const std::string& text, const char* flag) {
  std::set<std::size_t> out;
  std::size_t start = 0;
  while (start < text.size()) {
    const std::size_t comma = std::min(text.find(',', start), text.size());
    const std::string token = text.substr(start, comma - start);
    std::size_t used = 0;
    unsigned long long value = 0;
    try {
      value = std::stoull(token, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != token.size() || token.empty()) {
      throw std::runtime_error(std::string(flag) + ": bad element '" + token +
                               "' (want comma-separated positive integers)");
    }
    out.insert(static_cast<std::size_t>(value));
    start = comma + 1;
  }
  return out;
}

std::vector<tsann::BitVector> parse_bit_vectors(const std::string& text,
                                                const char* flag) {
  std::vector<tsann::BitVector> out;
  std::size_t start = 0;
  while (start < text.size()) {
    const std::size_t comma = std::min(text.find(',', start), text.size());
    const std::string token = text.substr(start, comma - start);
    tsann::BitVector bits;
    bits.reserve(token.size());
    for (char ch : token) {
      if (ch != '0' && ch != '1') {
        throw std::runtime_error(std::string(flag) + ": bad vector '" + token +
                                 "' (want comma-separated 0/1 strings)");
      }
      bits.push_back(ch - '0');
    }
    out.push_back(std::move(bits));
    start = comma + 1;
  }
  return out;
}

ordered_json set_json(const std::set<std::size_t>& s) {
  ordered_json arr = ordered_json::array();
  for (std::size_t v : s) arr.push_back(v);
  return arr;
}

struct GadgetOpts {
  std::string family;
  std::size_t universe = 0;
  std::string set_a;
  std::string set_b;
  std::string bits_a;
  std::string bits_b;
  std::string out;
  std::string manifest;
};

int run_gadgets(const GadgetOpts& g) {
  const std::string manifest_path =
      g.manifest.empty() ? g.out + ".manifest.json" : g.manifest;
  ordered_json manifest;
  manifest["family"] = g.family;
  if (g.family == "continuous") {
    const tsann::SetPair sp{g.universe, parse_set(g.set_a, "--set-a"),
                            parse_set(g.set_b, "--set-b")};
    const auto [x, y] = tsann::continuous_gadget(sp);
    tsann::tool::write_series_dataset(g.out, tsann::Corpus{{"x", x}, {"y", y}});
    bool intersecting = false;
    for (std::size_t e : sp.a) intersecting = intersecting || sp.b.count(e) > 0;
    manifest["universe"] = sp.universe;
    manifest["a"] = set_json(sp.a);
    manifest["b"] = set_json(sp.b);
    manifest["records"] = {"x", "y"};
    manifest["metric"] = "continuous-frechet";
    manifest["intersecting"] = intersecting;
    manifest["gap"] = "≤1 vs ≥2";
    manifest["guarantee"] = intersecting ? "distance ≥ 2" : "distance ≤ 1";
  } else if (g.family == "planar-discrete") {
    const auto a_vectors = parse_bit_vectors(g.bits_a, "--bits-a");
    const auto b_vectors = parse_bit_vectors(g.bits_b, "--bits-b");
    const auto [P, Q] = tsann::discrete_planar_gadget(a_vectors, b_vectors);
    tsann::tool::write_points_dataset(g.out, {{"P", P}, {"Q", Q}});
    bool common = false;
    for (const auto& a : a_vectors) {
      for (const auto& b : b_vectors) common = common || a == b;
    }
    manifest["a_vectors"] = a_vectors;
    manifest["b_vectors"] = b_vectors;
    manifest["records"] = {"P", "Q"};
    manifest["metric"] = "discrete-frechet";
    manifest["common_vector"] = common;
    manifest["gap"] = "≤1 vs ≥1.11";
    manifest["guarantee"] = common ? "distance ≤ 1" : "distance ≥ 1.11";
  } else {  // highdim
    const tsann::SetPair sp{g.universe, parse_set(g.set_a, "--set-a"),
                            parse_set(g.set_b, "--set-b")};
    const auto [P, Q] = tsann::highdim_gadget(sp);
    tsann::tool::write_points_dataset(g.out, {{"P", P}, {"Q", Q}});
    bool intersecting = false;
    for (std::size_t e : sp.a) intersecting = intersecting || sp.b.count(e) > 0;
    manifest["universe"] = sp.universe;
    manifest["a"] = set_json(sp.a);
    manifest["b"] = set_json(sp.b);
    manifest["records"] = {"P", "Q"};
    manifest["metric"] = "discrete-frechet";
    manifest["intersecting"] = intersecting;
    manifest["gap"] = "≤√2 vs ≥√3";
    manifest["guarantee"] = intersecting ? "distance ≤ √2" : "distance ≥ √3";
  }
  std::ofstream out(manifest_path);
  if (!out) throw std::runtime_error(manifest_path + ": cannot open for writing");
  out << manifest.dump(2) << '\n';
  out.flush();
  if (!out) throw std::runtime_error(manifest_path + ": write failed");
  std::cout << "wrote " << g.out << " and " << manifest_path << '\n';
  return 0;
}

// ---------------------------------------------------------------- bench ----

double percentile(std::vector<double> sorted, double p) {
  if (sorted.empty()) return 0;
  const double pos = p * static_cast<double>(sorted.size() - 1);
  const std::size_t lo = static_cast<std::size_t>(pos);
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] * (1 - frac) + sorted[hi] * frac;
}

int run_bench(const IndexOpts& opts, const std::string& dataset_path,
              const std::string& queries_path,
              const std::string& report_path) {
  const tsann::Corpus corpus = tsann::tool::read_series_dataset(dataset_path);
  const tsann::Corpus queries = tsann::tool::read_series_dataset(queries_path);
  const auto t0 = Clock::now();
  const tsann::AnyIndex idx = build_any(corpus, opts);
  const double build_ms = elapsed_ms(t0);

  std::vector<double> times;
  times.reserve(queries.size());
  std::size_t hits = 0;
  std::size_t budget_errors = 0;
  std::uint64_t probes = 0;
  for (const tsann::CorpusEntry& query : queries) {
    const auto q0 = Clock::now();
    try {
      const tsann::QueryResult res = query_any(idx, query.curve);
      if (res.match) ++hits;
      probes += res.probes;
    } catch (const tsann::QueryBudgetError&) {
      ++budget_errors;
    }
    times.push_back(elapsed_ms(q0));
  }
  std::vector<double> sorted = times;
  std::sort(sorted.begin(), sorted.end());
  double total = 0;
  for (double t : times) total += t;

  ordered_json report;
  report["command"] = "bench";
  report["index"] = index_info(idx);
  report["build_ms"] = build_ms;
  report["queries"] = queries.size();
  report["hits"] = hits;
  report["budget_errors"] = budget_errors;
  report["probes_total"] = probes;
  report["query_ms"] = {
      {"mean", queries.empty() ? 0.0 : total / static_cast<double>(queries.size())},
      {"p50", percentile(sorted, 0.50)},
      {"p95", percentile(sorted, 0.95)},
      {"max", sorted.empty() ? 0.0 : sorted.back()}};
  std::cout << report.dump(2) << '\n';
  if (!report_path.empty()) {
    std::ofstream out(report_path);
    if (!out) throw std::runtime_error(report_path + ": cannot open for writing");
    out << report.dump(2) << '\n';
    out.flush();
    if (!out) throw std::runtime_error(report_path + ": write failed");
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Approximate near-neighbour search for one-dimensional time series "
      "under the continuous Frechet distance"};
  app.require_subcommand(1);

  IndexOpts build_opts;
  std::string build_dataset;
  std::string build_out;
  CLI::App* build = app.add_subcommand(
      "build", "Build an index over a dataset and write its archive");
  build->add_option("dataset", build_dataset, "JSON-lines dataset of curves")
      ->required();
  add_index_options(build, build_opts);
  build->add_option("--out", build_out, "Archive output path")->required();

  std::string query_index;
  std::string query_queries;
  bool query_validate = false;
  std::string query_report;
  unsigned query_threads = 1;
  CLI::App* query = app.add_subcommand(
      "query", "Run queries from a dataset against a stored index");
  query->add_option("index", query_index, "Index archive path")->required();
  query->add_option("queries", query_queries, "JSON-lines dataset of queries")
      ->required();
  query->add_flag("--validate", query_validate,
                  "Check every answer against the exhaustive oracle");
  query->add_option("--report", query_report, "Write a JSON report here");
  query->add_option("--threads", query_threads, "Worker threads")
      ->capture_default_str();

  GadgetOpts gadget_opts;
  CLI::App* gadgets = app.add_subcommand(
      "gadgets", "Export a hard-instance curve pair plus its manifest");
  gadgets->add_option("--family", gadget_opts.family, "Gadget family")
      ->required()
      ->check(CLI::IsMember({"continuous", "planar-discrete", "highdim"}));
  gadgets->add_option("--universe", gadget_opts.universe,
                      "Universe size (continuous, highdim)");
  gadgets->add_option("--set-a", gadget_opts.set_a,
                      "First set, e.g. 1,3,4 (continuous, highdim)");
  gadgets->add_option("--set-b", gadget_opts.set_b,
                      "Second set (continuous, highdim)");
  gadgets->add_option("--bits-a", gadget_opts.bits_a,
                      "First vector family, e.g. 0101,0011 (planar-discrete)");
  gadgets->add_option("--bits-b", gadget_opts.bits_b,
                      "Second vector family (planar-discrete)");
  gadgets->add_option("--out", gadget_opts.out, "Dataset output path")
      ->required();
  gadgets->add_option("--manifest", gadget_opts.manifest,
                      "Manifest path (default: <out>.manifest.json)");

  IndexOpts bench_opts;
  std::string bench_dataset;
  std::string bench_queries;
  std::string bench_report;
  CLI::App* bench = app.add_subcommand(
      "bench", "Build in memory and measure build/query timings");
  bench->add_option("dataset", bench_dataset, "JSON-lines dataset of curves")
      ->required();
  bench->add_option("queries", bench_queries, "JSON-lines dataset of queries")
      ->required();
  add_index_options(bench, bench_opts);
  bench->add_option("--report", bench_report, "Also write the JSON stats here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*build) return run_build(build_opts, build_dataset, build_out);
    if (*query) {
      return run_query(query_index, query_queries, query_validate,
                       query_report, query_threads);
    }
    if (*gadgets) return run_gadgets(gadget_opts);
    return run_bench(bench_opts, bench_dataset, bench_queries, bench_report);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
