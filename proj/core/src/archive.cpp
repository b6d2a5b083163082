#include "tsann/archive.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace tsann {

namespace {

constexpr const char* kMagic = "tsannidx";
constexpr const char* kVersion = "1";

using Dictionary = IndexFiveEps::Dictionary;

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%a", v);
  return buf;
}

/** Percent-encodes '%', whitespace, control and non-ASCII bytes so that an
 * identifier is always a single printable token. */
std::string escape_id(const std::string& id) {
  std::string out;
  out.reserve(id.size());
  for (unsigned char ch : id) {
    if (ch <= 0x20 || ch >= 0x7F || ch == '%') {
      char buf[4];
      std::snprintf(buf, sizeof buf, "%%%02X", ch);
      out += buf;
    } else {
      out += static_cast<char>(ch);
    }
  }
  return out;
}

void write_corpus(std::ostream& out, const Corpus& corpus) {
  out << "corpus " << corpus.size() << '\n';
  for (const CorpusEntry& entry : corpus) {
    if (entry.id.empty()) {
      throw std::invalid_argument("save_index: curve identifier is empty");
    }
    out << "curve " << escape_id(entry.id) << ' ' << entry.curve.size();
    for (double v : entry.curve.values) out << ' ' << fmt_double(v);
    out << '\n';
  }
}

void write_stats(std::ostream& out,
                 const std::vector<CurveBuildStats>& stats) {
  out << "stats " << stats.size() << '\n';
  for (const CurveBuildStats& st : stats) {
    out << "stat " << st.generated << ' ' << st.kept << ' '
        << st.canonical_length << ' ' << st.signature_length << ' '
        << (st.skipped ? 1 : 0) << '\n';
  }
}

void write_entries(std::ostream& out, const Dictionary& dict) {
  std::vector<std::pair<GridKey, std::uint32_t>> entries(dict.begin(),
                                                         dict.end());
  std::sort(entries.begin(), entries.end());
  for (const auto& [key, slot] : entries) {
    out << "key " << slot << ' ' << key.size();
    for (std::int64_t v : key) out << ' ' << v;
    out << '\n';
  }
}

void write_header(std::ostream& out, const char* kind) {
  out << kMagic << ' ' << kVersion << '\n' << "kind " << kind << '\n';
}

void save_dictionary_index(std::ostream& out, const char* kind,
                           const DictionaryParams& params,
                           const Corpus& corpus,
                           const std::vector<CurveBuildStats>& stats,
                           const Dictionary& dict) {
  write_header(out, kind);
  out << "params " << fmt_double(params.epsilon) << ' ' << params.k << ' '
      << fmt_double(params.r) << '\n';
  write_corpus(out, corpus);
  write_stats(out, stats);
  out << "dict " << dict.size() << '\n';
  write_entries(out, dict);
  out << "end\n";
}

void save_lsh_index(std::ostream& out, const IndexLsh& idx) {
  write_header(out, "lsh");
  const LshParams& p = idx.params();
  out << "params " << p.k << ' ' << fmt_double(p.r) << ' ' << fmt_double(p.w)
      << ' ' << p.s << ' ' << p.seed << '\n';
  write_corpus(out, idx.corpus());
  out << "shifts " << idx.shifts().size();
  for (double z : idx.shifts()) out << ' ' << fmt_double(z);
  out << '\n';
  for (std::size_t rep = 0; rep < idx.tables().size(); ++rep) {
    out << "table " << rep << ' ' << idx.tables()[rep].size() << '\n';
    write_entries(out, idx.tables()[rep]);
  }
  out << "end\n";
}

struct Parser {
  std::istream& in;
  std::size_t line_no = 0;
  std::vector<std::string> tokens;

  [[noreturn]] void fail(const std::string& what) const {
    throw std::runtime_error("archive line " + std::to_string(line_no) +
                             ": " + what);
  }

  void next_line(const char* tag) {
    std::string line;
    ++line_no;
    if (!std::getline(in, line)) {
      fail(std::string("expected '") + tag + "', got end of input");
    }
    tokens.clear();
    std::size_t start = 0;
    while (start <= line.size()) {
      const std::size_t space = std::min(line.find(' ', start), line.size());
      tokens.push_back(line.substr(start, space - start));
      if (tokens.back().empty()) fail("malformed spacing");
      start = space + 1;
    }
    if (tokens[0] != tag) {
      fail("expected '" + std::string(tag) + "', got '" + tokens[0] + "'");
    }
  }

  void expect_tokens(std::size_t count) const {
    if (tokens.size() != count) {
      fail("expected " + std::to_string(count) + " fields, got " +
           std::to_string(tokens.size()));
    }
  }

  std::uint64_t to_u64(const std::string& tok) const {
    std::uint64_t value = 0;
    const auto [ptr, ec] =
        std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
      fail("bad unsigned integer '" + tok + "'");
    }
    return value;
  }

  std::int64_t to_i64(const std::string& tok) const {
    std::int64_t value = 0;
    const auto [ptr, ec] =
        std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
      fail("bad integer '" + tok + "'");
    }
    return value;
  }

  double to_double(const std::string& tok) const {
    char* end = nullptr;
    const double value = std::strtod(tok.c_str(), &end);
    if (end != tok.c_str() + tok.size() || tok.empty()) {
      fail("bad real '" + tok + "'");
    }
    return value;
  }

  std::string unescape_id(const std::string& tok) const {
    std::string out;
    out.reserve(tok.size());
    for (std::size_t i = 0; i < tok.size(); ++i) {
      if (tok[i] != '%') {
        out += tok[i];
        continue;
      }
      if (i + 2 >= tok.size()) fail("truncated escape in identifier");
      const auto hex = [&](char c) -> unsigned {
        if (c >= '0' && c <= '9') return static_cast<unsigned>(c - '0');
        if (c >= 'A' && c <= 'F') return static_cast<unsigned>(c - 'A' + 10);
        if (c >= 'a' && c <= 'f') return static_cast<unsigned>(c - 'a' + 10);
        fail("bad escape in identifier");
      };
      out += static_cast<char>(hex(tok[i + 1]) * 16 + hex(tok[i + 2]));
      i += 2;
    }
    return out;
  }

  Corpus read_corpus() {
    next_line("corpus");
    expect_tokens(2);
    const std::uint64_t n = to_u64(tokens[1]);
    Corpus corpus;
    corpus.reserve(n);
    for (std::uint64_t i = 0; i < n; ++i) {
      next_line("curve");
      if (tokens.size() < 3) fail("short curve line");
      const std::uint64_t m = to_u64(tokens[2]);
      expect_tokens(3 + m);
      CorpusEntry entry;
      entry.id = unescape_id(tokens[1]);
      entry.curve.values.reserve(m);
      for (std::uint64_t j = 0; j < m; ++j) {
        entry.curve.values.push_back(to_double(tokens[3 + j]));
      }
      corpus.push_back(std::move(entry));
    }
    return corpus;
  }

  std::vector<CurveBuildStats> read_stats(std::size_t expected) {
    next_line("stats");
    expect_tokens(2);
    if (to_u64(tokens[1]) != expected) fail("stats count != corpus size");
    std::vector<CurveBuildStats> stats(expected);
    for (CurveBuildStats& st : stats) {
      next_line("stat");
      expect_tokens(6);
      st.generated = to_u64(tokens[1]);
      st.kept = to_u64(tokens[2]);
      st.canonical_length = to_u64(tokens[3]);
      st.signature_length = to_u64(tokens[4]);
      const std::uint64_t skipped = to_u64(tokens[5]);
      if (skipped > 1) fail("skipped flag must be 0 or 1");
      st.skipped = skipped == 1;
    }
    return stats;
  }

  Dictionary read_entries(std::uint64_t count) {
    Dictionary dict;
    dict.reserve(count);
    for (std::uint64_t i = 0; i < count; ++i) {
      next_line("key");
      if (tokens.size() < 3) fail("short key line");
      const std::uint32_t slot = static_cast<std::uint32_t>(to_u64(tokens[1]));
      const std::uint64_t len = to_u64(tokens[2]);
      expect_tokens(3 + len);
      GridKey key;
      key.reserve(len);
      for (std::uint64_t j = 0; j < len; ++j) {
        key.push_back(to_i64(tokens[3 + j]));
      }
      if (!dict.emplace(std::move(key), slot).second) {
        fail("duplicate dictionary key");
      }
    }
    return dict;
  }
};

AnyIndex load_dictionary_index(Parser& parser, const std::string& kind) {
  parser.next_line("params");
  parser.expect_tokens(4);
  DictionaryParams params;
  params.epsilon = parser.to_double(parser.tokens[1]);
  params.k = parser.to_u64(parser.tokens[2]);
  params.r = parser.to_double(parser.tokens[3]);
  Corpus corpus = parser.read_corpus();
  std::vector<CurveBuildStats> stats = parser.read_stats(corpus.size());
  parser.next_line("dict");
  parser.expect_tokens(2);
  Dictionary dict = parser.read_entries(parser.to_u64(parser.tokens[1]));
  parser.next_line("end");
  if (kind == "five-eps") {
    return IndexFiveEps::from_parts(std::move(corpus), params,
                                    std::move(stats), std::move(dict));
  }
  return IndexTwoEps::from_parts(std::move(corpus), params, std::move(stats),
                                 std::move(dict));
}

AnyIndex load_lsh_index(Parser& parser) {
  parser.next_line("params");
  parser.expect_tokens(6);
  LshParams params;
  params.k = parser.to_u64(parser.tokens[1]);
  params.r = parser.to_double(parser.tokens[2]);
  params.w = parser.to_double(parser.tokens[3]);
  params.s = parser.to_u64(parser.tokens[4]);
  params.seed = parser.to_u64(parser.tokens[5]);
  Corpus corpus = parser.read_corpus();
  parser.next_line("shifts");
  if (parser.tokens.size() < 2) parser.fail("short shifts line");
  const std::uint64_t s = parser.to_u64(parser.tokens[1]);
  parser.expect_tokens(2 + s);
  std::vector<double> shifts;
  shifts.reserve(s);
  for (std::uint64_t i = 0; i < s; ++i) {
    shifts.push_back(parser.to_double(parser.tokens[2 + i]));
  }
  std::vector<Dictionary> tables;
  tables.reserve(s);
  for (std::uint64_t rep = 0; rep < s; ++rep) {
    parser.next_line("table");
    parser.expect_tokens(3);
    if (parser.to_u64(parser.tokens[1]) != rep) parser.fail("table out of order");
    tables.push_back(parser.read_entries(parser.to_u64(parser.tokens[2])));
  }
  parser.next_line("end");
  return IndexLsh::from_parts(std::move(corpus), params, std::move(shifts),
                              std::move(tables));
}

}  // namespace

const char* index_kind(const AnyIndex& idx) {
  if (std::holds_alternative<IndexFiveEps>(idx)) return "five-eps";
  if (std::holds_alternative<IndexTwoEps>(idx)) return "two-eps";
  return "lsh";
}

void save_index(std::ostream& out, const AnyIndex& idx) {
  if (const auto* five = std::get_if<IndexFiveEps>(&idx)) {
    save_dictionary_index(out, "five-eps", five->params(), five->corpus(),
                          five->build_stats(), five->dictionary());
  } else if (const auto* two = std::get_if<IndexTwoEps>(&idx)) {
    save_dictionary_index(out, "two-eps", two->params(), two->corpus(),
                          two->build_stats(), two->dictionary());
  } else {
    save_lsh_index(out, std::get<IndexLsh>(idx));
  }
}

AnyIndex load_index(std::istream& in) {
  Parser parser{in};
  parser.next_line(kMagic);
  parser.expect_tokens(2);
  if (parser.tokens[1] != kVersion) parser.fail("unsupported format version");
  parser.next_line("kind");
  parser.expect_tokens(2);
  const std::string kind = parser.tokens[1];
  try {
    if (kind == "five-eps" || kind == "two-eps") {
      return load_dictionary_index(parser, kind);
    }
    if (kind == "lsh") {
      return load_lsh_index(parser);
    }
  } catch (const std::invalid_argument& e) {
    throw std::runtime_error(std::string("archive: ") + e.what());
  }
  parser.fail("unknown index kind '" + kind + "'");
}

}  // namespace tsann
