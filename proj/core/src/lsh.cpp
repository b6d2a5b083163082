#include "tsann/lsh.hpp"

#include <cmath>
#include <random>
#include <stdexcept>
#include <utility>

#include "tsann/detail/build_common.hpp"
#include "tsann/signature.hpp"

namespace tsann {

namespace {

LshParams resolve(LshParams params, std::size_t corpus_size) {
  if (params.k == 0) {
    throw std::invalid_argument("build: k must be at least 1");
  }
  if (!(params.r > 0) || !std::isfinite(params.r)) {
    throw std::invalid_argument("build: radius must be positive and finite");
  }
  if (params.w < 0 || !std::isfinite(params.w)) {
    throw std::invalid_argument("build: width must be non-negative and finite");
  }
  if (params.w == 0) params.w = 12.0 * static_cast<double>(params.k);
  if (params.s == 0) {
    const double reps =
        std::ceil(2.0 * std::log2(static_cast<double>(corpus_size) + 1.0));
    params.s = reps < 1.0 ? 1 : static_cast<std::size_t>(reps);
  }
  return params;
}

}  // namespace

IndexLsh IndexLsh::build(const Corpus& corpus, const LshParams& params,
                         unsigned threads) {
  detail::validate_corpus(corpus);

  IndexLsh idx;
  idx.params_ = resolve(params, corpus.size());
  idx.corpus_ = corpus;

  // 53-bit uniform draws in [0,1), scaled to [0,w).  Drawn directly from the
  // engine's output so the sequence is identical on every platform.
  std::mt19937_64 rng(idx.params_.seed);
  idx.shifts_.resize(idx.params_.s);
  for (double& z : idx.shifts_) {
    z = static_cast<double>(rng() >> 11) * 0x1.0p-53 * idx.params_.w;
  }
  idx.tables_.resize(idx.params_.s);

  const std::size_t n = corpus.size();
  idx.stats_.resize(n);
  std::vector<std::vector<GridKey>> keys(n);  // one key per repetition

  detail::parallel_for_index(n, threads, [&](std::size_t i) {
    const TimeSeries scaled = scale(corpus[i].curve, idx.params_.r);
    const Signature sig = compute_signature(scaled, 1.0);
    CurveBuildStats st;
    st.canonical_length = canonicalize(scaled).size();
    st.signature_length = sig.values.size();
    if (sig.values.size() > idx.params_.k) {
      st.skipped = true;
      idx.stats_[i] = st;
      return;
    }
    const TimeSeries sig_values{std::vector<double>(sig.values)};
    keys[i].reserve(idx.params_.s);
    for (double z : idx.shifts_) {
      keys[i].push_back(canonicalize_key(
          snap_shifted(sig_values, ShiftedGrid{idx.params_.w, z})));
    }
    idx.stats_[i] = st;
  });

  for (std::size_t i = 0; i < n; ++i) {
    if (keys[i].empty()) continue;
    for (std::size_t rep = 0; rep < idx.params_.s; ++rep) {
      if (idx.tables_[rep].emplace(std::move(keys[i][rep]),
                                   static_cast<std::uint32_t>(i)).second) {
        ++idx.stats_[i].kept;
      }
    }
  }
  return idx;
}

QueryResult IndexLsh::query(const TimeSeries& tau) const {
  if (tau.empty()) {
    throw std::invalid_argument("query: curve is empty");
  }
  const TimeSeries canonical = canonicalize(scale(tau, params_.r));
  QueryResult result;
  for (std::size_t rep = 0; rep < tables_.size(); ++rep) {
    const GridKey key = canonicalize_key(
        snap_shifted(canonical, ShiftedGrid{params_.w, shifts_[rep]}));
    ++result.probes;
    const auto it = tables_[rep].find(key);
    if (it != tables_[rep].end()) {
      result.match = corpus_[it->second].id;
      return result;
    }
  }
  return result;
}

bool IndexLsh::completeness_guaranteed(const TimeSeries&) const {
  return false;
}

IndexLsh IndexLsh::from_parts(Corpus corpus, LshParams params,
                              std::vector<double> shifts,
                              std::vector<Dictionary> tables) {
  detail::validate_corpus(corpus);
  LshParams resolved = resolve(params, corpus.size());
  if (shifts.size() != resolved.s || tables.size() != resolved.s) {
    throw std::invalid_argument("from_parts: one shift and table per repetition");
  }
  for (double z : shifts) {
    if (!(z >= 0) || !(z <= resolved.w)) {
      throw std::invalid_argument("from_parts: shift outside [0, w]");
    }
  }
  for (const Dictionary& table : tables) {
    for (const auto& [key, slot] : table) {
      if (slot >= corpus.size()) {
        throw std::invalid_argument("from_parts: table slot out of range");
      }
      if (key.empty()) {
        throw std::invalid_argument("from_parts: empty table key");
      }
    }
  }
  IndexLsh idx;
  idx.params_ = resolved;
  idx.corpus_ = std::move(corpus);
  idx.shifts_ = std::move(shifts);
  idx.tables_ = std::move(tables);
  idx.stats_.resize(idx.corpus_.size());
  return idx;
}

}  // namespace tsann
