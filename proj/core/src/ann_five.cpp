#include "tsann/ann_five.hpp"

#include <stdexcept>
#include <utility>

#include "tsann/candidates.hpp"
#include "tsann/detail/build_common.hpp"
#include "tsann/signature.hpp"

namespace tsann {

IndexFiveEps IndexFiveEps::build(const Corpus& corpus,
                                 const DictionaryParams& params,
                                 unsigned threads) {
  detail::validate_dictionary_params(params);
  detail::validate_corpus(corpus);

  IndexFiveEps idx;
  idx.params_ = params;
  idx.width_ = params.epsilon / 2.0;
  idx.corpus_ = corpus;

  const std::size_t n = corpus.size();
  idx.stats_.resize(n);
  std::vector<std::vector<GridKey>> keys(n);

  detail::parallel_for_index(n, threads, [&](std::size_t i) {
    const TimeSeries scaled = scale(corpus[i].curve, params.r);
    const TimeSeries canonical = canonicalize(scaled);
    const Signature sig = compute_signature(scaled, 1.0);
    CurveBuildStats st;
    st.canonical_length = canonical.size();
    st.signature_length = sig.values.size();
    if (sig.values.size() > params.k) {
      st.skipped = true;
      idx.stats_[i] = st;
      return;
    }
    CandidateParams cp;
    cp.width = idx.width_;
    cp.max_vertices = params.k;
    cp.filter_delta = 3.0 + idx.width_;
    cp.ranges.reserve(sig.values.size());
    for (double v : sig.values) {
      cp.ranges.push_back(ValueRange{v - 2.0 - idx.width_, v + 2.0 + idx.width_});
    }
    const CandidateStats cs = enumerate_candidates(
        canonical, cp, [&](const GridKey& key) { keys[i].push_back(key); });
    st.generated = cs.generated;
    st.kept = cs.kept;
    idx.stats_[i] = st;
  });

  for (std::size_t i = 0; i < n; ++i) {
    for (GridKey& key : keys[i]) {
      idx.dict_.emplace(std::move(key), static_cast<std::uint32_t>(i));
    }
  }
  return idx;
}

QueryResult IndexFiveEps::query(const TimeSeries& tau) const {
  if (tau.empty()) {
    throw std::invalid_argument("query: curve is empty");
  }
  const TimeSeries scaled = scale(tau, params_.r);
  const Signature sig = compute_signature(scaled, 2.0);
  const GridKey key = canonicalize_key(
      snap_nearest_indices(TimeSeries(sig.values), UniformGrid{width_}));
  QueryResult result;
  result.probes = 1;
  const auto it = dict_.find(key);
  if (it != dict_.end()) result.match = corpus_[it->second].id;
  return result;
}

bool IndexFiveEps::completeness_guaranteed(const TimeSeries& tau) const {
  if (tau.empty()) return false;
  return canonicalize(scale(tau, params_.r)).size() <= params_.k;
}

IndexFiveEps IndexFiveEps::from_parts(Corpus corpus, DictionaryParams params,
                                      std::vector<CurveBuildStats> stats,
                                      Dictionary dict) {
  detail::validate_dictionary_params(params);
  detail::validate_corpus(corpus);
  if (stats.size() != corpus.size()) {
    throw std::invalid_argument("from_parts: one stats record per curve");
  }
  for (const auto& [key, slot] : dict) {
    if (slot >= corpus.size()) {
      throw std::invalid_argument("from_parts: dictionary slot out of range");
    }
    if (key.empty()) {
      throw std::invalid_argument("from_parts: empty dictionary key");
    }
  }
  IndexFiveEps idx;
  idx.params_ = params;
  idx.width_ = params.epsilon / 2.0;
  idx.corpus_ = std::move(corpus);
  idx.stats_ = std::move(stats);
  idx.dict_ = std::move(dict);
  return idx;
}

}  // namespace tsann
