#include "tsann/ann_two.hpp"

#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>

#include "tsann/candidates.hpp"
#include "tsann/detail/build_common.hpp"
#include "tsann/signature.hpp"

namespace tsann {

namespace {

constexpr std::size_t kMaxSubsetBits = 24;

/**
 * Advances a strictly increasing combination of positions in [0, n) to its
 * lexicographic successor of the same size; false once exhausted.  The empty
 * combination has no successor.
 */
bool next_combination(std::vector<std::size_t>& comb, std::size_t n) {
  std::size_t i = comb.size();
  while (i > 0) {
    --i;
    if (comb[i] < n - (comb.size() - i)) {
      ++comb[i];
      for (std::size_t j = i + 1; j < comb.size(); ++j) comb[j] = comb[j - 1] + 1;
      return true;
    }
  }
  return false;
}

}  // namespace

IndexTwoEps IndexTwoEps::build(const Corpus& corpus,
                               const DictionaryParams& params,
                               unsigned threads) {
  detail::validate_dictionary_params(params);
  detail::validate_corpus(corpus);

  IndexTwoEps idx;
  idx.params_ = params;
  idx.width_ = params.epsilon / 2.0;
  idx.corpus_ = corpus;

  const std::size_t n = corpus.size();
  idx.stats_.resize(n);
  std::vector<std::vector<GridKey>> keys(n);

  detail::parallel_for_index(n, threads, [&](std::size_t i) {
    const TimeSeries scaled = scale(corpus[i].curve, params.r);
    const TimeSeries canonical = canonicalize(scaled);
    CurveBuildStats st;
    st.canonical_length = canonical.size();
    st.signature_length = compute_signature(scaled, 1.0).values.size();
    CandidateParams cp;
    cp.width = idx.width_;
    cp.max_vertices = params.k;
    cp.filter_delta = 1.0 + idx.width_;
    cp.ranges.reserve(canonical.size());
    for (double v : canonical.values) {
      cp.ranges.push_back(ValueRange{v - 4.0 - idx.width_, v + 4.0 + idx.width_});
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

QueryResult IndexTwoEps::query(const TimeSeries& tau) const {
  if (tau.empty()) {
    throw std::invalid_argument("query: curve is empty");
  }
  const TimeSeries canonical = canonicalize(scale(tau, params_.r));
  const Signature sig = compute_signature(canonical, 1.0);
  const std::size_t h = canonical.size();

  // Positions of canonical vertices that are not signature vertices; the
  // query may add any subset of them to the mandatory signature positions.
  std::vector<std::size_t> extra;
  extra.reserve(h - sig.indices.size());
  {
    std::size_t s = 0;
    for (std::size_t p = 0; p < h; ++p) {
      if (s < sig.indices.size() && sig.indices[s] == p) {
        ++s;
      } else {
        extra.push_back(p);
      }
    }
  }
  if (extra.size() > kMaxSubsetBits) {
    throw QueryBudgetError(
        "query: subset enumeration would need 2^" +
        std::to_string(extra.size()) + " dictionary probes (limit 2^" +
        std::to_string(kMaxSubsetBits) + ")");
  }

  const std::vector<std::int64_t> snapped =
      snap_nearest_indices(canonical, UniformGrid{width_});

  QueryResult result;
  GridKey raw;
  for (std::size_t size = 0; size <= extra.size(); ++size) {
    std::vector<std::size_t> comb(size);
    std::iota(comb.begin(), comb.end(), std::size_t{0});
    do {
      raw.clear();
      std::size_t s = 0;
      std::size_t c = 0;
      for (std::size_t p = 0; p < h; ++p) {
        if (s < sig.indices.size() && sig.indices[s] == p) {
          ++s;
        } else if (c < size && extra[comb[c]] == p) {
          ++c;
        } else {
          continue;
        }
        raw.push_back(snapped[p]);
      }
      ++result.probes;
      const auto it = dict_.find(canonicalize_key(raw));
      if (it != dict_.end()) {
        result.match = corpus_[it->second].id;
        return result;
      }
    } while (next_combination(comb, extra.size()));
  }
  return result;
}

bool IndexTwoEps::completeness_guaranteed(const TimeSeries& tau) const {
  if (tau.empty()) return false;
  return canonicalize(scale(tau, params_.r)).size() <= params_.k;
}

IndexTwoEps IndexTwoEps::from_parts(Corpus corpus, DictionaryParams params,
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
  IndexTwoEps idx;
  idx.params_ = params;
  idx.width_ = params.epsilon / 2.0;
  idx.corpus_ = std::move(corpus);
  idx.stats_ = std::move(stats);
  idx.dict_ = std::move(dict);
  return idx;
}

}  // namespace tsann
