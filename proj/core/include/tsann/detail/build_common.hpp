#pragma once

#include <cstddef>
#include <functional>

#include "tsann/corpus.hpp"

namespace tsann::detail {

/** Throws std::invalid_argument unless epsilon in (0,1], k >= 1, r > 0. */
void validate_dictionary_params(const DictionaryParams& params);

/** Throws std::invalid_argument if any corpus curve is empty or the corpus
 * is too large to address with 32-bit slot numbers. */
void validate_corpus(const Corpus& corpus);

/**
 * Runs fn(i) for every i in [0, n), fanning out across `threads` workers
 * (serial for threads <= 1).  Iterations must not touch shared mutable state
 * except slots owned by their own index.  The first exception thrown by any
 * iteration is rethrown after all workers finish.
 */
void parallel_for_index(std::size_t n, unsigned threads,
                        const std::function<void(std::size_t)>& fn);

}  // namespace tsann::detail
