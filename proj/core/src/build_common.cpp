#include "tsann/detail/build_common.hpp"

#include <atomic>
#include <cmath>
#include <cstdint>
#include <exception>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <thread>
#include <vector>

namespace tsann::detail {

void validate_dictionary_params(const DictionaryParams& params) {
  if (!(params.epsilon > 0) || !(params.epsilon <= 1) ||
      !std::isfinite(params.epsilon)) {
    throw std::invalid_argument("build: epsilon must lie in (0, 1]");
  }
  if (params.k == 0) {
    throw std::invalid_argument("build: k must be at least 1");
  }
  if (!(params.r > 0) || !std::isfinite(params.r)) {
    throw std::invalid_argument("build: radius must be positive and finite");
  }
}

void validate_corpus(const Corpus& corpus) {
  if (corpus.size() > std::numeric_limits<std::uint32_t>::max()) {
    throw std::invalid_argument("build: corpus has too many curves");
  }
  for (const CorpusEntry& entry : corpus) {
    if (entry.curve.empty()) {
      throw std::invalid_argument("build: corpus curve '" + entry.id +
                                  "' is empty");
    }
  }
}

void parallel_for_index(std::size_t n, unsigned threads,
                        const std::function<void(std::size_t)>& fn) {
  if (threads <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  const unsigned workers =
      static_cast<unsigned>(std::min<std::size_t>(threads, n));
  std::atomic<std::size_t> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned t = 0; t < workers; ++t) {
    pool.emplace_back([&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= n) return;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!first_error) first_error = std::current_exception();
        }
      }
    });
  }
  for (std::thread& worker : pool) worker.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace tsann::detail
