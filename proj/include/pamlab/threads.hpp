#pragma once

// Deterministic parallel map-reduce. Work is cut into chunks whose count and
// seeds do not depend on the worker pool, and partial results are combined in
// chunk order, so any PAMLAB_THREADS value reproduces the same doubles.

#include <atomic>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace pamlab {

inline unsigned thread_count() {
  if (const char* env = std::getenv("PAMLAB_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1) return static_cast<unsigned>(v);
  }
  const unsigned hc = std::thread::hardware_concurrency();
  return hc ? hc : 1u;
}

// Evaluates chunk_fn(0..n_chunks-1) on a worker pool and folds the results
// with operator+= strictly in index order.
template <class T, class Fn>
T parallel_indexed_sum(std::size_t n_chunks, Fn&& chunk_fn, T init = T{}) {
  if (n_chunks == 0) return init;
  const unsigned workers =
      static_cast<unsigned>(std::min<std::size_t>(thread_count(), n_chunks));
  std::vector<T> results(n_chunks);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n_chunks; ++i) results[i] = chunk_fn(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr first_error;
    std::mutex guard;
    auto worker = [&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= n_chunks || failed.load()) break;
        try {
          results[i] = chunk_fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lk(guard);
          if (!first_error) first_error = std::current_exception();
          failed.store(true);
          break;
        }
      }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
  }
  for (std::size_t i = 0; i < n_chunks; ++i) init += results[i];
  return init;
}

}  // namespace pamlab
