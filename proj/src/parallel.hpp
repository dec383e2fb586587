// Deterministic parallel map over trial indices. Each trial writes only its
// own slot, so the gathered vector is identical for every thread count; any
// reduction done afterwards in index order is therefore thread-count
// independent. Worker exceptions are rethrown on the calling thread.
#ifndef COVGEN_PARALLEL_HPP
#define COVGEN_PARALLEL_HPP

#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace covgen {

template <typename T, typename Fn>
std::vector<T> map_trials(std::uint64_t trials, unsigned threads, Fn&& fn) {
  std::vector<T> results(trials);
  if (threads <= 1 || trials <= 1) {
    for (std::uint64_t i = 0; i < trials; ++i) results[i] = fn(i);
    return results;
  }
  if (threads > trials) threads = static_cast<unsigned>(trials);

  std::exception_ptr first_error;
  std::mutex error_mutex;
  {
    std::vector<std::jthread> workers;
    workers.reserve(threads);
    for (unsigned w = 0; w < threads; ++w) {
      workers.emplace_back([&, w] {
        try {
          for (std::uint64_t i = w; i < trials; i += threads) results[i] = fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!first_error) first_error = std::current_exception();
        }
      });
    }
  }
  if (first_error) std::rethrow_exception(first_error);
  return results;
}

}  // namespace covgen

#endif  // COVGEN_PARALLEL_HPP
