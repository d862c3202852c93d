#pragma once

// Shared-nothing chunked execution. Each chunk writes only its own result
// slot; callers merge slots in chunk order, so results never depend on the
// number of workers or on scheduling.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <utility>
#include <vector>

namespace indep::detail {

template <class Result, class Fn>
std::vector<Result> run_chunks(std::size_t chunks, unsigned threads, Fn&& fn) {
  std::vector<Result> results(chunks);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto worker = [&] {
    try {
      for (std::size_t c; (c = next.fetch_add(1)) < chunks;) fn(c, results[c]);
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
      next.store(chunks);
    }
  };

  const std::size_t workers = std::clamp<std::size_t>(threads, 1, std::max<std::size_t>(chunks, 1));
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t i = 0; i < workers; ++i) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);
  return results;
}

/// Half-open slice c of [0, total) split into `chunks` nearly equal parts.
inline std::pair<std::uint64_t, std::uint64_t> chunk_range(std::uint64_t total, std::size_t chunks,
                                                           std::size_t c) {
  using U128 = unsigned __int128;
  const auto lo = static_cast<std::uint64_t>(static_cast<U128>(total) * c / chunks);
  const auto hi = static_cast<std::uint64_t>(static_cast<U128>(total) * (c + 1) / chunks);
  return {lo, hi};
}

}  // namespace indep::detail
