#pragma once

#include <cstddef>
#include <functional>

namespace htak {

/// Worker count used by parallel_for when none is given. Starts at
/// HTAK_THREADS (if set and positive), otherwise hardware concurrency.
[[nodiscard]] std::size_t default_thread_count();
void set_default_thread_count(std::size_t threads);

/// Calls body(i) for every i in [0, n), splitting the range into contiguous
/// chunks across at most `threads` workers. Bodies must write only to
/// per-index slots; the caller reduces afterwards in index order, which keeps
/// results independent of the thread count.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body, std::size_t threads = 0);

}  // namespace htak
