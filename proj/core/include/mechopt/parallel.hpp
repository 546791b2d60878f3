#pragma once

#include <cstddef>
#include <functional>

namespace mechopt {

/// Worker count for grid sweeps: MECHOPT_THREADS caps it, 0 or unset means
/// one per hardware thread. Small ranges run inline regardless.
[[nodiscard]] std::size_t grid_thread_count(std::size_t range_size) noexcept;

/// Runs fn(begin, end) over contiguous chunks of [0, n), possibly from
/// multiple threads. Chunks are disjoint, so writers indexed by position need
/// no synchronization; callers merge results in index order afterwards.
void parallel_for_chunks(std::size_t n, const std::function<void(std::size_t, std::size_t)>& fn);

} // namespace mechopt
