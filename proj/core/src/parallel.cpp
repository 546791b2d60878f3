#include "mechopt/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <thread>
#include <vector>

namespace mechopt {

namespace {

// Grids below this size are cheaper to sweep inline than to fan out.
constexpr std::size_t kMinPointsPerThread = 1024;

std::size_t thread_cap_from_env() noexcept {
  const char* raw = std::getenv("MECHOPT_THREADS");
  if (raw == nullptr || *raw == '\0') {
    return 0;
  }
  char* end = nullptr;
  const long value = std::strtol(raw, &end, 10);
  if (end == raw || value < 0) {
    return 0; // unparsable or negative: fall back to auto
  }
  return static_cast<std::size_t>(value);
}

} // namespace

std::size_t grid_thread_count(std::size_t range_size) noexcept {
  std::size_t cap = thread_cap_from_env();
  if (cap == 0) {
    cap = std::max<std::size_t>(1, std::thread::hardware_concurrency());
  }
  const std::size_t by_work = std::max<std::size_t>(1, range_size / kMinPointsPerThread);
  return std::min(cap, by_work);
}

void parallel_for_chunks(std::size_t n,
                         const std::function<void(std::size_t, std::size_t)>& fn) {
  if (n == 0) {
    return;
  }
  const std::size_t workers = grid_thread_count(n);
  if (workers <= 1) {
    fn(0, n);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  const std::size_t chunk = (n + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t begin = w * chunk;
    const std::size_t end = std::min(n, begin + chunk);
    if (begin >= end) {
      break;
    }
    pool.emplace_back([&fn, begin, end] { fn(begin, end); });
  }
  for (auto& t : pool) {
    t.join();
  }
}

} // namespace mechopt
