#include "trustgame/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <thread>
#include <vector>

namespace trustgame {

namespace {
std::atomic<int> g_workers{1};
}

int worker_count() { return g_workers.load(std::memory_order_relaxed); }

void set_worker_count(int workers) {
  g_workers.store(std::max(1, workers), std::memory_order_relaxed);
}

namespace detail {

void for_chunks(std::uint64_t total,
                const std::function<void(int, std::uint64_t, std::uint64_t)>& fn) {
  if (total == 0) return;
  int chunks = static_cast<int>(std::min<std::uint64_t>(kChunkCount, total));
  int workers = std::clamp(worker_count(), 1, chunks);

  std::atomic<int> next{0};
  auto drain = [&] {
    for (int c = next.fetch_add(1); c < chunks; c = next.fetch_add(1)) {
      std::uint64_t begin = total * static_cast<std::uint64_t>(c) / static_cast<std::uint64_t>(chunks);
      std::uint64_t end = total * static_cast<std::uint64_t>(c + 1) / static_cast<std::uint64_t>(chunks);
      fn(c, begin, end);
    }
  };

  if (workers == 1) {
    drain();
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) pool.emplace_back(drain);
  for (auto& t : pool) t.join();
}

}  // namespace detail
}  // namespace trustgame
