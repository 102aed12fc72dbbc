#include "logsp/threading.hpp"

#include <algorithm>
#include <atomic>
#include <thread>
#include <vector>

namespace logsp {

namespace {
std::atomic<int> g_threads{1};
}

void set_thread_count(int threads) { g_threads.store(std::max(1, threads)); }

int thread_count() { return g_threads.load(); }

void parallel_for(std::size_t begin, std::size_t end,
                  const std::function<void(std::size_t, std::size_t)>& body) {
  const std::size_t total = end > begin ? end - begin : 0;
  const int nt = std::min<std::size_t>(thread_count(), total);
  if (nt <= 1) {
    if (total > 0) body(begin, end);
    return;
  }
  std::vector<std::thread> workers;
  workers.reserve(nt);
  const std::size_t chunk = (total + nt - 1) / nt;
  for (int t = 0; t < nt; ++t) {
    const std::size_t lo = begin + t * chunk;
    const std::size_t hi = std::min(end, lo + chunk);
    if (lo >= hi) break;
    workers.emplace_back([&body, lo, hi] { body(lo, hi); });
  }
  for (auto& w : workers) w.join();
}

}  // namespace logsp
