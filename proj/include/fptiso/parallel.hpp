#pragma once

#include <algorithm>
#include <atomic>
#include <functional>
#include <mutex>
#include <optional>
#include <thread>
#include <vector>

namespace fptiso {

// Evaluates fn(0..count-1), possibly on several threads, and returns the
// result of the smallest index that succeeded. Indices above a known success
// are skipped, so the answer equals the sequential one.
template <class T>
std::optional<T> parallel_first(std::size_t count, int threads, const std::function<std::optional<T>(std::size_t)>& fn) {
  if (threads <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i)
      if (auto r = fn(i)) return r;
    return std::nullopt;
  }
  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> best{count};
  std::mutex mu;
  std::optional<T> result;
  auto worker = [&] {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count || i > best.load()) return;
      auto r = fn(i);
      if (!r) continue;
      std::lock_guard<std::mutex> lock(mu);
      if (i < best.load()) {
        best = i;
        result = std::move(r);
      }
    }
  };
  std::vector<std::thread> pool;
  const int t = static_cast<int>(std::min<std::size_t>(threads, count));
  for (int i = 0; i < t; ++i) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  return result;
}

}  // namespace fptiso
