#pragma once

#include <cstddef>
#include <exception>
#include <functional>
#include <optional>
#include <vector>

namespace novikov {

/// Worker count: NOVIKOV_WORKERS if set and positive, else hardware concurrency (at least 1).
std::size_t worker_count();

/// Runs task(i) for i in [0, n) on worker threads. The first exception thrown
/// by any task is rethrown after all workers join.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& task,
                  std::size_t workers = 0);

/// Maps f over [0, n), results in index order.
template <class T>
std::vector<T> parallel_map(std::size_t n, const std::function<T(std::size_t)>& f,
                            std::size_t workers = 0) {
  std::vector<std::optional<T>> slots(n);
  parallel_for(n, [&](std::size_t i) { slots[i].emplace(f(i)); }, workers);
  std::vector<T> out;
  out.reserve(n);
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

}  // namespace novikov
