#include "triqmc/numeric.hpp"

#include <algorithm>
#include <thread>
#include <vector>

namespace triqmc {

double pairwise_sum(const double* data, std::size_t count) {
  if (count <= 8) {
    double s = 0.0;
    for (std::size_t i = 0; i < count; ++i) s += data[i];
    return s;
  }
  const std::size_t half = count / 2;
  return pairwise_sum(data, half) + pairwise_sum(data + half, count - half);
}

void parallel_for(std::size_t count, int jobs,
                  const std::function<void(std::size_t, std::size_t)>& body) {
  if (count == 0) return;
  const std::size_t workers =
      std::min<std::size_t>(count, jobs > 1 ? static_cast<std::size_t>(jobs) : 1);
  if (workers <= 1) {
    body(0, count);
    return;
  }
  std::vector<std::thread> threads;
  threads.reserve(workers);
  const std::size_t chunk = (count + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t lo = w * chunk;
    const std::size_t hi = std::min(count, lo + chunk);
    if (lo >= hi) break;
    threads.emplace_back([&body, lo, hi] { body(lo, hi); });
  }
  for (auto& t : threads) t.join();
}

}  // namespace triqmc
