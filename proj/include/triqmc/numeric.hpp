#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>

namespace triqmc {

/// Deterministic pairwise (tree) reduction of a contiguous range.
double pairwise_sum(const double* data, std::size_t count);

/// Pairwise reduction of term(i) over [begin, end) without materializing
/// the terms. The association is fixed by the index range, so results do
/// not depend on thread counts or chunking elsewhere.
template <typename TermFn>
double pairwise_accumulate(std::uint64_t begin, std::uint64_t end, const TermFn& term) {
  if (end - begin <= 16) {
    double s = 0.0;
    for (std::uint64_t i = begin; i < end; ++i) s += term(i);
    return s;
  }
  const std::uint64_t mid = begin + (end - begin) / 2;
  return pairwise_accumulate(begin, mid, term) + pairwise_accumulate(mid, end, term);
}

/// Runs body over [0, count) split into static contiguous chunks across
/// at most `jobs` threads. jobs <= 1 runs inline.
void parallel_for(std::size_t count, int jobs,
                  const std::function<void(std::size_t, std::size_t)>& body);

}  // namespace triqmc
