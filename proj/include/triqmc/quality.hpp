#pragma once

// Quality measures for digital nets: the NRT weight mu1, the row weight
// v, dual-net kernels, minimum weights and t-values.

#include <cstdint>
#include <vector>

#include "triqmc/bitcore.hpp"
#include "triqmc/digital.hpp"

namespace triqmc {

/// 1-based position of the last nonzero entry; 0 for the zero vector.
/// Zero padding never changes the value.
int mu1(const BitVector& k);

/// mu1(K) = mu1(column 1) + mu1(column 2).
int mu1_matrix(const IndexMatrix& K);

/// v(K) = max(mu1(k1), mu1(k2)), equivalently the deepest nonzero row.
int v_weight(const IndexMatrix& K);

/// Basis of the dual net P-perp = ker(K -> C1^T k1 (+) C2^T k2) inside
/// F2^(n x 2), computed by elimination over F2.
struct DualNet {
  std::vector<IndexMatrix> basis;  // linearly independent
  int n = 0;
  int m = 0;
  int rank = 0;  // rank of the constraint map into F2^m
  // Echelonized copy of the basis, indexed by leading bit position;
  // zero entries are unused slots.
  std::vector<std::uint64_t> echelon;

  int dimension() const { return static_cast<int>(basis.size()); }
  std::uint64_t size() const { return std::uint64_t{1} << basis.size(); }
  /// Membership test against the span (used by the brute-force oracle).
  bool contains(const IndexMatrix& K) const;
};

DualNet dual_net(const GeneratorPair& gen, int n, int m);

/// Minimum weights over the nonzero dual, with the v-value histogram.
/// mu1_min / v_min are kInfiniteWeight when the dual is {0}.
struct WeightReport {
  int mu1_min = 0;
  int v_min = 0;
  int t = 0;  // m + 1 - mu1_min, clamped to [0, m]
  std::vector<std::uint64_t> v_spectrum;  // index v = 0..n

  static constexpr int kInfiniteWeight = 1 << 30;
  bool empty_dual() const { return mu1_min == kInfiniteWeight; }
};

/// Enumerates the span of the dual basis (throws std::length_error above
/// dimension kMaxEnumerationDim) and reports exact minima.
WeightReport min_weights(const DualNet& dual);

constexpr int kMaxEnumerationDim = 24;

/// v_min >= (m - t + 1) / 2, as an exact integer comparison. Vacuously
/// true for an empty dual.
bool check_tvalue_bound(const WeightReport& report, int m);

}  // namespace triqmc
