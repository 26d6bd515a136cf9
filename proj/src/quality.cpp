#include "triqmc/quality.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <stdexcept>
#include <string>

namespace triqmc {
namespace {

constexpr std::uint64_t kCol1Mask = 0x5555555555555555ull;

// Last nonzero row of one column of an encoded index matrix.
int column_mu1(std::uint64_t enc, int j) {
  const std::uint64_t mask = enc & (j == 1 ? kCol1Mask : ~kCol1Mask);
  if (mask == 0) return 0;
  const int pos = std::bit_width(mask) - 1;
  return pos / 2 + 1;
}

int encoded_v(std::uint64_t enc) {
  if (enc == 0) return 0;
  return (std::bit_width(enc) - 1) / 2 + 1;
}

}  // namespace

int mu1(const BitVector& k) {
  for (std::size_t i = k.size(); i > 0; --i)
    if (k[i - 1]) return static_cast<int>(i);
  return 0;
}

int mu1_matrix(const IndexMatrix& K) {
  const std::uint64_t enc = K.encoding();
  return column_mu1(enc, 1) + column_mu1(enc, 2);
}

int v_weight(const IndexMatrix& K) {
  const std::uint64_t enc = K.encoding();
  const int deepest_row = encoded_v(enc);
  assert(deepest_row == std::max(column_mu1(enc, 1), column_mu1(enc, 2)));
  return deepest_row;
}

bool DualNet::contains(const IndexMatrix& K) const {
  // Reduce K against the echelonized basis; membership iff it hits zero.
  std::uint64_t rem = K.encoding();
  while (rem != 0) {
    const int lead = std::bit_width(rem) - 1;
    if (lead >= static_cast<int>(echelon.size()) || echelon[lead] == 0) return false;
    rem ^= echelon[lead];
  }
  return true;
}

DualNet dual_net(const GeneratorPair& gen, int n, int m) {
  if (m < 0 || n < m) throw std::invalid_argument("dual_net: need n >= m >= 0");
  if (n > IndexMatrix::kMaxRows) throw std::length_error("dual_net: n exceeds row cap");
  const int vars = 2 * n;

  // Constraint row r: sum_i C1(i,r) k_{i1}  (+)  sum_i C2(i,r) k_{i2} = 0.
  // Variable bit positions match the IndexMatrix encoding.
  std::vector<std::uint64_t> rows(static_cast<std::size_t>(m), 0);
  for (int r = 1; r <= m; ++r) {
    std::uint64_t mask = 0;
    for (int i = 1; i <= n; ++i) {
      if (gen.entry(1, i, r)) mask |= std::uint64_t{1} << (2 * (i - 1));
      if (gen.entry(2, i, r)) mask |= std::uint64_t{1} << (2 * (i - 1) + 1);
    }
    rows[r - 1] = mask;
  }

  // Gauss-Jordan to reduced row echelon form.
  std::vector<int> pivot_cols;
  int rank = 0;
  for (int col = 0; col < vars && rank < m; ++col) {
    const std::uint64_t bit = std::uint64_t{1} << col;
    int pivot = -1;
    for (int r = rank; r < m; ++r) {
      if (rows[r] & bit) {
        pivot = r;
        break;
      }
    }
    if (pivot == -1) continue;
    std::swap(rows[rank], rows[pivot]);
    for (int r = 0; r < m; ++r)
      if (r != rank && (rows[r] & bit)) rows[r] ^= rows[rank];
    pivot_cols.push_back(col);
    ++rank;
  }

  std::vector<bool> is_pivot(static_cast<std::size_t>(vars), false);
  for (int col : pivot_cols) is_pivot[col] = true;

  DualNet dual;
  dual.n = n;
  dual.m = m;
  dual.rank = rank;
  for (int free_col = 0; free_col < vars; ++free_col) {
    if (is_pivot[free_col]) continue;
    std::uint64_t vec = std::uint64_t{1} << free_col;
    for (int r = 0; r < rank; ++r)
      if (rows[r] & (std::uint64_t{1} << free_col))
        vec |= std::uint64_t{1} << pivot_cols[r];
    dual.basis.push_back(IndexMatrix::from_encoding(vec, n));
  }
  dual.echelon.assign(static_cast<std::size_t>(vars), 0);
  for (const IndexMatrix& b : dual.basis) {
    std::uint64_t v = b.encoding();
    while (v != 0) {
      const int lead = std::bit_width(v) - 1;
      if (dual.echelon[lead] == 0) {
        dual.echelon[lead] = v;
        break;
      }
      v ^= dual.echelon[lead];
    }
  }
  return dual;
}

WeightReport min_weights(const DualNet& dual) {
  const int dim = dual.dimension();
  if (dim > kMaxEnumerationDim)
    throw std::length_error("min_weights: dual dimension " + std::to_string(dim) +
                            " exceeds enumeration cap " + std::to_string(kMaxEnumerationDim));

  WeightReport report;
  report.v_spectrum.assign(static_cast<std::size_t>(dual.n) + 1, 0);
  report.mu1_min = WeightReport::kInfiniteWeight;
  report.v_min = WeightReport::kInfiniteWeight;

  std::vector<std::uint64_t> basis_enc;
  basis_enc.reserve(dual.basis.size());
  for (const IndexMatrix& b : dual.basis) basis_enc.push_back(b.encoding());

  // Gray-code walk over the span; one XOR per visited element.
  std::uint64_t cur = 0;
  for (std::uint64_t c = 1; c < (std::uint64_t{1} << dim); ++c) {
    cur ^= basis_enc[static_cast<std::size_t>(std::countr_zero(c))];
    const int mu = column_mu1(cur, 1) + column_mu1(cur, 2);
    const int v = encoded_v(cur);
    report.mu1_min = std::min(report.mu1_min, mu);
    report.v_min = std::min(report.v_min, v);
    ++report.v_spectrum[static_cast<std::size_t>(v)];
  }

  report.t = report.empty_dual()
                 ? 0
                 : std::clamp(dual.m + 1 - report.mu1_min, 0, dual.m);
  return report;
}

bool check_tvalue_bound(const WeightReport& report, int m) {
  if (report.empty_dual()) return true;
  return 2 * report.v_min >= m - report.t + 1;
}

}  // namespace triqmc
