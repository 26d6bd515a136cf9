#include "triqmc/walsh.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

#include "triqmc/numeric.hpp"
#include "triqmc/quality.hpp"

namespace triqmc {
namespace {

int encoded_v(std::uint64_t enc) {
  if (enc == 0) return 0;
  return (std::bit_width(enc) - 1) / 2 + 1;
}

int sign_of_parity(std::uint64_t bits) {
  return (std::popcount(bits) & 1) ? -1 : 1;
}

BitPair encoded_row(std::uint64_t enc, int i) {
  return BitPair::from_index(static_cast<int>((enc >> (2 * (i - 1))) & 3u));
}

// Membership of an encoded X in R_w(K); v = v(K) >= 1, 0 <= w < v.
// Rows 1..w-1 are free, row w (when w >= 1) must lie in P(kappa_w),
// rows w+1..v-1 must lie in N(kappa_i), rows >= v are free.
bool rw_member_enc(std::uint64_t x_enc, std::uint64_t k_enc, int w, int v) {
  if (w >= 1 && !in_P(encoded_row(k_enc, w), encoded_row(x_enc, w))) return false;
  for (int i = w + 1; i <= v - 1; ++i)
    if (in_P(encoded_row(k_enc, i), encoded_row(x_enc, i))) return false;
  return true;
}

void check_same_rows(const IndexMatrix& K, const IndexMatrix& X) {
  if (K.rows() != X.rows())
    throw std::invalid_argument("walsh: row count mismatch");
}

}  // namespace

double DiscretizedTable::mean() const {
  return pairwise_sum(values.data(), values.size()) / static_cast<double>(values.size());
}

int walsh_eval(const IndexMatrix& K, const IndexMatrix& X) {
  check_same_rows(K, X);
  return sign_of_parity(K.encoding() & X.encoding());
}

DiscretizedTable discretize(const RealFn& f, const Triangle& t, int n,
                            const Quadrature& quad, double f_norm, int jobs) {
  if (n < 0) throw std::invalid_argument("discretize: bad level");
  if (n > 13) throw std::length_error("discretize: 4^n table entries exceed memory at n > 13");
  if (degenerate(t)) throw std::invalid_argument("discretize: degenerate triangle");

  DiscretizedTable table;
  table.n = n;
  table.triangle = t;
  table.f_norm = f_norm;
  table.values.assign(std::uint64_t{1} << (2 * n), 0.0);

  // Depth-first walk of the partition tree; each leaf is one table slot.
  const std::function<void(const Triangle&, int, std::uint64_t)> walk =
      [&](const Triangle& cell, int depth, std::uint64_t enc) {
        if (depth == n) {
          table.values[enc] = quad(f, cell);
          return;
        }
        for (int idx = 0; idx < 4; ++idx)
          walk(subtriangle(cell, BitPair::from_index(idx)), depth + 1,
               enc | (static_cast<std::uint64_t>(idx) << (2 * depth)));
      };

  const int chunk_level = std::min(n, jobs > 1 ? 3 : 0);
  const std::uint64_t chunks = std::uint64_t{1} << (2 * chunk_level);
  parallel_for(chunks, jobs, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t p = lo; p < hi; ++p) {
      const IndexMatrix prefix = IndexMatrix::from_encoding(p, chunk_level);
      walk(subregion(prefix, chunk_level, t), chunk_level, p);
    }
  });
  return table;
}

double walsh_coefficient(const DiscretizedTable& F, const IndexMatrix& K) {
  if (K.rows() != F.n) throw std::invalid_argument("walsh_coefficient: row count mismatch");
  const std::uint64_t k_enc = K.encoding();
  const double sum = pairwise_accumulate(0, F.size(), [&](std::uint64_t x) {
    return sign_of_parity(k_enc & x) * F.values[x];
  });
  return sum / static_cast<double>(F.size());
}

std::vector<double> walsh_spectrum(const DiscretizedTable& F) {
  std::vector<double> out = F.values;
  const std::size_t size = out.size();
  for (std::size_t half = 1; half < size; half <<= 1) {
    for (std::size_t block = 0; block < size; block += 2 * half) {
      for (std::size_t i = block; i < block + half; ++i) {
        const double lo = out[i];
        const double hi = out[i + half];
        out[i] = lo + hi;
        out[i + half] = lo - hi;
      }
    }
  }
  const double inv = 1.0 / static_cast<double>(size);
  for (double& x : out) x *= inv;
  return out;
}

bool rw_membership(const IndexMatrix& X, const IndexMatrix& K, int w) {
  check_same_rows(K, X);
  const int v = v_weight(K);
  if (v < 1) throw std::invalid_argument("rw_membership: v(K) must be >= 1");
  if (w < 0 || w > v - 1) throw std::out_of_range("rw_membership: w out of range");
  return rw_member_enc(X.encoding(), K.encoding(), w, v);
}

double rw_coefficient(const DiscretizedTable& F, const IndexMatrix& K, int w) {
  if (K.rows() != F.n) throw std::invalid_argument("rw_coefficient: row count mismatch");
  const int v = v_weight(K);
  if (v < 1) throw std::invalid_argument("rw_coefficient: v(K) must be >= 1");
  if (w < 0 || w > v - 1) throw std::out_of_range("rw_coefficient: w out of range");
  const std::uint64_t k_enc = K.encoding();
  const double sum = pairwise_accumulate(0, F.size(), [&](std::uint64_t x) {
    if (!rw_member_enc(x, k_enc, w, v)) return 0.0;
    return sign_of_parity(k_enc & x) * F.values[x];
  });
  return sum / static_cast<double>(F.size());
}

DiscretizedTable dyadic_difference(const DiscretizedTable& F, const IndexMatrix& K, int i) {
  if (K.rows() != F.n) throw std::invalid_argument("dyadic_difference: row count mismatch");
  if (i < 1 || i > F.n) throw std::out_of_range("dyadic_difference: row index out of range");
  const BitPair kappa = K.row(i);
  const BitPair sigma = sigma_p1_p2(kappa).sigma;
  const double wal = wal_pair(kappa, sigma);
  const std::uint64_t shift = static_cast<std::uint64_t>(sigma.index()) << (2 * (i - 1));

  DiscretizedTable out;
  out.n = F.n;
  out.triangle = F.triangle;
  out.values.resize(F.size());
  for (std::uint64_t x = 0; x < F.size(); ++x)
    out.values[x] = F.values[x ^ shift] + wal * F.values[x];
  return out;
}

DecayReport verify_decay_bound(const DiscretizedTable& F, int jobs) {
  if (!(F.f_norm > 0.0))
    throw std::invalid_argument("verify_decay_bound: table carries no C2 norm bound");
  const double d = F.triangle.diameter();
  const double bound_r0 = 2.0 * std::sqrt(2.0) * d * F.f_norm;
  const double bound_rw = 4.0 * d * d * F.f_norm;
  const double d_const = std::max(2.0 * std::sqrt(2.0) * d, 4.0 * d * d);

  DecayReport report;
  report.d_constant = d_const;
  if (F.size() <= 1) return report;
  report.rows.resize(F.size() - 1);

  std::vector<double> chunk_max(F.size() - 1, 0.0);
  std::vector<std::uint64_t> chunk_violations(F.size() - 1, 0);

  parallel_for(F.size() - 1, jobs, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t slot = lo; slot < hi; ++slot) {
      const std::uint64_t k_enc = slot + 1;
      const int v = encoded_v(k_enc);
      const double decay = std::ldexp(1.0, -2 * v);  // 2^(-2v)
      double total = 0.0;
      double worst = 0.0;
      std::uint64_t bad = 0;
      for (int w = 0; w < v; ++w) {
        const double partial_sum = pairwise_accumulate(0, F.size(), [&](std::uint64_t x) {
          if (!rw_member_enc(x, k_enc, w, v)) return 0.0;
          return sign_of_parity(k_enc & x) * F.values[x];
        });
        const double partial = partial_sum / static_cast<double>(F.size());
        total += partial;
        const double partial_bound = (w == 0 ? bound_r0 : bound_rw) * decay;
        const double ratio = std::abs(partial) / partial_bound;
        worst = std::max(worst, ratio);
        if (std::abs(partial) > partial_bound) ++bad;
      }
      const double total_bound = d_const * F.f_norm * v * decay;
      const double total_ratio = std::abs(total) / total_bound;
      worst = std::max(worst, total_ratio);
      if (std::abs(total) > total_bound) ++bad;
      report.rows[slot] = DecayRow{k_enc, v, std::abs(total), total_bound, total_ratio};
      chunk_max[slot] = worst;
      chunk_violations[slot] = bad;
    }
  });

  for (std::size_t slot = 0; slot + 1 < F.size(); ++slot) {
    report.max_ratio = std::max(report.max_ratio, chunk_max[slot]);
    report.violations += chunk_violations[slot];
  }
  return report;
}

DecayReport verify_decay_bound(const RealFn& f, const Triangle& t, int n,
                               const Quadrature& quad, double f_norm, int jobs) {
  if (!(f_norm > 0.0))
    throw std::invalid_argument("verify_decay_bound: C2 norm bound must be positive");
  return verify_decay_bound(discretize(f, t, n, quad, f_norm, jobs), jobs);
}

}  // namespace triqmc
