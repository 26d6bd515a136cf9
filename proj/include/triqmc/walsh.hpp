#pragma once

// Dyadic Walsh analysis of discretized functions on the recursive
// triangle partition: Walsh coefficients, the R_w decomposition, dyadic
// differences and the coefficient decay bounds.

#include <cstdint>
#include <functional>
#include <vector>

#include "triqmc/bitcore.hpp"
#include "triqmc/partition.hpp"

namespace triqmc {

using RealFn = std::function<double(Vec2)>;

/// Normalized integral (1/|T|) int_T f of a function over a triangle.
using Quadrature = std::function<double(const RealFn&, const Triangle&)>;

/// Cell averages F_n(X) of f over every level-n subtriangle, stored
/// densely by the row-major encoding of X.
struct DiscretizedTable {
  int n = 0;
  Triangle triangle;
  double f_norm = 0.0;  // C2 norm bound used by decay checks; 0 = not supplied
  std::vector<double> values;  // exactly 4^n entries

  std::uint64_t size() const { return values.size(); }
  double at(const IndexMatrix& X) const { return values[X.encoding()]; }
  double mean() const;
};

/// Walsh character: (-1)^(sum_ij kappa_ij xi_ij). Row counts must agree.
int walsh_eval(const IndexMatrix& K, const IndexMatrix& X);

DiscretizedTable discretize(const RealFn& f, const Triangle& t, int n,
                            const Quadrature& quad, double f_norm = 0.0,
                            int jobs = 1);

/// F_hat(K) = 4^-n sum_X F(X) wal_K(X).
double walsh_coefficient(const DiscretizedTable& F, const IndexMatrix& K);

/// All 4^n coefficients at once (fast transform), indexed by K encoding.
std::vector<double> walsh_spectrum(const DiscretizedTable& F);

/// X in R_w(K): for w = 0 rows 1..v(K)-1 lie in N(kappa_i); for w >= 1
/// row w lies in P(kappa_w) and rows w+1..v(K)-1 lie in N(kappa_i). Rows
/// from v(K) on are unconstrained. Requires v(K) >= 1 and 0 <= w < v(K).
bool rw_membership(const IndexMatrix& X, const IndexMatrix& K, int w);

/// Partial Walsh sum over R_w(K); the partials over w sum to the full
/// coefficient.
double rw_coefficient(const DiscretizedTable& F, const IndexMatrix& K, int w);

/// i-th dyadic difference: X -> F(X (+)_i sigma(kappa_i)) +
/// wal_{kappa_i}(sigma(kappa_i)) F(X).
DiscretizedTable dyadic_difference(const DiscretizedTable& F, const IndexMatrix& K, int i);

struct DecayRow {
  std::uint64_t k_encoding = 0;
  int v = 0;
  double coeff = 0.0;  // |F_hat(K)|
  double bound = 0.0;  // D ||f|| v(K) / 2^(2 v(K))
  double ratio = 0.0;
};

struct DecayReport {
  std::vector<DecayRow> rows;  // one row per nonzero K
  double max_ratio = 0.0;      // worst ratio across all three bound families
  std::uint64_t violations = 0;
  double d_constant = 0.0;     // max(2 sqrt(2) d(T), 4 d(T)^2)
};

/// Checks, for every nonzero K, |R_0 F_hat| <= 2 sqrt(2) d ||f|| / 2^(2v),
/// |R_w F_hat| <= 4 d^2 ||f|| / 2^(2v) for w >= 1, and the summed bound on
/// |F_hat(K)|. The table must carry a positive f_norm.
DecayReport verify_decay_bound(const DiscretizedTable& F, int jobs = 1);

/// Convenience: discretize then check.
DecayReport verify_decay_bound(const RealFn& f, const Triangle& t, int n,
                               const Quadrature& quad, double f_norm,
                               int jobs = 1);

}  // namespace triqmc
