#pragma once

// QMC integration over the triangle, exact-integral oracles, built-in
// C2 test functions and convergence studies.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "triqmc/digital.hpp"
#include "triqmc/partition.hpp"
#include "triqmc/walsh.hpp"

namespace triqmc {

struct Monomial {
  double coef = 0.0;
  int p = 0;
  int q = 0;
};
using Polynomial = std::vector<Monomial>;

/// Raised when the subdivision oracle hits its depth cap; carries the
/// best estimate reached.
class ToleranceError : public std::runtime_error {
 public:
  ToleranceError(const std::string& what, double best_estimate)
      : std::runtime_error(what), best_(best_estimate) {}
  double best_estimate() const { return best_; }

 private:
  double best_;
};

/// Normalized exact integral (1/|T|) int_T x^p y^q: affine change of
/// variables to the reference simplex plus the Dirichlet formula
/// int u^a v^b = a! b! / (a+b+2)!.
double monomial_integral(const Triangle& t, int p, int q);

double poly_eval(const Polynomial& poly, Vec2 pt);
double poly_integral(const Polynomial& poly, const Triangle& t);

/// Upper bound (generally loose) on the C2 norm of the polynomial over
/// t, from vertex coordinate bounds and falling-factorial derivative
/// bounds per monomial.
double poly_c2_bound(const Polynomial& poly, const Triangle& t);

/// Reference integrator: uniform 4-way refinement with the centroid
/// rule, Richardson-extrapolated across levels, stopping when
/// consecutive extrapolations agree to tol (relative). Throws
/// ToleranceError at the depth cap. Returns the normalized integral.
double oracle_integrate(const RealFn& f, const Triangle& t, double tol,
                        int max_depth = 14);

struct TestFunction {
  std::string id;
  RealFn eval;
  Polynomial poly;  // empty for transcendental functions
  /// Documented C2 norm bound on the default (unit) triangle.
  double c2_norm_bound = 0.0;
  /// Closed-form normalized integral on the default triangle, when known.
  std::optional<double> exact_on_unit;
};

/// const-one, affine (x + 2y), quadratic (x^2 + xy + y^2),
/// exp-sum (e^(x+y)), cos-diff (cos(pi (x - y))).
const std::vector<TestFunction>& builtin_functions();
const TestFunction& builtin_function(const std::string& id);

/// Parses "c,p,q[;c,p,q...]" into a polynomial test function whose norm
/// bound is computed for the given triangle.
TestFunction parse_poly_spec(const std::string& spec, const Triangle& t);

/// Exact normalized integral over t: monomial formula for polynomials,
/// closed form on the default triangle, otherwise the subdivision
/// oracle at 1e-12.
double exact_integral(const TestFunction& f, const Triangle& t);

/// Norm bound valid on an arbitrary triangle (the documented bound on
/// the default one).
double c2_norm_bound_on(const TestFunction& f, const Triangle& t);

/// Exact-for-polynomials quadrature, oracle-based otherwise; the
/// returned callable matches the discretize() contract.
Quadrature make_quadrature(const TestFunction& f);

/// Equal-weight quadrature: mean of f over the points (pairwise
/// reduction). Rejects empty point lists; points must lie in t up to
/// the barycentric tolerance.
double qmc_integrate(const RealFn& f, const std::vector<Vec2>& points,
                     const Triangle& t);

struct ConvergenceRow {
  int m = 0;                   // ceil(log2 N)
  std::uint64_t n_points = 0;  // 2^m or a composite value
  double qmc = 0.0;
  double exact = 0.0;
  double abs_error = 0.0;
};

/// Rows for N = 2^m across [m_lo, m_hi]; with include_non_powers also
/// the dyadic-composite sweep 3, 5, 11, 23, 47, ... below 2^m_hi.
/// Function values are computed once for the largest N and shared by
/// all prefixes.
std::vector<ConvergenceRow> convergence_study(const TestFunction& f,
                                              const GeneratorPair& gen,
                                              const Triangle& t, int m_lo,
                                              int m_hi,
                                              bool include_non_powers = false);

/// Least-squares slope alpha of log2(abs_error) against log2(N), i.e.
/// error ~ N^-alpha. Empty when fewer than 3 rows have nonzero error.
std::optional<double> fit_rate(const std::vector<ConvergenceRow>& rows);

}  // namespace triqmc
