#include "triqmc/harness.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <numbers>
#include <sstream>

#include "triqmc/numeric.hpp"

namespace triqmc {
namespace {

constexpr int kMaxBinom = 64;

double binom(int n, int k) {
  static const auto table = [] {
    std::array<std::array<double, kMaxBinom + 1>, kMaxBinom + 1> t{};
    for (int i = 0; i <= kMaxBinom; ++i) {
      t[i][0] = 1.0;
      for (int j = 1; j <= i; ++j)
        t[i][j] = t[i - 1][j - 1] + (j <= i - 1 ? t[i - 1][j] : 0.0);
    }
    return t;
  }();
  if (k < 0 || k > n) return 0.0;
  return table[n][k];
}

// int over the reference simplex of u^a v^b: a! b! / (a+b+2)!.
double simplex_moment(int a, int b) {
  return 1.0 / (binom(a + b, a) * (a + b + 1) * (a + b + 2));
}

double falling(int p, int d) {
  double out = 1.0;
  for (int i = 0; i < d; ++i) out *= p - i;
  return out;
}

double pow_nonneg(double base, int e) {
  // 0^0 = 1 by convention here.
  double out = 1.0;
  for (int i = 0; i < e; ++i) out *= base;
  return out;
}

// Composite centroid-rule sum of f over the 4^depth level-`depth`
// cells; tree-structured accumulation.
double centroid_level_sum(const RealFn& f, const Triangle& cell, int depth) {
  if (depth == 0) return f(cell.centroid());
  double s = 0.0;
  for (int idx = 0; idx < 4; ++idx)
    s += centroid_level_sum(f, subtriangle(cell, BitPair::from_index(idx)), depth - 1);
  return s;
}

}  // namespace

double monomial_integral(const Triangle& t, int p, int q) {
  if (p < 0 || q < 0) throw std::invalid_argument("monomial_integral: negative degree");
  if (p + q + 2 > kMaxBinom) throw std::invalid_argument("monomial_integral: degree too large");
  // x(u,v) = ax + u ux + v vx over the reference simplex, similarly y;
  // the Jacobian cancels against the normalization up to the factor 2.
  const double ax = t.a.x, ay = t.a.y;
  const double ux = t.b.x - t.a.x, uy = t.b.y - t.a.y;
  const double vx = t.c.x - t.a.x, vy = t.c.y - t.a.y;

  double total = 0.0;
  for (int i = 0; i <= p; ++i) {
    for (int j = 0; i + j <= p; ++j) {
      const double cx = binom(p, i) * binom(p - i, j) * pow_nonneg(ux, i) *
                        pow_nonneg(vx, j) * pow_nonneg(ax, p - i - j);
      if (cx == 0.0) continue;
      for (int k = 0; k <= q; ++k) {
        for (int l = 0; k + l <= q; ++l) {
          const double cy = binom(q, k) * binom(q - k, l) * pow_nonneg(uy, k) *
                            pow_nonneg(vy, l) * pow_nonneg(ay, q - k - l);
          if (cy == 0.0) continue;
          total += cx * cy * simplex_moment(i + k, j + l);
        }
      }
    }
  }
  return 2.0 * total;
}

double poly_eval(const Polynomial& poly, Vec2 pt) {
  double out = 0.0;
  for (const Monomial& m : poly) out += m.coef * pow_nonneg(pt.x, m.p) * pow_nonneg(pt.y, m.q);
  return out;
}

double poly_integral(const Polynomial& poly, const Triangle& t) {
  double out = 0.0;
  for (const Monomial& m : poly) out += m.coef * monomial_integral(t, m.p, m.q);
  return out;
}

double poly_c2_bound(const Polynomial& poly, const Triangle& t) {
  const double bx = std::max({std::abs(t.a.x), std::abs(t.b.x), std::abs(t.c.x)});
  const double by = std::max({std::abs(t.a.y), std::abs(t.b.y), std::abs(t.c.y)});
  double worst = 0.0;
  for (int d1 = 0; d1 <= 2; ++d1) {
    for (int d2 = 0; d1 + d2 <= 2; ++d2) {
      double sup = 0.0;
      for (const Monomial& m : poly) {
        if (m.p < d1 || m.q < d2) continue;
        sup += std::abs(m.coef) * falling(m.p, d1) * falling(m.q, d2) *
               pow_nonneg(bx, m.p - d1) * pow_nonneg(by, m.q - d2);
      }
      worst = std::max(worst, sup);
    }
  }
  return worst;
}

double oracle_integrate(const RealFn& f, const Triangle& t, double tol, int max_depth) {
  if (!(tol > 0.0)) throw std::invalid_argument("oracle_integrate: tol must be positive");
  double s_prev = centroid_level_sum(f, t, 0);
  double r_prev = s_prev;
  for (int depth = 1; depth <= max_depth; ++depth) {
    const double s = centroid_level_sum(f, t, depth) / std::ldexp(1.0, 2 * depth);
    const double r = s + (s - s_prev) / 3.0;  // centroid rule is O(4^-depth)
    if (std::abs(r - r_prev) <= tol * std::max(1.0, std::abs(r))) return r;
    s_prev = s;
    r_prev = r;
  }
  throw ToleranceError("oracle_integrate: tolerance not reached at depth cap", r_prev);
}

const std::vector<TestFunction>& builtin_functions() {
  static const std::vector<TestFunction> fns = [] {
    std::vector<TestFunction> v;
    v.push_back({"const-one",
                 [](Vec2) { return 1.0; },
                 {{1.0, 0, 0}},
                 1.0,  // sup |f| = 1, derivatives vanish
                 1.0});
    v.push_back({"affine",
                 [](Vec2 p) { return p.x + 2.0 * p.y; },
                 {{1.0, 1, 0}, {2.0, 0, 1}},
                 3.0,  // |x| + 2|y| <= 3 on the unit triangle
                 1.0});
    v.push_back({"quadratic",
                 [](Vec2 p) { return p.x * p.x + p.x * p.y + p.y * p.y; },
                 {{1.0, 2, 0}, {1.0, 1, 1}, {1.0, 0, 2}},
                 4.0,  // values <= 1, first partials <= 3, second <= 2
                 std::nullopt});
    v.push_back({"exp-sum",
                 [](Vec2 p) { return std::exp(p.x + p.y); },
                 {},
                 2.0 * std::numbers::e,  // every partial equals e^(x+y) <= e
                 // int_0^1 int_0^(1-x) e^(x+y) dy dx = int_0^1 (e - e^x) dx = 1,
                 // so the normalized integral over the unit triangle is exactly 2.
                 2.0});
    v.push_back({"cos-diff",
                 [](Vec2 p) { return std::cos(std::numbers::pi * (p.x - p.y)); },
                 {},
                 std::numbers::pi * std::numbers::pi,  // second partials reach pi^2
                 4.0 / (std::numbers::pi * std::numbers::pi)});
    return v;
  }();
  return fns;
}

const TestFunction& builtin_function(const std::string& id) {
  for (const TestFunction& f : builtin_functions())
    if (f.id == id) return f;
  throw std::invalid_argument("unknown test function: " + id);
}

TestFunction parse_poly_spec(const std::string& spec, const Triangle& t) {
  Polynomial poly;
  std::istringstream terms(spec);
  for (std::string term; std::getline(terms, term, ';');) {
    std::istringstream in(term);
    Monomial m;
    char comma1 = 0, comma2 = 0;
    if (!(in >> m.coef >> comma1 >> m.p >> comma2 >> m.q) || comma1 != ',' ||
        comma2 != ',' || m.p < 0 || m.q < 0)
      throw std::invalid_argument("poly spec: expected 'coef,p,q[;coef,p,q...]', got '" +
                                  spec + "'");
    poly.push_back(m);
  }
  if (poly.empty()) throw std::invalid_argument("poly spec: empty polynomial");
  TestFunction f;
  f.id = "poly:" + spec;
  f.poly = poly;
  f.eval = [poly](Vec2 p) { return poly_eval(poly, p); };
  f.c2_norm_bound = poly_c2_bound(poly, t);
  return f;
}

double exact_integral(const TestFunction& f, const Triangle& t) {
  if (!f.poly.empty()) return poly_integral(f.poly, t);
  if (f.exact_on_unit && t == unit_triangle()) return *f.exact_on_unit;
  return oracle_integrate(f.eval, t, 1e-12);
}

double c2_norm_bound_on(const TestFunction& f, const Triangle& t) {
  if (t == unit_triangle() && f.c2_norm_bound > 0.0) return f.c2_norm_bound;
  if (!f.poly.empty()) return poly_c2_bound(f.poly, t);
  if (f.id == "exp-sum") {
    // e^(x+y) and all its partials are maximized at a vertex.
    const double s = std::max({t.a.x + t.a.y, t.b.x + t.b.y, t.c.x + t.c.y});
    return std::exp(s);
  }
  if (f.id == "cos-diff") return std::numbers::pi * std::numbers::pi;
  throw std::invalid_argument("no C2 norm bound available for '" + f.id +
                              "' on this triangle");
}

Quadrature make_quadrature(const TestFunction& f) {
  if (!f.poly.empty()) {
    const Polynomial poly = f.poly;
    return [poly](const RealFn&, const Triangle& cell) { return poly_integral(poly, cell); };
  }
  return [](const RealFn& fn, const Triangle& cell) {
    return oracle_integrate(fn, cell, 1e-12);
  };
}

double qmc_integrate(const RealFn& f, const std::vector<Vec2>& points,
                     const Triangle& t) {
  if (points.empty()) throw std::invalid_argument("qmc_integrate: empty point list");
  for (const Vec2& p : points)
    if (!t.contains(p)) throw std::domain_error("qmc_integrate: point outside the triangle");
  const double sum = pairwise_accumulate(
      0, points.size(), [&](std::uint64_t i) { return f(points[i]); });
  return sum / static_cast<double>(points.size());
}

std::vector<ConvergenceRow> convergence_study(const TestFunction& f,
                                              const GeneratorPair& gen,
                                              const Triangle& t, int m_lo,
                                              int m_hi, bool include_non_powers) {
  if (m_lo < 0 || m_hi < m_lo) throw std::invalid_argument("convergence_study: bad m range");
  if (m_hi >= 40) throw std::invalid_argument("convergence_study: m range too large");
  const double exact = exact_integral(f, t);

  std::vector<std::uint64_t> counts;
  for (int m = m_lo; m <= m_hi; ++m) counts.push_back(std::uint64_t{1} << m);
  if (include_non_powers) {
    // Composite counts within the study range: the doubling-plus-one
    // family 3, 5, 11, 23, 47, ... whose members have the multi-term
    // dyadic expansion 2^m + 2^(m-2) + ... + 1.
    const std::uint64_t lo = std::uint64_t{1} << m_lo;
    const std::uint64_t cap = std::uint64_t{1} << m_hi;
    if (lo <= 3 && 3 <= cap) counts.push_back(3);
    for (std::uint64_t n = 5; n <= cap; n = 2 * n + 1)
      if (n >= lo) counts.push_back(n);
  }
  std::sort(counts.begin(), counts.end());
  counts.erase(std::unique(counts.begin(), counts.end()), counts.end());

  // One evaluation per point, shared by every prefix.
  const std::vector<Vec2> points = triangle_points(gen, t, counts.back());
  std::vector<double> fvals(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) fvals[i] = f.eval(points[i]);

  std::vector<ConvergenceRow> rows;
  rows.reserve(counts.size());
  for (std::uint64_t n : counts) {
    const double qmc = pairwise_sum(fvals.data(), n) / static_cast<double>(n);
    ConvergenceRow row;
    row.n_points = n;
    row.m = std::has_single_bit(n) ? std::bit_width(n) - 1 : std::bit_width(n);
    row.qmc = qmc;
    row.exact = exact;
    row.abs_error = std::abs(qmc - exact);
    rows.push_back(row);
  }
  return rows;
}

std::optional<double> fit_rate(const std::vector<ConvergenceRow>& rows) {
  std::vector<double> xs, ys;
  for (const ConvergenceRow& r : rows) {
    if (r.abs_error <= 0.0 || r.n_points < 2) continue;
    xs.push_back(std::log2(static_cast<double>(r.n_points)));
    ys.push_back(std::log2(r.abs_error));
  }
  if (xs.size() < 3) return std::nullopt;
  const double n = static_cast<double>(xs.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  const double denom = n * sxx - sx * sx;
  if (denom == 0.0) return std::nullopt;
  return -(n * sxy - sx * sy) / denom;
}

}  // namespace triqmc
