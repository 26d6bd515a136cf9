#include "triqmc/verify.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>
#include <unordered_set>

#include "triqmc/digital.hpp"
#include "triqmc/harness.hpp"
#include "triqmc/numeric.hpp"
#include "triqmc/partition.hpp"
#include "triqmc/quality.hpp"
#include "triqmc/walsh.hpp"

namespace triqmc::verify {
namespace {

std::string fmt(double x) {
  std::ostringstream out;
  out.precision(4);
  out << x;
  return out.str();
}

CheckResult make_result(std::string name, bool pass, std::string detail) {
  return CheckResult{std::move(name), pass, std::move(detail)};
}

IndexMatrix random_index_matrix(std::mt19937_64& rng, int n) {
  const std::uint64_t mask = n == 0 ? 0 : ((~std::uint64_t{0}) >> (64 - 2 * n));
  return IndexMatrix::from_encoding(rng() & mask, n);
}

BitPair random_nonzero_pair(std::mt19937_64& rng) {
  return BitPair::from_index(1 + static_cast<int>(rng() % 3));
}

Vec2 random_point_in(const Triangle& t, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  double u = uni(rng), v = uni(rng);
  if (u + v > 1.0) {
    u = 1.0 - u;
    v = 1.0 - v;
  }
  return t.a + u * (t.b - t.a) + v * (t.c - t.a);
}

// Largest distance from any vertex of `got` to the vertex set of `want`
// and vice versa (both sets have three elements).
double vertex_set_discrepancy(const Triangle& got, const Triangle& want) {
  const std::array<Vec2, 3> g{got.a, got.b, got.c};
  const std::array<Vec2, 3> w{want.a, want.b, want.c};
  double worst = 0.0;
  for (const Vec2& p : g) {
    double best = std::numeric_limits<double>::infinity();
    for (const Vec2& q : w) best = std::min(best, distance(p, q));
    worst = std::max(worst, best);
  }
  for (const Vec2& q : w) {
    double best = std::numeric_limits<double>::infinity();
    for (const Vec2& p : g) best = std::min(best, distance(p, q));
    worst = std::max(worst, best);
  }
  return worst;
}

double median(std::vector<double> xs) {
  std::sort(xs.begin(), xs.end());
  const std::size_t n = xs.size();
  return n % 2 == 1 ? xs[n / 2] : 0.5 * (xs[n / 2 - 1] + xs[n / 2]);
}

DiscretizedTable random_table(std::mt19937_64& rng, int n, const Triangle& t) {
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  DiscretizedTable table;
  table.n = n;
  table.triangle = t;
  table.values.resize(std::uint64_t{1} << (2 * n));
  for (double& v : table.values) v = uni(rng);
  return table;
}

// ---- criterion 1 -----------------------------------------------------

CheckResult check_geometry_identities(std::mt19937_64& rng) {
  const Triangle t = unit_triangle();
  const CenteredFrame frame(t);
  double worst = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 10);
    const IndexMatrix X = random_index_matrix(rng, n);
    const int i = 1 + static_cast<int>(rng() % n);
    const BitPair kappa = random_nonzero_pair(rng);
    const BitPair xi = X.row(i);

    const Triangle base = subregion(X, n, t);
    const Triangle shifted = subregion(X.xor_row(i, kappa), n, t);
    const Vec2 offset = (eta(X, i) * std::ldexp(1.0, -i)) * tau(kappa, xi, frame);

    Triangle predicted;
    if (!xi.is_zero() && xi != kappa) {
      predicted = Triangle{base.a + offset, base.b + offset, base.c + offset};
    } else {
      const Vec2 pivot = frame.to_original(phi(X, i - 1, frame));
      const Vec2 c = 2.0 * pivot + offset;
      predicted = Triangle{c - base.a, c - base.b, c - base.c};
    }
    worst = std::max(worst, vertex_set_discrepancy(shifted, predicted));
  }
  return make_result("geometry-shift-identities", worst <= 1e-12,
                     "max vertex-set discrepancy " + fmt(worst) + " (tol 1e-12)");
}

// ---- criteria 2-4 ----------------------------------------------------

CheckResult check_basu_owen_v_values() {
  const GeneratorPair gen = basu_owen_pair();
  std::string bad;
  for (int m = 1; m <= 12; ++m) {
    const WeightReport rep = min_weights(dual_net(gen, m, m));
    const int expected = (m % 2 == 1) ? (m + 1) / 2 : m / 2 + 1;
    if (rep.v_min != expected) bad += " m=" + std::to_string(m);
  }
  return make_result("basu-owen-v-values", bad.empty(),
                     bad.empty() ? "v(P-perp) matches the closed form for m=1..12"
                                 : "mismatch at" + bad);
}

CheckResult check_nrt_weight_bound() {
  std::string bad;
  for (const auto& [label, gen] :
       {std::pair{"basu-owen", basu_owen_pair()}, std::pair{"pascal", pascal_pair()}}) {
    for (int m = 1; m <= 12; ++m) {
      const WeightReport rep = min_weights(dual_net(gen, m, m));
      if (!check_tvalue_bound(rep, m))
        bad += std::string(" ") + label + ":m=" + std::to_string(m);
    }
  }
  return make_result("nrt-weight-bound", bad.empty(),
                     bad.empty() ? "2 v_min >= m - t + 1 for both generators, m=1..12"
                                 : "violated at" + bad);
}

CheckResult check_pascal_t_zero() {
  const GeneratorPair gen = pascal_pair();
  std::string bad;
  for (int m = 1; m <= 10; ++m) {
    const WeightReport rep = min_weights(dual_net(gen, m, m));
    if (rep.mu1_min != m + 1 || rep.t != 0) bad += " m=" + std::to_string(m);
  }
  return make_result("pascal-t-zero", bad.empty(),
                     bad.empty() ? "mu1_min = m + 1 (t = 0) for m=1..10"
                                 : "mismatch at" + bad);
}

// ---- criterion 5 -----------------------------------------------------

CheckResult check_walsh_machinery(std::mt19937_64& rng) {
  const Triangle t = unit_triangle();
  constexpr double kTol = 1e-14;
  std::uint64_t failures = 0;
  double worst = 0.0;
  const auto record = [&](double lhs, double rhs) {
    const double gap = std::abs(lhs - rhs) / std::max({1.0, std::abs(lhs), std::abs(rhs)});
    worst = std::max(worst, gap);
    if (gap > kTol) ++failures;
  };

  // Character property for both generators, m <= 6, n = 6.
  for (const GeneratorPair& gen : {basu_owen_pair(), pascal_pair()}) {
    for (int m = 0; m <= 6; ++m) {
      const int n = 6;
      const auto addresses = net_addresses(NetSpec{gen, m, n});
      const DualNet dual = dual_net(gen, n, m);
      for (std::uint64_t k_enc = 0; k_enc < (std::uint64_t{1} << (2 * n)); ++k_enc) {
        const IndexMatrix K = IndexMatrix::from_encoding(k_enc, n);
        long long sum = 0;
        for (const IndexMatrix& X : addresses) sum += walsh_eval(K, X);
        const long long expected = dual.contains(K) ? static_cast<long long>(addresses.size()) : 0;
        if (sum != expected) ++failures;
      }
    }
  }

  for (int table_idx = 0; table_idx < 100; ++table_idx) {
    const int n = 1 + table_idx % 5;
    const DiscretizedTable F = random_table(rng, n, t);
    const std::uint64_t cells = F.size();

    // Reconstruction F(X) = sum_K F_hat(K) wal_K(X) via the inverse
    // transform of the spectrum.
    const std::vector<double> spectrum = walsh_spectrum(F);
    DiscretizedTable spec_table = F;
    spec_table.values = spectrum;
    std::vector<double> rebuilt = walsh_spectrum(spec_table);
    for (double& x : rebuilt) x *= static_cast<double>(cells);
    for (std::uint64_t x = 0; x < cells; ++x) record(rebuilt[x], F.values[x]);

    // Spectrum agrees with the direct single-coefficient sum.
    for (int probe = 0; probe < 8; ++probe) {
      const IndexMatrix K = random_index_matrix(rng, n);
      record(spectrum[K.encoding()], walsh_coefficient(F, K));
    }

    // R_w partition: cardinalities and disjoint cover.
    IndexMatrix K = random_index_matrix(rng, n);
    if (K.is_zero()) K = K.xor_row(n, BitPair{1, 1});
    const int v = v_weight(K);
    std::vector<std::uint64_t> counts(static_cast<std::size_t>(v), 0);
    for (std::uint64_t x_enc = 0; x_enc < cells; ++x_enc) {
      const IndexMatrix X = IndexMatrix::from_encoding(x_enc, n);
      int hits = 0;
      for (int w = 0; w < v; ++w) {
        if (rw_membership(X, K, w)) {
          ++counts[static_cast<std::size_t>(w)];
          ++hits;
        }
      }
      if (hits != 1) ++failures;
    }
    const auto expected_size = [&](int w) {
      return static_cast<double>(cells) * std::ldexp(1.0, (w == 0 ? 1 : w) - v);
    };
    for (int w = 0; w < v; ++w)
      if (static_cast<double>(counts[static_cast<std::size_t>(w)]) != expected_size(w))
        ++failures;

    // Partials sum to the full coefficient.
    double partial_total = 0.0;
    for (int w = 0; w < v; ++w) partial_total += rw_coefficient(F, K, w);
    record(partial_total, walsh_coefficient(F, K));

    // The three dyadic-difference identities.
    const DiscretizedTable dv = dyadic_difference(F, K, v);
    for (int w = 0; w < v; ++w)
      record(rw_coefficient(F, K, w), -0.5 * rw_coefficient(dv, K, w));
    for (int w = 1; w < v; ++w) {
      const BitPair kw = K.row(w);
      const double wal_w = wal_pair(kw, sigma_p1_p2(kw).sigma);
      const DiscretizedTable dw = dyadic_difference(F, K, w);
      record(rw_coefficient(F, K, w), 0.5 * wal_w * rw_coefficient(dw, K, w));
      const DiscretizedTable dwv = dyadic_difference(dv, K, w);
      record(rw_coefficient(F, K, w), -0.25 * wal_w * rw_coefficient(dwv, K, w));
    }
  }

  return make_result("walsh-machinery", failures == 0,
                     failures == 0
                         ? "character sums, reconstruction, R_w partition and dyadic "
                           "identities hold; max rel gap " + fmt(worst)
                         : std::to_string(failures) + " sub-checks failed");
}

// ---- criterion 6 -----------------------------------------------------

CheckResult check_decay_bound(int jobs) {
  const Triangle t = unit_triangle();
  const TestFunction& f = builtin_function("exp-sum");
  const Quadrature quad = make_quadrature(f);
  std::uint64_t violations = 0;
  double worst_ratio = 0.0;
  for (int n = 1; n <= 6; ++n) {
    const DecayReport report =
        verify_decay_bound(f.eval, t, n, quad, f.c2_norm_bound, jobs);
    violations += report.violations;
    worst_ratio = std::max(worst_ratio, report.max_ratio);
  }
  return make_result("walsh-decay-bound", violations == 0,
                     violations == 0
                         ? "all coefficients within bounds for n=1..6; max ratio " +
                               fmt(worst_ratio)
                         : std::to_string(violations) + " bound violations");
}

// ---- criterion 7 -----------------------------------------------------

CheckResult check_discretization_quality(std::mt19937_64& rng) {
  const Triangle t = unit_triangle();
  const double d = t.diameter();
  std::string bad;
  double worst_mean_gap = 0.0;
  for (const TestFunction& f : builtin_functions()) {
    const Quadrature quad = make_quadrature(f);
    const double reference = oracle_integrate(f.eval, t, 1e-12);
    std::vector<DiscretizedTable> tables;
    tables.reserve(6);
    for (int n = 1; n <= 6; ++n) {
      tables.push_back(discretize(f.eval, t, n, quad, f.c2_norm_bound));
      const double gap = std::abs(tables.back().mean() - reference);
      worst_mean_gap = std::max(worst_mean_gap, gap);
      if (gap > 1e-9) bad += " mean:" + f.id + ":n=" + std::to_string(n);
    }
    // Pointwise bound |f(y) - F_n(X)| <= sqrt(2) d ||f|| / 2^n.
    for (int sample = 0; sample < 10000; ++sample) {
      const int n = 1 + static_cast<int>(rng() % 6);
      const DiscretizedTable& table = tables[static_cast<std::size_t>(n - 1)];
      const IndexMatrix X = random_index_matrix(rng, n);
      const Vec2 y = random_point_in(subregion(X, n, t), rng);
      const double bound = std::sqrt(2.0) * d * f.c2_norm_bound * std::ldexp(1.0, -n);
      if (std::abs(f.eval(y) - table.at(X)) > bound) {
        bad += " pointwise:" + f.id;
        break;
      }
    }
  }
  return make_result("discretization-quality", bad.empty(),
                     bad.empty() ? "integral preservation (max gap " + fmt(worst_mean_gap) +
                                       ") and pointwise bounds hold for n=1..6"
                                 : "failed at" + bad);
}

// ---- criteria 8-9 ----------------------------------------------------

CheckResult check_affine_exactness() {
  const Triangle t = unit_triangle();
  const GeneratorPair gen = basu_owen_pair();
  const std::vector<Vec2> points = triangle_points(gen, t, std::uint64_t{1} << 12);
  std::string bad;
  double worst = 0.0;
  for (const std::string id : {"const-one", "affine"}) {
    const TestFunction& f = builtin_function(id);
    const double exact = exact_integral(f, t);
    std::vector<double> fvals(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) fvals[i] = f.eval(points[i]);
    for (int k = 1; k <= 6; ++k) {
      const std::uint64_t n = std::uint64_t{1} << (2 * k);
      const double qmc = pairwise_sum(fvals.data(), n) / static_cast<double>(n);
      const double err = std::abs(qmc - exact);
      worst = std::max(worst, err);
      if (err > 1e-13) bad += " " + id + ":N=4^" + std::to_string(k);
    }
  }
  return make_result("affine-exactness", bad.empty(),
                     bad.empty() ? "centroid exactness at N=4^k, k=1..6; max error " + fmt(worst)
                                 : "failed at" + bad);
}

CheckResult check_hand_value() {
  const Triangle t = unit_triangle();
  const std::vector<Vec2> points = triangle_points(basu_owen_pair(), t, 4);
  const double qmc =
      qmc_integrate([](Vec2 p) { return p.x * p.x; }, points, t);
  const double exact = monomial_integral(t, 2, 0);
  const double gap_qmc = std::abs(qmc - 11.0 / 72.0);
  const double gap_exact = std::abs(exact - 1.0 / 6.0);
  const bool pass = gap_qmc <= 1e-15 && gap_exact <= 1e-15;
  return make_result("hand-value-x-squared", pass,
                     "qmc gap " + fmt(gap_qmc) + ", exact gap " + fmt(gap_exact) +
                         " (tol 1e-15)");
}

// ---- criteria 10-11 --------------------------------------------------

CheckResult check_convergence_rate() {
  const Triangle t = unit_triangle();
  std::string bad;
  std::string rates;
  for (const auto& [gen_label, gen] :
       {std::pair{"basu-owen", basu_owen_pair()}, std::pair{"pascal", pascal_pair()}}) {
    for (const std::string id : {"exp-sum", "cos-diff"}) {
      const TestFunction& f = builtin_function(id);
      const auto rows = convergence_study(f, gen, t, 6, 16, false);
      const auto alpha = fit_rate(rows);
      std::vector<double> ratios;
      for (const ConvergenceRow& r : rows) {
        const double m = static_cast<double>(r.m);
        ratios.push_back(r.abs_error * static_cast<double>(r.n_points) / (m * m));
      }
      const double spread = *std::max_element(ratios.begin(), ratios.end()) / median(ratios);
      const std::string label = std::string(gen_label) + "/" + id;
      if (!alpha || *alpha < 0.85 || *alpha > 1.15) bad += " rate:" + label;
      if (spread > 10.0) bad += " spread:" + label;
      rates += " " + label + ":alpha=" + fmt(alpha.value_or(0.0));
    }
  }
  return make_result("convergence-rate", bad.empty(),
                     bad.empty() ? "fitted rates in [0.85, 1.15], spread <= 10:" + rates
                                 : "failed at" + bad + ";" + rates);
}

CheckResult check_non_power_sweep() {
  const Triangle t = unit_triangle();
  std::string bad;
  std::string spreads;
  for (const std::string id : {"exp-sum", "cos-diff"}) {
    const TestFunction& f = builtin_function(id);
    // Composite-N rows pooled over both generators' studies.
    std::vector<double> ratios;
    for (const GeneratorPair& gen : {basu_owen_pair(), pascal_pair()}) {
      for (const ConvergenceRow& r : convergence_study(f, gen, t, 6, 16, true)) {
        if (std::has_single_bit(r.n_points)) continue;
        const double logn = std::log2(static_cast<double>(r.n_points));
        ratios.push_back(r.abs_error * static_cast<double>(r.n_points) /
                         (logn * logn * logn));
      }
    }
    const double spread = *std::max_element(ratios.begin(), ratios.end()) / median(ratios);
    spreads += " " + id + ":max/median=" + fmt(spread);
    if (spread > 10.0) bad += " " + id + "=" + fmt(spread);
  }
  return make_result("non-power-sweep", bad.empty(),
                     bad.empty()
                         ? "error * N / (log2 N)^3 bounded on the composite sweep:" + spreads
                         : "spread exceeded at" + bad);
}

// ---- lemma checks beyond the acceptance criteria ---------------------

CheckResult check_partition_tiling(std::mt19937_64& rng) {
  const Triangle t = unit_triangle();
  std::string bad;
  for (int n = 1; n <= 6; ++n) {
    double area_sum = 0.0;
    const std::uint64_t cells = std::uint64_t{1} << (2 * n);
    for (std::uint64_t enc = 0; enc < cells; ++enc)
      area_sum += subregion(IndexMatrix::from_encoding(enc, n), n, t).area();
    if (std::abs(area_sum - t.area()) > 1e-12 * t.area())
      bad += " area:n=" + std::to_string(n);
    for (int probe = 0; probe < 200; ++probe) {
      const Vec2 y = random_point_in(t, rng);
      int covering = 0, strict = 0;
      for (std::uint64_t enc = 0; enc < cells; ++enc) {
        const Triangle cell = subregion(IndexMatrix::from_encoding(enc, n), n, t);
        if (cell.contains(y, 1e-9)) ++covering;
        if (cell.contains(y, -1e-9)) ++strict;
      }
      if (covering < 1 || strict > 1) {
        bad += " cover:n=" + std::to_string(n);
        break;
      }
    }
  }
  return make_result("partition-tiling", bad.empty(),
                     bad.empty() ? "4^n cells tile T for n=1..6" : "failed at" + bad);
}

CheckResult check_diameter_scaling(std::mt19937_64& rng) {
  const Triangle t{{0.3, -0.2}, {2.1, 0.4}, {0.7, 1.9}};
  double worst = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 8);
    const IndexMatrix X = random_index_matrix(rng, n);
    const double got = subregion(X, n, t).diameter();
    worst = std::max(worst, std::abs(got - t.diameter() * std::ldexp(1.0, -n)));
  }
  return make_result("cell-diameter-scaling", worst <= 1e-12,
                     "max |d(T^(n)(X)) - d(T)/2^n| = " + fmt(worst));
}

CheckResult check_shift_change_of_variables(std::mt19937_64& rng) {
  const Triangle t = unit_triangle();
  std::uniform_real_distribution<double> coef(-2.0, 2.0);
  double worst = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    Polynomial poly;
    for (int term = 0; term < 3; ++term)
      poly.push_back(Monomial{coef(rng), static_cast<int>(rng() % 3),
                              static_cast<int>(rng() % 3)});
    const int n = 1 + static_cast<int>(rng() % 5);
    const IndexMatrix X = random_index_matrix(rng, n);
    const int i = 1 + static_cast<int>(rng() % n);
    const BitPair kappa = random_nonzero_pair(rng);

    const double lhs = poly_integral(poly, subregion(X.xor_row(i, kappa), n, t));
    const double rhs = oracle_integrate(
        [&](Vec2 y) { return poly_eval(poly, point_xor_row(y, X, i, kappa, t)); },
        subregion(X, n, t), 1e-11);
    worst = std::max(worst, std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs)));
  }
  return make_result("shift-change-of-variables", worst <= 1e-8,
                     "max relative gap " + fmt(worst) + " over 50 random cells");
}

CheckResult check_point_shift_properties(std::mt19937_64& rng) {
  const Triangle t = unit_triangle();
  std::string bad;
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 8);
    const IndexMatrix X = random_index_matrix(rng, n);
    const int i = 1 + static_cast<int>(rng() % n);
    const BitPair kappa = random_nonzero_pair(rng);
    const Vec2 y = random_point_in(subregion(X, n, t), rng);
    const Vec2 shifted = point_xor_row(y, X, i, kappa, t);
    if (!subregion(X.xor_row(i, kappa), n, t).contains(shifted, 1e-9)) {
      bad += " containment";
      break;
    }
    if (distance(shifted, y) > 2.0 * t.diameter() * std::ldexp(1.0, -i) + 1e-12) {
      bad += " distance";
      break;
    }
  }
  // Reflection branches are involutions: the literal kappa = 0 formula
  // and the sigma((0,0)) = (1,1) shift the dyadic machinery applies.
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 6);
    IndexMatrix X = random_index_matrix(rng, n);
    const int i = 1 + static_cast<int>(rng() % n);
    X.set_row(i, BitPair{0, 0});
    const Vec2 y = random_point_in(subregion(X, n, t), rng);
    const Vec2 once_zero = point_xor_row(y, X, i, BitPair{0, 0}, t);
    const CenteredFrame frame(t);
    const Vec2 pivot = frame.to_original(phi(X, i - 1, frame));
    const Vec2 expected = 2.0 * pivot - y;
    if (distance(once_zero, expected) > 1e-12) {
      bad += " kappa0-formula";
      break;
    }
    const Vec2 once = point_xor_row(y, X, i, BitPair{1, 1}, t);
    const Vec2 twice = point_xor_row(once, X.xor_row(i, BitPair{1, 1}), i, BitPair{1, 1}, t);
    if (distance(twice, y) > 1e-12) {
      bad += " involution";
      break;
    }
  }
  return make_result("point-shift-properties", bad.empty(),
                     bad.empty() ? "containment, distance bound and reflection involutions hold"
                                 : "failed:" + bad);
}

CheckResult check_second_difference_bound(std::mt19937_64& rng) {
  const Triangle t = unit_triangle();
  std::uniform_real_distribution<double> step(-0.05, 0.05);
  std::string bad;
  for (const std::string id : {"quadratic", "exp-sum", "cos-diff"}) {
    const TestFunction& f = builtin_function(id);
    int accepted = 0;
    while (accepted < 2000) {
      const Vec2 y = random_point_in(t, rng);
      const Vec2 z1{step(rng), step(rng)};
      const Vec2 z2{step(rng), step(rng)};
      if (!t.contains(y + z1) || !t.contains(y + z2) || !t.contains(y + z1 + z2)) continue;
      ++accepted;
      const double lhs = std::abs(f.eval(y + z1 + z2) - f.eval(y + z1) -
                                  f.eval(y + z2) + f.eval(y));
      if (lhs > 2.0 * f.c2_norm_bound * norm(z1) * norm(z2) + 1e-14) {
        bad += " " + id;
        break;
      }
    }
  }
  return make_result("second-difference-bound", bad.empty(),
                     bad.empty() ? "parallelogram differences within 2 ||f|| |z1| |z2|"
                                 : "violated for" + bad);
}

CheckResult check_qmc_error_identity(std::mt19937_64& rng) {
  const Triangle t = unit_triangle();
  double worst = 0.0;
  for (const GeneratorPair& gen : {basu_owen_pair(), pascal_pair()}) {
    for (int trial = 0; trial < 10; ++trial) {
      const int n = 4;
      const int m = 3;
      const DiscretizedTable F = random_table(rng, n, t);
      const auto addresses = net_addresses(NetSpec{gen, m, n});
      const IndexMatrix sigma = random_index_matrix(rng, n);

      const double lhs =
          pairwise_accumulate(0, addresses.size(),
                              [&](std::uint64_t i) {
                                return F.at(addresses[i] ^ sigma);
                              }) /
              static_cast<double>(addresses.size()) -
          F.mean();

      const DualNet dual = dual_net(gen, n, m);
      double rhs = 0.0;
      std::uint64_t cur = 0;
      for (std::uint64_t c = 1; c < dual.size(); ++c) {
        cur ^= dual.basis[static_cast<std::size_t>(std::countr_zero(c))].encoding();
        const IndexMatrix K = IndexMatrix::from_encoding(cur, n);
        rhs += walsh_coefficient(F, K) * walsh_eval(K, sigma);
      }
      worst = std::max(worst, std::abs(lhs - rhs));
    }
  }
  return make_result("qmc-error-identity", worst <= 1e-12,
                     "max |shifted-mean error - dual-coefficient sum| = " + fmt(worst));
}

CheckResult check_subspace_growth() {
  std::string bad;
  for (const auto& [label, gen] :
       {std::pair{"basu-owen", basu_owen_pair()}, std::pair{"pascal", pascal_pair()}}) {
    for (int n = 2; n <= 8; ++n) {
      for (int m = 1; m <= n; ++m) {
        const DualNet dual = dual_net(gen, n, m);
        const WeightReport rep = min_weights(dual);
        if (rep.empty_dual()) continue;
        std::uint64_t cumulative = 1;  // the zero matrix
        for (int w = 0; w <= n; ++w) {
          cumulative += rep.v_spectrum[static_cast<std::size_t>(w)];
          if (w < rep.v_min) continue;
          if (!std::has_single_bit(cumulative)) {
            bad += std::string(" notsubspace:") + label;
            break;
          }
          const int dim = std::bit_width(cumulative) - 1;
          if (dim > 2 * (w - rep.v_min + 1)) {
            bad += std::string(" dim:") + label + ":n=" + std::to_string(n) +
                   ",m=" + std::to_string(m) + ",w=" + std::to_string(w);
          }
        }
      }
    }
  }
  return make_result("dual-subspace-growth", bad.empty(),
                     bad.empty() ? "dim(P-perp cap L(w)) <= 2 (w - v_min + 1) up to n=8"
                                 : "failed at" + bad);
}

CheckResult check_digital_shift_structure() {
  std::string bad;
  for (const auto& [label, gen] :
       {std::pair{"basu-owen", basu_owen_pair()}, std::pair{"pascal", pascal_pair()}}) {
    const int n = gen.row_support((std::uint64_t{1} << 10) - 1);
    for (std::uint64_t h = 1; h < (std::uint64_t{1} << 10); ++h) {
      const std::uint64_t top = std::uint64_t{1} << (std::bit_width(h) - 1);
      if (h == top) continue;
      const IndexMatrix lhs = sequence_element(gen, h, n).X;
      const IndexMatrix rhs =
          sequence_element(gen, h - top, n).X ^ sequence_element(gen, top, n).X;
      if (!(lhs == rhs)) {
        bad += std::string(" ") + label;
        break;
      }
    }
  }
  return make_result("digital-shift-structure", bad.empty(),
                     bad.empty() ? "X(h) = X(h - 2^a) (+) X(2^a) for h < 2^10"
                                 : "failed for" + bad);
}

CheckResult check_net_closure(std::mt19937_64& rng) {
  std::string bad;
  for (const auto& [label, gen] :
       {std::pair{"basu-owen", basu_owen_pair()}, std::pair{"pascal", pascal_pair()}}) {
    for (int m = 1; m <= 6; ++m) {
      const int n = std::max(m, gen.row_support((std::uint64_t{1} << m) - 1));
      const auto addresses = net_addresses(NetSpec{gen, m, n});
      std::unordered_set<std::uint64_t> seen;
      for (const IndexMatrix& X : addresses) seen.insert(X.encoding());
      for (int probe = 0; probe < 200; ++probe) {
        const auto& x = addresses[rng() % addresses.size()];
        const auto& y = addresses[rng() % addresses.size()];
        if (!seen.count((x ^ y).encoding())) {
          bad += std::string(" ") + label + ":m=" + std::to_string(m);
          break;
        }
      }
    }
  }
  return make_result("net-group-closure", bad.empty(),
                     bad.empty() ? "nets closed under row-wise XOR" : "failed at" + bad);
}

CheckResult check_points_inside(std::mt19937_64&) {
  const Triangle skewed{{-1.5, 0.25}, {2.0, -0.75}, {0.4, 3.0}};
  std::string bad;
  for (const auto& [label, gen] :
       {std::pair{"basu-owen", basu_owen_pair()}, std::pair{"pascal", pascal_pair()}}) {
    for (const Triangle& t : {unit_triangle(), skewed}) {
      for (const Vec2& p : triangle_points(gen, t, std::uint64_t{1} << 16)) {
        if (!t.contains(p)) {
          bad += std::string(" ") + label;
          break;
        }
      }
    }
  }
  return make_result("points-inside-domain", bad.empty(),
                     bad.empty() ? "2^16 points lie in the triangle for both generators"
                                 : "point escaped for" + bad);
}

CheckResult check_level_coverage() {
  const GeneratorPair gen = basu_owen_pair();
  std::string bad;
  for (int k = 1; k <= 5; ++k) {
    std::vector<bool> seen(std::size_t{1} << (2 * k), false);
    bool dup = false;
    for (std::uint64_t h = 0; h < (std::uint64_t{1} << (2 * k)); ++h) {
      const IndexMatrix X = sequence_element(gen, h, k).X;
      if (seen[X.encoding()]) dup = true;
      seen[X.encoding()] = true;
    }
    if (dup || !std::all_of(seen.begin(), seen.end(), [](bool b) { return b; }))
      bad += " k=" + std::to_string(k);
  }
  return make_result("basu-owen-level-coverage", bad.empty(),
                     bad.empty() ? "N = 4^k points hit every level-k cell exactly once"
                                 : "failed at" + bad);
}

// A crash or unexpected throw in one check must not take down the rest
// of the suite. Checks with a stated runtime limit fail when they
// exceed it; limit_seconds = 0 means no limit.
template <typename Fn>
void guarded(std::vector<CheckResult>& out, const std::string& name, double limit_seconds,
             Fn&& fn) {
  const auto start = std::chrono::steady_clock::now();
  CheckResult result;
  try {
    result = fn();
  } catch (const std::exception& err) {
    result = make_result(name, false, std::string("exception: ") + err.what());
  }
  result.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (limit_seconds > 0.0) {
    result.detail += " [" + fmt(result.seconds) + " s, limit " + fmt(limit_seconds) + " s]";
    if (result.seconds > limit_seconds) {
      result.pass = false;
      result.detail += " RUNTIME EXCEEDED";
    }
  }
  out.push_back(std::move(result));
}

}  // namespace

std::vector<CheckResult> run_acceptance(const Options& opts) {
  std::mt19937_64 rng(opts.seed);
  std::vector<CheckResult> out;
  guarded(out, "geometry-shift-identities", 5, [&] { return check_geometry_identities(rng); });
  guarded(out, "basu-owen-v-values", 10, [&] { return check_basu_owen_v_values(); });
  guarded(out, "nrt-weight-bound", 0, [&] { return check_nrt_weight_bound(); });
  guarded(out, "pascal-t-zero", 0, [&] { return check_pascal_t_zero(); });
  guarded(out, "walsh-machinery", 30, [&] { return check_walsh_machinery(rng); });
  guarded(out, "walsh-decay-bound", 120, [&] { return check_decay_bound(opts.jobs); });
  guarded(out, "discretization-quality", 0, [&] { return check_discretization_quality(rng); });
  guarded(out, "affine-exactness", 0, [&] { return check_affine_exactness(); });
  guarded(out, "hand-value-x-squared", 0, [&] { return check_hand_value(); });
  guarded(out, "convergence-rate", 60, [&] { return check_convergence_rate(); });
  guarded(out, "non-power-sweep", 0, [&] { return check_non_power_sweep(); });
  return out;
}

std::vector<CheckResult> run_lemma_checks(const Options& opts) {
  std::mt19937_64 rng(opts.seed + 1);
  std::vector<CheckResult> out;
  guarded(out, "partition-tiling", 0, [&] { return check_partition_tiling(rng); });
  guarded(out, "cell-diameter-scaling", 0, [&] { return check_diameter_scaling(rng); });
  guarded(out, "shift-change-of-variables", 0,
          [&] { return check_shift_change_of_variables(rng); });
  guarded(out, "point-shift-properties", 0, [&] { return check_point_shift_properties(rng); });
  guarded(out, "second-difference-bound", 0,
          [&] { return check_second_difference_bound(rng); });
  guarded(out, "qmc-error-identity", 0, [&] { return check_qmc_error_identity(rng); });
  guarded(out, "dual-subspace-growth", 0, [&] { return check_subspace_growth(); });
  guarded(out, "digital-shift-structure", 0, [&] { return check_digital_shift_structure(); });
  guarded(out, "net-group-closure", 0, [&] { return check_net_closure(rng); });
  guarded(out, "points-inside-domain", 0, [&] { return check_points_inside(rng); });
  guarded(out, "basu-owen-level-coverage", 0, [&] { return check_level_coverage(); });
  return out;
}

bool all_passed(const std::vector<CheckResult>& results) {
  return std::all_of(results.begin(), results.end(),
                     [](const CheckResult& r) { return r.pass; });
}

}  // namespace triqmc::verify
