#include <doctest.h>

#include <stdexcept>
#include <cmath>
#include <random>

#include "triqmc/harness.hpp"
#include "triqmc/quality.hpp"
#include "triqmc/walsh.hpp"

using namespace triqmc;

namespace {

const Triangle kUnit = unit_triangle();

DiscretizedTable random_table(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  DiscretizedTable t;
  t.n = n;
  t.triangle = kUnit;
  t.values.resize(std::uint64_t{1} << (2 * n));
  for (double& v : t.values) v = uni(rng);
  return t;
}

DiscretizedTable constant_table(int n, double c) {
  DiscretizedTable t;
  t.n = n;
  t.triangle = kUnit;
  t.values.assign(std::uint64_t{1} << (2 * n), c);
  return t;
}

bool close(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

IndexMatrix from_rows(std::initializer_list<BitPair> rows) {
  IndexMatrix m(static_cast<int>(rows.size()));
  int i = 1;
  for (const BitPair& r : rows) m.set_row(i++, r);
  return m;
}

}  // namespace

TEST_CASE("walsh characters") {
  const IndexMatrix zero(2);
  for (std::uint64_t enc = 0; enc < 16; ++enc)
    CHECK(walsh_eval(zero, IndexMatrix::from_encoding(enc, 2)) == 1);

  CHECK(walsh_eval(from_rows({BitPair{1, 0}}), from_rows({BitPair{1, 1}})) == -1);
  CHECK_THROWS_AS(walsh_eval(IndexMatrix(2), IndexMatrix(3)), std::invalid_argument);

  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 6);
    const std::uint64_t mask = (std::uint64_t{1} << (2 * n)) - 1;
    const IndexMatrix k = IndexMatrix::from_encoding(rng() & mask, n);
    const IndexMatrix x = IndexMatrix::from_encoding(rng() & mask, n);
    const IndexMatrix y = IndexMatrix::from_encoding(rng() & mask, n);
    REQUIRE(walsh_eval(k, x ^ y) == walsh_eval(k, x) * walsh_eval(k, y));
  }
}

TEST_CASE("discretize cell averages") {
  const TestFunction& affine_x = parse_poly_spec("1,1,0", kUnit);
  const Quadrature exact = make_quadrature(affine_x);

  const DiscretizedTable table = discretize(affine_x.eval, kUnit, 1, exact);
  CHECK(table.at(from_rows({BitPair{0, 0}})) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(table.at(from_rows({BitPair{1, 0}})) == doctest::Approx(1.0 / 6.0).epsilon(1e-15));
  CHECK(table.at(from_rows({BitPair{0, 1}})) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(table.at(from_rows({BitPair{1, 1}})) == doctest::Approx(1.0 / 6.0).epsilon(1e-15));

  const DiscretizedTable constant =
      discretize([](Vec2) { return 3.25; }, kUnit, 2,
                 [](const RealFn& f, const Triangle& cell) {
                   return oracle_integrate(f, cell, 1e-12);
                 });
  for (double v : constant.values) CHECK(v == doctest::Approx(3.25).epsilon(1e-14));

  // Worker count must not change a single bit.
  const TestFunction& expf = builtin_function("exp-sum");
  const Quadrature quad = make_quadrature(expf);
  const DiscretizedTable serial = discretize(expf.eval, kUnit, 3, quad, 0.0, 1);
  const DiscretizedTable parallel = discretize(expf.eval, kUnit, 3, quad, 0.0, 4);
  REQUIRE(serial.values == parallel.values);
}

TEST_CASE("walsh coefficients of x at level 1") {
  const TestFunction& affine_x = parse_poly_spec("1,1,0", kUnit);
  const DiscretizedTable table = discretize(affine_x.eval, kUnit, 1, make_quadrature(affine_x));

  CHECK(walsh_coefficient(table, IndexMatrix(1)) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(walsh_coefficient(table, from_rows({BitPair{1, 0}})) ==
        doctest::Approx(1.0 / 6.0).epsilon(1e-15));

  const DiscretizedTable c = constant_table(2, 2.5);
  CHECK(walsh_coefficient(c, IndexMatrix(2)) == doctest::Approx(2.5));
  for (std::uint64_t enc = 1; enc < 16; ++enc)
    CHECK(walsh_coefficient(c, IndexMatrix::from_encoding(enc, 2)) == doctest::Approx(0.0));

  std::mt19937_64 rng(17);
  const DiscretizedTable f = random_table(rng, 4);
  const std::vector<double> spectrum = walsh_spectrum(f);
  for (int probe = 0; probe < 32; ++probe) {
    const IndexMatrix k = IndexMatrix::from_encoding(rng() & 0xFF, 4);
    REQUIRE(close(spectrum[k.encoding()], walsh_coefficient(f, k), 1e-14));
  }
}

TEST_CASE("walsh reconstruction") {
  std::mt19937_64 rng(19);
  for (int n = 1; n <= 4; ++n) {
    const DiscretizedTable f = random_table(rng, n);
    const std::vector<double> spectrum = walsh_spectrum(f);
    for (std::uint64_t x_enc = 0; x_enc < f.size(); ++x_enc) {
      const IndexMatrix x = IndexMatrix::from_encoding(x_enc, n);
      double rebuilt = 0.0;
      for (std::uint64_t k_enc = 0; k_enc < f.size(); ++k_enc)
        rebuilt += spectrum[k_enc] * walsh_eval(IndexMatrix::from_encoding(k_enc, n), x);
      REQUIRE(close(rebuilt, f.values[x_enc], 1e-12));
    }
  }
}

TEST_CASE("R_w membership and partial coefficients") {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 5);
    const std::uint64_t mask = (std::uint64_t{1} << (2 * n)) - 1;
    IndexMatrix k = IndexMatrix::from_encoding(rng() & mask, n);
    if (k.is_zero()) k.set_row(1, BitPair{1, 0});
    const int v = v_weight(k);

    std::vector<std::uint64_t> counts(static_cast<std::size_t>(v), 0);
    for (std::uint64_t enc = 0; enc <= mask; ++enc) {
      const IndexMatrix x = IndexMatrix::from_encoding(enc, n);
      int hits = 0;
      for (int w = 0; w < v; ++w)
        if (rw_membership(x, k, w)) {
          ++hits;
          ++counts[static_cast<std::size_t>(w)];
        }
      REQUIRE(hits == 1);  // the R_w sets partition everything
    }
    const double cells = std::ldexp(1.0, 2 * n);
    CHECK(static_cast<double>(counts[0]) == cells * std::ldexp(1.0, 1 - v));
    for (int w = 1; w < v; ++w)
      CHECK(static_cast<double>(counts[static_cast<std::size_t>(w)]) ==
            cells * std::ldexp(1.0, w - v));

    const DiscretizedTable f = random_table(rng, n);
    double total = 0.0;
    for (int w = 0; w < v; ++w) total += rw_coefficient(f, k, w);
    REQUIRE(close(total, walsh_coefficient(f, k), 1e-14));
    if (v == 1) REQUIRE(rw_coefficient(f, k, 0) == walsh_coefficient(f, k));

    CHECK_THROWS_AS(rw_membership(IndexMatrix(n), k, v), std::out_of_range);
  }
  CHECK_THROWS_AS(rw_membership(IndexMatrix(2), IndexMatrix(2), 0), std::invalid_argument);
}

TEST_CASE("dyadic differences") {
  const DiscretizedTable c = constant_table(3, 1.5);

  // kappa_i != 0: wal factor is -1 and a constant cancels.
  IndexMatrix k(3);
  k.set_row(2, BitPair{1, 1});
  const DiscretizedTable diff = dyadic_difference(c, k, 2);
  for (double v : diff.values) CHECK(v == 0.0);

  // kappa_i = 0: sigma((0,0)) = (1,1), wal factor +1, so a constant doubles.
  const DiscretizedTable doubled = dyadic_difference(c, IndexMatrix(3), 1);
  for (double v : doubled.values) CHECK(v == 3.0);

  CHECK_THROWS_AS(dyadic_difference(c, k, 4), std::out_of_range);

  // Identity 1 of the dyadic-difference lemma on random tables.
  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 25; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 5);
    const std::uint64_t mask = (std::uint64_t{1} << (2 * n)) - 1;
    IndexMatrix kk = IndexMatrix::from_encoding(rng() & mask, n);
    if (kk.is_zero()) kk.set_row(n, BitPair{0, 1});
    const int v = v_weight(kk);
    const DiscretizedTable f = random_table(rng, n);
    const DiscretizedTable dv = dyadic_difference(f, kk, v);
    for (int w = 0; w < v; ++w)
      REQUIRE(close(rw_coefficient(f, kk, w), -0.5 * rw_coefficient(dv, kk, w), 1e-14));
  }
}

TEST_CASE("decay bounds") {
  // f(x,y) = x with ||f|| = 1: the K = ((1,0)) coefficient is 1/6 and the
  // lemma bound with D = max(2 sqrt(2) d, 4 d^2) = 8 at v = 1 is 2.
  const TestFunction fx = parse_poly_spec("1,1,0", kUnit);
  const DecayReport report = verify_decay_bound(fx.eval, kUnit, 1, make_quadrature(fx), 1.0);
  CHECK(report.violations == 0);
  CHECK(report.d_constant == doctest::Approx(8.0));
  REQUIRE(report.rows.size() == 3);
  // Row for K encoding 1 = ((1,0)).
  CHECK(report.rows[0].k_encoding == 1);
  CHECK(report.rows[0].coeff == doctest::Approx(1.0 / 6.0).epsilon(1e-15));
  CHECK(report.rows[0].bound == doctest::Approx(2.0));

  const DiscretizedTable c = [&] {
    DiscretizedTable t = constant_table(2, 4.0);
    t.f_norm = 1.0;
    return t;
  }();
  const DecayReport const_report = verify_decay_bound(c);
  CHECK(const_report.violations == 0);
  for (const DecayRow& row : const_report.rows) CHECK(row.coeff <= 1e-15);

  CHECK_THROWS_AS(verify_decay_bound(constant_table(2, 1.0)), std::invalid_argument);
}
