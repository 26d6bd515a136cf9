#include <doctest.h>

#include <stdexcept>
#include <cmath>
#include <numbers>
#include <random>

#include "triqmc/harness.hpp"

using namespace triqmc;

namespace {
const Triangle kUnit = unit_triangle();
}

TEST_CASE("monomial integrals") {
  CHECK(monomial_integral(kUnit, 0, 0) == doctest::Approx(1.0));
  CHECK(monomial_integral(kUnit, 1, 0) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(monomial_integral(kUnit, 1, 1) == doctest::Approx(1.0 / 12.0).epsilon(1e-15));
  CHECK_THROWS_AS(monomial_integral(kUnit, -1, 0), std::invalid_argument);

  // Oracle vs oracle: closed form against subdivision quadrature.
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> coef(-2.0, 2.0);
  const Triangle skew{{-0.7, 0.2}, {1.4, -0.1}, {0.3, 1.8}};
  for (int trial = 0; trial < 10; ++trial) {
    const int p = static_cast<int>(rng() % 4);
    const int q = static_cast<int>(rng() % 4);
    const Triangle& t = trial % 2 ? skew : kUnit;
    const double closed = monomial_integral(t, p, q);
    const double quad = oracle_integrate(
        [&](Vec2 v) { return std::pow(v.x, p) * std::pow(v.y, q); }, t, 1e-12);
    REQUIRE(std::abs(closed - quad) <= 1e-10 * std::max(1.0, std::abs(closed)));
  }
  (void)coef;
}

TEST_CASE("subdivision oracle") {
  CHECK(oracle_integrate([](Vec2) { return 0.75; }, kUnit, 1e-12) == doctest::Approx(0.75));
  // int over the unit triangle of e^(x+y) is exactly 1; normalized 2.
  CHECK(std::abs(oracle_integrate([](Vec2 p) { return std::exp(p.x + p.y); }, kUnit, 1e-12) -
                 2.0) <= 1e-10);
  // cos(pi (x - y)) integrates to 4 / pi^2.
  CHECK(std::abs(oracle_integrate(
                     [](Vec2 p) { return std::cos(std::numbers::pi * (p.x - p.y)); }, kUnit,
                     1e-12) -
                 4.0 / (std::numbers::pi * std::numbers::pi)) <= 1e-10);

  // Unreachable tolerance inside a tiny depth cap carries its best estimate.
  try {
    oracle_integrate([](Vec2 p) { return std::exp(p.x + p.y); }, kUnit, 1e-15, 3);
    FAIL("expected ToleranceError");
  } catch (const ToleranceError& err) {
    CHECK(std::abs(err.best_estimate() - 2.0) <= 1e-3);
  }
}

TEST_CASE("qmc integration") {
  const auto points = triangle_points(basu_owen_pair(), kUnit, 4);
  CHECK(qmc_integrate([](Vec2) { return 1.0; }, points, kUnit) == doctest::Approx(1.0));
  CHECK(std::abs(qmc_integrate([](Vec2 p) { return p.x * p.x; }, points, kUnit) -
                 11.0 / 72.0) <= 1e-16);

  CHECK_THROWS_AS(qmc_integrate([](Vec2) { return 1.0; }, {}, kUnit), std::invalid_argument);
  CHECK_THROWS_AS(qmc_integrate([](Vec2) { return 1.0; }, {Vec2{2.0, 2.0}}, kUnit),
                  std::domain_error);
}

TEST_CASE("built-in functions") {
  CHECK(builtin_functions().size() == 5);
  for (const TestFunction& f : builtin_functions()) {
    CHECK(f.c2_norm_bound > 0.0);
    // The documented norm bound dominates |f| on the domain.
    CHECK(std::abs(f.eval(Vec2{0.3, 0.3})) <= f.c2_norm_bound);
  }
  CHECK(builtin_function("exp-sum").id == "exp-sum");
  CHECK_THROWS_AS(builtin_function("nope"), std::invalid_argument);

  CHECK(exact_integral(builtin_function("quadratic"), kUnit) ==
        doctest::Approx(1.0 / 6.0 + 1.0 / 12.0 + 1.0 / 6.0).epsilon(1e-15));
  CHECK(exact_integral(builtin_function("exp-sum"), kUnit) == doctest::Approx(2.0));
  CHECK(exact_integral(builtin_function("affine"), kUnit) == doctest::Approx(1.0));

  const TestFunction poly = parse_poly_spec("1,2,0;0.5,1,1", kUnit);
  CHECK(poly.eval(Vec2{2.0, 3.0}) == doctest::Approx(4.0 + 3.0));
  CHECK(exact_integral(poly, kUnit) ==
        doctest::Approx(1.0 / 6.0 + 0.5 / 12.0).epsilon(1e-15));
  CHECK(poly.c2_norm_bound >= 2.0);  // second x-derivative of x^2
  CHECK_THROWS_AS(parse_poly_spec("1;2", kUnit), std::invalid_argument);
  CHECK_THROWS_AS(parse_poly_spec("", kUnit), std::invalid_argument);
}

TEST_CASE("convergence studies") {
  const auto const_rows =
      convergence_study(builtin_function("const-one"), basu_owen_pair(), kUnit, 2, 8, true);
  for (const ConvergenceRow& r : const_rows) CHECK(r.abs_error == 0.0);
  CHECK_FALSE(fit_rate(const_rows).has_value());

  const auto affine_rows =
      convergence_study(builtin_function("affine"), basu_owen_pair(), kUnit, 2, 8, false);
  for (const ConvergenceRow& r : affine_rows)
    if (r.m % 2 == 0) CHECK(r.abs_error <= 1e-14);  // N = 4^k rows are exact

  // Composite counts stay inside the requested range.
  const auto sweep = convergence_study(builtin_function("affine"), basu_owen_pair(), kUnit,
                                       4, 8, true);
  for (const ConvergenceRow& r : sweep) {
    CHECK(r.n_points >= 16);
    CHECK(r.n_points <= 256);
  }
  bool has_composite = false;
  for (const ConvergenceRow& r : sweep)
    if (r.n_points == 23 || r.n_points == 47 || r.n_points == 95) has_composite = true;
  CHECK(has_composite);

  // Prefix consistency: the shared rows of two studies are bit-identical.
  const auto small =
      convergence_study(builtin_function("exp-sum"), pascal_pair(), kUnit, 4, 9, false);
  const auto large =
      convergence_study(builtin_function("exp-sum"), pascal_pair(), kUnit, 4, 10, false);
  for (std::size_t i = 0; i < small.size(); ++i) {
    REQUIRE(small[i].n_points == large[i].n_points);
    REQUIRE(small[i].qmc == large[i].qmc);
  }
}

TEST_CASE("rate fitting") {
  const auto synthetic = [](auto error_fn, int m_lo, int m_hi) {
    std::vector<ConvergenceRow> rows;
    for (int m = m_lo; m <= m_hi; ++m) {
      ConvergenceRow r;
      r.m = m;
      r.n_points = std::uint64_t{1} << m;
      r.abs_error = error_fn(m);
      rows.push_back(r);
    }
    return rows;
  };

  const auto exact_inverse =
      fit_rate(synthetic([](int m) { return 1.0 / std::ldexp(1.0, m); }, 4, 12));
  REQUIRE(exact_inverse.has_value());
  CHECK(std::abs(*exact_inverse - 1.0) <= 1e-12);

  const auto half =
      fit_rate(synthetic([](int m) { return std::pow(std::ldexp(1.0, m), -0.5); }, 4, 12));
  REQUIRE(half.has_value());
  CHECK(std::abs(*half - 0.5) <= 1e-12);

  // error = m^2 / 2^m over m = 8..16. Independent least-squares oracle:
  // alpha = -slope of log2(err) against m.
  {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int count = 0;
    for (int m = 8; m <= 16; ++m) {
      const double x = m;
      const double y = std::log2(static_cast<double>(m) * m / std::ldexp(1.0, m));
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
      ++count;
    }
    const double oracle = -(count * sxy - sx * sy) / (count * sxx - sx * sx);
    const auto fitted = fit_rate(
        synthetic([](int m) { return static_cast<double>(m) * m / std::ldexp(1.0, m); }, 8, 16));
    REQUIRE(fitted.has_value());
    CHECK(std::abs(*fitted - oracle) <= 1e-12);
    CHECK(*fitted == doctest::Approx(0.7525747154552358).epsilon(1e-12));
  }
}

TEST_CASE("integral preservation and affine equivariance") {
  // Mean of the discretization equals the integral (small levels; the
  // acceptance suite covers n up to 6).
  for (const std::string id : {"quadratic", "exp-sum"}) {
    const TestFunction& f = builtin_function(id);
    const Quadrature quad = make_quadrature(f);
    const double reference = oracle_integrate(f.eval, kUnit, 1e-12);
    for (int n = 1; n <= 4; ++n)
      CHECK(std::abs(discretize(f.eval, kUnit, n, quad).mean() - reference) <= 1e-9);
  }

  // Affine change of variables: integrating f over Phi(T) with points
  // generated there matches integrating f(Phi(.)) over T.
  const Vec2 col1{2.0, 0.5};
  const Vec2 col2{0.25, 1.5};
  const Vec2 shift{-0.75, 0.4};
  const auto map = [&](Vec2 p) { return p.x * col1 + p.y * col2 + shift; };
  const Triangle image{map(kUnit.a), map(kUnit.b), map(kUnit.c)};

  const TestFunction& f = builtin_function("exp-sum");
  const TestFunction pulled{
      "pulled-back", [&](Vec2 p) { return f.eval(map(p)); }, {}, 0.0, std::nullopt};

  const std::uint64_t n_points = 1 << 10;
  const double direct = qmc_integrate(f.eval, triangle_points(basu_owen_pair(), image, n_points),
                                      image);
  const double pulled_back =
      qmc_integrate(pulled.eval, triangle_points(basu_owen_pair(), kUnit, n_points), kUnit);
  const double exact_direct = oracle_integrate(f.eval, image, 1e-12);
  const double exact_pulled = oracle_integrate(pulled.eval, kUnit, 1e-12);
  CHECK(std::abs(exact_direct - exact_pulled) <= 1e-10);
  CHECK(std::abs(std::abs(direct - exact_direct) - std::abs(pulled_back - exact_pulled)) <=
        1e-12);
}
