// Python bindings for the main operations: point generation, net
// quality, Walsh analysis and QMC integration.

#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "triqmc/digital.hpp"
#include "triqmc/harness.hpp"
#include "triqmc/partition.hpp"
#include "triqmc/quality.hpp"
#include "triqmc/verify.hpp"
#include "triqmc/walsh.hpp"

namespace py = pybind11;
using namespace triqmc;

namespace {

Triangle triangle_from_tuple(const std::array<std::array<double, 2>, 3>& v) {
  const Triangle t{{v[0][0], v[0][1]}, {v[1][0], v[1][1]}, {v[2][0], v[2][1]}};
  if (degenerate(t)) throw std::invalid_argument("triangle vertices are collinear");
  return t;
}

GeneratorPair generator_by_name(const std::string& name) {
  if (name == "basu-owen") return basu_owen_pair();
  if (name == "pascal") return pascal_pair();
  throw std::invalid_argument("generator must be 'basu-owen' or 'pascal'");
}

RealFn wrap_callable(const std::function<double(double, double)>& f) {
  return [f](Vec2 p) { return f(p.x, p.y); };
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "digital-net quasi-Monte Carlo point sequences on a triangle";

  m.def(
      "points",
      [](const std::string& gen, std::uint64_t n,
         const std::array<std::array<double, 2>, 3>& tri) {
        std::vector<std::pair<double, double>> out;
        for (const Vec2& p : triangle_points(generator_by_name(gen), triangle_from_tuple(tri), n))
          out.emplace_back(p.x, p.y);
        return out;
      },
      py::arg("gen"), py::arg("n"),
      py::arg("triangle") = std::array<std::array<double, 2>, 3>{{{0, 0}, {1, 0}, {0, 1}}},
      "First n points of the mapped digital sequence.");

  m.def(
      "quality",
      [](const std::string& gen, int m) {
        const WeightReport rep = min_weights(dual_net(generator_by_name(gen), m, m));
        py::dict out;
        out["m"] = m;
        out["n"] = m;
        out["mu1_min"] = rep.empty_dual() ? py::object(py::none()) : py::cast(rep.mu1_min);
        out["v_min"] = rep.empty_dual() ? py::object(py::none()) : py::cast(rep.v_min);
        out["t"] = rep.t;
        out["bound_holds"] = check_tvalue_bound(rep, m);
        return out;
      },
      py::arg("gen"), py::arg("m"),
      "Dual-net minimum weights and t-value for the m x m truncation.");

  m.def(
      "qmc_integrate",
      [](const std::function<double(double, double)>& f, const std::string& gen,
         std::uint64_t n, const std::array<std::array<double, 2>, 3>& tri) {
        const Triangle t = triangle_from_tuple(tri);
        return qmc_integrate(wrap_callable(f), triangle_points(generator_by_name(gen), t, n), t);
      },
      py::arg("f"), py::arg("gen"), py::arg("n"),
      py::arg("triangle") = std::array<std::array<double, 2>, 3>{{{0, 0}, {1, 0}, {0, 1}}},
      "Equal-weight QMC estimate of the normalized integral of f.");

  m.def(
      "monomial_integral",
      [](int p, int q, const std::array<std::array<double, 2>, 3>& tri) {
        return monomial_integral(triangle_from_tuple(tri), p, q);
      },
      py::arg("p"), py::arg("q"),
      py::arg("triangle") = std::array<std::array<double, 2>, 3>{{{0, 0}, {1, 0}, {0, 1}}},
      "Exact normalized integral of x^p y^q over the triangle.");

  m.def(
      "walsh_coefficient",
      [](const std::function<double(double, double)>& f, std::uint64_t k_encoding, int n,
         const std::array<std::array<double, 2>, 3>& tri) {
        const Triangle t = triangle_from_tuple(tri);
        const Quadrature quad = [](const RealFn& fn, const Triangle& cell) {
          return oracle_integrate(fn, cell, 1e-12);
        };
        const DiscretizedTable table = discretize(wrap_callable(f), t, n, quad);
        return walsh_coefficient(table, IndexMatrix::from_encoding(k_encoding, n));
      },
      py::arg("f"), py::arg("k_encoding"), py::arg("n"),
      py::arg("triangle") = std::array<std::array<double, 2>, 3>{{{0, 0}, {1, 0}, {0, 1}}},
      "Walsh coefficient of the level-n discretization of f.");

  m.def(
      "convergence_study",
      [](const std::string& function_id, const std::string& gen, int m_lo, int m_hi,
         bool include_non_powers) {
        std::vector<py::dict> out;
        for (const ConvergenceRow& r :
             convergence_study(builtin_function(function_id), generator_by_name(gen),
                               unit_triangle(), m_lo, m_hi, include_non_powers)) {
          py::dict row;
          row["m"] = r.m;
          row["N"] = r.n_points;
          row["qmc"] = r.qmc;
          row["exact"] = r.exact;
          row["abs_error"] = r.abs_error;
          out.push_back(row);
        }
        return out;
      },
      py::arg("function_id"), py::arg("gen"), py::arg("m_lo"), py::arg("m_hi"),
      py::arg("include_non_powers") = false,
      "Convergence rows for a built-in function on the unit triangle.");

  m.def("builtin_function_ids", [] {
    std::vector<std::string> ids;
    for (const TestFunction& f : builtin_functions()) ids.push_back(f.id);
    return ids;
  });

  m.def(
      "run_verification",
      [](std::uint64_t seed, int jobs, bool include_lemmas) {
        const verify::Options opts{seed, jobs};
        std::vector<py::dict> out;
        auto collect = [&](const std::vector<verify::CheckResult>& results) {
          for (const auto& r : results) {
            py::dict row;
            row["name"] = r.name;
            row["pass"] = r.pass;
            row["detail"] = r.detail;
            out.push_back(row);
          }
        };
        collect(verify::run_acceptance(opts));
        if (include_lemmas) collect(verify::run_lemma_checks(opts));
        return out;
      },
      py::arg("seed") = verify::kDefaultSeed, py::arg("jobs") = 1,
      py::arg("include_lemmas") = false, "Run the acceptance checks.");
}
