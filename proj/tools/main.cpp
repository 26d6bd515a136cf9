// Command line front end: point generation, net quality reports, Walsh
// decay scans, convergence studies and the self-verification suite, all
// emitting CSV.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "triqmc/digital.hpp"
#include "triqmc/harness.hpp"
#include "triqmc/partition.hpp"
#include "triqmc/quality.hpp"
#include "triqmc/verify.hpp"
#include "triqmc/walsh.hpp"

namespace {

triqmc::Triangle parse_triangle(const std::string& spec) {
  std::istringstream in(spec);
  double v[6];
  char sep = 0;
  for (int i = 0; i < 6; ++i) {
    if (i > 0 && (!(in >> sep) || sep != ','))
      throw CLI::ValidationError("--triangle", "expected 'Ax,Ay,Bx,By,Cx,Cy'");
    if (!(in >> v[i]))
      throw CLI::ValidationError("--triangle", "expected 'Ax,Ay,Bx,By,Cx,Cy'");
  }
  const triqmc::Triangle t{{v[0], v[1]}, {v[2], v[3]}, {v[4], v[5]}};
  if (triqmc::degenerate(t))
    throw CLI::ValidationError("--triangle", "vertices are collinear");
  return t;
}

triqmc::GeneratorPair parse_generator(const std::string& spec) {
  if (spec == "basu-owen") return triqmc::basu_owen_pair();
  if (spec == "pascal") return triqmc::pascal_pair();
  if (spec.rfind("file:", 0) == 0) {
    const std::string path = spec.substr(5);
    std::ifstream in(path);
    if (!in) throw CLI::ValidationError("--gen", "cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return triqmc::parse_generator_file(buf.str());
  }
  throw CLI::ValidationError("--gen", "expected basu-owen, pascal or file:PATH");
}

std::pair<int, int> parse_m_range(const std::string& spec) {
  const auto dots = spec.find("..");
  int lo = 0, hi = 0;
  try {
    if (dots == std::string::npos) {
      lo = hi = std::stoi(spec);
    } else {
      lo = std::stoi(spec.substr(0, dots));
      hi = std::stoi(spec.substr(dots + 2));
    }
  } catch (const std::exception&) {
    throw CLI::ValidationError("--m-range", "expected 'LO..HI' or a single integer");
  }
  if (lo < 0 || hi < lo) throw CLI::ValidationError("--m-range", "need 0 <= LO <= HI");
  return {lo, hi};
}

std::ofstream open_csv(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << std::setprecision(17);
  return out;
}

triqmc::TestFunction resolve_function(const std::string& spec, const triqmc::Triangle& t) {
  if (spec.rfind("poly:", 0) == 0) return triqmc::parse_poly_spec(spec.substr(5), t);
  return triqmc::builtin_function(spec);
}

struct GlobalOptions {
  std::string triangle_spec;
  std::string gen_spec = "basu-owen";
  std::string out_path;
  std::uint64_t seed = triqmc::verify::kDefaultSeed;
  int jobs = 1;

  triqmc::Triangle triangle() const {
    return triangle_spec.empty() ? triqmc::unit_triangle() : parse_triangle(triangle_spec);
  }
};

int run_points(const GlobalOptions& g, std::uint64_t n_points) {
  const triqmc::GeneratorPair gen = parse_generator(g.gen_spec);
  const triqmc::Triangle t = g.triangle();
  const triqmc::CenteredFrame frame(t);
  auto csv = open_csv(g.out_path.empty() ? "points.csv" : g.out_path);
  csv << "h,x,y,nu\n";
  for (std::uint64_t h = 0; h < n_points; ++h) {
    const auto elem = triqmc::sequence_element(gen, h, gen.row_support(h));
    const triqmc::Vec2 p = frame.to_original(triqmc::phi(elem.X, elem.nu, frame));
    csv << h << ',' << p.x << ',' << p.y << ',' << elem.nu << '\n';
  }
  return 0;
}

int run_quality(const GlobalOptions& g, const std::string& m_range) {
  const triqmc::GeneratorPair gen = parse_generator(g.gen_spec);
  const auto [lo, hi] = parse_m_range(m_range);
  auto csv = open_csv(g.out_path.empty() ? "weights.csv" : g.out_path);
  csv << "m,n,mu1_min,v_min,t,bound_holds\n";
  for (int m = std::max(lo, 1); m <= hi; ++m) {
    // Weights use the m x m truncation of the generating matrices.
    const triqmc::WeightReport rep = triqmc::min_weights(triqmc::dual_net(gen, m, m));
    csv << m << ',' << m << ',';
    if (rep.empty_dual())
      csv << "inf,inf,";
    else
      csv << rep.mu1_min << ',' << rep.v_min << ',';
    csv << rep.t << ',' << (triqmc::check_tvalue_bound(rep, m) ? 1 : 0) << '\n';
  }
  return 0;
}

int run_walsh_decay(const GlobalOptions& g, const std::string& fn_spec, int n, bool force) {
  if (n < 1) throw CLI::ValidationError("--n", "level must be >= 1");
  if (n > 10 && !force)
    throw CLI::ValidationError("--n", "levels above 10 need --force (4^n table entries)");
  if (n > 13) throw CLI::ValidationError("--n", "level capped at 13 by table memory");
  const triqmc::Triangle t = g.triangle();
  const triqmc::TestFunction f = resolve_function(fn_spec, t);
  const double norm_bound = triqmc::c2_norm_bound_on(f, t);
  const triqmc::DecayReport report = triqmc::verify_decay_bound(
      f.eval, t, n, triqmc::make_quadrature(f), norm_bound, g.jobs);
  auto csv = open_csv(g.out_path.empty() ? "decay.csv" : g.out_path);
  csv << "K_encoding,v_of_K,coeff,bound,ratio\n";
  for (const triqmc::DecayRow& row : report.rows)
    csv << row.k_encoding << ',' << row.v << ',' << row.coeff << ',' << row.bound
        << ',' << row.ratio << '\n';
  std::cout << "checked " << report.rows.size() << " coefficients, max ratio "
            << report.max_ratio << ", violations " << report.violations << "\n";
  return report.violations == 0 ? 0 : 1;
}

int run_converge(const GlobalOptions& g, const std::string& fn_spec,
                 const std::string& m_range, bool include_non_powers) {
  const triqmc::GeneratorPair gen = parse_generator(g.gen_spec);
  const triqmc::Triangle t = g.triangle();
  const triqmc::TestFunction f = resolve_function(fn_spec, t);
  const auto [lo, hi] = parse_m_range(m_range);
  const auto rows = triqmc::convergence_study(f, gen, t, lo, hi, include_non_powers);
  auto csv = open_csv(g.out_path.empty() ? "converge.csv" : g.out_path);
  csv << "m,N,qmc,exact,abs_error,bound_m2_over_2m\n";
  for (const triqmc::ConvergenceRow& r : rows) {
    const double logn = std::log2(static_cast<double>(r.n_points));
    csv << r.m << ',' << r.n_points << ',' << r.qmc << ',' << r.exact << ','
        << r.abs_error << ',' << logn * logn / static_cast<double>(r.n_points) << '\n';
  }
  const auto alpha = triqmc::fit_rate(rows);
  if (alpha)
    std::cout << "fitted rate alpha = " << *alpha << " over " << rows.size() << " rows\n";
  else
    std::cout << "fitted rate undefined (fewer than 3 rows with nonzero error)\n";
  return 0;
}

int run_verify(const GlobalOptions& g) {
  const triqmc::verify::Options opts{g.seed, g.jobs};
  bool ok = true;
  const auto report = [&](const std::vector<triqmc::verify::CheckResult>& results) {
    for (const auto& r : results) {
      std::cout << (r.pass ? "[PASS] " : "[FAIL] ") << r.name << ": " << r.detail << "\n";
      ok = ok && r.pass;
    }
  };
  std::cout << "acceptance checks:\n";
  report(triqmc::verify::run_acceptance(opts));
  std::cout << "lemma checks:\n";
  report(triqmc::verify::run_lemma_checks(opts));
  std::cout << (ok ? "all checks passed\n" : "CHECKS FAILED\n");
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"digital-net quasi-Monte Carlo point sequences on a triangle"};
  app.require_subcommand(1);
  app.set_config("--config", "", "read flags from a key=value file");

  GlobalOptions g;
  app.add_option("--triangle", g.triangle_spec,
                 "domain vertices 'Ax,Ay,Bx,By,Cx,Cy' (default unit triangle)");
  app.add_option("--gen", g.gen_spec, "generator: basu-owen, pascal or file:PATH");
  app.add_option("--out", g.out_path, "output CSV path");
  app.add_option("--seed", g.seed, "seed for randomized checks");
  app.add_option("--jobs", g.jobs, "worker threads for table construction and scans");

  std::uint64_t n_points = 16;
  auto* points = app.add_subcommand("points", "emit the first N sequence points");
  points->add_option("--n-points", n_points, "number of points")->required();
  points->fallthrough();

  std::string quality_range = "1..12";
  auto* quality = app.add_subcommand("quality", "dual-net minimum weights and t-values");
  quality->add_option("--m-range", quality_range, "net sizes, e.g. 1..12");
  quality->fallthrough();

  std::string decay_fn = "exp-sum";
  int decay_n = 4;
  bool decay_force = false;
  auto* decay = app.add_subcommand("walsh-decay", "Walsh coefficient decay scan");
  decay->add_option("--function", decay_fn, "built-in id or poly:c,p,q[;...]");
  decay->add_option("--n", decay_n, "discretization level");
  decay->add_flag("--force", decay_force, "allow levels above 10");
  decay->fallthrough();

  std::string conv_fn = "exp-sum";
  std::string conv_range = "6..16";
  bool conv_non_powers = false;
  auto* converge = app.add_subcommand("converge", "QMC convergence study");
  converge->add_option("--function", conv_fn, "built-in id or poly:c,p,q[;...]");
  converge->add_option("--m-range", conv_range, "levels, N = 2^m");
  converge->add_flag("--include-non-powers", conv_non_powers,
                     "add the dyadic-composite sweep 3, 5, 11, 23, ...");
  converge->fallthrough();

  auto* verify = app.add_subcommand("verify", "run the full check suite");
  verify->fallthrough();

  CLI11_PARSE(app, argc, argv);

  try {
    if (points->parsed()) return run_points(g, n_points);
    if (quality->parsed()) return run_quality(g, quality_range);
    if (decay->parsed()) return run_walsh_decay(g, decay_fn, decay_n, decay_force);
    if (converge->parsed()) return run_converge(g, conv_fn, conv_range, conv_non_powers);
    if (verify->parsed()) return run_verify(g);
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 1;
  }
  return 0;
}
