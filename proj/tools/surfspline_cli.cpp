#include <CLI11.hpp>
#include <fstream>
#include <iomanip>
#include <iostream>

#include "surfspline/harness.hpp"

using namespace surfspline;

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error("cannot write " + path);
  os.precision(12);
  return os;
}

int cmd_converge(const std::string& config_path) {
  const auto cfg = ExperimentConfig::load(config_path);
  const auto rep = run_experiment(cfg, &std::cout);
  for (std::size_t k = 0; k < cfg.norms.size(); ++k)
    std::cout << "rate L" << cfg.norms[k] << ": " << rep.rates[k] << "\n";
  return 0;
}

int cmd_solve(const std::string& curve_spec, int m, int n, const std::string& data, int grid,
              const std::string& out) {
  const SplineParams p{m, 2};
  const auto curve = DomainCurve::parse(curve_spec);
  const auto f = TargetFunction::by_name(data);
  const auto bg = BoundaryGrid::make(curve, n);
  const auto sol = solve_dirichlet(p, curve, bg, dirichlet_data(f, bg, m));
  auto os = open_out(out);
  os << "x,y,u,exact,error\n";
  double worst = 0.0;
  for (const Vec2& x : probe_grid(curve, grid)) {
    const double u = eval_solution(sol, x);
    worst = std::max(worst, std::abs(u - f(x)));
    os << x.x << ',' << x.y << ',' << u << ',' << f(x) << ',' << u - f(x) << '\n';
  }
  std::cout << "rcond " << sol.rcond << ", residual " << sol.residual << ", max probe error " << worst << "\n";
  return 0;
}

int cmd_approximate(const std::string& curve_spec, int m, double h, const std::string& target, double nu,
                    std::uint64_t seed, int grid, const std::string& out) {
  const SplineParams p{m, 2};
  const auto curve = DomainCurve::parse(curve_spec);
  const auto f = TargetFunction::by_name(target);
  CenterSet cs = generate_centers(curve, h, seed);
  SchemeOptions opt;
  if (nu > 0) {
    cs = oversample_boundary(curve, cs, h, nu, m);
    opt.boundary_h = std::pow(h, nu);
  }
  const SchemeOperator op(p, curve, cs, opt);
  const Approximant s = op.apply(f);
  write_approximant_csv(out, s);
  const auto probes = probe_grid(curve, grid);
  const auto v = eval_approximant(s, probes);
  double worst = 0.0;
  for (std::size_t i = 0; i < probes.size(); ++i) worst = std::max(worst, std::abs(v[i] - f(probes[i])));
  std::cout << cs.size() << " centers, " << op.stats().quadrature_nodes << " quadrature nodes, sup error "
            << worst << " on " << probes.size() << " probes\n";
  return 0;
}

int cmd_extend(const std::string& curve_spec, int m, const std::string& target, int n, int level, double extent,
               int grid, const std::string& out) {
  const SplineParams p{m, 2};
  const auto curve = DomainCurve::parse(curve_spec);
  const auto f = TargetFunction::by_name(target);
  const Extension ext(p, curve, f, n, level);
  auto os = open_out(out);
  os << "x,y,inside,value\n";
  for (int i = 0; i < grid; ++i)
    for (int j = 0; j < grid; ++j) {
      const Vec2 x{-extent + 2 * extent * (i + 0.5) / grid, -extent + 2 * extent * (j + 0.5) / grid};
      bool near = false;
      double v;
      try {
        v = ext(x, &near);
      } catch (const SingularEvaluationError&) {
        continue;
      }
      os << x.x << ',' << x.y << ',' << (curve.inside(x) ? 1 : 0) << ',' << v << '\n';
    }
  std::cout << "annihilation residual " << annihilation_check(ext) << "\n";
  return 0;
}

int cmd_symbols(int m) {
  const auto s = symbol_matrix(m);
  std::cout << std::setprecision(10) << s.S << "\n" << "det " << s.det << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Surface spline approximation on planar domains"};
  app.require_subcommand(1);

  std::string config;
  auto* conv = app.add_subcommand("converge", "run a convergence study from a config file");
  conv->add_option("--config", config, "INI experiment file")->required();

  std::string curve = "circle", data = "harmonic3", target = "exp", out;
  int m = 2, n = 256, grid = 32, level = 32;
  double h = 0.1, nu = 0.0, extent = 2.0;
  std::uint64_t seed = 1;

  auto* solve = app.add_subcommand("solve-dirichlet", "solve the polyharmonic Dirichlet problem");
  solve->add_option("--curve", curve, "circle[:R], ellipse:A,B or star:EPS,K[,R]");
  solve->add_option("--m", m);
  solve->add_option("--n", n, "boundary nodes");
  solve->add_option("--data", data, "named target supplying the boundary data");
  solve->add_option("--probe-grid", grid);
  solve->add_option("--output", out)->default_val("dirichlet_probes.csv");

  auto* approx = app.add_subcommand("approximate", "build T_Xi f and write it as CSV");
  approx->add_option("--curve", curve);
  approx->add_option("--m", m);
  approx->set_help_flag("--help", "print this help message and exit");
  approx->add_option("--h", h, "fill distance of the centers");
  approx->add_option("--target", target);
  approx->add_option("--nu", nu, "boundary oversampling exponent, 0 for none");
  approx->add_option("--seed", seed);
  approx->add_option("--probe-grid", grid);
  approx->add_option("--output", out)->default_val("approximant.csv");

  auto* extend = app.add_subcommand("extend", "evaluate the Beppo-Levi extension on a square grid");
  extend->add_option("--curve", curve);
  extend->add_option("--m", m);
  extend->add_option("--target", target);
  extend->add_option("--n", n);
  extend->add_option("--level", level, "radial nodes of the volume quadrature");
  extend->add_option("--extent", extent, "half width of the grid");
  extend->add_option("--grid", grid);
  extend->add_option("--output", out)->default_val("extension.csv");

  auto* symbols = app.add_subcommand("check-symbols", "print the principal symbol matrix");
  symbols->add_option("--m", m);

  CLI11_PARSE(app, argc, argv);
  try {
    if (*conv) return cmd_converge(config);
    if (*solve) return cmd_solve(curve, m, n, data, grid, out);
    if (*approx) return cmd_approximate(curve, m, h, target, nu, seed, grid, out);
    if (*extend) return cmd_extend(curve, m, target, n, level, extent, grid, out);
    if (*symbols) return cmd_symbols(m);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
