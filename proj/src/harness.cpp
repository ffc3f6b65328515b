#include "surfspline/harness.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

namespace surfspline {

namespace {

std::string norm_label(double p) {
  if (std::isinf(p)) return "inf";
  std::ostringstream os;
  os << p;
  return os.str();
}

std::ofstream open_csv(const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error("cannot write " + path);
  os.precision(10);
  return os;
}

}  // namespace

double fit_rate(const std::vector<double>& h, const std::vector<double>& err) {
  const std::size_t n = h.size();
  if (n < 2 || err.size() != n) return std::nan("");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = std::log(h[i]), y = std::log(err[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

std::vector<Vec2> probe_grid(const DomainCurve& curve, int g) {
  std::vector<Vec2> out;
  const Vec2 lo = curve.box_min(), hi = curve.box_max();
  for (int i = 0; i < g; ++i)
    for (int j = 0; j < g; ++j) {
      const Vec2 x{lo.x + (hi.x - lo.x) * (i + 0.5) / g, lo.y + (hi.y - lo.y) * (j + 0.5) / g};
      if (curve.inside(x)) out.push_back(x);
    }
  return out;
}

ErrorReport converge(const ExperimentConfig& config, std::ostream* log) {
  config.validate();
  const SplineParams p{config.m, 2};
  const DomainCurve curve = DomainCurve::parse(config.curve);
  const TargetFunction f = TargetFunction::by_name(config.target);
  const auto probes = probe_grid(curve, config.probe_grid);
  const InteriorQuadrature normq = interior_quadrature(curve, config.norm_level);
  std::vector<double> f_probe(probes.size()), f_quad(normq.size());
  for (std::size_t i = 0; i < probes.size(); ++i) f_probe[i] = f(probes[i]);
  for (std::size_t i = 0; i < normq.size(); ++i) f_quad[i] = f(normq.nodes[i]);

  ErrorReport rep;
  rep.config = config;
  for (double h : config.h) {
    const auto t0 = std::chrono::steady_clock::now();
    RungResult row;
    row.h = h;
    try {
      CenterSet cs = generate_centers(curve, h, config.seed);
      SchemeOptions opt;
      opt.n_boundary = config.n_boundary;
      if (config.nu > 0) {
        cs = oversample_boundary(curve, cs, h, config.nu, config.m);
        opt.boundary_h = std::pow(h, config.nu);
      }
      const SchemeOperator op(p, curve, cs, opt);
      const Approximant s = op.apply(f);
      row.n_centers = cs.size();
      row.n_boundary_nodes = op.stats().boundary_nodes;
      const auto vq = eval_approximant(s, normq.nodes);
      std::vector<double> vp;
      for (double pn : config.norms) {
        if (std::isinf(pn)) {
          if (vp.empty()) vp = eval_approximant(s, probes);
          double e = 0.0;
          for (std::size_t i = 0; i < probes.size(); ++i) e = std::max(e, std::abs(vp[i] - f_probe[i]));
          row.errors.push_back(e);
        } else {
          double acc = 0.0;
          for (std::size_t i = 0; i < normq.size(); ++i) acc += normq.w[i] * std::pow(std::abs(vq[i] - f_quad[i]), pn);
          row.errors.push_back(std::pow(acc, 1.0 / pn));
        }
      }
    } catch (const Error& e) {
      row.failure = e.what();
      row.errors.assign(config.norms.size(), std::nan(""));
    }
    row.runtime = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (log) {
      *log << "h=" << h << " centers=" << row.n_centers;
      for (std::size_t k = 0; k < config.norms.size(); ++k)
        *log << " L" << norm_label(config.norms[k]) << "=" << row.errors[k];
      *log << " (" << row.runtime << " s)";
      if (!row.failure.empty()) *log << " FAILED: " << row.failure;
      *log << std::endl;
    }
    rep.rungs.push_back(std::move(row));
  }

  std::vector<const RungResult*> ok;
  for (const auto& r : rep.rungs)
    if (r.failure.empty()) ok.push_back(&r);
  const std::size_t first = ok.size() > 3 ? ok.size() - 3 : 0;
  for (std::size_t k = 0; k < config.norms.size(); ++k) {
    std::vector<double> hs, es;
    for (std::size_t i = first; i < ok.size(); ++i) {
      hs.push_back(ok[i]->h);
      es.push_back(ok[i]->errors[k]);
    }
    rep.rates.push_back(hs.size() >= 3 ? fit_rate(hs, es) : std::nan(""));
    for (std::size_t i = 1; i < ok.size(); ++i)
      if (ok[i]->errors[k] > ok[i - 1]->errors[k]) rep.monotone = false;
  }
  if (log && !rep.monotone) *log << "warning: error increased along the h ladder" << std::endl;
  return rep;
}

void ErrorReport::write_csv(const std::string& path) const {
  auto os = open_csv(path);
  os << "h,n_centers,n_boundary_nodes";
  for (double p : config.norms) os << ",err_L" << norm_label(p);
  os << ",status\n";
  for (const auto& r : rungs) {
    os << r.h << ',' << r.n_centers << ',' << r.n_boundary_nodes;
    for (double e : r.errors) os << ',' << e;
    os << ',' << (r.failure.empty() ? "ok" : "failed") << '\n';
  }
}

void ErrorReport::write_summary(const std::string& path) const {
  auto os = open_csv(path);
  os << "experiment,curve,m,target,nu,norm,rate\n";
  for (std::size_t k = 0; k < config.norms.size(); ++k)
    os << config.name << ',' << config.curve << ',' << config.m << ',' << config.target << ',' << config.nu << ",L"
       << norm_label(config.norms[k]) << ',' << rates[k] << '\n';
}

void ErrorReport::write_timing(const std::string& path) const {
  auto os = open_csv(path);
  os << "h,runtime_s\n";
  for (const auto& r : rungs) os << r.h << ',' << r.runtime << '\n';
}

ErrorReport run_experiment(const ExperimentConfig& config, std::ostream* log) {
  ErrorReport rep = converge(config, log);
  std::filesystem::create_directories(config.output);
  const std::string base = (std::filesystem::path(config.output) / config.name).string();
  rep.write_csv(base + ".csv");
  rep.write_summary(base + "_summary.csv");
  rep.write_timing(base + "_timing.csv");
  return rep;
}

OversamplingBudget oversampling_budget(int d, int m, double p) {
  if (!(p >= 1.0)) throw DomainError("p must lie in [1, inf]");
  OversamplingBudget b;
  b.nu = std::isinf(p) ? 2.0 : 2.0 * m * p / (m * p + 1.0);
  b.feasible = d <= 2 || p <= static_cast<double>(d) / ((d - 2) * m);
  return b;
}

double greens_identity_check(const SplineParams& p, const DomainCurve& curve, const TargetFunction& f, int n,
                             int level, const std::vector<Vec2>& probes, double constant_scale) {
  const BoundaryGrid grid = BoundaryGrid::make(curve, n);
  // f = int Delta^m f phi + sum_j (-1)^j int lambda_j f lambda_{2m-1-j} phi
  std::vector<Density> dens;
  for (int j = 0; j < 2 * p.m; ++j) {
    Density d{2 * p.m - 1 - j, std::vector<double>(n)};
    const double sign = j % 2 == 0 ? 1.0 : -1.0;
    for (int i = 0; i < n; ++i) d.values[i] = sign * f.trace(j, grid.x[i], grid.normal[i]);
    dens.push_back(std::move(d));
  }
  const LayerPotential layers(p, curve, grid, std::move(dens));
  double worst = 0.0;
  for (const Vec2& x : probes) {
    const double v = constant_scale * (volume_potential(p, curve, f, x, level) + layers.eval(x, 0, {1.0, 0.0}));
    worst = std::max(worst, std::abs(v - f(x)));
  }
  return worst;
}

ErrorKernelNorms error_kernel_norms(const SchemeOperator& op, const SplineParams& p,
                                    const std::vector<Vec2>& points) {
  ErrorKernelNorms out;
  out.h = op.h();
  out.boundary.assign(p.m, 0.0);
  const auto& centers = op.centers();
  const auto& quad = op.quadrature();
  const auto& fine = op.fine_grid();
  for (const Vec2& x : points) {
    double e = 0.0;
    for (std::size_t q = 0; q < quad.size(); ++q) {
      const auto row = op.interior_row(q);
      double k = 0.0;
      for (std::size_t t = 0; t < row.size; ++t) k += row.value[t] * phi_continuous(p, x - centers[row.index[t]]);
      e += quad.w[q] * std::abs(k - phi_continuous(p, x - quad.nodes[q]));
    }
    out.interior = std::max(out.interior, e);
    for (int j = 0; j < p.m; ++j) {
      double ej = 0.0;
      for (std::size_t i = 0; i < fine.x.size(); ++i) {
        const auto row = op.boundary_row(j, i);
        double k = 0.0;
        for (std::size_t t = 0; t < row.size; ++t) k += row.value[t] * phi_continuous(p, x - centers[row.index[t]]);
        const double exact = norm2(x - fine.x[i]) > 0 ? lambda_phi(p, j, x, fine.x[i], fine.normal[i]) : 0.0;
        ej += fine.w[i] * std::abs(k - exact);
      }
      out.boundary[j] = std::max(out.boundary[j], ej);
    }
  }
  return out;
}

}  // namespace surfspline
