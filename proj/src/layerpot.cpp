#include "surfspline/layerpot.hpp"

#include <fftw3.h>

#include <algorithm>
#include <complex>

namespace surfspline {

namespace {

std::mutex& fftw_mutex() {
  static std::mutex mu;
  return mu;
}

std::vector<std::complex<double>> forward(const std::vector<double>& v) {
  const int n = static_cast<int>(v.size());
  std::vector<double> in(v);
  std::vector<std::complex<double>> out(n / 2 + 1);
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(fftw_mutex());
    plan = fftw_plan_dft_r2c_1d(n, in.data(), reinterpret_cast<fftw_complex*>(out.data()), FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  {
    std::lock_guard<std::mutex> lock(fftw_mutex());
    fftw_destroy_plan(plan);
  }
  return out;
}

}  // namespace

std::vector<double> trig_resample(const std::vector<double>& values, int n_out) {
  const int n = static_cast<int>(values.size());
  if (n == 0 || n_out <= 0) throw DomainError("trig_resample needs non-empty input and output");
  if (n_out == n) return values;
  if (n_out < n) throw DomainError("trig_resample only refines");
  const auto c = forward(values);
  std::vector<std::complex<double>> spec(n_out / 2 + 1, {0.0, 0.0});
  std::copy(c.begin(), c.end(), spec.begin());
  // The Nyquist term of an even-length input is split between +-n/2.
  if (n % 2 == 0) spec[n / 2] *= 0.5;
  std::vector<double> out(n_out);
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(fftw_mutex());
    plan = fftw_plan_dft_c2r_1d(n_out, reinterpret_cast<fftw_complex*>(spec.data()), out.data(), FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  {
    std::lock_guard<std::mutex> lock(fftw_mutex());
    fftw_destroy_plan(plan);
  }
  for (double& v : out) v /= n;
  return out;
}

std::vector<double> fourier_magnitudes(const std::vector<double>& values) {
  const auto c = forward(values);
  std::vector<double> out(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) out[i] = std::abs(c[i]) / values.size();
  return out;
}

std::vector<double> kress_log_weights(int n_nodes) {
  if (n_nodes % 2 != 0) throw DomainError("logarithmic quadrature needs an even node count");
  const int n = n_nodes / 2;
  std::vector<double> R(n_nodes);
  for (int d = 0; d < n_nodes; ++d) {
    const double tau = kPi * d / n;
    double s = 0.0;
    for (int m = 1; m < n; ++m) s += std::cos(m * tau) / m;
    R[d] = -(2 * kPi / n) * s - (kPi / (double(n) * n)) * std::cos(n * tau);
  }
  return R;
}

NystromMatrix assemble_vkj(const SplineParams& p, int k, int j, const BoundaryGrid& grid) {
  if (k < 0 || j < 0 || k + j > 2 * p.m - 2)
    throw DomainError("assemble_vkj needs k + j <= 2m - 2; use one_sided_trace for higher orders");
  const int N = grid.n_nodes;
  const std::vector<double> R = kress_log_weights(N);
  const KernelTable table(p);
  const SplitKernel diag = split_kernel_diagonal(p, k, j);
  NystromMatrix out;
  out.k = k;
  out.j = j;
  out.M.resize(N, N);
  const double h = 2 * kPi / N;
#pragma omp parallel for schedule(static)
  for (int i = 0; i < N; ++i) {
    for (int l = 0; l < N; ++l) {
      double k1, k2;
      if (i == l) {
        k1 = 0.5 * diag.log_coeff;
        k2 = diag.log_coeff * std::log(grid.speed[i]) + diag.smooth;
      } else {
        const Vec2 y = grid.x[i] - grid.x[l];
        const SplitKernel s = table.split(k, j, y, grid.normal[i], grid.normal[l]);
        const double half = std::sin(0.5 * (grid.t[i] - grid.t[l]));
        k1 = 0.5 * s.log_coeff;
        k2 = 0.5 * s.log_coeff * std::log(norm2(y) / (4 * half * half)) + s.smooth;
      }
      const int d = ((i - l) % N + N) % N;
      out.M(i, l) = grid.speed[l] * (R[d] * k1 + h * k2);
    }
  }
  return out;
}

double eval_V(const SplineParams& p, int j, const Density& density, const BoundaryGrid& grid, Vec2 x,
              bool* near) {
  if (static_cast<int>(density.values.size()) != grid.n_nodes)
    throw DomainError("density length does not match the grid");
  const KernelTable table(p);
  const double spacing = grid.max_spacing();
  double s = 0.0;
  bool close = false;
  for (int i = 0; i < grid.n_nodes; ++i) {
    const Vec2 y = x - grid.x[i];
    const double r = norm(y);
    if (r < p.singular_tol) throw SingularEvaluationError("layer potential evaluated on a node");
    if (r < 2 * spacing) close = true;
    s += grid.w[i] * density.values[i] * table.eval(0, j, y, Vec2{}, grid.normal[i]);
  }
  if (near) *near = close;
  return s;
}

LayerPotential::LayerPotential(const SplineParams& p, const DomainCurve& curve, const BoundaryGrid& grid,
                               std::vector<Density> densities, int max_refine)
    : params_(p), table_(p), curve_(curve), grid_(grid), densities_(std::move(densities)) {
  for (const auto& d : densities_)
    if (static_cast<int>(d.values.size()) != grid.n_nodes)
      throw DomainError("density length does not match the grid");
  max_log2_ = 0;
  while ((2 << max_log2_) <= max_refine) ++max_log2_;
  levels_.resize(max_log2_ + 1);
  spacing_ = grid.max_spacing();
}

const LayerPotential::Level& LayerPotential::level(int lg) const {
  std::lock_guard<std::mutex> lock(mu_);
  if (!levels_[lg]) {
    auto lvl = std::make_unique<Level>();
    const int n = grid_.n_nodes << lg;
    lvl->grid = lg == 0 ? grid_ : BoundaryGrid::make(curve_, n);
    for (const auto& d : densities_) lvl->g.push_back(lg == 0 ? d.values : trig_resample(d.values, n));
    levels_[lg] = std::move(lvl);
  }
  return *levels_[lg];
}

double LayerPotential::eval(Vec2 x, int k, Vec2 n_x, bool* near) const {
  const double dist = std::abs(signed_distance(curve_, x).rho);
  return eval_at_distance(x, k, n_x, dist, near);
}

double LayerPotential::eval_at_distance(Vec2 x, int k, Vec2 n_x, double dist, bool* near) const {
  // Keep at least six fine node spacings between x and the curve.
  int lg = 0;
  while (lg < max_log2_ && spacing_ / (1 << lg) > dist / 6.0) ++lg;
  if (near) *near = dist < 2 * spacing_ || spacing_ / (1 << lg) > dist / 6.0;
  const Level& L = level(lg);
  const int n = L.grid.n_nodes;
  const int nd = static_cast<int>(densities_.size());
  double total = 0.0;
  for (int i = 0; i < n; ++i) {
    const Vec2 y = x - L.grid.x[i];
    const double r2 = norm2(y);
    if (r2 < params_.singular_tol * params_.singular_tol)
      throw SingularEvaluationError("layer potential evaluated on a node");
    const double lr = 0.5 * std::log(r2);
    double s = 0.0;
    for (int q = 0; q < nd; ++q) {
      const SplitKernel sk = table_.split(k, densities_[q].j, y, n_x, L.grid.normal[i]);
      s += L.g[q][i] * (sk.log_coeff * lr + sk.smooth);
    }
    total += L.grid.w[i] * s;
  }
  return total;
}

namespace {

// Value at zero of the polynomial through (x_i, y_i), by Neville's scheme.
double extrapolate_to_zero(const std::vector<double>& x, std::vector<double> y) {
  const int n = static_cast<int>(x.size());
  for (int level = 1; level < n; ++level)
    for (int i = 0; i < n - level; ++i)
      y[i] = (x[i + level] * y[i] - x[i] * y[i + 1]) / (x[i + level] - x[i]);
  return y[0];
}

}  // namespace

TraceResult one_sided_trace(const LayerPotential& pot, int k, Side side, const TraceOptions& opt) {
  const BoundaryGrid& grid = pot.grid();
  const double delta0 = opt.offset_factor * grid.max_spacing();
  if (opt.rungs < 3) throw DomainError("trace extrapolation needs at least three rungs");
  std::vector<double> deltas(opt.rungs);
  for (int r = 0; r < opt.rungs; ++r) deltas[r] = delta0 / (1 << r);
  if (deltas[0] >= pot.curve().reach()) throw ReachViolation("trace offsets exceed the reach of the boundary");
  const double sgn = side == Side::Inside ? -1.0 : 1.0;
  TraceResult out;
  out.values.resize(grid.n_nodes);
  std::vector<double> err(grid.n_nodes, 0.0), scale(grid.n_nodes, 0.0);
#pragma omp parallel for schedule(dynamic, 4)
  for (int i = 0; i < grid.n_nodes; ++i) {
    std::vector<double> vals(opt.rungs);
    for (int r = 0; r < opt.rungs; ++r) {
      const Vec2 x = grid.x[i] + grid.normal[i] * (sgn * deltas[r]);
      vals[r] = pot.eval_at_distance(x, k, grid.normal[i], deltas[r]);
      scale[i] = std::max(scale[i], std::abs(vals[r]));
    }
    const double full = extrapolate_to_zero(deltas, vals);
    // Compare with the extrapolant that drops the coarsest rung.
    const std::vector<double> fine_d(deltas.begin() + 1, deltas.end());
    const std::vector<double> fine_v(vals.begin() + 1, vals.end());
    const double reduced = extrapolate_to_zero(fine_d, fine_v);
    out.values[i] = full;
    err[i] = std::abs(full - reduced);
  }
  // Traces scale with the densities, which gives a floor for the test.
  double max_scale = 0.0;
  for (const auto& d : pot.densities())
    for (double v : d.values) max_scale = std::max(max_scale, std::abs(v));
  for (int i = 0; i < grid.n_nodes; ++i) {
    out.error_estimate = std::max(out.error_estimate, err[i]);
    max_scale = std::max(max_scale, scale[i]);
  }
  if (out.error_estimate > opt.divergence_tol * max_scale)
    throw ExtrapolationDivergence("normal-offset ladder did not stabilize (estimate " +
                                  std::to_string(out.error_estimate) + ")");
  return out;
}

TraceResult one_sided_trace(const SplineParams& p, const DomainCurve& curve, const BoundaryGrid& grid, int k,
                            const std::vector<Density>& densities, Side side, const TraceOptions& opt) {
  if (k < 0 || k > 2 * p.m - 1) throw DomainError("trace order must lie in 0..2m-1");
  const LayerPotential pot(p, curve, grid, densities);
  return one_sided_trace(pot, k, side, opt);
}

JumpReport jump_check(const SplineParams& p, const DomainCurve& curve, int j, const Density& density,
                      const BoundaryGrid& grid, const TraceOptions& opt) {
  if (j < 0 || j > 2 * p.m - 1) throw DomainError("jump check needs 0 <= j <= 2m-1");
  JumpReport rep;
  rep.j = j;
  rep.k = 2 * p.m - 1 - j;
  Density d = density;
  d.j = j;
  const LayerPotential pot(p, curve, grid, {d});
  const TraceResult in = one_sided_trace(pot, rep.k, Side::Inside, opt);
  const TraceResult out = one_sided_trace(pot, rep.k, Side::Outside, opt);
  double gmax = 0.0;
  for (double v : density.values) gmax = std::max(gmax, std::abs(v));
  if (gmax == 0.0) gmax = 1.0;
  const double s = j % 2 == 0 ? -1.0 : 1.0;
  for (int i = 0; i < grid.n_nodes; ++i) {
    const double jump = in.values[i] - out.values[i];
    rep.deviation = std::max(rep.deviation, std::abs(jump - s * density.values[i]) / gmax);
    rep.deviation_opposite_sign = std::max(rep.deviation_opposite_sign, std::abs(jump + s * density.values[i]) / gmax);
  }
  rep.extrapolation_error = std::max(in.error_estimate, out.error_estimate);
  return rep;
}

}  // namespace surfspline
