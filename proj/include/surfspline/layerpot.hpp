#pragma once

#include <Eigen/Dense>
#include <memory>
#include <mutex>
#include <vector>

#include "surfspline/geometry.hpp"
#include "surfspline/kernel.hpp"

namespace surfspline {

struct Density {
  int j = 0;                   // boundary operator index of the layer
  std::vector<double> values;  // nodal values on the grid
};

struct NystromMatrix {
  int k = 0;
  int j = 0;
  Eigen::MatrixXd M;
  std::string scheme = "periodic log-splitting (Kress)";
};

// Periodic trigonometric interpolation of equispaced samples onto a finer
// equispaced grid of n_out >= n samples (zero-padding in Fourier space).
std::vector<double> trig_resample(const std::vector<double>& values, int n_out);
// Fourier coefficient magnitudes |c_0|, ..., |c_{n/2}| normalized by n.
std::vector<double> fourier_magnitudes(const std::vector<double>& values);

// Weights R_l(t_i), indexed by (i - l) mod N, of the spectral rule for
// integrals of log(4 sin^2((t - s)/2)) times a smooth periodic function.
std::vector<double> kress_log_weights(int n_nodes);

// Discretization of v_{k,j} = lambda_k V_j for k + j <= 2m - 2.
NystromMatrix assemble_vkj(const SplineParams& p, int k, int j, const BoundaryGrid& grid);

// Plain weighted trapezoid sum of V_j g at x. If near is non-null it is set
// when x lies within two node spacings of a boundary node.
double eval_V(const SplineParams& p, int j, const Density& density, const BoundaryGrid& grid, Vec2 x,
              bool* near = nullptr);

// Evaluates Lambda_k sum_j V_j g_j off the boundary. The densities are
// trigonometrically upsampled so that the node spacing stays well below the
// distance to the boundary, which keeps the trapezoid rule spectrally
// accurate close to the curve.
class LayerPotential {
 public:
  LayerPotential(const SplineParams& p, const DomainCurve& curve, const BoundaryGrid& grid,
                 std::vector<Density> densities, int max_refine = 256);

  double eval(Vec2 x, int k, Vec2 n_x, bool* near = nullptr) const;
  // Same with a known distance to the boundary, skipping the projection.
  double eval_at_distance(Vec2 x, int k, Vec2 n_x, double dist, bool* near = nullptr) const;

  const BoundaryGrid& grid() const { return grid_; }
  const std::vector<Density>& densities() const { return densities_; }
  const DomainCurve& curve() const { return curve_; }

 private:
  struct Level {
    BoundaryGrid grid;
    std::vector<std::vector<double>> g;
  };
  const Level& level(int factor_log2) const;

  SplineParams params_;
  KernelTable table_;
  DomainCurve curve_;
  BoundaryGrid grid_;
  std::vector<Density> densities_;
  int max_log2_;
  double spacing_;
  mutable std::mutex mu_;
  mutable std::vector<std::unique_ptr<Level>> levels_;
};

enum class Side { Inside, Outside };

struct TraceResult {
  std::vector<double> values;
  double error_estimate = 0.0;  // max over nodes of the extrapolation discrepancy
};

struct TraceOptions {
  double offset_factor = 2.0;  // first rung at offset_factor * node spacing
  int rungs = 6;
  double divergence_tol = 1e-3;  // relative to the largest ladder value
};

// One-sided boundary limit of Lambda_k sum_j V_j g_j by Richardson
// extrapolation along normal offsets delta_r = delta_0 2^{-r}.
TraceResult one_sided_trace(const LayerPotential& pot, int k, Side side, const TraceOptions& opt = {});
TraceResult one_sided_trace(const SplineParams& p, const DomainCurve& curve, const BoundaryGrid& grid,
                            int k, const std::vector<Density>& densities, Side side,
                            const TraceOptions& opt = {});

struct JumpReport {
  int j = 0;
  int k = 0;
  // max_i |(inside - outside)_i - s g_i| / max|g| for s = -(-1)^j, which is
  // the jump produced by a fundamental solution with Delta^m phi = +delta.
  double deviation = 0.0;
  // The same deviation measured against s = (-1)^j.
  double deviation_opposite_sign = 0.0;
  double extrapolation_error = 0.0;
};

JumpReport jump_check(const SplineParams& p, const DomainCurve& curve, int j, const Density& density,
                      const BoundaryGrid& grid, const TraceOptions& opt = {});

}  // namespace surfspline
