#pragma once

#include <Eigen/Dense>
#include <memory>
#include <vector>

#include "surfspline/layerpot.hpp"
#include "surfspline/polyspace.hpp"
#include "surfspline/target.hpp"

namespace surfspline {

// Unknown ordering: polynomial coefficients A (N entries), then the
// densities g_0, ..., g_{m-1} stacked node by node.
struct AugmentedSystem {
  Eigen::MatrixXd matrix;
  Eigen::VectorXd rhs;
  int N = 0;
  int m = 0;
  int n = 0;
};

AugmentedSystem assemble_augmented(const SplineParams& p, const BoundaryGrid& grid,
                                   const std::vector<std::vector<double>>& data);

struct DensitySolution {
  SplineParams params;
  std::shared_ptr<const DomainCurve> curve;
  BoundaryGrid grid;
  PolyBasis basis{0};
  Eigen::VectorXd A;
  std::vector<Density> g;
  double rcond = 0.0;              // reciprocal condition estimate of the augmented matrix
  double residual = 0.0;           // relative residual after refinement
  double moment_residual = 0.0;    // |P^T W g| / |g|
  bool data_resolved = true;       // trailing Fourier coefficients of the data are small
  std::shared_ptr<LayerPotential> potential;

  Poly2 polynomial() const { return Poly2::from_basis(basis, A); }
};

DensitySolution solve_dirichlet(const SplineParams& p, const DomainCurve& curve, const BoundaryGrid& grid,
                                const std::vector<std::vector<double>>& data);
// Data lambda_k f, k < m, sampled from a target function.
std::vector<std::vector<double>> dirichlet_data(const TargetFunction& f, const BoundaryGrid& grid, int m);

// u(x) = sum_j V_j g_j(x) + p(x); near is set for points close to the curve.
double eval_solution(const DensitySolution& sol, Vec2 x, bool* near = nullptr);

struct NjResult {
  std::vector<std::vector<double>> N;  // N_0 f .. N_{m-1} f at the grid nodes
  DensitySolution solution;
  double trace_error = 0.0;  // extrapolation error estimate of the one-sided traces
};

NjResult compute_Nj(const SplineParams& p, const DomainCurve& curve, const BoundaryGrid& grid,
                    const TargetFunction& f, const TraceOptions& opt = {});

struct SymbolMatrix {
  Eigen::MatrixXd S;
  double det = 0.0;
};

double middle_binomial(int j);
SymbolMatrix symbol_matrix(int m);

}  // namespace surfspline
