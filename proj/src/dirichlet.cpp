#include "surfspline/dirichlet.hpp"

#include <Eigen/LU>

namespace surfspline {

AugmentedSystem assemble_augmented(const SplineParams& p, const BoundaryGrid& grid,
                                   const std::vector<std::vector<double>>& data) {
  const int m = p.m;
  const int n = grid.n_nodes;
  if (static_cast<int>(data.size()) != m) throw DomainError("Dirichlet data needs m nodal vectors");
  for (const auto& d : data)
    if (static_cast<int>(d.size()) != n) throw DomainError("Dirichlet data length does not match the grid");
  const PolyBasis basis(m - 1);
  const int N = basis.size();
  const Eigen::MatrixXd P = assemble_P(basis, grid, m);
  AugmentedSystem sys;
  sys.N = N;
  sys.m = m;
  sys.n = n;
  sys.matrix = Eigen::MatrixXd::Zero(N + m * n, N + m * n);
  sys.rhs = Eigen::VectorXd::Zero(N + m * n);
  for (int k = 0; k < m; ++k)
    for (int i = 0; i < n; ++i) {
      for (int a = 0; a < N; ++a) {
        sys.matrix(a, N + k * n + i) = grid.w[i] * P(k * n + i, a);
        sys.matrix(N + k * n + i, a) = P(k * n + i, a);
      }
      sys.rhs(N + k * n + i) = data[k][i];
    }
  for (int k = 0; k < m; ++k)
    for (int j = 0; j < m; ++j)
      sys.matrix.block(N + k * n, N + j * n, n, n) = assemble_vkj(p, k, j, grid).M;
  return sys;
}

std::vector<std::vector<double>> dirichlet_data(const TargetFunction& f, const BoundaryGrid& grid, int m) {
  std::vector<std::vector<double>> data(m, std::vector<double>(grid.n_nodes));
  for (int k = 0; k < m; ++k)
    for (int i = 0; i < grid.n_nodes; ++i) data[k][i] = f.trace(k, grid.x[i], grid.normal[i]);
  return data;
}

DensitySolution solve_dirichlet(const SplineParams& p, const DomainCurve& curve, const BoundaryGrid& grid,
                                const std::vector<std::vector<double>>& data) {
  const AugmentedSystem sys = assemble_augmented(p, grid, data);
  DensitySolution sol;
  sol.params = p;
  sol.curve = std::make_shared<DomainCurve>(curve);
  sol.grid = grid;
  sol.basis = PolyBasis(p.m - 1);

  for (const auto& d : data) {
    const auto mags = fourier_magnitudes(d);
    double top = 0.0, tail = 0.0;
    for (double v : mags) top = std::max(top, v);
    for (std::size_t i = mags.size() * 7 / 8; i < mags.size(); ++i) tail = std::max(tail, mags[i]);
    if (tail > 1e-10 * std::max(top, 1e-300)) sol.data_resolved = false;
  }

  const Eigen::PartialPivLU<Eigen::MatrixXd> lu(sys.matrix);
  sol.rcond = lu.rcond();
  if (!(sol.rcond > 1e-15)) throw SingularSystemError("augmented Dirichlet system is numerically singular");
  Eigen::VectorXd x = lu.solve(sys.rhs);
  x += lu.solve(sys.rhs - sys.matrix * x);
  const double bnorm = std::max(sys.rhs.norm(), 1e-300);
  sol.residual = (sys.rhs - sys.matrix * x).norm() / bnorm;
  if (sys.rhs.norm() == 0.0) sol.residual = (sys.matrix * x).norm();
  if (sol.residual > 1e-8) throw ResidualTooLarge("Dirichlet solve residual " + std::to_string(sol.residual));

  const int N = sys.N, n = sys.n;
  sol.A = x.head(N);
  for (int j = 0; j < p.m; ++j) {
    Density d{j, std::vector<double>(n)};
    for (int i = 0; i < n; ++i) d.values[i] = x(N + j * n + i);
    sol.g.push_back(std::move(d));
  }
  const Eigen::VectorXd moments = sys.matrix.topRows(N) * x;
  const double gnorm = x.tail(p.m * n).norm();
  sol.moment_residual = gnorm > 0 ? moments.norm() / gnorm : moments.norm();
  sol.potential = std::make_shared<LayerPotential>(p, curve, grid, sol.g);
  return sol;
}

double eval_solution(const DensitySolution& sol, Vec2 x, bool* near) {
  return sol.potential->eval(x, 0, Vec2{}, near) + sol.polynomial()(x);
}

NjResult compute_Nj(const SplineParams& p, const DomainCurve& curve, const BoundaryGrid& grid,
                    const TargetFunction& f, const TraceOptions& opt) {
  NjResult out{{}, solve_dirichlet(p, curve, grid, dirichlet_data(f, grid, p.m)), 0.0};
  const Poly2 poly = out.solution.polynomial();
  const int n = grid.n_nodes;
  for (int j = 0; j < p.m; ++j) {
    const int k = 2 * p.m - j - 1;
    const TraceResult tr = one_sided_trace(*out.solution.potential, k, Side::Inside, opt);
    out.trace_error = std::max(out.trace_error, tr.error_estimate);
    const double sign = j % 2 == 0 ? -1.0 : 1.0;  // (-1)^{j+1}
    std::vector<double> Nj(n);
    for (int i = 0; i < n; ++i) {
      const double f1 = tr.values[i] + poly.lambda(k, grid.x[i], grid.normal[i]);
      Nj[i] = out.solution.g[j].values[i] + sign * (f.trace(k, grid.x[i], grid.normal[i]) - f1);
    }
    out.N.push_back(std::move(Nj));
  }
  return out;
}

double middle_binomial(int j) {
  double b = 1.0;
  for (int i = 1; i <= j; ++i) b = b * (j + i) / i;
  return b;
}

SymbolMatrix symbol_matrix(int m) {
  if (m < 1) throw DomainError("symbol matrix needs m >= 1");
  SymbolMatrix out;
  out.S = Eigen::MatrixXd::Zero(m, m);
  for (int j = 0; j < m; ++j) {
    for (int k = 0; k < m; ++k) {
      if ((j + k) % 2 != 0) continue;
      const int idx = m - (j + k) / 2 - 1;
      const double scale = std::ldexp(1.0, 1 + j + k - 2 * m);
      if (j % 2 == 0) {
        out.S(j, k) = scale * middle_binomial(idx);
      } else {
        out.S(j, k) = scale * (4 * middle_binomial(idx) - middle_binomial(idx + 1));
      }
    }
  }
  out.det = out.S.determinant();
  return out;
}

}  // namespace surfspline
