#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "surfspline/dirichlet.hpp"
#include "surfspline/fast_eval.hpp"
#include "surfspline/lpr.hpp"
#include "surfspline/quadrature.hpp"

namespace surfspline {

// s(x) = sum_xi A_xi phi(x - xi) + p(x)
struct Approximant {
  SplineParams params;
  std::vector<Vec2> centers;
  std::vector<double> coefficients;
  Poly2 polynomial;
};

double eval_approximant(const Approximant& s, Vec2 x);
std::vector<double> eval_approximant(const Approximant& s, const std::vector<Vec2>& xs);

// CSV with header "x,y,A" for the centers, followed by lines
// "poly,a,b,coef" for the polynomial terms.
void write_approximant_csv(const std::string& path, const Approximant& s);
Approximant read_approximant_csv(const std::string& path, const SplineParams& p);

struct SchemeOptions {
  int n_boundary = 256;  // nodes of the Dirichlet solve that yields N_j f
  // Interior quadrature level. Zero picks max(min_level, level_per_unit / h).
  int quadrature_level = 0;
  int min_level = 32;
  double level_per_unit = 6.0;
  int order = 0;          // reproduction order M, zero means 2m
  double boundary_h = 0;  // density used for boundary kernels, zero means h
  // The boundary quadrature spacing is at most boundary_h / boundary_refine.
  double boundary_refine = 4.0;
  LprOptions lpr;
  TraceOptions trace;
};

struct SchemeStats {
  std::size_t quadrature_nodes = 0;
  std::size_t boundary_nodes = 0;
  double max_interior_stability = 0.0;
  double max_boundary_stability = 0.0;
  double max_interior_radius = 0.0;
  double max_boundary_radius = 0.0;
};

// The linear map f -> T_Xi f for fixed centers. All reproduction
// coefficients are built once, so applying the operator to several targets
// only costs one Dirichlet solve each.
class SchemeOperator {
 public:
  SchemeOperator(const SplineParams& p, const DomainCurve& curve, const CenterSet& centers,
                 SchemeOptions options = {});

  Approximant apply(const TargetFunction& f) const;
  // Same, reusing N_j f from an earlier solve on the scheme's grid.
  Approximant apply(const TargetFunction& f, const NjResult& nj) const;
  NjResult traces(const TargetFunction& f) const;

  // Reproduction coefficients a(alpha, .) at one interior quadrature node,
  // or a_j(alpha, .) at one node of the fine boundary grid.
  struct RowView {
    const std::uint32_t* index;
    const double* value;
    std::size_t size;
  };
  RowView interior_row(std::size_t q) const { return interior_.row(q); }
  RowView boundary_row(int j, std::size_t i) const { return boundary_[j].row(i); }

  const SchemeStats& stats() const { return stats_; }
  double h() const { return centers_.h; }
  const InteriorQuadrature& quadrature() const { return quad_; }
  const BoundaryGrid& grid() const { return grid_; }
  const BoundaryGrid& fine_grid() const { return fine_; }
  const std::vector<Vec2>& centers() const { return centers_.points; }

 private:
  // Sparse rows a(anchor, .) in compressed form.
  struct Rows {
    std::vector<std::size_t> start{0};
    std::vector<std::uint32_t> index;
    std::vector<double> value;
    void push(const LocalReproduction& lpr);
    RowView row(std::size_t r) const { return {index.data() + start[r], value.data() + start[r], start[r + 1] - start[r]}; }
  };

  SplineParams params_;
  DomainCurve curve_;
  CenterSet centers_;
  SchemeOptions options_;
  InteriorQuadrature quad_;
  BoundaryGrid grid_;
  BoundaryGrid fine_;
  Rows interior_;
  std::vector<Rows> boundary_;  // one per j = 0..m-1
  SchemeStats stats_;
};

Approximant assemble_TXi(const SplineParams& p, const TargetFunction& f, const DomainCurve& curve,
                         const CenterSet& centers, SchemeOptions options = {});

// Integral of Delta^m f(alpha) phi(x - alpha) over the domain. Points inside
// use a polar rule centred at x; points outside use the tensor rule.
double volume_potential(const SplineParams& p, const DomainCurve& curve, const TargetFunction& f, Vec2 x,
                        int level);

// Beppo-Levi extension nu_f * phi + p, built from a Dirichlet solve. For x
// inside the domain it reproduces f.
class Extension {
 public:
  Extension(const SplineParams& p, const DomainCurve& curve, const TargetFunction& f, int n_boundary,
            int level, TraceOptions trace = {});

  double operator()(Vec2 x, bool* near = nullptr) const;
  const NjResult& traces() const { return nj_; }
  // max over monomials q of degree < m of |<nu_f, q>|
  double annihilation_residual() const;

 private:
  SplineParams params_;
  std::shared_ptr<const DomainCurve> curve_;
  TargetFunction f_;
  BoundaryGrid grid_;
  NjResult nj_;
  std::unique_ptr<LayerPotential> layers_;
  int level_;
  std::unique_ptr<PhiSum> outer_;  // volume potential for points outside
};

double eval_extension(const Extension& ext, Vec2 x);
double annihilation_check(const Extension& ext);

}  // namespace surfspline
