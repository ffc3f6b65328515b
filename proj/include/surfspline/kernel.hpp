#pragma once

#include <span>
#include <vector>

#include "surfspline/core.hpp"

namespace surfspline {

struct SplineParams {
  int m = 2;
  int d = 2;
  // Points closer than this are treated as coincident. Callers working on
  // a domain of diameter D typically pass 1e-12 * D.
  double singular_tol = 1e-12;

  void validate() const;
  int poly_dim() const { return m * (m + 1) / 2; }  // dim of degree m-1 polynomials in 2-D
};

struct KernelValue {
  double value = 0.0;
  bool is_singular_point = false;
};

// Normalization constant of phi, chosen so that Delta^m phi = delta.
double fs_constant(const SplineParams& p);

// A radial function r^q (A log r + B). Iterated Laplacians of phi stay in
// this family, which is what makes every boundary kernel closed-form.
struct RadialTerm {
  int q = 0;
  double A = 0.0;
  double B = 0.0;

  double value(double r) const;
  double d1(double r) const;  // d/dr
  double d2(double r) const;  // d^2/dr^2
  RadialTerm laplacian(int d) const;
};

// Delta^a phi written as a RadialTerm.
RadialTerm laplacian_profile(const SplineParams& p, int a);

double phi(const SplineParams& p, Vec2 x);
double phi(const SplineParams& p, std::span<const double> x);
// Continuous extension of phi with phi(0) = 0 (valid since 2m - d >= 1).
double phi_continuous(const SplineParams& p, Vec2 x);

double lambda_phi(const SplineParams& p, int j, Vec2 x, Vec2 alpha, Vec2 n_alpha);

// Restricted to k + j <= 2m - 2, where the kernel is at most log-singular.
double lambda_lambda_phi(const SplineParams& p, int k, int j, Vec2 x, Vec2 n_x,
                         Vec2 alpha, Vec2 n_alpha);

// Same kernel with no order restriction, for evaluation away from the boundary.
double operator_kernel(const SplineParams& p, int k, int j, Vec2 x, Vec2 n_x,
                       Vec2 alpha, Vec2 n_alpha);
KernelValue operator_kernel_checked(const SplineParams& p, int k, int j, Vec2 x,
                                    Vec2 n_x, Vec2 alpha, Vec2 n_alpha);

// Decomposition K = log_coeff * log|x - alpha| + smooth used by the
// logarithmic quadrature. Only defined for d = 2 and k + j <= 2m - 2.
struct SplitKernel {
  double log_coeff = 0.0;
  double smooth = 0.0;
};
SplitKernel split_kernel(const SplineParams& p, int k, int j, Vec2 x, Vec2 n_x,
                         Vec2 alpha, Vec2 n_alpha);
// Limit of the split as alpha -> x along the curve, where the normals agree.
SplitKernel split_kernel_diagonal(const SplineParams& p, int k, int j);

// Precomputed Laplacian profiles for repeated kernel evaluation in hot loops.
// y = x - alpha; no singularity or order checks are made.
class KernelTable {
 public:
  explicit KernelTable(const SplineParams& p);
  const SplineParams& params() const { return p_; }
  const RadialTerm& profile(int a) const { return profiles_.at(a); }
  SplitKernel split(int k, int j, Vec2 y, Vec2 n_x, Vec2 n_alpha) const;
  double eval(int k, int j, Vec2 y, Vec2 n_x, Vec2 n_alpha) const {
    const SplitKernel s = split(k, j, y, n_x, n_alpha);
    return s.log_coeff == 0.0 ? s.smooth : s.log_coeff * 0.5 * std::log(norm2(y)) + s.smooth;
  }

 private:
  SplineParams p_;
  std::vector<RadialTerm> profiles_;
};

}  // namespace surfspline
