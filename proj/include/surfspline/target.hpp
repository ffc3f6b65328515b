#pragma once

#include <functional>
#include <memory>
#include <string>

#include "surfspline/polyspace.hpp"

namespace surfspline {

// A target function together with its iterated Laplacians and their
// gradients, which is all the boundary operators lambda_k need. Analytic
// families supply closed forms; generic callables fall back to finite
// differences and must be defined in a neighbourhood of the closed domain.
class TargetFunction {
 public:
  using ValueFn = std::function<double(Vec2)>;
  using LapFn = std::function<double(Vec2, int)>;
  using GradFn = std::function<Vec2(Vec2, int)>;

  TargetFunction(std::string name, LapFn laplacian_power, GradFn grad_laplacian_power,
                 bool analytic, std::string smoothness);

  static TargetFunction polynomial(const Poly2& p, std::string name = "polynomial");
  // exp(k . x)
  static TargetFunction exp_plane(Vec2 k, std::string name = "exp_plane");
  // cos(k . x + phase)
  static TargetFunction cos_plane(Vec2 k, double phase, std::string name = "cos_plane");
  // Finite-difference oracle with fourth-order central stencils of width `step`.
  static TargetFunction from_callable(ValueFn f, std::string name = "callable", double step = 1e-2);
  // Named targets used by the CLI and experiments: x1, quadratic, harmonic3,
  // biharmonic, cubic, exp, exp_diag, cos_wave, smooth_mix.
  static TargetFunction by_name(const std::string& name);

  static TargetFunction linear_combination(double a, const TargetFunction& f, double b,
                                           const TargetFunction& g, std::string name = "");

  const std::string& name() const { return name_; }
  bool analytic() const { return analytic_; }
  const std::string& smoothness() const { return smoothness_; }

  double operator()(Vec2 x) const { return lap_(x, 0); }
  double laplacian_power(Vec2 x, int a) const { return lap_(x, a); }
  Vec2 grad_laplacian_power(Vec2 x, int a) const { return grad_(x, a); }
  // lambda_k f at a boundary point with unit normal n.
  double trace(int k, Vec2 x, Vec2 n) const;

 private:
  std::string name_;
  LapFn lap_;
  GradFn grad_;
  bool analytic_;
  std::string smoothness_;
};

}  // namespace surfspline
