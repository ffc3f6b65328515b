#include "surfspline/quadrature.hpp"

#include <gsl/gsl_integration.h>

#include <map>
#include <mutex>

namespace surfspline {

const GaussRule& gauss_legendre01(int n) {
  static std::mutex mu;
  static std::map<int, GaussRule> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  if (n < 1) throw DomainError("Gauss rule needs at least one node");
  gsl_integration_glfixed_table* table = gsl_integration_glfixed_table_alloc(n);
  GaussRule rule;
  rule.x.resize(n);
  rule.w.resize(n);
  for (int i = 0; i < n; ++i) gsl_integration_glfixed_point(0.0, 1.0, i, &rule.x[i], &rule.w[i], table);
  gsl_integration_glfixed_table_free(table);
  return cache.emplace(n, std::move(rule)).first->second;
}

InteriorQuadrature interior_quadrature(const DomainCurve& curve, int level) {
  return interior_quadrature(curve, level, 4 * level);
}

InteriorQuadrature interior_quadrature(const DomainCurve& curve, int n_radial, int n_angular) {
  if (n_radial < 1 || n_angular < 1) throw DomainError("quadrature level must be positive");
  if (!curve.star_shaped_about(curve.center()))
    throw StarShapeViolation("domain is not star-shaped about its center");
  const GaussRule& g = gauss_legendre01(n_radial);
  InteriorQuadrature q;
  q.level = n_radial;
  q.nodes.reserve(static_cast<std::size_t>(n_radial) * n_angular);
  q.w.reserve(q.nodes.capacity());
  const double dth = 2 * kPi / n_angular;
  for (int k = 0; k < n_angular; ++k) {
    const double th = k * dth;
    const double R = curve.polar_radius(th);
    const Vec2 e{std::cos(th), std::sin(th)};
    for (int i = 0; i < n_radial; ++i) {
      const double rho = g.x[i] * R;
      q.nodes.push_back(curve.center() + e * rho);
      q.w.push_back(g.w[i] * R * rho * dth);
    }
  }
  return q;
}

InteriorQuadrature polar_rule_about(const DomainCurve& curve, Vec2 x, int n_radial, int min_angular) {
  if (!curve.star_shaped_about(x, 1024))
    throw StarShapeViolation("domain is not star-shaped about the evaluation point");
  // The ray length R(theta) has complex singularities at distance about
  // dist/|x - foot| from the real axis, so the trapezoid rule needs roughly
  // 1/dist nodes per unit angle.
  const double dist = std::max(-signed_distance(curve, x).rho, 1e-12);
  const double need = 40.0 * curve.diameter() / dist;
  int n_angular = std::max(min_angular, static_cast<int>(std::ceil(need)));
  n_angular += n_angular % 2;
  const GaussRule& g = gauss_legendre01(n_radial);
  InteriorQuadrature q;
  q.level = n_radial;
  q.nodes.reserve(static_cast<std::size_t>(n_radial) * n_angular);
  q.w.reserve(q.nodes.capacity());
  const double dth = 2 * kPi / n_angular;
  double t_guess = std::nan("");
  for (int k = 0; k < n_angular; ++k) {
    const double th = k * dth;
    const double R = curve.ray_exit(x, th, t_guess);
    const Vec2 e{std::cos(th), std::sin(th)};
    for (int i = 0; i < n_radial; ++i) {
      const double rho = g.x[i] * R;
      q.nodes.push_back(x + e * rho);
      q.w.push_back(g.w[i] * R * rho * dth);
    }
  }
  return q;
}

}  // namespace surfspline
