#pragma once

#include <vector>

#include "surfspline/geometry.hpp"

namespace surfspline {

struct GaussRule {
  std::vector<double> x;  // nodes on [0, 1]
  std::vector<double> w;
};

// Gauss-Legendre rule with n points mapped to [0, 1]. Rules are cached.
const GaussRule& gauss_legendre01(int n);

struct InteriorQuadrature {
  std::vector<Vec2> nodes;
  std::vector<double> w;
  int level = 0;

  std::size_t size() const { return nodes.size(); }
  template <class F>
  double integrate(F&& f) const {
    double s = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) s += w[i] * f(nodes[i]);
    return s;
  }
};

// Polar tensor rule about the curve center: Gauss in the radial fraction
// times the trapezoid rule in angle. level L uses L radial and 4L angular nodes.
InteriorQuadrature interior_quadrature(const DomainCurve& curve, int level);
InteriorQuadrature interior_quadrature(const DomainCurve& curve, int n_radial, int n_angular);

// Polar rule centred at an interior point x, suited to integrands that are
// singular at x. The angular count adapts to the distance from x to the boundary.
InteriorQuadrature polar_rule_about(const DomainCurve& curve, Vec2 x, int n_radial,
                                    int min_angular);

}  // namespace surfspline
