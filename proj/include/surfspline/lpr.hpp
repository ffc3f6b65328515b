#pragma once

#include <cstddef>
#include <vector>

#include "surfspline/core.hpp"
#include "surfspline/geometry.hpp"

namespace surfspline {

// Coefficients a(alpha, xi) reproducing either point evaluation or a
// boundary operator lambda_j at the anchor from samples on the centers.
struct LocalReproduction {
  Vec2 anchor;
  std::vector<std::size_t> support;
  std::vector<double> coefficients;
  int order = 0;
  double radius = 0.0;
  double stability = 0.0;  // sum of |a|
};

struct LprOptions {
  // Upper bound on the starting radius, as a multiple of M^2 h.
  double gamma = 1.0;
  double growth = 1.25;
  // Start from the ball that holds this many times dim(Pi_M) centers.
  double oversample = 2.0;
  // Largest accepted sum |a| after rescaling the ball to unit radius.
  double stability_budget = 6.0;
  // Growth past the first full-rank radius stops at this factor, and the
  // most stable candidate seen so far is returned.
  double max_growth = 4.0;
  // Radius past which the build gives up. Zero means twice the extent of
  // the point cloud.
  double max_radius = 0.0;
};

class LprBuilder {
 public:
  LprBuilder(const std::vector<Vec2>& centers, LprOptions options = {});

  LocalReproduction interior(Vec2 alpha, double h, int M) const;
  // Reproduces lambda_j p(alpha) for the outward normal n at alpha.
  LocalReproduction boundary(int j, Vec2 alpha, Vec2 normal, double h_local, int M) const;

  const PointIndex& index() const { return index_; }
  const LprOptions& options() const { return options_; }

 private:
  LocalReproduction build(int j, Vec2 alpha, Vec2 normal, double h, int M) const;

  PointIndex index_;
  LprOptions options_;
  double max_radius_;
};

LocalReproduction build_interior_lpr(Vec2 alpha, const std::vector<Vec2>& centers, double h, int M,
                                     LprOptions options = {});
LocalReproduction build_boundary_lpr(int j, Vec2 alpha, Vec2 normal, const std::vector<Vec2>& centers,
                                     double h_local, int M, LprOptions options = {});

// Largest |sum a p(xi) - lambda_j p(alpha)| over the monomials of degree
// <= M, in coordinates centred at the anchor and scaled by the radius.
double reproduction_residual(const LocalReproduction& lpr, const std::vector<Vec2>& centers, int j,
                             Vec2 normal);

}  // namespace surfspline
