#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "surfspline/core.hpp"

namespace surfspline {

enum class CurveKind { Circle, Ellipse, Star };

// Smooth closed counterclockwise curve given by an analytic formula.
//   circle:  c + r (cos t, sin t)
//   ellipse: c + (a cos t, b sin t)
//   star:    c + r0 (1 + eps cos(k t)) (cos t, sin t)
class DomainCurve {
 public:
  static DomainCurve circle(double radius = 1.0, Vec2 center = {});
  static DomainCurve ellipse(double a, double b, Vec2 center = {});
  static DomainCurve star(double eps, int k, double radius = 1.0, Vec2 center = {});
  // Accepts "circle", "circle:R", "ellipse:A,B", "star:EPS,K" and "star:EPS,K,R".
  static DomainCurve parse(const std::string& spec);
  std::string describe() const;

  CurveKind kind() const { return kind_; }
  Vec2 center() const { return center_; }

  Vec2 gamma(double t) const;
  Vec2 gamma_prime(double t) const;
  Vec2 gamma_second(double t) const;
  double speed(double t) const { return norm(gamma_prime(t)); }
  Vec2 normal(double t) const;  // outward unit normal
  double curvature(double t) const;

  bool inside(Vec2 x) const;
  // Boundary radius along direction theta as seen from the center.
  double polar_radius(double theta) const;
  double polar_radius_derivative(double theta) const;

  double diameter() const { return diameter_; }
  double reach() const { return reach_; }
  double max_speed() const { return max_speed_; }
  double arclength() const { return arclength_; }
  double inradius() const { return inradius_; }
  // Bounding box corners.
  Vec2 box_min() const { return box_min_; }
  Vec2 box_max() const { return box_max_; }

  // Distance from origin to the boundary along the ray origin + s (cos th, sin th).
  // The curve must be star-shaped with respect to origin; t_guess carries a
  // continuation hint for the curve parameter between consecutive calls.
  double ray_exit(Vec2 origin, double theta, double& t_guess) const;
  // True when every ray from origin meets the boundary once.
  bool star_shaped_about(Vec2 origin, int samples = 2048) const;

 private:
  DomainCurve(CurveKind kind, double a, double b, double eps, int k, Vec2 center);
  void compute_metrics();

  CurveKind kind_;
  double a_, b_, eps_;
  int k_;
  Vec2 center_;
  double diameter_ = 0, reach_ = 0, max_speed_ = 0, arclength_ = 0, inradius_ = 0;
  Vec2 box_min_, box_max_;
};

struct Projection {
  double rho = 0.0;  // signed distance, negative inside
  Vec2 foot;
  Vec2 normal;
  double t = 0.0;
};

Projection signed_distance(const DomainCurve& curve, Vec2 x);

struct BoundaryGrid {
  int n_nodes = 0;
  std::vector<double> t;
  std::vector<Vec2> x;
  std::vector<Vec2> normal;
  std::vector<double> w;      // 2 pi |gamma'(t_i)| / n
  std::vector<double> speed;  // |gamma'(t_i)|

  static BoundaryGrid make(const DomainCurve& curve, int n);
  double max_spacing() const;
  double total_weight() const;
};

struct CenterSet {
  std::vector<Vec2> points;
  double h = 0.0;  // measured fill distance
  double q = 0.0;  // separation radius
  std::size_t size() const { return points.size(); }
};

// Static spatial index over a point cloud.
class PointIndex {
 public:
  explicit PointIndex(const std::vector<Vec2>& points);
  ~PointIndex();
  PointIndex(PointIndex&&) noexcept;
  PointIndex& operator=(PointIndex&&) noexcept;

  std::vector<std::size_t> within(Vec2 x, double radius) const;
  std::vector<std::size_t> nearest(Vec2 x, std::size_t k) const;
  double nearest_distance(Vec2 x) const;
  const std::vector<Vec2>& points() const { return *points_; }

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
  const std::vector<Vec2>* points_;
};

// Sup over the closed domain of the distance to the nearest point. A
// background grid of spacing `resolution` plus boundary samples is scanned;
// resolution <= 0 refines automatically until the grid is eight times finer
// than the measured value.
double fill_distance(const std::vector<Vec2>& points, const DomainCurve& curve,
                     double resolution = 0.0);
// Fill distance restricted to the boundary zone -depth <= rho <= 0.
double boundary_zone_fill_distance(const std::vector<Vec2>& points, const DomainCurve& curve,
                                   double depth, double resolution);
double separation_radius(const std::vector<Vec2>& points);

CenterSet generate_centers(const DomainCurve& curve, double target_h, std::uint64_t seed);
CenterSet oversample_boundary(const DomainCurve& curve, const CenterSet& centers, double h,
                              double nu, int m);
// Depths of the added layers, in the order they are generated.
std::vector<double> oversampling_depths(double h, double nu, int m);

void write_centers_csv(const std::string& path, const std::vector<Vec2>& points);
std::vector<Vec2> read_centers_csv(const std::string& path);

}  // namespace surfspline
