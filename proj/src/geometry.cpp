#include "surfspline/geometry.hpp"

#include <algorithm>
#include <boost/geometry.hpp>
#include <boost/geometry/index/rtree.hpp>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>

namespace surfspline {

namespace bg = boost::geometry;
namespace bgi = boost::geometry::index;

DomainCurve::DomainCurve(CurveKind kind, double a, double b, double eps, int k, Vec2 center)
    : kind_(kind), a_(a), b_(b), eps_(eps), k_(k), center_(center) {
  compute_metrics();
}

DomainCurve DomainCurve::circle(double radius, Vec2 center) {
  if (!(radius > 0)) throw DomainError("circle radius must be positive");
  return DomainCurve(CurveKind::Circle, radius, radius, 0.0, 0, center);
}

DomainCurve DomainCurve::ellipse(double a, double b, Vec2 center) {
  if (!(a > 0 && b > 0)) throw DomainError("ellipse semi-axes must be positive");
  return DomainCurve(CurveKind::Ellipse, a, b, 0.0, 0, center);
}

DomainCurve DomainCurve::star(double eps, int k, double radius, Vec2 center) {
  if (!(radius > 0) || !(std::abs(eps) < 1.0) || k < 1)
    throw DomainError("star curve needs radius > 0, |eps| < 1 and k >= 1");
  return DomainCurve(CurveKind::Star, radius, radius, eps, k, center);
}

DomainCurve DomainCurve::parse(const std::string& spec) {
  const auto colon = spec.find(':');
  const std::string name = spec.substr(0, colon);
  std::vector<double> args;
  if (colon != std::string::npos) {
    std::stringstream ss(spec.substr(colon + 1));
    std::string item;
    while (std::getline(ss, item, ',')) {
      try {
        args.push_back(std::stod(item));
      } catch (const std::exception&) {
        throw ConfigError("bad number '" + item + "' in curve spec '" + spec + "'");
      }
    }
  }
  auto arg = [&](std::size_t i, double fallback) { return i < args.size() ? args[i] : fallback; };
  if (name == "circle" || name == "disk") return circle(arg(0, 1.0));
  if (name == "ellipse") {
    if (args.size() < 2) throw ConfigError("ellipse needs two semi-axes, e.g. ellipse:2,1");
    return ellipse(args[0], args[1]);
  }
  if (name == "star") {
    if (args.size() < 2) throw ConfigError("star needs eps and k, e.g. star:0.2,5");
    return star(args[0], static_cast<int>(args[1]), arg(2, 1.0));
  }
  throw ConfigError("unknown curve '" + name + "'");
}

std::string DomainCurve::describe() const {
  std::ostringstream os;
  os.precision(17);
  switch (kind_) {
    case CurveKind::Circle: os << "circle:" << a_; break;
    case CurveKind::Ellipse: os << "ellipse:" << a_ << "," << b_; break;
    case CurveKind::Star: os << "star:" << eps_ << "," << k_ << "," << a_; break;
  }
  return os.str();
}

Vec2 DomainCurve::gamma(double t) const {
  const double c = std::cos(t), s = std::sin(t);
  if (kind_ == CurveKind::Ellipse) return center_ + Vec2{a_ * c, b_ * s};
  const double r = a_ * (1.0 + eps_ * std::cos(k_ * t));
  return center_ + Vec2{r * c, r * s};
}

Vec2 DomainCurve::gamma_prime(double t) const {
  const double c = std::cos(t), s = std::sin(t);
  if (kind_ == CurveKind::Ellipse) return {-a_ * s, b_ * c};
  const double r = a_ * (1.0 + eps_ * std::cos(k_ * t));
  const double dr = -a_ * eps_ * k_ * std::sin(k_ * t);
  return {dr * c - r * s, dr * s + r * c};
}

Vec2 DomainCurve::gamma_second(double t) const {
  const double c = std::cos(t), s = std::sin(t);
  if (kind_ == CurveKind::Ellipse) return {-a_ * c, -b_ * s};
  const double r = a_ * (1.0 + eps_ * std::cos(k_ * t));
  const double dr = -a_ * eps_ * k_ * std::sin(k_ * t);
  const double ddr = -a_ * eps_ * k_ * k_ * std::cos(k_ * t);
  return {ddr * c - 2 * dr * s - r * c, ddr * s + 2 * dr * c - r * s};
}

Vec2 DomainCurve::normal(double t) const {
  const Vec2 d = gamma_prime(t);
  const double l = norm(d);
  return {d.y / l, -d.x / l};
}

double DomainCurve::curvature(double t) const {
  const Vec2 d1 = gamma_prime(t), d2 = gamma_second(t);
  const double l = norm(d1);
  return cross(d1, d2) / (l * l * l);
}

bool DomainCurve::inside(Vec2 x) const {
  const Vec2 y = x - center_;
  if (kind_ == CurveKind::Ellipse) return (y.x / a_) * (y.x / a_) + (y.y / b_) * (y.y / b_) < 1.0;
  return norm(y) < polar_radius(std::atan2(y.y, y.x));
}

double DomainCurve::polar_radius(double theta) const {
  if (kind_ == CurveKind::Ellipse) {
    const double c = b_ * std::cos(theta), s = a_ * std::sin(theta);
    return a_ * b_ / std::sqrt(c * c + s * s);
  }
  return a_ * (1.0 + eps_ * std::cos(k_ * theta));
}

double DomainCurve::polar_radius_derivative(double theta) const {
  if (kind_ == CurveKind::Ellipse) {
    const double c = std::cos(theta), s = std::sin(theta);
    const double q = b_ * b_ * c * c + a_ * a_ * s * s;
    return -a_ * b_ * (a_ * a_ - b_ * b_) * s * c / (q * std::sqrt(q));
  }
  return -a_ * eps_ * k_ * std::sin(k_ * theta);
}

void DomainCurve::compute_metrics() {
  const int n = 4096;
  double max_kappa = 0.0, len = 0.0;
  max_speed_ = 0.0;
  inradius_ = std::numeric_limits<double>::infinity();
  box_min_ = {std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
  box_max_ = -1.0 * box_min_;
  std::vector<Vec2> coarse;
  for (int i = 0; i < n; ++i) {
    const double t = 2 * kPi * i / n;
    const Vec2 p = gamma(t);
    const double sp = speed(t);
    max_speed_ = std::max(max_speed_, sp);
    max_kappa = std::max(max_kappa, std::abs(curvature(t)));
    len += sp;
    inradius_ = std::min(inradius_, norm(p - center_));
    box_min_ = {std::min(box_min_.x, p.x), std::min(box_min_.y, p.y)};
    box_max_ = {std::max(box_max_.x, p.x), std::max(box_max_.y, p.y)};
    if (i % 8 == 0) coarse.push_back(p);
  }
  arclength_ = len * 2 * kPi / n;
  reach_ = 1.0 / max_kappa;
  diameter_ = 0.0;
  for (std::size_t i = 0; i < coarse.size(); ++i)
    for (std::size_t j = i + 1; j < coarse.size(); ++j)
      diameter_ = std::max(diameter_, norm(coarse[i] - coarse[j]));
}

bool DomainCurve::star_shaped_about(Vec2 origin, int samples) const {
  if (!inside(origin)) return false;
  for (int i = 0; i < samples; ++i) {
    const double t = 2 * kPi * i / samples;
    if (cross(gamma(t) - origin, gamma_prime(t)) <= 0.0) return false;
  }
  return true;
}

double DomainCurve::ray_exit(Vec2 origin, double theta, double& t_guess) const {
  const Vec2 dir{std::cos(theta), std::sin(theta)};
  auto seed = [&]() {
    double best = std::numeric_limits<double>::infinity(), bt = 0.0;
    const int n = 720;
    for (int i = 0; i < n; ++i) {
      const double t = 2 * kPi * i / n;
      const Vec2 v = gamma(t) - origin;
      const double along = dot(v, dir);
      if (along <= 0) continue;
      const double off = std::abs(cross(v, dir)) / norm(v);
      if (off < best) {
        best = off;
        bt = t;
      }
    }
    return bt;
  };
  for (int attempt = 0; attempt < 2; ++attempt) {
    double t = (attempt == 0 && std::isfinite(t_guess)) ? t_guess : seed();
    for (int it = 0; it < 50; ++it) {
      const Vec2 v = gamma(t) - origin;
      const double f = cross(v, dir);
      const double df = cross(gamma_prime(t), dir);
      if (df == 0.0) break;
      double step = f / df;
      // Keep steps modest so Newton does not jump to the opposite crossing.
      const double cap = 0.5;
      step = std::clamp(step, -cap, cap);
      t -= step;
      if (std::abs(step) < 1e-14) {
        const Vec2 w = gamma(t) - origin;
        if (dot(w, dir) > 0) {
          t_guess = t;
          return dot(w, dir);
        }
        break;
      }
    }
  }
  throw ProjectionError("ray/boundary intersection did not converge");
}

Projection signed_distance(const DomainCurve& curve, Vec2 x) {
  const int n = 256;
  double best = std::numeric_limits<double>::infinity(), bt = 0.0;
  for (int i = 0; i < n; ++i) {
    const double t = 2 * kPi * i / n;
    const double d = norm2(curve.gamma(t) - x);
    if (d < best) {
      best = d;
      bt = t;
    }
  }
  const double dt = 2 * kPi / n;
  double t = bt;
  bool converged = false;
  for (int it = 0; it < 50; ++it) {
    const Vec2 v = curve.gamma(t) - x;
    const Vec2 d1 = curve.gamma_prime(t), d2 = curve.gamma_second(t);
    const double f = dot(v, d1);
    double fp = dot(d1, d1) + dot(v, d2);
    double step;
    if (fp > 0) {
      step = f / fp;
    } else {
      // Past the center of curvature the Newton model is not convex; take a
      // gradient step instead.
      step = f / dot(d1, d1);
    }
    step = std::clamp(step, -dt, dt);
    t -= step;
    if (std::abs(step) < 1e-14) {
      converged = true;
      break;
    }
  }
  if (!converged) throw ProjectionError("Newton projection onto the boundary did not converge");
  Projection p;
  p.t = t;
  p.foot = curve.gamma(t);
  p.normal = curve.normal(t);
  const double dist = norm(x - p.foot);
  p.rho = curve.inside(x) ? -dist : dist;
  return p;
}

BoundaryGrid BoundaryGrid::make(const DomainCurve& curve, int n) {
  if (n < 4) throw DomainError("boundary grid needs at least 4 nodes");
  BoundaryGrid g;
  g.n_nodes = n;
  g.t.resize(n);
  g.x.resize(n);
  g.normal.resize(n);
  g.w.resize(n);
  g.speed.resize(n);
  for (int i = 0; i < n; ++i) {
    const double t = 2 * kPi * i / n;
    g.t[i] = t;
    g.x[i] = curve.gamma(t);
    g.normal[i] = curve.normal(t);
    g.speed[i] = curve.speed(t);
    g.w[i] = 2 * kPi * g.speed[i] / n;
  }
  return g;
}

double BoundaryGrid::max_spacing() const {
  double s = 0.0;
  for (int i = 0; i < n_nodes; ++i) s = std::max(s, norm(x[(i + 1) % n_nodes] - x[i]));
  return s;
}

double BoundaryGrid::total_weight() const {
  double s = 0.0;
  for (double v : w) s += v;
  return s;
}

// ---------------------------------------------------------------------------

using BPoint = bg::model::point<double, 2, bg::cs::cartesian>;
using BBox = bg::model::box<BPoint>;
using BValue = std::pair<BPoint, std::size_t>;

struct PointIndex::Impl {
  bgi::rtree<BValue, bgi::rstar<16>> tree;
};

PointIndex::PointIndex(const std::vector<Vec2>& points) : impl_(std::make_unique<Impl>()), points_(&points) {
  std::vector<BValue> values;
  values.reserve(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) values.emplace_back(BPoint(points[i].x, points[i].y), i);
  impl_->tree = bgi::rtree<BValue, bgi::rstar<16>>(values.begin(), values.end());
}

PointIndex::~PointIndex() = default;
PointIndex::PointIndex(PointIndex&&) noexcept = default;
PointIndex& PointIndex::operator=(PointIndex&&) noexcept = default;

std::vector<std::size_t> PointIndex::within(Vec2 x, double radius) const {
  std::vector<BValue> hits;
  const BBox box(BPoint(x.x - radius, x.y - radius), BPoint(x.x + radius, x.y + radius));
  impl_->tree.query(bgi::intersects(box), std::back_inserter(hits));
  std::vector<std::pair<double, std::size_t>> keep;
  const double r2 = radius * radius;
  for (const auto& h : hits) {
    const double d = norm2((*points_)[h.second] - x);
    if (d <= r2) keep.emplace_back(d, h.second);
  }
  std::sort(keep.begin(), keep.end());
  std::vector<std::size_t> out;
  out.reserve(keep.size());
  for (const auto& k : keep) out.push_back(k.second);
  return out;
}

std::vector<std::size_t> PointIndex::nearest(Vec2 x, std::size_t k) const {
  std::vector<BValue> hits;
  impl_->tree.query(bgi::nearest(BPoint(x.x, x.y), static_cast<unsigned>(k)), std::back_inserter(hits));
  std::vector<std::pair<double, std::size_t>> keep;
  for (const auto& h : hits) keep.emplace_back(norm2((*points_)[h.second] - x), h.second);
  std::sort(keep.begin(), keep.end());
  std::vector<std::size_t> out;
  for (const auto& kk : keep) out.push_back(kk.second);
  return out;
}

double PointIndex::nearest_distance(Vec2 x) const {
  std::vector<BValue> hits;
  impl_->tree.query(bgi::nearest(BPoint(x.x, x.y), 1), std::back_inserter(hits));
  if (hits.empty()) return std::numeric_limits<double>::infinity();
  return norm((*points_)[hits.front().second] - x);
}

namespace {

// Scan interior grid points and boundary samples whose signed depth lies in
// [-max_depth, 0]; max_depth = infinity selects the whole closure.
double scan_fill(const PointIndex& index, const DomainCurve& curve, double s, double max_depth) {
  double h = 0.0;
  const Vec2 lo = curve.box_min(), hi = curve.box_max();
  const int nx = static_cast<int>(std::ceil((hi.x - lo.x) / s)) + 1;
  const int ny = static_cast<int>(std::ceil((hi.y - lo.y) / s)) + 1;
  const bool restricted = std::isfinite(max_depth);
  for (int i = 0; i < nx; ++i) {
    for (int j = 0; j < ny; ++j) {
      const Vec2 p{lo.x + i * s, lo.y + j * s};
      if (!curve.inside(p)) continue;
      if (restricted && signed_distance(curve, p).rho < -max_depth) continue;
      h = std::max(h, index.nearest_distance(p));
    }
  }
  const int nb = static_cast<int>(std::ceil(curve.max_speed() * 2 * kPi / s));
  for (int i = 0; i < nb; ++i) h = std::max(h, index.nearest_distance(curve.gamma(2 * kPi * i / nb)));
  return h;
}

}  // namespace

double fill_distance(const std::vector<Vec2>& points, const DomainCurve& curve, double resolution) {
  if (points.empty()) throw DomainError("fill distance of an empty center set");
  const PointIndex index(points);
  if (resolution > 0) return scan_fill(index, curve, resolution, std::numeric_limits<double>::infinity());
  double s = curve.diameter() / 64;
  const double floor_s = curve.diameter() / 4096;
  double h = scan_fill(index, curve, s, std::numeric_limits<double>::infinity());
  while (s > h / 8 && s > floor_s) {
    s = std::max(h / 8, floor_s);
    h = scan_fill(index, curve, s, std::numeric_limits<double>::infinity());
  }
  return h;
}

double boundary_zone_fill_distance(const std::vector<Vec2>& points, const DomainCurve& curve,
                                   double depth, double resolution) {
  if (points.empty()) throw DomainError("fill distance of an empty center set");
  const PointIndex index(points);
  // Grid points in a thin zone are sparse, so sample along normals instead.
  const int nb = static_cast<int>(std::ceil(curve.max_speed() * 2 * kPi / resolution));
  const int nd = static_cast<int>(std::ceil(depth / resolution)) + 1;
  double h = 0.0;
  for (int i = 0; i < nb; ++i) {
    const double t = 2 * kPi * i / nb;
    const Vec2 b = curve.gamma(t), n = curve.normal(t);
    for (int k = 0; k < nd; ++k) h = std::max(h, index.nearest_distance(b - n * (depth * k / (nd - 1))));
  }
  return h;
}

double separation_radius(const std::vector<Vec2>& points) {
  if (points.size() < 2) return std::numeric_limits<double>::infinity();
  const PointIndex index(points);
  double q = std::numeric_limits<double>::infinity();
  for (const Vec2& p : points) {
    const auto nn = index.nearest(p, 2);
    q = std::min(q, norm(points[nn.back()] - p));
  }
  return 0.5 * q;
}

CenterSet generate_centers(const DomainCurve& curve, double target_h, std::uint64_t seed) {
  if (!(target_h > 0) || target_h >= curve.inradius())
    throw DensityUnreachable("target fill distance must be positive and below the inradius");
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double s = std::sqrt(3.0) * target_h;
  const double jitter = 0.1 * s;
  const Vec2 shift{unit(gen) * s, unit(gen) * s};
  const Vec2 lo = curve.box_min(), hi = curve.box_max();
  const double row = s * std::sqrt(3.0) / 2;
  const int ny = static_cast<int>(std::ceil((hi.y - lo.y) / row)) + 3;
  const int nx = static_cast<int>(std::ceil((hi.x - lo.x) / s)) + 3;
  CenterSet out;
  for (int j = -1; j < ny; ++j) {
    for (int i = -1; i < nx; ++i) {
      Vec2 p{lo.x - shift.x + i * s + (j % 2 != 0 ? 0.5 * s : 0.0), lo.y - shift.y + j * row};
      // Draw the jitter for every lattice site so the sequence does not depend
      // on which points are clipped.
      const double ang = 2 * kPi * unit(gen);
      const double rad = jitter * std::sqrt(unit(gen));
      p += Vec2{rad * std::cos(ang), rad * std::sin(ang)};
      if (!curve.inside(p)) continue;
      if (signed_distance(curve, p).rho < -target_h / 4) out.points.push_back(p);
    }
  }
  if (out.points.empty()) throw DensityUnreachable("clipping removed every lattice point");
  out.h = fill_distance(out.points, curve);
  out.q = separation_radius(out.points);
  return out;
}

std::vector<double> oversampling_depths(double h, double nu, int m) {
  const double hn = std::pow(h, nu);
  std::vector<double> depths{0.5 * hn};
  for (int j = 1; j <= 2 * m; ++j) depths.push_back(j * hn);
  return depths;
}

CenterSet oversample_boundary(const DomainCurve& curve, const CenterSet& centers, double h, double nu,
                              int m) {
  if (nu < 1.0) throw DomainError("oversampling exponent must be at least 1");
  const double hn = std::pow(h, nu);
  if (2 * m * hn >= curve.reach())
    throw ReachViolation("oversampling layers extend beyond the reach of the boundary");
  const int n_layer = static_cast<int>(std::ceil(curve.max_speed() * 2 * kPi / hn));
  CenterSet out = centers;
  for (double depth : oversampling_depths(h, nu, m)) {
    for (int i = 0; i < n_layer; ++i) {
      const double t = 2 * kPi * i / n_layer;
      out.points.push_back(curve.gamma(t) - curve.normal(t) * depth);
    }
  }
  out.h = centers.h;
  out.q = separation_radius(out.points);
  return out;
}

void write_centers_csv(const std::string& path, const std::vector<Vec2>& points) {
  std::ofstream os(path);
  if (!os) throw ConfigError("cannot write " + path);
  os.precision(17);
  os << "x,y\n";
  for (const Vec2& p : points) os << p.x << "," << p.y << "\n";
}

std::vector<Vec2> read_centers_csv(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("cannot read " + path);
  std::vector<Vec2> out;
  std::string line;
  bool first = true;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (first) {
      first = false;
      if (line.find_first_not_of("0123456789+-.eE, \t") != std::string::npos) continue;  // header
    }
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw ConfigError("malformed center line: " + line);
    out.push_back({std::stod(line.substr(0, comma)), std::stod(line.substr(comma + 1))});
  }
  return out;
}

}  // namespace surfspline
