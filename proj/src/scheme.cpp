#include "surfspline/scheme.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace surfspline {

double eval_approximant(const Approximant& s, Vec2 x) {
  return PhiSum(s.params, s.centers, s.coefficients)(x) + s.polynomial(x);
}

std::vector<double> eval_approximant(const Approximant& s, const std::vector<Vec2>& xs) {
  auto out = PhiSum(s.params, s.centers, s.coefficients)(xs);
  for (std::size_t i = 0; i < xs.size(); ++i) out[i] += s.polynomial(xs[i]);
  return out;
}

void write_approximant_csv(const std::string& path, const Approximant& s) {
  std::ofstream os(path);
  if (!os) throw Error("cannot write " + path);
  os.precision(17);
  os << "x,y,A\n";
  for (std::size_t i = 0; i < s.centers.size(); ++i)
    os << s.centers[i].x << ',' << s.centers[i].y << ',' << s.coefficients[i] << '\n';
  for (const auto& t : s.polynomial.terms()) os << "poly," << t.mono.a << ',' << t.mono.b << ',' << t.coef << '\n';
}

Approximant read_approximant_csv(const std::string& path, const SplineParams& p) {
  std::ifstream is(path);
  if (!is) throw Error("cannot read " + path);
  Approximant s;
  s.params = p;
  std::string line;
  std::getline(is, line);
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string a, b, c, d;
    std::getline(ss, a, ',');
    std::getline(ss, b, ',');
    std::getline(ss, c, ',');
    if (a == "poly") {
      std::getline(ss, d, ',');
      s.polynomial = s.polynomial + Poly2::monomial({std::stoi(b), std::stoi(c)}, std::stod(d));
    } else {
      s.centers.push_back({std::stod(a), std::stod(b)});
      s.coefficients.push_back(std::stod(c));
    }
  }
  return s;
}

void SchemeOperator::Rows::push(const LocalReproduction& lpr) {
  for (std::size_t i = 0; i < lpr.support.size(); ++i) {
    index.push_back(static_cast<std::uint32_t>(lpr.support[i]));
    value.push_back(lpr.coefficients[i]);
  }
  start.push_back(index.size());
}

namespace {

// Builds reproductions for a batch of anchors in parallel and appends them
// in order, keeping the peak memory to one batch.
template <class Build, class Sink>
void build_in_batches(std::size_t count, Build build, Sink sink) {
  const std::size_t batch = 4096;
  std::vector<LocalReproduction> buf;
  for (std::size_t lo = 0; lo < count; lo += batch) {
    const std::size_t hi = std::min(count, lo + batch);
    buf.assign(hi - lo, {});
    std::exception_ptr err;
#pragma omp parallel for schedule(dynamic, 16)
    for (long i = static_cast<long>(lo); i < static_cast<long>(hi); ++i) {
      try {
        buf[i - lo] = build(static_cast<std::size_t>(i));
      } catch (...) {
#pragma omp critical
        err = std::current_exception();
      }
    }
    if (err) std::rethrow_exception(err);
    for (const auto& l : buf) sink(l);
  }
}

}  // namespace

SchemeOperator::SchemeOperator(const SplineParams& p, const DomainCurve& curve, const CenterSet& centers,
                               SchemeOptions options)
    : params_(p), curve_(curve), centers_(centers), options_(options) {
  p.validate();
  if (p.d != 2) throw DomainError("the approximation scheme is planar (d = 2)");
  if (centers.points.empty()) throw DomainError("no centers");
  const double h = centers.h;
  const int level = options_.quadrature_level > 0
                        ? options_.quadrature_level
                        : std::max(options_.min_level, static_cast<int>(std::ceil(options_.level_per_unit / h)));
  quad_ = interior_quadrature(curve_, level);
  grid_ = BoundaryGrid::make(curve_, options_.n_boundary);
  const int M = options_.order > 0 ? options_.order : 2 * p.m;
  const double hb = options_.boundary_h > 0 ? options_.boundary_h : h;
  int n_fine = options_.n_boundary;
  while (2 * kPi * curve_.max_speed() / n_fine > hb / options_.boundary_refine) n_fine *= 2;
  fine_ = BoundaryGrid::make(curve_, n_fine);

  const LprBuilder builder(centers_.points, options_.lpr);
  build_in_batches(
      quad_.size(), [&](std::size_t q) { return builder.interior(quad_.nodes[q], h, M); },
      [&](const LocalReproduction& l) {
        interior_.push(l);
        stats_.max_interior_stability = std::max(stats_.max_interior_stability, l.stability);
        stats_.max_interior_radius = std::max(stats_.max_interior_radius, l.radius);
      });
  boundary_.resize(p.m);
  for (int j = 0; j < p.m; ++j) {
    build_in_batches(
        fine_.x.size(), [&](std::size_t i) { return builder.boundary(j, fine_.x[i], fine_.normal[i], hb, M); },
        [&](const LocalReproduction& l) {
          boundary_[j].push(l);
          stats_.max_boundary_stability = std::max(stats_.max_boundary_stability, l.stability);
          stats_.max_boundary_radius = std::max(stats_.max_boundary_radius, l.radius);
        });
  }
  stats_.quadrature_nodes = quad_.size();
  stats_.boundary_nodes = fine_.x.size();
}

NjResult SchemeOperator::traces(const TargetFunction& f) const {
  return compute_Nj(params_, curve_, grid_, f, options_.trace);
}

Approximant SchemeOperator::apply(const TargetFunction& f) const { return apply(f, traces(f)); }

Approximant SchemeOperator::apply(const TargetFunction& f, const NjResult& nj) const {
  Approximant s;
  s.params = params_;
  s.centers = centers_.points;
  s.coefficients.assign(s.centers.size(), 0.0);
  s.polynomial = nj.solution.polynomial();
  auto scatter = [&](const Rows& rows, std::size_t r, double val) {
    for (std::size_t e = rows.start[r]; e < rows.start[r + 1]; ++e) s.coefficients[rows.index[e]] += rows.value[e] * val;
  };
  for (std::size_t q = 0; q < quad_.size(); ++q)
    scatter(interior_, q, quad_.w[q] * f.laplacian_power(quad_.nodes[q], params_.m));
  for (int j = 0; j < params_.m; ++j) {
    const auto Nj = trig_resample(nj.N[j], static_cast<int>(fine_.x.size()));
    for (std::size_t i = 0; i < fine_.x.size(); ++i) scatter(boundary_[j], i, fine_.w[i] * Nj[i]);
  }
  return s;
}

Approximant assemble_TXi(const SplineParams& p, const TargetFunction& f, const DomainCurve& curve,
                         const CenterSet& centers, SchemeOptions options) {
  return SchemeOperator(p, curve, centers, options).apply(f);
}

double volume_potential(const SplineParams& p, const DomainCurve& curve, const TargetFunction& f, Vec2 x,
                        int level) {
  const InteriorQuadrature q =
      curve.inside(x) ? polar_rule_about(curve, x, level, 4 * level) : interior_quadrature(curve, 4 * level);
  double s = 0.0;
  for (std::size_t i = 0; i < q.size(); ++i)
    s += q.w[i] * f.laplacian_power(q.nodes[i], p.m) * phi_continuous(p, x - q.nodes[i]);
  return s;
}

Extension::Extension(const SplineParams& p, const DomainCurve& curve, const TargetFunction& f, int n_boundary,
                     int level, TraceOptions trace)
    : params_(p),
      curve_(std::make_shared<DomainCurve>(curve)),
      f_(f),
      grid_(BoundaryGrid::make(curve, n_boundary)),
      nj_(compute_Nj(p, curve, grid_, f, trace)),
      level_(level) {
  std::vector<Density> dens;
  for (int j = 0; j < p.m; ++j) dens.push_back({j, nj_.N[j]});
  layers_ = std::make_unique<LayerPotential>(p, curve, grid_, std::move(dens));
  const InteriorQuadrature outer = interior_quadrature(curve, 4 * level);
  std::vector<double> w(outer.size());
  for (std::size_t i = 0; i < outer.size(); ++i) w[i] = outer.w[i] * f.laplacian_power(outer.nodes[i], p.m);
  outer_ = std::make_unique<PhiSum>(p, outer.nodes, w);
}

double Extension::operator()(Vec2 x, bool* near) const {
  double vol;
  if (curve_->inside(x)) {
    vol = volume_potential(params_, *curve_, f_, x, level_);
  } else {
    vol = (*outer_)(x);
  }
  return vol + layers_->eval(x, 0, {1.0, 0.0}, near) + nj_.solution.polynomial()(x);
}

double Extension::annihilation_residual() const {
  const PolyBasis basis(params_.m - 1);
  const InteriorQuadrature q = interior_quadrature(*curve_, level_);
  double worst = 0.0;
  for (const auto& mono : basis.monomials()) {
    const Poly2 poly = Poly2::monomial(mono);
    double s = q.integrate([&](Vec2 a) { return f_.laplacian_power(a, params_.m) * poly(a); });
    for (int j = 0; j < params_.m; ++j)
      for (int i = 0; i < grid_.n_nodes; ++i)
        s += grid_.w[i] * nj_.N[j][i] * poly.lambda(j, grid_.x[i], grid_.normal[i]);
    worst = std::max(worst, std::abs(s));
  }
  return worst;
}

double eval_extension(const Extension& ext, Vec2 x) { return ext(x); }
double annihilation_check(const Extension& ext) { return ext.annihilation_residual(); }

}  // namespace surfspline
