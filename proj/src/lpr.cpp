#include "surfspline/lpr.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>

#include "surfspline/polyspace.hpp"

namespace surfspline {

namespace {

double cloud_extent(const std::vector<Vec2>& pts) {
  if (pts.empty()) return 0.0;
  Vec2 lo = pts[0], hi = pts[0];
  for (const Vec2& p : pts) {
    lo = {std::min(lo.x, p.x), std::min(lo.y, p.y)};
    hi = {std::max(hi.x, p.x), std::max(hi.y, p.y)};
  }
  return norm(hi - lo);
}

double ipow(double x, int e) {
  double r = 1.0;
  for (int i = 0; i < e; ++i) r *= x;
  return r;
}

// Target functional applied to the scaled monomials y^a at y = 0.
Eigen::VectorXd scaled_target(const PolyBasis& basis, int j, Vec2 normal) {
  Eigen::VectorXd b(basis.size());
  for (int l = 0; l < basis.size(); ++l) b[l] = eval_poly_lambda(j, basis[l], {0.0, 0.0}, normal);
  return b;
}

}  // namespace

LprBuilder::LprBuilder(const std::vector<Vec2>& centers, LprOptions options)
    : index_(centers), options_(options) {
  max_radius_ = options_.max_radius > 0 ? options_.max_radius : 2.0 * cloud_extent(centers) + 1e-12;
}

LocalReproduction LprBuilder::interior(Vec2 alpha, double h, int M) const {
  return build(0, alpha, {1.0, 0.0}, h, M);
}

LocalReproduction LprBuilder::boundary(int j, Vec2 alpha, Vec2 normal, double h_local, int M) const {
  return build(j, alpha, normal, h_local, M);
}

LocalReproduction LprBuilder::build(int j, Vec2 alpha, Vec2 normal, double h, int M) const {
  if (M < 0 || j < 0) throw DomainError("lpr: order and operator index must be non-negative");
  const PolyBasis basis(M);
  const int dim = basis.size();
  const auto& pts = index_.points();
  if (static_cast<int>(pts.size()) < dim) throw NormingError("lpr: fewer centers than dim(Pi_M)");
  const Eigen::VectorXd target = scaled_target(basis, j, normal);

  const std::size_t k_start =
      std::min<std::size_t>(pts.size(), static_cast<std::size_t>(std::ceil(options_.oversample * dim)));
  const auto near = index_.nearest(alpha, k_start);
  double r_near = 0.0;
  for (std::size_t i : near) r_near = std::max(r_near, norm(pts[i] - alpha));
  const double cap = options_.gamma * std::max(M, 1) * std::max(M, 1) * h;
  double r = cap > 0 ? std::min(r_near, cap) : r_near;

  const double budget = options_.stability_budget * std::pow(std::max(M, 1), 2 * j);
  double best_stab = std::numeric_limits<double>::infinity();
  double first_rank = 0.0;
  LocalReproduction best;
  auto pack = [&](const std::vector<std::size_t>& idx, const Eigen::VectorXd& a, double radius) {
    LocalReproduction out;
    out.anchor = alpha;
    out.order = M;
    out.radius = radius;
    const double scale = std::pow(radius, -j);
    for (int i = 0; i < a.size(); ++i) {
      if (a[i] == 0.0) continue;
      out.support.push_back(idx[i]);
      out.coefficients.push_back(a[i] * scale);
      out.stability += std::abs(a[i] * scale);
    }
    return out;
  };

  for (;;) {
    const double r_query = r * (1.0 + 1e-12) + 1e-14;
    auto idx = index_.within(alpha, r_query);
    const int K = static_cast<int>(idx.size());
    if (K >= dim && r > 0) {
      // Weighted minimum norm: minimise sum a_i^2 / w_i subject to exactness,
      // with weights that fade towards the rim of the ball.
      Eigen::MatrixXd Vt(K, dim);
      Eigen::VectorXd sw(K);
      const double rw = 1.1 * r;
      for (int i = 0; i < K; ++i) {
        const Vec2 y = (pts[idx[i]] - alpha) / r;
        const double rho2 = norm2(pts[idx[i]] - alpha) / (rw * rw);
        sw[i] = (1.0 - rho2);
        for (int l = 0; l < dim; ++l) Vt(i, l) = sw[i] * ipow(y.x, basis[l].a) * ipow(y.y, basis[l].b);
      }
      Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(Vt);
      qr.setThreshold(1e-10);
      if (qr.rank() == dim) {
        const Eigen::MatrixXd R = qr.matrixR().topLeftCorner(dim, dim).triangularView<Eigen::Upper>();
        const Eigen::VectorXd pb = qr.colsPermutation().transpose() * target;
        Eigen::VectorXd z = R.transpose().triangularView<Eigen::Lower>().solve(pb);
        Eigen::VectorXd full = Eigen::VectorXd::Zero(K);
        full.head(dim) = z;
        const Eigen::VectorXd c = qr.householderQ() * full;
        Eigen::VectorXd a = sw.cwiseProduct(c);
        const double stab = a.cwiseAbs().sum();
        if (first_rank == 0.0) first_rank = r;
        if (stab < best_stab) {
          best_stab = stab;
          best = pack(idx, a, r);
        }
        // Bernstein's inequality puts lambda_j at (M^2 / r)^j on the unit ball.
        if (stab <= budget) return best;
      }
    } else if (K == 1 && dim == 1 && r == 0.0) {
      LocalReproduction out;
      out.anchor = alpha;
      out.order = M;
      out.support = {idx[0]};
      out.coefficients = {j == 0 ? 1.0 : 0.0};
      out.stability = std::abs(out.coefficients[0]);
      return out;
    }
    if (r == 0.0) {
      r = r_near > 0 ? r_near : h;
      continue;
    }
    r *= options_.growth;
    if (first_rank > 0.0 && r > options_.max_growth * first_rank) return best;
    if (r > max_radius_) {
      // A full-rank set that never met the stability budget is still a valid
      // reproduction; the caller sees its stability in the result.
      if (best_stab < std::numeric_limits<double>::infinity()) return best;
      throw NormingError("lpr: no full-rank norming set within the domain diameter");
    }
  }
}

LocalReproduction build_interior_lpr(Vec2 alpha, const std::vector<Vec2>& centers, double h, int M,
                                     LprOptions options) {
  return LprBuilder(centers, options).interior(alpha, h, M);
}

LocalReproduction build_boundary_lpr(int j, Vec2 alpha, Vec2 normal, const std::vector<Vec2>& centers,
                                     double h_local, int M, LprOptions options) {
  return LprBuilder(centers, options).boundary(j, alpha, normal, h_local, M);
}

double reproduction_residual(const LocalReproduction& lpr, const std::vector<Vec2>& centers, int j,
                             Vec2 normal) {
  const PolyBasis basis(lpr.order);
  const double r = lpr.radius > 0 ? lpr.radius : 1.0;
  const Eigen::VectorXd target = scaled_target(basis, j, normal);
  double worst = 0.0;
  for (int l = 0; l < basis.size(); ++l) {
    double s = 0.0;
    for (std::size_t i = 0; i < lpr.support.size(); ++i) {
      const Vec2 y = (centers[lpr.support[i]] - lpr.anchor) / r;
      s += lpr.coefficients[i] * ipow(y.x, basis[l].a) * ipow(y.y, basis[l].b);
    }
    worst = std::max(worst, std::abs(s * std::pow(r, j) - target[l]));
  }
  return worst;
}

}  // namespace surfspline
