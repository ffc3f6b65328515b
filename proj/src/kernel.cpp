#include "surfspline/kernel.hpp"

#include <string>

namespace surfspline {

void SplineParams::validate() const {
  if (d < 1) throw DomainError("dimension must be positive");
  if (m < 1 || 2 * m - d < 1)
    throw DomainError("surface spline needs 2m - d >= 1 (m=" + std::to_string(m) +
                      ", d=" + std::to_string(d) + ")");
}

double fs_constant(const SplineParams& p) {
  p.validate();
  const int m = p.m;
  const int d = p.d;
  if (d % 2 == 0) {
    const double sign = ((d / 2 - 1) % 2 == 0) ? 1.0 : -1.0;
    return sign / (std::pow(2.0, 2 * m - 1) * std::pow(kPi, d / 2) *
                   std::tgamma(m) * std::tgamma(m - d / 2 + 1));
  }
  const double sign = (m % 2 == 0) ? 1.0 : -1.0;
  return sign * std::tgamma(0.5 * d - m) /
         (std::pow(4.0, m) * std::pow(kPi, 0.5 * d) * std::tgamma(m));
}

double RadialTerm::value(double r) const {
  const double rq = std::pow(r, q);
  return rq * (A * std::log(r) + B);
}

double RadialTerm::d1(double r) const {
  const double rq = std::pow(r, q - 1);
  return rq * (q * A * std::log(r) + q * B + A);
}

double RadialTerm::d2(double r) const {
  const double rq = std::pow(r, q - 2);
  return rq * (q * (q - 1) * A * std::log(r) + q * (q - 1) * B + (2 * q - 1) * A);
}

RadialTerm RadialTerm::laplacian(int d) const {
  // Delta[r^q (A log r + B)] = r^(q-2) [c A log r + c B + (2q+d-2) A], c = q(q+d-2).
  const double c = static_cast<double>(q) * (q + d - 2);
  return {q - 2, c * A, c * B + (2.0 * q + d - 2.0) * A};
}

RadialTerm laplacian_profile(const SplineParams& p, int a) {
  const double c = fs_constant(p);
  RadialTerm t{2 * p.m - p.d, p.d % 2 == 0 ? c : 0.0, p.d % 2 == 0 ? 0.0 : c};
  for (int i = 0; i < a; ++i) t = t.laplacian(p.d);
  return t;
}

namespace {

void check_singular(const SplineParams& p, double r) {
  if (r < p.singular_tol) throw SingularEvaluationError("kernel evaluated at coincident points");
}

void check_index(int k, int j) {
  if (k < 0 || j < 0) throw DomainError("boundary operator index must be non-negative");
}

double ipow(double r, int q) {
  if (q >= 0) {
    double v = 1.0;
    for (int i = 0; i < q; ++i) v *= r;
    return v;
  }
  return 1.0 / ipow(r, -q);
}

}  // namespace

KernelTable::KernelTable(const SplineParams& p) : p_(p) {
  p.validate();
  const int count = 2 * p.m + 2;
  profiles_.reserve(count);
  RadialTerm t = laplacian_profile(p, 0);
  for (int a = 0; a < count; ++a) {
    profiles_.push_back(t);
    t = t.laplacian(p.d);
  }
}

// Lambda_{k,x} Lambda_{j,alpha} phi(x - alpha) in 2-D, split into log and
// smooth parts; the full value is log_coeff * log r + smooth.
SplitKernel KernelTable::split(int k, int j, Vec2 y, Vec2 n_x, Vec2 n_alpha) const {
  const double r = norm(y);
  const bool k_odd = k % 2 == 1;
  const bool j_odd = j % 2 == 1;
  if (!k_odd && !j_odd) {
    const RadialTerm& g = profiles_[(k + j) / 2];
    const double rq = ipow(r, g.q);
    return {rq * g.A, rq * g.B};
  }
  if (k_odd != j_odd) {
    const RadialTerm& g = profiles_[(k + j - 1) / 2];
    // Differentiating in x along n_x gives +(n_x.y)/r; in alpha along
    // n_alpha gives -(n_alpha.y)/r.
    const double dir = k_odd ? dot(n_x, y) : -dot(n_alpha, y);
    const double rq = ipow(r, g.q - 2) * dir;
    return {rq * g.q * g.A, rq * (g.q * g.B + g.A)};
  }
  const RadialTerm& g = profiles_[(k + j - 2) / 2];
  // -D_{n_x} D_{n_alpha} G(|y|) = -[G'/r (n_x.n_alpha) + (G'' - G'/r)(n_x.y)(n_alpha.y)/r^2]
  // with G'/r = r^(q-2)(qA log r + qB + A) and
  // G'' - G'/r = r^(q-2)(q(q-2)A log r + q(q-2)B + (2q-2)A).
  const double nn = dot(n_x, n_alpha);
  const double ab = dot(n_x, y) * dot(n_alpha, y);
  const double qd = g.q;
  const double rq2 = ipow(r, g.q - 2);
  const double rq4 = ipow(r, g.q - 4);
  const double c = qd * (qd - 2);
  return {-(rq2 * qd * g.A * nn + rq4 * c * g.A * ab),
          -(rq2 * (qd * g.B + g.A) * nn + rq4 * (c * g.B + (2 * qd - 2) * g.A) * ab)};
}

double phi(const SplineParams& p, Vec2 x) {
  if (p.d != 2) throw DomainError("2-D phi called with d != 2");
  const double r = norm(x);
  check_singular(p, r);
  return laplacian_profile(p, 0).value(r);
}

double phi(const SplineParams& p, std::span<const double> x) {
  if (static_cast<int>(x.size()) != p.d) throw DomainError("point dimension does not match d");
  double s = 0.0;
  for (double v : x) s += v * v;
  const double r = std::sqrt(s);
  check_singular(p, r);
  return laplacian_profile(p, 0).value(r);
}

double phi_continuous(const SplineParams& p, Vec2 x) {
  const double r = norm(x);
  if (r == 0.0) return 0.0;
  return laplacian_profile(p, 0).value(r);
}

double lambda_phi(const SplineParams& p, int j, Vec2 x, Vec2 alpha, Vec2 n_alpha) {
  if (j > 2 * p.m - 1) throw DomainError("lambda_phi index exceeds 2m - 1");
  return operator_kernel(p, 0, j, x, Vec2{}, alpha, n_alpha);
}

double lambda_lambda_phi(const SplineParams& p, int k, int j, Vec2 x, Vec2 n_x, Vec2 alpha,
                         Vec2 n_alpha) {
  if (k + j > 2 * p.m - 2)
    throw DomainError("lambda_lambda_phi requires k + j <= 2m - 2; use one-sided traces");
  return operator_kernel(p, k, j, x, n_x, alpha, n_alpha);
}

double operator_kernel(const SplineParams& p, int k, int j, Vec2 x, Vec2 n_x, Vec2 alpha,
                       Vec2 n_alpha) {
  check_index(k, j);
  if (p.d != 2) throw DomainError("boundary kernels are implemented for d = 2");
  const double r = norm(x - alpha);
  check_singular(p, r);
  const SplitKernel s = KernelTable(p).split(k, j, x - alpha, n_x, n_alpha);
  return s.log_coeff * std::log(r) + s.smooth;
}

KernelValue operator_kernel_checked(const SplineParams& p, int k, int j, Vec2 x, Vec2 n_x,
                                    Vec2 alpha, Vec2 n_alpha) {
  if (norm(x - alpha) < p.singular_tol) return {0.0, true};
  return {operator_kernel(p, k, j, x, n_x, alpha, n_alpha), false};
}

SplitKernel split_kernel(const SplineParams& p, int k, int j, Vec2 x, Vec2 n_x, Vec2 alpha,
                         Vec2 n_alpha) {
  if (p.d != 2) throw DomainError("kernel splitting is implemented for d = 2");
  if (k + j > 2 * p.m - 2) throw DomainError("split kernel requires k + j <= 2m - 2");
  check_singular(p, norm(x - alpha));
  return KernelTable(p).split(k, j, x - alpha, n_x, n_alpha);
}

SplitKernel split_kernel_diagonal(const SplineParams& p, int k, int j) {
  if (k + j > 2 * p.m - 2) throw DomainError("split kernel requires k + j <= 2m - 2");
  if (k + j < 2 * p.m - 2) return {0.0, 0.0};
  if (k % 2 == 0) {
    // Both even: the profile has q = 0 and reduces to A log r + B.
    const RadialTerm g = laplacian_profile(p, (k + j) / 2);
    return {g.A, g.B};
  }
  if (j % 2 == 0) return {0.0, 0.0};
  // Both odd with q = 2: -(2A log r + 2B + A) n.n, tangential factor vanishes.
  const RadialTerm g = laplacian_profile(p, (k + j - 2) / 2);
  return {-2.0 * g.A, -(2.0 * g.B + g.A)};
}

}  // namespace surfspline
