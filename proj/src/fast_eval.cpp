#include "surfspline/fast_eval.hpp"

#include <cmath>
#include <stdexcept>

// This file is compiled with relaxed floating point so that the inner loop
// vectorizes, logarithm included. Nothing here relies on inf or NaN.

namespace surfspline {

PhiSum::PhiSum(const SplineParams& p, const std::vector<Vec2>& sources, const std::vector<double>& weights)
    : params_(p), half_c_(0.5 * fs_constant(p)) {
  if (sources.size() != weights.size()) throw std::invalid_argument("PhiSum: size mismatch");
  sx_.reserve(sources.size());
  sy_.reserve(sources.size());
  for (std::size_t i = 0; i < sources.size(); ++i) {
    if (weights[i] == 0.0) continue;
    sx_.push_back(sources[i].x);
    sy_.push_back(sources[i].y);
    w_.push_back(weights[i]);
  }
}

double PhiSum::operator()(Vec2 x) const {
  const std::size_t n = w_.size();
  const double* sx = sx_.data();
  const double* sy = sy_.data();
  const double* w = w_.data();
  if (params_.d != 2) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += w[i] * phi_continuous(params_, {x.x - sx[i], x.y - sy[i]});
    return s;
  }
  const int e = params_.m - 1;
  double s = 0.0;
  // phi = c r^(2m-2) log r = (c/2) (r^2)^(m-1) log(r^2)
#pragma omp simd reduction(+ : s)
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = x.x - sx[i];
    const double dy = x.y - sy[i];
    const double r2 = dx * dx + dy * dy;
    double pw = 1.0;
    for (int k = 0; k < e; ++k) pw *= r2;
    const double mask = r2 > 0.0 ? 1.0 : 0.0;
    s += mask * w[i] * pw * std::log(r2 + 1e-300);
  }
  return half_c_ * s;
}

std::vector<double> PhiSum::operator()(const std::vector<Vec2>& xs) const {
  std::vector<double> out(xs.size());
  const long n = static_cast<long>(xs.size());
#pragma omp parallel for schedule(dynamic, 64)
  for (long i = 0; i < n; ++i) out[i] = (*this)(xs[i]);
  return out;
}

}  // namespace surfspline
