#pragma once

#include <vector>

#include "surfspline/kernel.hpp"

namespace surfspline {

// Weighted sum x -> sum_i w_i phi(x - y_i) over a fixed set of sources,
// with phi(0) taken as 0. The planar case runs through a vectorized loop.
class PhiSum {
 public:
  PhiSum(const SplineParams& p, const std::vector<Vec2>& sources, const std::vector<double>& weights);

  double operator()(Vec2 x) const;
  std::vector<double> operator()(const std::vector<Vec2>& xs) const;
  std::size_t size() const { return w_.size(); }

 private:
  SplineParams params_;
  double half_c_;
  std::vector<double> sx_, sy_, w_;
};

}  // namespace surfspline
