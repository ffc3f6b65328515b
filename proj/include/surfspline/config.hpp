#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

namespace surfspline {

// Convergence experiment description, read from an INI file:
//
//   [experiment]
//   name = disk_exp
//   curve = circle
//   m = 2
//   target = exp
//   h = 0.2, 0.1, 0.05, 0.025
//   norms = 1, 2, inf
//   oversampling = none     (none, critical, or a number nu)
//   seed = 1
//   output = results
//
//   [numerics]
//   n_boundary = 256
//   probe_grid = 512
//   norm_level = 96
struct ExperimentConfig {
  std::string name = "experiment";
  std::string curve = "circle";
  int m = 2;
  std::string target = "exp";
  std::vector<double> h{0.2, 0.1, 0.05, 0.025};
  std::vector<double> norms{1.0, 2.0, INFINITY};
  // 0 means no oversampling.
  double nu = 0.0;
  std::uint64_t seed = 1;
  std::string output = "results";

  int n_boundary = 256;
  int probe_grid = 512;
  int norm_level = 96;

  void validate() const;
  static ExperimentConfig load(const std::string& path);
  static ExperimentConfig parse(const std::string& text);
};

}  // namespace surfspline
