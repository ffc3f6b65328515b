#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "surfspline/config.hpp"
#include "surfspline/scheme.hpp"

namespace surfspline {

struct RungResult {
  double h = 0.0;
  std::size_t n_centers = 0;
  std::size_t n_boundary_nodes = 0;
  std::vector<double> errors;  // aligned with the configured norms
  double runtime = 0.0;        // seconds
  std::string failure;         // empty when the rung succeeded
};

struct ErrorReport {
  ExperimentConfig config;
  std::vector<RungResult> rungs;
  std::vector<double> rates;  // fitted on the last three successful rungs, per norm
  bool monotone = true;       // errors never increased along the ladder

  // Deterministic table: identical configs give identical files.
  void write_csv(const std::string& path) const;
  void write_summary(const std::string& path) const;
  void write_timing(const std::string& path) const;
};

// Least-squares slope of log(err) against log(h).
double fit_rate(const std::vector<double>& h, const std::vector<double>& err);

// Probe points on a g x g grid over the bounding box, kept if inside.
std::vector<Vec2> probe_grid(const DomainCurve& curve, int g);

ErrorReport converge(const ExperimentConfig& config, std::ostream* log = nullptr);
// Runs converge and writes <output>/<name>.csv, _summary.csv and _timing.csv.
ErrorReport run_experiment(const ExperimentConfig& config, std::ostream* log = nullptr);

struct OversamplingBudget {
  double nu = 2.0;
  bool feasible = true;
};
OversamplingBudget oversampling_budget(int d, int m, double p);

// Reconstructs f from Delta^m f and all 2m boundary traces. constant_scale
// multiplies the fundamental solution, so a value other than 1 must break
// the identity.
double greens_identity_check(const SplineParams& p, const DomainCurve& curve, const TargetFunction& f, int n,
                             int level, const std::vector<Vec2>& probes, double constant_scale = 1.0);

// Discrete operator norms max_x int E(x, alpha) d alpha and
// max_x int E_j(x, alpha) d sigma(alpha) of the error kernels of one
// scheme, maximised over the given points.
struct ErrorKernelNorms {
  double h = 0.0;
  double interior = 0.0;
  std::vector<double> boundary;  // j = 0..m-1
};
ErrorKernelNorms error_kernel_norms(const SchemeOperator& op, const SplineParams& p,
                                    const std::vector<Vec2>& points);

}  // namespace surfspline
