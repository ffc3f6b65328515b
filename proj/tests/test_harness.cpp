#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "surfspline/harness.hpp"

using namespace surfspline;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("oversampling budget") {
  const auto a = oversampling_budget(2, 2, INFINITY);
  CHECK(a.nu == 2.0);
  CHECK(a.feasible);
  CHECK(oversampling_budget(2, 2, 2.0).nu == doctest::Approx(8.0 / 5.0));
  CHECK_FALSE(oversampling_budget(3, 2, 2.0).feasible);
  CHECK(oversampling_budget(3, 2, 1.5).feasible);
  CHECK_THROWS_AS(oversampling_budget(2, 2, 0.5), DomainError);
}

TEST_CASE("rate fit") {
  const std::vector<double> h{0.1, 0.05, 0.025};
  CHECK(fit_rate(h, {3e-2, 3e-2 / 8, 3e-2 / 64}) == doctest::Approx(3.0));
}

TEST_CASE("config parsing") {
  const auto c = ExperimentConfig::parse(
      "[experiment]\nname = t\ncurve = ellipse:2,1\nm = 2\ntarget = cos_wave\nh = 0.2, 0.1, 0.05\n"
      "norms = 2, inf\noversampling = critical\nseed = 7\n[numerics]\nprobe_grid = 64\n");
  CHECK(c.name == "t");
  CHECK(c.curve == "ellipse:2,1");
  CHECK(c.h.size() == 3);
  CHECK(std::isinf(c.norms[1]));
  CHECK(c.nu == 2.0);
  CHECK(c.seed == 7);
  CHECK(c.probe_grid == 64);
  CHECK_THROWS_AS(ExperimentConfig::parse("[experiment]\nh = 0.1, 0.2, 0.05\n"), ConfigError);
  CHECK_THROWS_AS(ExperimentConfig::parse("[experiment]\nh = 0.1, 0.05\n"), ConfigError);
  CHECK_THROWS_AS(ExperimentConfig::parse("[experiment]\nm = two\n"), ConfigError);
}

TEST_CASE("Green's representation") {
  const SplineParams p{2, 2};
  const auto disk = DomainCurve::circle();
  std::vector<Vec2> probes;
  for (double r : {0.0, 0.4, 0.8, 0.95})
    for (int k = 0; k < 4; ++k) probes.push_back({r * std::cos(0.5 + 1.6 * k), r * std::sin(0.5 + 1.6 * k)});
  const auto lin = TargetFunction::by_name("x1");
  CHECK(greens_identity_check(p, disk, lin, 128, 16, probes) < 1e-10);
  const auto f = TargetFunction::by_name("exp");
  const double e = greens_identity_check(p, disk, f, 256, 32, probes);
  MESSAGE("exp reconstruction error " << e);
  CHECK(e < 1e-6);
  // doubling the fundamental solution constant must break the identity
  CHECK(greens_identity_check(p, disk, f, 256, 32, probes, 2.0) > 0.1);
}

TEST_CASE("convergence runs are deterministic") {
  ExperimentConfig c;
  c.name = "det";
  c.h = {0.2, 0.15, 0.1};
  c.probe_grid = 48;
  c.norm_level = 24;
  c.n_boundary = 128;
  c.output = (std::filesystem::temp_directory_path() / "surfspline_det").string();
  const auto r1 = run_experiment(c);
  const std::string a = slurp(c.output + "/det.csv");
  const std::string sa = slurp(c.output + "/det_summary.csv");
  run_experiment(c);
  CHECK(a == slurp(c.output + "/det.csv"));
  CHECK(sa == slurp(c.output + "/det_summary.csv"));
  CHECK(a.rfind("h,n_centers,n_boundary_nodes,err_L1,err_L2,err_Linf,status\n", 0) == 0);
  CHECK(r1.rates.size() == 3);
  for (const auto& row : r1.rungs) {
    CHECK_MESSAGE(row.failure.empty(), row.failure);
    for (double e : row.errors) CHECK(e >= 0.0);
  }
  std::filesystem::remove_all(c.output);
}
