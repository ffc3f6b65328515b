#include <cmath>
#include <cstdio>
#include <filesystem>

#include "doctest.h"
#include "surfspline/scheme.hpp"

using namespace surfspline;

namespace {

std::vector<Vec2> grid_probes(const DomainCurve& curve, int g) {
  std::vector<Vec2> out;
  const Vec2 lo = curve.box_min(), hi = curve.box_max();
  for (int i = 0; i < g; ++i)
    for (int j = 0; j < g; ++j) {
      const Vec2 x{lo.x + (hi.x - lo.x) * (i + 0.5) / g, lo.y + (hi.y - lo.y) * (j + 0.5) / g};
      if (curve.inside(x)) out.push_back(x);
    }
  return out;
}

double max_error(const Approximant& s, const TargetFunction& f, const std::vector<Vec2>& probes) {
  const auto v = eval_approximant(s, probes);
  double e = 0.0;
  for (std::size_t i = 0; i < probes.size(); ++i) e = std::max(e, std::abs(v[i] - f(probes[i])));
  return e;
}

}  // namespace

TEST_CASE("interior quadrature moments") {
  const auto disk = DomainCurve::circle();
  const auto q = interior_quadrature(disk, 24);
  CHECK(std::abs(q.integrate([](Vec2) { return 1.0; }) - kPi) < 1e-12);
  CHECK(std::abs(q.integrate([](Vec2 x) { return x.x * x.x; }) - kPi / 4) < 1e-12);
  const double x6 = 5 * kPi / 64;  // integral of x^6 over the unit disk
  CHECK(std::abs(q.integrate([](Vec2 x) { return std::pow(x.x, 6); }) - x6) < 1e-8 * x6);
  const auto ell = DomainCurve::ellipse(2, 1);
  const auto qe = interior_quadrature(ell, 24);
  CHECK(std::abs(qe.integrate([](Vec2) { return 1.0; }) - 2 * kPi) < 1e-10);
  // integral of x^2 y^2 over the ellipse (a, b) is pi a^3 b^3 / 24
  CHECK(std::abs(qe.integrate([](Vec2 x) { return x.x * x.x * x.y * x.y; }) - kPi * 8 / 24) < 1e-8);
}

TEST_CASE("approximant evaluation degenerate cases") {
  const SplineParams p{2, 2};
  Approximant s;
  s.params = p;
  s.polynomial = Poly2::monomial({1, 0}, 2.0) + Poly2::monomial({0, 0}, 1.0);
  CHECK(eval_approximant(s, {0.3, 0.4}) == doctest::Approx(1.6));
  s.polynomial = Poly2();
  s.centers = {{0.1, -0.2}};
  s.coefficients = {1.0};
  CHECK(eval_approximant(s, {0.7, 0.5}) == doctest::Approx(phi(p, Vec2{0.6, 0.7})).epsilon(1e-13));
  CHECK(eval_approximant(s, {0.1, -0.2}) == 0.0);
  // radially symmetric arrangement evaluates identically on circles
  s.centers.clear();
  s.coefficients.clear();
  for (int k = 0; k < 7; ++k) {
    s.centers.push_back({0.5 * std::cos(2 * kPi * k / 7), 0.5 * std::sin(2 * kPi * k / 7)});
    s.coefficients.push_back(0.3);
  }
  const double v0 = eval_approximant(s, {0.8 * std::cos(0.1), 0.8 * std::sin(0.1)});
  const double v1 = eval_approximant(s, {0.8 * std::cos(0.1 + 2 * kPi / 7), 0.8 * std::sin(0.1 + 2 * kPi / 7)});
  CHECK(v0 == doctest::Approx(v1).epsilon(1e-12));
}

TEST_CASE("approximant csv round trip") {
  const SplineParams p{2, 2};
  Approximant s;
  s.params = p;
  s.centers = {{0.1, 0.2}, {-0.3, 0.25}};
  s.coefficients = {1.5, -0.25};
  s.polynomial = Poly2::monomial({0, 1}, -3.0);
  const auto path = std::filesystem::temp_directory_path() / "surfspline_approx.csv";
  write_approximant_csv(path.string(), s);
  const auto r = read_approximant_csv(path.string(), p);
  std::filesystem::remove(path);
  CHECK(r.centers == s.centers);
  CHECK(r.coefficients == s.coefficients);
  CHECK(eval_approximant(r, {0.4, -0.1}) == doctest::Approx(eval_approximant(s, {0.4, -0.1})));
}

TEST_CASE("scheme on the disk") {
  const SplineParams p{2, 2};
  const auto disk = DomainCurve::circle();
  const auto probes = grid_probes(disk, 64);
  const auto f = TargetFunction::by_name("exp");
  const auto g = TargetFunction::by_name("cos_wave");

  const auto cs = generate_centers(disk, 0.1, 1);
  const SchemeOperator op(p, disk, cs);

  SUBCASE("linear polynomials are reproduced") {
    const auto lin = TargetFunction::polynomial(Poly2::monomial({0, 0}, 1.0) + Poly2::monomial({1, 0}, 2.0) +
                                                Poly2::monomial({0, 1}, -1.0));
    CHECK(max_error(op.apply(lin), lin, probes) < 1e-7);
  }
  SUBCASE("linearity") {
    const auto fg = TargetFunction::linear_combination(2.0, f, -0.5, g);
    const auto a = eval_approximant(op.apply(f), probes);
    const auto b = eval_approximant(op.apply(g), probes);
    const auto c = eval_approximant(op.apply(fg), probes);
    double worst = 0.0;
    for (std::size_t i = 0; i < probes.size(); ++i) worst = std::max(worst, std::abs(c[i] - 2 * a[i] + 0.5 * b[i]));
    CHECK(worst < 1e-8);
  }
  SUBCASE("exp converges under refinement") {
    const double e1 = max_error(op.apply(f), f, probes);
    const double e2 = max_error(assemble_TXi(p, f, disk, generate_centers(disk, 0.05, 1)), f, probes);
    MESSAGE("sup error h=0.1: " << e1 << "  h=0.05: " << e2);
    CHECK(e1 < 0.15);
    CHECK(e2 < 0.5 * e1);
  }
}

TEST_CASE("extension reproduces smooth targets inside") {
  const SplineParams p{2, 2};
  const auto disk = DomainCurve::circle();
  for (const char* name : {"exp", "cos_wave", "smooth_mix"}) {
    const auto f = TargetFunction::by_name(name);
    const Extension ext(p, disk, f, 256, 24);
    double worst = 0.0;
    for (double r : {0.0, 0.3, 0.6, 0.9, 0.97})
      for (int k = 0; k < 5; ++k) {
        const Vec2 x{r * std::cos(1.3 * k + 0.2), r * std::sin(1.3 * k + 0.2)};
        worst = std::max(worst, std::abs(eval_extension(ext, x) - f(x)));
      }
    MESSAGE(name << ": max error " << worst << ", annihilation " << annihilation_check(ext));
    CHECK(worst < 1e-5);
    CHECK(annihilation_check(ext) < 1e-6);
  }
}

TEST_CASE("extension of a polyharmonic polynomial") {
  const SplineParams p{2, 2};
  const auto ell = DomainCurve::ellipse(1.5, 1);
  const auto f = TargetFunction::by_name("cubic");
  const Extension ext(p, ell, f, 256, 24);
  for (Vec2 x : {Vec2{0.1, 0.2}, Vec2{-0.9, 0.3}, Vec2{1.2, -0.4}})
    CHECK(std::abs(eval_extension(ext, x) - f(x)) < 1e-7);
}

TEST_CASE("extension is continuous across the boundary and grows slowly") {
  const SplineParams p{2, 2};
  const auto disk = DomainCurve::circle();
  const auto f = TargetFunction::by_name("exp");
  const Extension ext(p, disk, f, 256, 32);
  double jump = 0.0;
  for (int k = 0; k < 6; ++k) {
    const double t = 0.4 + k;
    const Vec2 b{std::cos(t), std::sin(t)};
    // Both sides are extrapolated to the boundary from a short normal ladder.
    auto side = [&](double sgn) {
      const double d1 = 0.004, d2 = 0.002;
      const double v1 = eval_extension(ext, b * (1 + sgn * d1));
      const double v2 = eval_extension(ext, b * (1 + sgn * d2));
      return 2 * v2 - v1;
    };
    jump = std::max(jump, std::abs(side(-1) - side(1)));
  }
  MESSAGE("continuity gap " << jump);
  CHECK(jump < 1e-4);

  const double v10 = std::abs(eval_extension(ext, {10.0, 3.0}));
  const double v100 = std::abs(eval_extension(ext, {100.0, 30.0}));
  const double slope = std::log(v100 / v10) / std::log(10.0);
  MESSAGE("growth exponent " << slope);
  CHECK(slope < p.m - 1 + 0.25);
}

TEST_CASE("annihilation improves with boundary resolution") {
  const SplineParams p{2, 2};
  const auto ell = DomainCurve::ellipse(1.3, 1);
  const auto f = TargetFunction::by_name("exp");
  const double a = annihilation_check(Extension(p, ell, f, 24, 32));
  const double b = annihilation_check(Extension(p, ell, f, 48, 32));
  MESSAGE("n=24: " << a << "  n=48: " << b);
  CHECK(b < a);
  CHECK(b < 1e-6);
}
