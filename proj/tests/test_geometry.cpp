#include <cstdio>
#include <filesystem>

#include "doctest.h"
#include "surfspline/geometry.hpp"

using namespace surfspline;

TEST_CASE("signed distance examples") {
  const auto disk = DomainCurve::circle();
  const auto p = signed_distance(disk, {0.5, 0.0});
  CHECK(p.rho == doctest::Approx(-0.5));
  CHECK(p.foot.x == doctest::Approx(1.0));
  CHECK(std::abs(p.foot.y) < 1e-12);
  CHECK(signed_distance(disk, {2.0, 0.0}).rho == doctest::Approx(1.0));

  const auto ell = DomainCurve::ellipse(2, 1);
  const Vec2 x{0.0, 0.25};
  double brute = 1e300;
  const int n = 1000000;
  for (int i = 0; i < n; ++i) brute = std::min(brute, norm(ell.gamma(2 * kPi * i / n) - x));
  const auto q = signed_distance(ell, x);
  CHECK(std::abs(-q.rho - brute) < 1e-8);
  const Vec2 back = q.foot + q.normal * q.rho;
  CHECK(norm(back - x) < 1e-12);

  const auto star = DomainCurve::star(0.2, 5);
  for (int i = 0; i < 64; ++i) {
    const double t = 2 * kPi * i / 64 + 0.01;
    CHECK(std::abs(signed_distance(star, star.gamma(t)).rho) < 1e-12);
    CHECK(std::abs(signed_distance(ell, ell.gamma(t)).rho) < 1e-12);
  }
}

TEST_CASE("boundary grid weights are spectrally accurate") {
  const Vec2 c{0.3, -0.1};
  const auto ell = DomainCurve::ellipse(2, 1, c);
  const auto g = BoundaryGrid::make(ell, 128);
  const double k = std::sqrt(1.0 - 0.25);
  const double exact = 4 * 2 * std::comp_ellint_2(k);
  CHECK(std::abs(g.total_weight() - exact) < 1e-10 * exact);
  double mx = 0, my = 0;
  for (int i = 0; i < g.n_nodes; ++i) {
    mx += g.w[i] * g.x[i].x;
    my += g.w[i] * g.x[i].y;
    CHECK(norm(g.normal[i]) == doctest::Approx(1.0));
    CHECK(std::abs(dot(g.normal[i], ell.gamma_prime(g.t[i]))) < 1e-12);
  }
  CHECK(std::abs(mx - c.x * exact) < 1e-10 * exact);
  CHECK(std::abs(my - c.y * exact) < 1e-10 * exact);
  CHECK(DomainCurve::circle().reach() == doctest::Approx(1.0));
  CHECK(ell.reach() == doctest::Approx(0.5).epsilon(1e-6));
}

TEST_CASE("curve parsing and rays") {
  const auto e = DomainCurve::parse("ellipse:2,1");
  CHECK(e.kind() == CurveKind::Ellipse);
  CHECK(e.diameter() == doctest::Approx(4.0).epsilon(1e-3));
  CHECK(DomainCurve::parse("star:0.2,5").kind() == CurveKind::Star);
  CHECK_THROWS_AS(DomainCurve::parse("square"), ConfigError);
  double tg = std::nan("");
  CHECK(e.ray_exit({0, 0}, 0.0, tg) == doctest::Approx(2.0));
  CHECK(e.ray_exit({0, 0}, kPi / 2, tg) == doctest::Approx(1.0));
  const Vec2 o{0.5, 0.3};
  for (int i = 0; i < 50; ++i) {
    const double th = 2 * kPi * i / 50;
    const double s = e.ray_exit(o, th, tg);
    const Vec2 p = o + Vec2{std::cos(th), std::sin(th)} * s;
    CHECK(std::abs(signed_distance(e, p).rho) < 1e-10);
  }
  CHECK(e.star_shaped_about({0.5, 0.3}));
  CHECK_FALSE(e.star_shaped_about({3.0, 0.0}));
}

TEST_CASE("fill distance") {
  const auto disk = DomainCurve::circle();
  const std::vector<Vec2> one{{0, 0}};
  CHECK(fill_distance(one, disk) == doctest::Approx(1.0).epsilon(0.02));
  const std::vector<Vec2> two{{0, 0}, {0.5, 0.2}};
  CHECK(fill_distance(two, disk, 0.01) <= fill_distance(one, disk, 0.01));

  // Hex lattice extending past the boundary: the interior gaps set h.
  const double s = 0.1;
  std::vector<Vec2> hex;
  for (int j = -20; j <= 20; ++j)
    for (int i = -20; i <= 20; ++i) hex.push_back({i * s + (j % 2 != 0 ? s / 2 : 0), j * s * std::sqrt(3.0) / 2});
  CHECK(fill_distance(hex, disk) == doctest::Approx(s / std::sqrt(3.0)).epsilon(0.02));
  CHECK_THROWS_AS(fill_distance({}, disk), DomainError);
}

TEST_CASE("center generation") {
  const auto disk = DomainCurve::circle();
  const auto c1 = generate_centers(disk, 0.2, 7);
  CHECK(c1.h >= 0.2);
  CHECK(c1.h <= 0.4);
  const auto c2 = generate_centers(disk, 0.2, 7);
  CHECK(c1.points == c2.points);
  const auto c3 = generate_centers(disk, 0.1, 7);
  const double ratio = double(c3.size()) / c1.size();
  CHECK(ratio >= 3.0);
  CHECK(ratio <= 5.0);
  CHECK(c3.h >= 0.1);
  CHECK(c3.h <= 0.2);
  for (const Vec2& p : c3.points) CHECK(signed_distance(disk, p).rho < -0.1 / 4);
  CHECK_THROWS_AS(generate_centers(disk, 2.0, 1), DensityUnreachable);
}

TEST_CASE("boundary oversampling layers") {
  const auto disk = DomainCurve::circle();
  const auto base = generate_centers(disk, 0.1, 3);
  const auto d = oversampling_depths(0.1, 2.0, 2);
  const std::vector<double> expected{0.005, 0.01, 0.02, 0.03, 0.04};
  REQUIRE(d.size() == expected.size());
  for (std::size_t i = 0; i < d.size(); ++i) CHECK(d[i] == doctest::Approx(expected[i]));

  const auto o1 = oversample_boundary(disk, base, 0.1, 1.0, 2);
  const double added = double(o1.size() - base.size());
  CHECK(added == doctest::Approx(5 * 2 * kPi / 0.1).epsilon(0.02));

  const auto o2 = oversample_boundary(disk, base, 0.1, 2.0, 2);
  for (std::size_t i = base.size(); i < o2.size(); ++i) CHECK(signed_distance(disk, o2.points[i]).rho < 0);
  const double zone = boundary_zone_fill_distance(o2.points, disk, 4 * 0.01, 0.001);
  CHECK(zone <= 0.01);
  CHECK_THROWS_AS(oversample_boundary(disk, base, 0.5, 1.0, 2), ReachViolation);
}

TEST_CASE("center csv round trip") {
  const auto path = (std::filesystem::temp_directory_path() / "surfspline_centers.csv").string();
  const std::vector<Vec2> pts{{0.1, 0.2}, {-1.0 / 3.0, 2.5e-7}};
  write_centers_csv(path, pts);
  CHECK(read_centers_csv(path) == pts);
  std::remove(path.c_str());
}
