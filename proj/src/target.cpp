#include "surfspline/target.hpp"

namespace surfspline {

TargetFunction::TargetFunction(std::string name, LapFn laplacian_power, GradFn grad_laplacian_power,
                               bool analytic, std::string smoothness)
    : name_(std::move(name)),
      lap_(std::move(laplacian_power)),
      grad_(std::move(grad_laplacian_power)),
      analytic_(analytic),
      smoothness_(std::move(smoothness)) {}

double TargetFunction::trace(int k, Vec2 x, Vec2 n) const {
  if (k < 0) throw DomainError("boundary operator index must be non-negative");
  if (k % 2 == 0) return lap_(x, k / 2);
  return dot(n, grad_(x, (k - 1) / 2));
}

TargetFunction TargetFunction::polynomial(const Poly2& p, std::string name) {
  auto laps = std::make_shared<std::vector<Poly2>>();
  auto dxs = std::make_shared<std::vector<Poly2>>();
  auto dys = std::make_shared<std::vector<Poly2>>();
  Poly2 q = p;
  for (int a = 0; a <= p.degree() / 2 + 1; ++a) {
    laps->push_back(q);
    dxs->push_back(q.dx());
    dys->push_back(q.dy());
    q = q.laplacian();
  }
  auto lap = [laps](Vec2 x, int a) {
    return a < static_cast<int>(laps->size()) ? (*laps)[a](x) : 0.0;
  };
  auto grad = [dxs, dys](Vec2 x, int a) {
    if (a >= static_cast<int>(dxs->size())) return Vec2{};
    return Vec2{(*dxs)[a](x), (*dys)[a](x)};
  };
  return TargetFunction(std::move(name), lap, grad, true, "polynomial");
}

TargetFunction TargetFunction::exp_plane(Vec2 k, std::string name) {
  const double k2 = norm2(k);
  auto lap = [k, k2](Vec2 x, int a) { return std::pow(k2, a) * std::exp(dot(k, x)); };
  auto grad = [k, k2](Vec2 x, int a) { return k * (std::pow(k2, a) * std::exp(dot(k, x))); };
  return TargetFunction(std::move(name), lap, grad, true, "analytic");
}

TargetFunction TargetFunction::cos_plane(Vec2 k, double phase, std::string name) {
  const double k2 = norm2(k);
  auto lap = [k, k2, phase](Vec2 x, int a) { return std::pow(-k2, a) * std::cos(dot(k, x) + phase); };
  auto grad = [k, k2, phase](Vec2 x, int a) {
    return k * (-std::pow(-k2, a) * std::sin(dot(k, x) + phase));
  };
  return TargetFunction(std::move(name), lap, grad, true, "analytic");
}

namespace {

// Fourth-order central second difference along e.
template <class F>
double second_difference(const F& f, Vec2 x, Vec2 e, double h) {
  return (-f(x + e * (2 * h)) + 16 * f(x + e * h) - 30 * f(x) + 16 * f(x - e * h) - f(x - e * (2 * h))) /
         (12 * h * h);
}

template <class F>
double first_difference(const F& f, Vec2 x, Vec2 e, double h) {
  return (-f(x + e * (2 * h)) + 8 * f(x + e * h) - 8 * f(x - e * h) + f(x - e * (2 * h))) / (12 * h);
}

}  // namespace

TargetFunction TargetFunction::from_callable(ValueFn f, std::string name, double step) {
  auto fp = std::make_shared<ValueFn>(std::move(f));
  // Each Laplacian level uses a slightly wider stencil so that rounding
  // noise from the inner level is not amplified too much.
  auto lap = std::make_shared<std::function<double(Vec2, int)>>();
  *lap = [fp, step, lap_weak = std::weak_ptr<std::function<double(Vec2, int)>>(lap)](Vec2 x, int a) -> double {
    if (a == 0) return (*fp)(x);
    auto self = lap_weak.lock();
    const auto inner = [&](Vec2 y) { return (*self)(y, a - 1); };
    const double h = step * (1 + a);
    return second_difference(inner, x, {1, 0}, h) + second_difference(inner, x, {0, 1}, h);
  };
  auto lap_fn = [lap](Vec2 x, int a) { return (*lap)(x, a); };
  auto grad_fn = [lap, step](Vec2 x, int a) {
    const auto inner = [&](Vec2 y) { return (*lap)(y, a); };
    const double h = step * (1 + a);
    return Vec2{first_difference(inner, x, {1, 0}, h), first_difference(inner, x, {0, 1}, h)};
  };
  return TargetFunction(std::move(name), lap_fn, grad_fn, false, "finite-difference oracle");
}

TargetFunction TargetFunction::linear_combination(double a, const TargetFunction& f, double b,
                                                  const TargetFunction& g, std::string name) {
  auto lap = [a, b, f, g](Vec2 x, int k) { return a * f.laplacian_power(x, k) + b * g.laplacian_power(x, k); };
  auto grad = [a, b, f, g](Vec2 x, int k) {
    return f.grad_laplacian_power(x, k) * a + g.grad_laplacian_power(x, k) * b;
  };
  const bool analytic = f.analytic() && g.analytic();
  if (name.empty()) name = "(" + f.name() + ")+(" + g.name() + ")";
  return TargetFunction(std::move(name), lap, grad, analytic,
                        analytic ? "analytic" : "finite-difference oracle");
}

TargetFunction TargetFunction::by_name(const std::string& name) {
  auto mono = [](int a, int b, double c = 1.0) { return Poly2::monomial({a, b}, c); };
  if (name == "x1") return polynomial(mono(1, 0), name);
  if (name == "quadratic") return polynomial(mono(2, 0) + mono(0, 2), name);
  if (name == "harmonic3") return polynomial(mono(3, 0) + mono(1, 2, -3.0), name);
  if (name == "biharmonic") return polynomial(mono(3, 0) + mono(1, 2), name);
  if (name == "cubic") return polynomial(mono(2, 1), name);
  if (name == "exp") return exp_plane({1, 0}, name);
  if (name == "exp_diag") return exp_plane({0.6, -0.8}, name);
  if (name == "cos_wave") return cos_plane({1.3, 0.7}, 0.4, name);
  if (name == "smooth_mix") {
    return linear_combination(1.0, exp_plane({0.5, 0.5}), 0.5, cos_plane({0.9, -1.4}, 0.0), name);
  }
  throw ConfigError("unknown target function '" + name + "'");
}

}  // namespace surfspline
