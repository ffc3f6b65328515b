#include "surfspline/polyspace.hpp"

#include <algorithm>

namespace surfspline {

PolyBasis::PolyBasis(int degree) : degree_(degree) {
  if (degree < 0) throw DomainError("polynomial degree must be non-negative");
  for (int d = 0; d <= degree; ++d)
    for (int a = d; a >= 0; --a) monomials_.push_back({a, d - a});
}

int PolyBasis::index_of(Monomial mono) const {
  const auto it = std::find(monomials_.begin(), monomials_.end(), mono);
  return it == monomials_.end() ? -1 : static_cast<int>(it - monomials_.begin());
}

Poly2 Poly2::monomial(Monomial mono, double coef) {
  Poly2 p;
  p.add(mono, coef);
  return p;
}

Poly2 Poly2::from_basis(const PolyBasis& basis, const Eigen::VectorXd& coefs) {
  Poly2 p;
  for (int i = 0; i < basis.size(); ++i) p.add(basis[i], coefs(i));
  return p;
}

void Poly2::add(Monomial mono, double coef) {
  if (coef == 0.0) return;
  for (auto it = terms_.begin(); it != terms_.end(); ++it) {
    if (it->mono == mono) {
      it->coef += coef;
      if (it->coef == 0.0) terms_.erase(it);
      return;
    }
  }
  terms_.push_back({mono, coef});
}

int Poly2::degree() const {
  int d = 0;
  for (const auto& t : terms_) d = std::max(d, t.mono.degree());
  return d;
}

double Poly2::operator()(Vec2 x) const {
  double s = 0.0;
  for (const auto& t : terms_) s += t.coef * std::pow(x.x, t.mono.a) * std::pow(x.y, t.mono.b);
  return s;
}

Poly2 Poly2::dx() const {
  Poly2 p;
  for (const auto& t : terms_)
    if (t.mono.a > 0) p.add({t.mono.a - 1, t.mono.b}, t.coef * t.mono.a);
  return p;
}

Poly2 Poly2::dy() const {
  Poly2 p;
  for (const auto& t : terms_)
    if (t.mono.b > 0) p.add({t.mono.a, t.mono.b - 1}, t.coef * t.mono.b);
  return p;
}

Poly2 Poly2::laplacian() const { return dx().dx() + dy().dy(); }

Poly2 Poly2::laplacian_power(int a) const {
  Poly2 p = *this;
  for (int i = 0; i < a; ++i) p = p.laplacian();
  return p;
}

Poly2 Poly2::operator+(const Poly2& o) const {
  Poly2 p = *this;
  for (const auto& t : o.terms_) p.add(t.mono, t.coef);
  return p;
}

Poly2 Poly2::operator*(double s) const {
  Poly2 p;
  for (const auto& t : terms_) p.add(t.mono, t.coef * s);
  return p;
}

double Poly2::lambda(int k, Vec2 alpha, Vec2 n) const {
  if (k < 0) throw DomainError("boundary operator index must be non-negative");
  const Poly2 lap = laplacian_power(k / 2);
  if (k % 2 == 0) return lap(alpha);
  return n.x * lap.dx()(alpha) + n.y * lap.dy()(alpha);
}

double eval_poly_lambda(int k, Monomial mono, Vec2 alpha, Vec2 n_alpha) {
  return Poly2::monomial(mono).lambda(k, alpha, n_alpha);
}

Eigen::MatrixXd assemble_P(const PolyBasis& basis, const BoundaryGrid& grid, int m) {
  const int n = grid.n_nodes;
  Eigen::MatrixXd P(m * n, basis.size());
  for (int j = 0; j < basis.size(); ++j) {
    const Poly2 p = Poly2::monomial(basis[j]);
    for (int k = 0; k < m; ++k)
      for (int i = 0; i < n; ++i) P(k * n + i, j) = p.lambda(k, grid.x[i], grid.normal[i]);
  }
  return P;
}

}  // namespace surfspline
