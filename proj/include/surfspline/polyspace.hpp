#pragma once

#include <Eigen/Dense>
#include <vector>

#include "surfspline/core.hpp"
#include "surfspline/geometry.hpp"

namespace surfspline {

struct Monomial {
  int a = 0;  // power of x1
  int b = 0;  // power of x2
  int degree() const { return a + b; }
  bool operator==(const Monomial&) const = default;
};

// Monomials of total degree <= J, ordered by degree and then by falling
// power of x1: 1, x, y, x^2, xy, y^2, ...
class PolyBasis {
 public:
  explicit PolyBasis(int degree);
  int degree() const { return degree_; }
  int size() const { return static_cast<int>(monomials_.size()); }
  const Monomial& operator[](int i) const { return monomials_[i]; }
  const std::vector<Monomial>& monomials() const { return monomials_; }
  int index_of(Monomial mono) const;

 private:
  int degree_;
  std::vector<Monomial> monomials_;
};

// Polynomial in two variables as a sparse list of monomial terms.
class Poly2 {
 public:
  struct Term {
    Monomial mono;
    double coef;
  };

  Poly2() = default;
  static Poly2 monomial(Monomial mono, double coef = 1.0);
  static Poly2 from_basis(const PolyBasis& basis, const Eigen::VectorXd& coefs);

  const std::vector<Term>& terms() const { return terms_; }
  int degree() const;
  bool is_zero() const { return terms_.empty(); }

  double operator()(Vec2 x) const;
  Poly2 dx() const;
  Poly2 dy() const;
  Poly2 laplacian() const;
  Poly2 laplacian_power(int a) const;
  Poly2 operator+(const Poly2& o) const;
  Poly2 operator*(double s) const;
  // Boundary operator lambda_k evaluated at alpha with unit normal n.
  double lambda(int k, Vec2 alpha, Vec2 n) const;

 private:
  void add(Monomial mono, double coef);
  std::vector<Term> terms_;
};

double eval_poly_lambda(int k, Monomial mono, Vec2 alpha, Vec2 n_alpha);

// Block-stacked matrix with row k*n + i holding lambda_k p_j(x_i) for
// k = 0..m-1 and the basis of degree m-1.
Eigen::MatrixXd assemble_P(const PolyBasis& basis, const BoundaryGrid& grid, int m);

}  // namespace surfspline
