#ifndef HDGBC_BASIS_HPP
#define HDGBC_BASIS_HPP

#include "hdgbc/common.hpp"

namespace hdgbc {

constexpr int max_basis_degree = 3;

/// L2-orthonormal polynomial basis on the reference triangle
/// {x,y >= 0, x+y <= 1}, degrees 0..3. Built from the monomial basis by
/// Cholesky orthonormalization of the exact moment matrix.
class SimplexBasis {
public:
  explicit SimplexBasis(int degree);

  int degree() const { return degree_; }
  int size() const { return static_cast<int>(coeff_.rows()); }

  /// Values of all basis functions at one reference point.
  VecX eval(const Vec2& xhat) const;
  /// Values at many points, one row per point, one column per function.
  MatX eval(const MatX& points) const;
  /// Reference gradients at one point, one row per function.
  MatX eval_gradient(const Vec2& xhat) const;
  /// Reference gradients at many points, split by component.
  void eval_gradient(const MatX& points, MatX& dx, MatX& dy) const;

private:
  int degree_;
  Eigen::Matrix<int, Eigen::Dynamic, 2> expo_; // monomial exponents
  MatX coeff_;                                 // size x #monomials
};

/// L2-orthonormal basis on [0,1]: scaled shifted Legendre polynomials.
class EdgeBasis {
public:
  explicit EdgeBasis(int degree);

  int degree() const { return degree_; }
  int size() const { return degree_ + 1; }

  VecX eval(double s) const;
  /// Values at many points, one row per point, one column per function.
  MatX eval(const VecX& points) const;

private:
  int degree_;
};

/// Dimension of the full polynomial space of the given total degree on a
/// triangle.
inline int simplex_space_dim(int degree) { return (degree + 1) * (degree + 2) / 2; }

} // namespace hdgbc

#endif
