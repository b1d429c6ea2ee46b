#ifndef HDGBC_QUADRATURE_HPP
#define HDGBC_QUADRATURE_HPP

#include "hdgbc/common.hpp"

namespace hdgbc {

/// A positive-weight rule on a reference domain. Points are stored row-wise,
/// one column per coordinate (one column on the interval, two on the triangle).
struct QuadratureRule {
  MatX points;
  VecX weights;
  int exactness = 0;

  int size() const { return static_cast<int>(weights.size()); }
};

constexpr int max_quadrature_exactness = 20;

/// Gauss-Legendre rule on [0,1], exact for polynomials up to the given degree.
QuadratureRule edge_quadrature(int exactness);

/// Product Gauss rule on the reference triangle {x,y >= 0, x+y <= 1},
/// obtained by collapsing a tensor rule on the square. Exact for bivariate
/// polynomials up to the given total degree.
QuadratureRule triangle_quadrature(int exactness);

} // namespace hdgbc

#endif
