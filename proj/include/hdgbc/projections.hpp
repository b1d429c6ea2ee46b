#ifndef HDGBC_PROJECTIONS_HPP
#define HDGBC_PROJECTIONS_HPP

#include "hdgbc/basis.hpp"
#include "hdgbc/mesh.hpp"
#include "hdgbc/quadrature.hpp"

namespace hdgbc {

/// Reference basis pushed onto a physical element and rescaled by
/// 1/sqrt(det J), so that it stays L2-orthonormal on the element. Coefficient
/// vectors in this basis have Euclidean norm equal to the L2 norm of the
/// function they represent.
struct ElementBasis {
  const SimplexBasis* ref = nullptr;
  ElementMap map;
  double scale = 1.0; // 1/sqrt(det J)

  int size() const { return ref->size(); }
  VecX eval(const Vec2& x) const { return scale * ref->eval(map.to_reference(x)); }
  /// Physical gradients at x, one row per function.
  MatX eval_gradient(const Vec2& x) const {
    return scale * ref->eval_gradient(map.to_reference(x)) * map.inv_jac;
  }
};

ElementBasis element_basis(const SimplexBasis& ref, const Mesh& mesh, int element);

/// L2 projection onto the element polynomial space; returns coefficients in
/// the orthonormal element basis.
VecX project_element(const Mesh& mesh, int element, const SimplexBasis& basis,
                     const ScalarField& f, int quad_exactness);

/// L2 projection onto the edge polynomial space in the edge's canonical
/// parametrization, coefficients in the orthonormal (scaled Legendre) basis.
VecX project_edge(const Mesh& mesh, int edge, const EdgeBasis& basis,
                  const ScalarField& f, int quad_exactness);

/// Projection on the reference interval [0,1].
VecX project_interval(const EdgeBasis& basis, const std::function<double(double)>& f,
                      int quad_exactness);

double eval_element_poly(const Mesh& mesh, int element, const SimplexBasis& basis,
                         const VecX& coeffs, const Vec2& x);
double eval_edge_poly(const Mesh& mesh, int edge, const EdgeBasis& basis,
                      const VecX& coeffs, double s);

} // namespace hdgbc

#endif
