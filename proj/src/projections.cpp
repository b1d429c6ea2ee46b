#include "hdgbc/projections.hpp"

#include <cmath>

namespace hdgbc {

ElementBasis element_basis(const SimplexBasis& ref, const Mesh& mesh, int element) {
  ElementBasis basis;
  basis.ref = &ref;
  basis.map = element_map(mesh, element);
  basis.scale = 1.0 / std::sqrt(basis.map.det_jac);
  return basis;
}

VecX project_element(const Mesh& mesh, int element, const SimplexBasis& basis,
                     const ScalarField& f, int quad_exactness) {
  const auto rule = triangle_quadrature(quad_exactness);
  const ElementMap map = element_map(mesh, element);
  const double scale = 1.0 / std::sqrt(map.det_jac);

  // (f, phi_i)_T suffices: the basis is orthonormal on the element.
  VecX coeffs = VecX::Zero(basis.size());
  for (int q = 0; q < rule.size(); ++q) {
    const Vec2 xhat(rule.points(q, 0), rule.points(q, 1));
    const double w = rule.weights(q) * map.det_jac;
    coeffs += w * f(map.to_physical(xhat)) * (scale * basis.eval(xhat));
  }
  return coeffs;
}

VecX project_edge(const Mesh& mesh, int edge, const EdgeBasis& basis,
                  const ScalarField& f, int quad_exactness) {
  const auto rule = edge_quadrature(quad_exactness);
  const double len = edge_length(mesh, edge);
  const double scale = 1.0 / std::sqrt(len);

  VecX coeffs = VecX::Zero(basis.size());
  for (int q = 0; q < rule.size(); ++q) {
    const double s = rule.points(q, 0);
    const double w = rule.weights(q) * len;
    coeffs += w * f(edge_point(mesh, edge, s)) * (scale * basis.eval(s));
  }
  return coeffs;
}

VecX project_interval(const EdgeBasis& basis, const std::function<double(double)>& f,
                      int quad_exactness) {
  const auto rule = edge_quadrature(quad_exactness);
  VecX coeffs = VecX::Zero(basis.size());
  for (int q = 0; q < rule.size(); ++q) {
    const double s = rule.points(q, 0);
    coeffs += rule.weights(q) * f(s) * basis.eval(s);
  }
  return coeffs;
}

double eval_element_poly(const Mesh& mesh, int element, const SimplexBasis& basis,
                         const VecX& coeffs, const Vec2& x) {
  return element_basis(basis, mesh, element).eval(x).dot(coeffs);
}

double eval_edge_poly(const Mesh& mesh, int edge, const EdgeBasis& basis,
                      const VecX& coeffs, double s) {
  const double scale = 1.0 / std::sqrt(edge_length(mesh, edge));
  return scale * basis.eval(s).dot(coeffs);
}

} // namespace hdgbc
