#ifndef HDGBC_REFERENCE_HPP
#define HDGBC_REFERENCE_HPP

#include "hdgbc/norms.hpp"

namespace hdgbc {

/// Element of the structured mesh containing a point of the open unit
/// square. Points on inter-element lines resolve to a fixed neighbour.
int containing_element(const Mesh& mesh, const Vec2& x);

/// Boundary edge of the structured mesh containing a boundary point.
int containing_boundary_edge(const Mesh& mesh, const Vec2& x);

/// L2(Omega) distance between piecewise polynomials living on two nested
/// structured meshes. Integration runs over the finer mesh, where both
/// fields are polynomial, so the result is exact up to roundoff.
double nested_l2_distance_domain(const Mesh& coarse, const ElementCoeffs& coarse_coeffs,
                                 const Mesh& fine, const ElementCoeffs& fine_coeffs,
                                 int degree);

/// L2(Gamma) distance between boundary-edge polynomials on nested meshes.
double nested_l2_distance_boundary(const Mesh& coarse, const EdgeCoeffs& coarse_coeffs,
                                   const Mesh& fine, const EdgeCoeffs& fine_coeffs,
                                   int degree);

} // namespace hdgbc

#endif
