#ifndef HDGBC_NORMS_HPP
#define HDGBC_NORMS_HPP

#include "hdgbc/dof_layout.hpp"
#include "hdgbc/problem_data.hpp"

#include <vector>

namespace hdgbc {

/// Element-basis coefficients of a piecewise polynomial, one block per
/// element.
using ElementCoeffs = std::function<VecX(int element)>;
/// Edge-basis coefficients of a skeleton polynomial, one block per edge.
using EdgeCoeffs = std::function<VecX(int edge)>;

/// L2(Omega) distance between a piecewise polynomial and an exact field.
double l2_error_domain(const Mesh& mesh, int degree, const ElementCoeffs& coeffs,
                       const ScalarField& exact, int quad_exactness);

/// L2(Gamma) distance between a boundary-edge polynomial and an exact field.
double l2_error_boundary(const Mesh& mesh, int degree, const EdgeCoeffs& coeffs,
                         const ScalarField& exact, int quad_exactness);

/// The energy seminorm of a hybridized triple (q, y, yhat) in FormLayout
/// packing:
///   eps^{-1} |q|^2 + eps |grad y|^2 (broken) + |tau^{1/2} (y - yhat)|^2
///   over element boundaries + |w^{1/2} y|^2,
/// with w = sigma + div(beta)/2 for the weak variant and beta0 + that for
/// the full variant. Traces vanish on boundary edges.
enum class TripleNormVariant { weak, full };

double triple_norm(const Mesh& mesh, const ProblemData& data,
                   const FormLayout& layout, const VecX& triple,
                   TripleNormVariant variant);

/// The quadratic form the state operator produces when tested against
/// (q, -y, -yhat):
///   eps^{-1} |q|^2 + |tau^{1/2} (y - yhat)|^2 over element boundaries
///   + |sigma_bar^{1/2} y|^2,
/// evaluated by direct quadrature, independently of the assembled matrix.
double energy_quadratic(const Mesh& mesh, const ProblemData& data,
                        const FormLayout& layout, const VecX& triple);

/// Observed orders log(e_{l-1}/e_l) / log(h_{l-1}/h_l); NaN where the ratio
/// is undefined. First entry corresponds to the second level.
std::vector<double> convergence_rates(const std::vector<double>& errors,
                                      const std::vector<double>& h);

// ------------------------------------------------------------------------
// Field location utilities (layer diagnostics)
// ------------------------------------------------------------------------

/// Element whose polynomial attains the largest absolute value over sampled
/// points (vertices, edge midpoints, centroid).
int argmax_element_abs(const Mesh& mesh, int degree, const ElementCoeffs& coeffs);
/// Boundary edge whose polynomial attains the largest sampled absolute value.
int argmax_boundary_edge_abs(const Mesh& mesh, int degree, const EdgeCoeffs& coeffs);
bool element_touches_boundary(const Mesh& mesh, int element);
/// Euclidean distance from the edge midpoint to the nearest domain corner.
double edge_distance_to_corner(const Mesh& mesh, int edge);

} // namespace hdgbc

#endif
