#ifndef HDGBC_LOCAL_OPS_HPP
#define HDGBC_LOCAL_OPS_HPP

#include "hdgbc/dof_layout.hpp"
#include "hdgbc/problem_data.hpp"
#include "hdgbc/projections.hpp"
#include "hdgbc/quadrature.hpp"

#include <array>

namespace hdgbc {

/// Upwind-type stabilization weights on one element face. tau1 serves the
/// state form, tau2 the adjoint form; they differ by exactly beta.n, and
/// their mean tau is what the energy seminorm weighs jumps with.
struct StabilizationValues {
  double tau1 = 0.0;
  double tau2 = 0.0;
  double tau = 0.0;
};

/// Pure kernel: weights from the element-wide sup of |beta.n|, the local
/// value of beta.n, the diffusion coefficient and the element diameter.
StabilizationValues stabilization_from(double beta_n_sup, double beta_n,
                                       double epsilon, double h);

/// Sup of |beta.n| over the quadrature points of all three element faces,
/// a per-element constant.
double maxnorm_beta_n(const Mesh& mesh, const ProblemData& data, int element);

/// Stabilization weights at parameter s of the given face (canonical edge
/// parametrization).
StabilizationValues stabilization(const Mesh& mesh, const ProblemData& data,
                                  int element, int local_edge, double s);

// ------------------------------------------------------------------------
// Precomputed per-element quadrature data
// ------------------------------------------------------------------------

struct EdgeContext {
  int edge = -1;
  bool interior = false;
  double length = 0.0;
  Vec2 normal = Vec2::Zero();
  VecX s;          // canonical edge parameters of the quadrature points
  MatX x;          // physical points, one per row
  VecX w;          // quadrature weights times edge length
  MatX elem_vals;  // element basis traces at the points
  MatX edge_vals;  // edge basis at the points (orthonormal on the edge)
  VecX beta_n;     // beta . n at the points
  VecX tau1, tau2; // stabilization weights at the points
};

struct ElementContext {
  int element = -1;
  double h = 0.0;
  double det_jac = 0.0;
  double beta_n_sup = 0.0;
  MatX x;                // volume quadrature points
  VecX w;                // weights times det J
  MatX vals;             // element basis values
  MatX grad_x, grad_y;   // physical basis gradients
  std::array<EdgeContext, 3> edges;
};

ElementContext element_context(const Mesh& mesh, const ProblemData& data,
                               int element, const SimplexBasis& elem_basis,
                               const EdgeBasis& edge_basis);

// ------------------------------------------------------------------------
// Local bilinear forms
// ------------------------------------------------------------------------

/// Which of the two hybridized forms to build: the state form (tau1 weights,
/// convection tested against the gradient with a plus sign, reaction sigma)
/// or the adjoint form (tau2 weights, flipped convection, reaction
/// sigma + div beta).
enum class FormKind { state, adjoint };

/// One element's contribution to a hybridized form, over the local unknowns
/// [q (2m), y (m), trace on face 0, face 1, face 2 (e each)], test functions
/// ordered the same way. Trace blocks are built for all three faces; whether
/// a face's block is assembled (interior edge) or repurposed (control column
/// on the boundary) is the assembler's decision.
struct LocalBlocks {
  int m = 0;
  int e = 0;
  std::array<int, 3> edge_ids = {-1, -1, -1};
  std::array<bool, 3> edge_interior = {false, false, false};
  MatX mat;

  int trace_index(int local_edge) const { return 3 * m + local_edge * e; }
  int size() const { return 3 * m + 3 * e; }
};

LocalBlocks local_form(const ElementContext& ctx, const ProblemData& data,
                       FormKind kind);

/// Element mass matrix in the element basis (identity up to quadrature
/// rounding); couples the state into the adjoint equation.
MatX local_mass(const ElementContext& ctx);

/// Right-hand-side coupling of the control on one boundary face into the
/// state unknowns: -<u, tau2 w + r.n>_E, rows over [q (2m), y (m)], one
/// column per control dof. Assembled into the matrix with opposite sign.
MatX local_control_columns(const ElementContext& ctx, int local_edge);

/// Rows of the first-order optimality condition on one boundary face:
/// gamma <u, what> + <p.n, what> + <tau2 z, what> = 0.
struct OptimalityRowBlocks {
  MatX p_cols; // e x 2m
  MatX z_cols; // e x m
  MatX u_cols; // e x e, gamma times the edge mass matrix
};

OptimalityRowBlocks local_optimality_row(const ElementContext& ctx,
                                         const ProblemData& data,
                                         int local_edge);

/// State load -(f, w)_T in the element basis.
VecX local_state_load(const ElementContext& ctx, const ProblemData& data);
/// Adjoint load +(y_d, w)_T in the element basis.
VecX local_adjoint_load(const ElementContext& ctx, const ProblemData& data);

} // namespace hdgbc

#endif
