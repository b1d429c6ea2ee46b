#ifndef HDGBC_SOLVER_HPP
#define HDGBC_SOLVER_HPP

#include "hdgbc/assembly.hpp"

namespace hdgbc {

enum class SolveMethod { monolithic, condensed };

SolveMethod parse_method(const std::string& name);
std::string method_name(SolveMethod method);

/// Coefficients of the discrete optimality system solution in the
/// coupled DofLayout ordering, with solve diagnostics.
struct Solution {
  DofLayout layout;
  VecX coeffs;
  long solved_dimension = 0;       // of the linear system actually factored
  double algebraic_residual = 0.0; // |b - A x| of that system
  double algebraic_residual_rel = 0.0;
  ValidationReport validation;

  VecX q(long t) const { return coeffs.segment(layout.q_offset(t), 2 * layout.m); }
  VecX y(long t) const { return coeffs.segment(layout.y_offset(t), layout.m); }
  VecX p(long t) const { return coeffs.segment(layout.p_offset(t), 2 * layout.m); }
  VecX z(long t) const { return coeffs.segment(layout.z_offset(t), layout.m); }
  VecX yhat(int edge) const { return coeffs.segment(layout.yhat_offset(edge), layout.e); }
  VecX zhat(int edge) const { return coeffs.segment(layout.zhat_offset(edge), layout.e); }
  VecX u(int edge) const { return coeffs.segment(layout.u_offset(edge), layout.e); }
};

Solution solve_optimal_control(const Mesh& mesh, const ProblemData& data,
                               SolveMethod method);

/// Trace-and-control system after eliminating the element-interior unknowns
/// (q, y, p, z) element by element. Its unknowns are the tail of the coupled
/// DofLayout, shifted by layout.trace_offset.
struct CondensedSystem {
  DofLayout layout;
  SparseMat matrix;
  VecX rhs;
  ValidationReport validation;
};

CondensedSystem static_condense(const Mesh& mesh, const ProblemData& data);

/// Back substitution: rebuilds each element's interior unknowns from the
/// solved traces and controls; returns the full coefficient vector.
VecX recover_interior(const Mesh& mesh, const ProblemData& data,
                      const DofLayout& layout, const VecX& condensed);

/// One hybridized form solved alone: (q, y, yhat) for the state equation
/// given a control, or (p, z, zhat) for the adjoint equation given a state.
struct FormSolution {
  FormLayout layout;
  VecX coeffs;

  VecX q(long t) const { return coeffs.segment(layout.q_offset(t), 2 * layout.m); }
  VecX y(long t) const { return coeffs.segment(layout.y_offset(t), layout.m); }
  VecX trace(int edge) const {
    return coeffs.segment(layout.trace_offset_of(edge), layout.e);
  }
};

/// control_coeffs: edge-basis coefficients per boundary edge, packed by the
/// layout's boundary rank.
FormSolution solve_state(const Mesh& mesh, const ProblemData& data,
                         const VecX& control_coeffs);
FormSolution solve_state(const Mesh& mesh, const ProblemData& data,
                         const ScalarField& control);
/// y_coeffs: element-basis coefficients of the state, m per element.
FormSolution solve_adjoint(const Mesh& mesh, const ProblemData& data,
                           const VecX& y_coeffs);

/// L2 norm over the boundary skeleton of gamma u + P(p.n + tau2 z), the
/// residual of the first-order optimality condition (P is the edgewise L2
/// projection). scale collects the norms of the individual addends, giving
/// the natural relative measure.
struct OptimalityResidual {
  double absolute = 0.0;
  double scale = 0.0;
  double relative() const { return scale > 0.0 ? absolute / scale : absolute; }
};

OptimalityResidual optimality_residual(const Mesh& mesh, const ProblemData& data,
                                       const Solution& solution);

/// State triple (q, y, yhat) of a coupled solution in FormLayout packing.
VecX extract_state_triple(const Solution& solution, const FormLayout& layout);
/// Adjoint triple (p, z, zhat) likewise.
VecX extract_adjoint_triple(const Solution& solution, const FormLayout& layout);
/// Control coefficients packed by boundary rank.
VecX extract_control(const Solution& solution);
/// Element-basis state coefficients, m per element.
VecX extract_state_coeffs(const Solution& solution);

} // namespace hdgbc

#endif
