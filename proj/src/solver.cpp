#include "hdgbc/solver.hpp"

#include <array>
#include <cmath>

namespace hdgbc {

SolveMethod parse_method(const std::string& name) {
  if (name == "monolithic") return SolveMethod::monolithic;
  if (name == "condensed") return SolveMethod::condensed;
  throw config_error("unknown method '" + name +
                     "' (expected monolithic or condensed)");
}

std::string method_name(SolveMethod method) {
  return method == SolveMethod::monolithic ? "monolithic" : "condensed";
}

namespace {

// Per-element pieces of the coupled system: the interior block over
// [q (2m), y (m), p (2m), z (m)], the couplings to the element's tail
// unknowns (traces of interior edges, controls of boundary edges), the tail
// equations' couplings back, the directly assembled tail diagonal blocks,
// and the interior load.
struct ElementSchurParts {
  MatX interior;              // 6m x 6m
  MatX to_tail;               // 6m x n_tail columns
  MatX from_tail;             // n_tail x 6m rows (trace/optimality equations)
  MatX tail_diag;             // n_tail x n_tail, direct edge terms
  VecX load;                  // 6m
  std::vector<long> tail_ids; // global ids of the tail unknowns, e at a time
};

ElementSchurParts element_schur_parts(const ElementContext& ctx,
                                      const ProblemData& data,
                                      const DofLayout& layout, int t) {
  const int m = layout.m, e = layout.e;
  const LocalBlocks b1 = local_form(ctx, data, FormKind::state);
  const LocalBlocks b2 = local_form(ctx, data, FormKind::adjoint);
  const MatX mass = local_mass(ctx);

  ElementSchurParts parts;
  parts.interior = MatX::Zero(6 * m, 6 * m);
  parts.interior.topLeftCorner(3 * m, 3 * m) = b1.mat.topLeftCorner(3 * m, 3 * m);
  parts.interior.block(3 * m, 3 * m, 3 * m, 3 * m) =
      b2.mat.topLeftCorner(3 * m, 3 * m);
  parts.interior.block(5 * m, 2 * m, m, m) += mass; // +(y, w2)

  // Tail slots: yhat or u per edge first, then zhat per interior edge, so
  // that state trace and control columns stay adjacent to their edge.
  int n_tail = 0;
  std::array<int, 3> yslot{-1, -1, -1}, zslot{-1, -1, -1};
  for (int le = 0; le < 3; ++le) {
    yslot[le] = n_tail;
    n_tail += e;
  }
  for (int le = 0; le < 3; ++le) {
    if (!ctx.edges[le].interior) continue;
    zslot[le] = n_tail;
    n_tail += e;
  }

  parts.to_tail = MatX::Zero(6 * m, n_tail);
  parts.from_tail = MatX::Zero(n_tail, 6 * m);
  parts.tail_diag = MatX::Zero(n_tail, n_tail);
  parts.tail_ids.assign(n_tail, -1);

  for (int le = 0; le < 3; ++le) {
    const int edge = ctx.edges[le].edge;
    const int tt = b1.trace_index(le);
    if (ctx.edges[le].interior) {
      for (int i = 0; i < e; ++i) {
        parts.tail_ids[yslot[le] + i] = layout.yhat_offset(edge) + i;
        parts.tail_ids[zslot[le] + i] = layout.zhat_offset(edge) + i;
      }
      parts.to_tail.block(0, yslot[le], 3 * m, e) = b1.mat.block(0, tt, 3 * m, e);
      parts.to_tail.block(3 * m, zslot[le], 3 * m, e) =
          b2.mat.block(0, tt, 3 * m, e);
      parts.from_tail.block(yslot[le], 0, e, 3 * m) = b1.mat.block(tt, 0, e, 3 * m);
      parts.from_tail.block(zslot[le], 3 * m, e, 3 * m) =
          b2.mat.block(tt, 0, e, 3 * m);
      parts.tail_diag.block(yslot[le], yslot[le], e, e) =
          b1.mat.block(tt, tt, e, e);
      parts.tail_diag.block(zslot[le], zslot[le], e, e) =
          b2.mat.block(tt, tt, e, e);
    } else {
      for (int i = 0; i < e; ++i) {
        parts.tail_ids[yslot[le] + i] = layout.u_offset(edge) + i;
      }
      // Control columns carry the right-hand-side sign.
      parts.to_tail.block(0, yslot[le], 3 * m, e) =
          -local_control_columns(ctx, le);
      const OptimalityRowBlocks opt = local_optimality_row(ctx, data, le);
      parts.from_tail.block(yslot[le], 3 * m, e, 2 * m) = opt.p_cols;
      parts.from_tail.block(yslot[le], 5 * m, e, m) = opt.z_cols;
      parts.tail_diag.block(yslot[le], yslot[le], e, e) = opt.u_cols;
    }
  }

  parts.load = VecX::Zero(6 * m);
  parts.load.segment(2 * m, m) = local_state_load(ctx, data);
  parts.load.segment(5 * m, m) = local_adjoint_load(ctx, data);
  return parts;
}

} // namespace

CondensedSystem static_condense(const Mesh& mesh, const ProblemData& data) {
  CondensedSystem system;
  system.validation = validate(data, mesh);
  system.layout = coupled_layout(mesh, data.degree);
  const DofLayout& layout = system.layout;
  const long n = layout.n_condensed();
  const long shift = layout.trace_offset;

  const SimplexBasis elem_basis(data.degree);
  const EdgeBasis edge_basis(data.degree);

  std::vector<Triplet> triplets;
  triplets.reserve(mesh.n_elements() * 200L);
  system.rhs = VecX::Zero(n);

  for (int t = 0; t < mesh.n_elements(); ++t) {
    const ElementContext ctx =
        element_context(mesh, data, t, elem_basis, edge_basis);
    const ElementSchurParts parts = element_schur_parts(ctx, data, layout, t);
    const long n_tail = static_cast<long>(parts.tail_ids.size());

    const Eigen::PartialPivLU<MatX> lu(parts.interior);
    const MatX schur = parts.from_tail * lu.solve(parts.to_tail);
    const VecX load_tail = parts.from_tail * lu.solve(parts.load);

    for (long i = 0; i < n_tail; ++i) {
      const long row = parts.tail_ids[i] - shift;
      system.rhs(row) -= load_tail(i);
      for (long j = 0; j < n_tail; ++j) {
        const double value = parts.tail_diag(i, j) - schur(i, j);
        if (value != 0.0) {
          triplets.emplace_back(row, parts.tail_ids[j] - shift, value);
        }
      }
    }
  }

  system.matrix = finalize(n, triplets);
  return system;
}

VecX recover_interior(const Mesh& mesh, const ProblemData& data,
                      const DofLayout& layout, const VecX& condensed) {
  if (condensed.size() != layout.n_condensed()) {
    throw std::invalid_argument("condensed vector length mismatch");
  }
  VecX coeffs = VecX::Zero(layout.size);
  coeffs.tail(layout.n_condensed()) = condensed;

  const SimplexBasis elem_basis(data.degree);
  const EdgeBasis edge_basis(data.degree);
  const long shift = layout.trace_offset;

  for (int t = 0; t < mesh.n_elements(); ++t) {
    const ElementContext ctx =
        element_context(mesh, data, t, elem_basis, edge_basis);
    const ElementSchurParts parts = element_schur_parts(ctx, data, layout, t);

    VecX tail(parts.tail_ids.size());
    for (size_t i = 0; i < parts.tail_ids.size(); ++i) {
      tail(static_cast<long>(i)) = condensed(parts.tail_ids[i] - shift);
    }
    const VecX interior =
        parts.interior.partialPivLu().solve(parts.load - parts.to_tail * tail);
    coeffs.segment(layout.q_offset(t), 6 * layout.m) = interior;
  }
  return coeffs;
}

Solution solve_optimal_control(const Mesh& mesh, const ProblemData& data,
                               SolveMethod method) {
  Solution solution;
  if (method == SolveMethod::monolithic) {
    GlobalSystem system = assemble_global(mesh, data);
    solution.layout = system.layout;
    solution.validation = system.validation;
    solution.coeffs = factor_solve(system.matrix, system.rhs);
    solution.solved_dimension = system.layout.size;
    solution.algebraic_residual =
        residual_norm(system.matrix, solution.coeffs, system.rhs);
    const double rhs_norm = system.rhs.norm();
    solution.algebraic_residual_rel =
        rhs_norm > 0.0 ? solution.algebraic_residual / rhs_norm
                       : solution.algebraic_residual;
  } else {
    CondensedSystem system = static_condense(mesh, data);
    solution.layout = system.layout;
    solution.validation = system.validation;
    const VecX condensed = factor_solve(system.matrix, system.rhs);
    solution.solved_dimension = system.layout.n_condensed();
    solution.algebraic_residual =
        residual_norm(system.matrix, condensed, system.rhs);
    const double rhs_norm = system.rhs.norm();
    solution.algebraic_residual_rel =
        rhs_norm > 0.0 ? solution.algebraic_residual / rhs_norm
                       : solution.algebraic_residual;
    solution.coeffs = recover_interior(mesh, data, system.layout, condensed);
  }
  return solution;
}

// ------------------------------------------------------------------------
// Single-form solves
// ------------------------------------------------------------------------

FormSolution solve_state(const Mesh& mesh, const ProblemData& data,
                         const VecX& control_coeffs) {
  FormSystem system = assemble_form_matrix(mesh, data, FormKind::state);
  const FormLayout& layout = system.layout;
  if (control_coeffs.size() != layout.e * layout.n_boundary_edges) {
    throw std::invalid_argument("control coefficient vector length mismatch");
  }

  const SimplexBasis elem_basis(data.degree);
  const EdgeBasis edge_basis(data.degree);
  VecX rhs = VecX::Zero(layout.size);
  for (int t = 0; t < mesh.n_elements(); ++t) {
    const ElementContext ctx =
        element_context(mesh, data, t, elem_basis, edge_basis);
    rhs.segment(layout.y_offset(t), layout.m) += local_state_load(ctx, data);
    for (int le = 0; le < 3; ++le) {
      if (ctx.edges[le].interior) continue;
      const int edge = ctx.edges[le].edge;
      const VecX u_edge = control_coeffs.segment(
          static_cast<long>(layout.e) * layout.boundary_rank[edge], layout.e);
      const VecX contrib = local_control_columns(ctx, le) * u_edge;
      rhs.segment(layout.q_offset(t), 2 * layout.m) += contrib.head(2 * layout.m);
      rhs.segment(layout.y_offset(t), layout.m) += contrib.tail(layout.m);
    }
  }

  FormSolution solution;
  solution.layout = layout;
  solution.coeffs = factor_solve(system.matrix, rhs);
  return solution;
}

FormSolution solve_state(const Mesh& mesh, const ProblemData& data,
                         const ScalarField& control) {
  const FormLayout layout = form_layout(mesh, data.degree);
  const EdgeBasis edge_basis(data.degree);
  VecX control_coeffs(layout.e * layout.n_boundary_edges);
  for (int edge = 0; edge < mesh.n_edges(); ++edge) {
    if (!mesh.edge_on_boundary(edge)) continue;
    control_coeffs.segment(static_cast<long>(layout.e) * layout.boundary_rank[edge],
                           layout.e) =
        project_edge(mesh, edge, edge_basis, control, data.edge_exactness());
  }
  return solve_state(mesh, data, control_coeffs);
}

FormSolution solve_adjoint(const Mesh& mesh, const ProblemData& data,
                           const VecX& y_coeffs) {
  FormSystem system = assemble_form_matrix(mesh, data, FormKind::adjoint);
  const FormLayout& layout = system.layout;
  if (y_coeffs.size() != static_cast<long>(layout.m) * layout.n_elements) {
    throw std::invalid_argument("state coefficient vector length mismatch");
  }

  const SimplexBasis elem_basis(data.degree);
  const EdgeBasis edge_basis(data.degree);
  VecX rhs = VecX::Zero(layout.size);
  for (int t = 0; t < mesh.n_elements(); ++t) {
    const ElementContext ctx =
        element_context(mesh, data, t, elem_basis, edge_basis);
    // -(y_h - y_d, w2) = -(mass y_h)_i + (y_d, w2).
    rhs.segment(layout.y_offset(t), layout.m) +=
        local_adjoint_load(ctx, data) -
        local_mass(ctx) * y_coeffs.segment(static_cast<long>(layout.m) * t, layout.m);
  }

  FormSolution solution;
  solution.layout = layout;
  solution.coeffs = factor_solve(system.matrix, rhs);
  return solution;
}

// ------------------------------------------------------------------------
// Optimality residual
// ------------------------------------------------------------------------

OptimalityResidual optimality_residual(const Mesh& mesh, const ProblemData& data,
                                       const Solution& solution) {
  const DofLayout& layout = solution.layout;
  const SimplexBasis elem_basis(data.degree);
  const EdgeBasis edge_basis(data.degree);

  double residual_sq = 0.0;
  double u_sq = 0.0, pn_sq = 0.0, tz_sq = 0.0;
  for (int t = 0; t < mesh.n_elements(); ++t) {
    bool touches_boundary = false;
    for (int le = 0; le < 3; ++le) {
      touches_boundary |= mesh.edge_on_boundary(mesh.element_edges[t][le]);
    }
    if (!touches_boundary) continue;

    const ElementContext ctx =
        element_context(mesh, data, t, elem_basis, edge_basis);
    const VecX p = solution.p(t);
    const VecX z = solution.z(t);
    for (int le = 0; le < 3; ++le) {
      const EdgeContext& ec = ctx.edges[le];
      if (ec.interior) continue;
      const int e = layout.e, m = layout.m;
      VecX proj_pn = VecX::Zero(e), proj_tz = VecX::Zero(e);
      for (int q = 0; q < static_cast<int>(ec.w.size()); ++q) {
        const double pn = ec.normal(0) * ec.elem_vals.row(q).dot(p.head(m)) +
                          ec.normal(1) * ec.elem_vals.row(q).dot(p.tail(m));
        const double zv = ec.elem_vals.row(q).dot(z);
        proj_pn += ec.w(q) * pn * ec.edge_vals.row(q).transpose();
        proj_tz += ec.w(q) * ec.tau2(q) * zv * ec.edge_vals.row(q).transpose();
      }
      const VecX gu = data.gamma * solution.u(ec.edge);
      residual_sq += (gu + proj_pn + proj_tz).squaredNorm();
      u_sq += gu.squaredNorm();
      pn_sq += proj_pn.squaredNorm();
      tz_sq += proj_tz.squaredNorm();
    }
  }

  OptimalityResidual result;
  result.absolute = std::sqrt(residual_sq);
  result.scale = std::sqrt(u_sq) + std::sqrt(pn_sq) + std::sqrt(tz_sq);
  return result;
}

// ------------------------------------------------------------------------
// Extraction helpers
// ------------------------------------------------------------------------

VecX extract_state_triple(const Solution& solution, const FormLayout& layout) {
  VecX triple = VecX::Zero(layout.size);
  for (long t = 0; t < layout.n_elements; ++t) {
    triple.segment(layout.q_offset(t), 2 * layout.m) = solution.q(t);
    triple.segment(layout.y_offset(t), layout.m) = solution.y(t);
  }
  for (int edge = 0; edge < static_cast<int>(layout.interior_rank.size()); ++edge) {
    if (layout.interior_rank[edge] < 0) continue;
    triple.segment(layout.trace_offset_of(edge), layout.e) = solution.yhat(edge);
  }
  return triple;
}

VecX extract_adjoint_triple(const Solution& solution, const FormLayout& layout) {
  VecX triple = VecX::Zero(layout.size);
  for (long t = 0; t < layout.n_elements; ++t) {
    triple.segment(layout.q_offset(t), 2 * layout.m) = solution.p(t);
    triple.segment(layout.y_offset(t), layout.m) = solution.z(t);
  }
  for (int edge = 0; edge < static_cast<int>(layout.interior_rank.size()); ++edge) {
    if (layout.interior_rank[edge] < 0) continue;
    triple.segment(layout.trace_offset_of(edge), layout.e) = solution.zhat(edge);
  }
  return triple;
}

VecX extract_control(const Solution& solution) {
  const DofLayout& layout = solution.layout;
  return solution.coeffs.tail(layout.e * layout.n_boundary_edges);
}

VecX extract_state_coeffs(const Solution& solution) {
  const DofLayout& layout = solution.layout;
  VecX coeffs(layout.m * layout.n_elements);
  for (long t = 0; t < layout.n_elements; ++t) {
    coeffs.segment(layout.m * t, layout.m) = solution.y(t);
  }
  return coeffs;
}

} // namespace hdgbc
