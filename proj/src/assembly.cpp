#include "hdgbc/assembly.hpp"

namespace hdgbc {

namespace {

// Global column (and row) ids of one element's local state unknowns
// [q, y, traces]; -1 marks dropped slots (boundary traces).
std::vector<long> state_index_map(const DofLayout& layout, const LocalBlocks& blocks,
                                  long element) {
  std::vector<long> map(blocks.size(), -1);
  for (int i = 0; i < 2 * blocks.m; ++i) map[i] = layout.q_offset(element) + i;
  for (int i = 0; i < blocks.m; ++i)
    map[2 * blocks.m + i] = layout.y_offset(element) + i;
  for (int le = 0; le < 3; ++le) {
    if (!blocks.edge_interior[le]) continue;
    for (int i = 0; i < blocks.e; ++i)
      map[blocks.trace_index(le) + i] = layout.yhat_offset(blocks.edge_ids[le]) + i;
  }
  return map;
}

std::vector<long> adjoint_index_map(const DofLayout& layout, const LocalBlocks& blocks,
                                    long element) {
  std::vector<long> map(blocks.size(), -1);
  for (int i = 0; i < 2 * blocks.m; ++i) map[i] = layout.p_offset(element) + i;
  for (int i = 0; i < blocks.m; ++i)
    map[2 * blocks.m + i] = layout.z_offset(element) + i;
  for (int le = 0; le < 3; ++le) {
    if (!blocks.edge_interior[le]) continue;
    for (int i = 0; i < blocks.e; ++i)
      map[blocks.trace_index(le) + i] = layout.zhat_offset(blocks.edge_ids[le]) + i;
  }
  return map;
}

void insert_mapped(std::vector<Triplet>& triplets, const MatX& mat,
                   const std::vector<long>& map) {
  for (int i = 0; i < mat.rows(); ++i) {
    if (map[i] < 0) continue;
    for (int j = 0; j < mat.cols(); ++j) {
      if (map[j] < 0 || mat(i, j) == 0.0) continue;
      triplets.emplace_back(map[i], map[j], mat(i, j));
    }
  }
}

} // namespace

GlobalSystem assemble_global(const Mesh& mesh, const ProblemData& data) {
  GlobalSystem system;
  system.validation = validate(data, mesh);
  system.layout = coupled_layout(mesh, data.degree);
  const DofLayout& layout = system.layout;

  const SimplexBasis elem_basis(data.degree);
  const EdgeBasis edge_basis(data.degree);

  std::vector<Triplet> triplets;
  const long per_element = 2L * (3 * layout.m + 3 * layout.e) *
                           (3 * layout.m + 3 * layout.e);
  triplets.reserve(per_element * mesh.n_elements());
  system.rhs = VecX::Zero(layout.size);

  for (int t = 0; t < mesh.n_elements(); ++t) {
    const ElementContext ctx =
        element_context(mesh, data, t, elem_basis, edge_basis);

    const LocalBlocks b1 = local_form(ctx, data, FormKind::state);
    const LocalBlocks b2 = local_form(ctx, data, FormKind::adjoint);
    insert_mapped(triplets, b1.mat, state_index_map(layout, b1, t));
    insert_mapped(triplets, b2.mat, adjoint_index_map(layout, b2, t));

    // State feeds the adjoint equation through the misfit: +(y, w2).
    const MatX mass = local_mass(ctx);
    for (int i = 0; i < layout.m; ++i) {
      for (int j = 0; j < layout.m; ++j) {
        triplets.emplace_back(layout.z_offset(t) + i, layout.y_offset(t) + j,
                              mass(i, j));
      }
    }

    system.rhs.segment(layout.y_offset(t), layout.m) +=
        local_state_load(ctx, data);
    system.rhs.segment(layout.z_offset(t), layout.m) +=
        local_adjoint_load(ctx, data);

    for (int le = 0; le < 3; ++le) {
      if (ctx.edges[le].interior) continue;
      const int edge = ctx.edges[le].edge;

      // Control coupling into the state equations; the blocks carry the
      // right-hand-side sign, hence the minus.
      const MatX ccols = local_control_columns(ctx, le);
      for (int i = 0; i < 3 * layout.m; ++i) {
        const long row = i < 2 * layout.m ? layout.q_offset(t) + i
                                          : layout.y_offset(t) + i - 2 * layout.m;
        for (int j = 0; j < layout.e; ++j) {
          if (ccols(i, j) == 0.0) continue;
          triplets.emplace_back(row, layout.u_offset(edge) + j, -ccols(i, j));
        }
      }

      const OptimalityRowBlocks opt = local_optimality_row(ctx, data, le);
      for (int i = 0; i < layout.e; ++i) {
        const long row = layout.u_offset(edge) + i;
        for (int j = 0; j < 2 * layout.m; ++j) {
          triplets.emplace_back(row, layout.p_offset(t) + j, opt.p_cols(i, j));
        }
        for (int j = 0; j < layout.m; ++j) {
          triplets.emplace_back(row, layout.z_offset(t) + j, opt.z_cols(i, j));
        }
        for (int j = 0; j < layout.e; ++j) {
          triplets.emplace_back(row, layout.u_offset(edge) + j, opt.u_cols(i, j));
        }
      }
    }
  }

  system.matrix = finalize(layout.size, triplets);
  return system;
}

FormSystem assemble_form_matrix(const Mesh& mesh, const ProblemData& data,
                                FormKind kind) {
  validate(data, mesh);
  FormSystem system;
  system.layout = form_layout(mesh, data.degree);
  const FormLayout& layout = system.layout;

  const SimplexBasis elem_basis(data.degree);
  const EdgeBasis edge_basis(data.degree);

  std::vector<Triplet> triplets;
  triplets.reserve(static_cast<long>(mesh.n_elements()) *
                   (3 * layout.m + 3 * layout.e) * (3 * layout.m + 3 * layout.e));

  for (int t = 0; t < mesh.n_elements(); ++t) {
    const ElementContext ctx =
        element_context(mesh, data, t, elem_basis, edge_basis);
    const LocalBlocks blocks = local_form(ctx, data, kind);

    std::vector<long> map(blocks.size(), -1);
    for (int i = 0; i < 2 * layout.m; ++i) map[i] = layout.q_offset(t) + i;
    for (int i = 0; i < layout.m; ++i)
      map[2 * layout.m + i] = layout.y_offset(t) + i;
    for (int le = 0; le < 3; ++le) {
      if (!blocks.edge_interior[le]) continue;
      for (int i = 0; i < layout.e; ++i) {
        map[blocks.trace_index(le) + i] =
            layout.trace_offset_of(blocks.edge_ids[le]) + i;
      }
    }
    insert_mapped(triplets, blocks.mat, map);
  }

  system.matrix = finalize(layout.size, triplets);
  return system;
}

} // namespace hdgbc
