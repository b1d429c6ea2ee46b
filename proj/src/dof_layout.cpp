#include "hdgbc/dof_layout.hpp"

namespace hdgbc {

namespace {

void rank_edges(const Mesh& mesh, std::vector<int>& interior, std::vector<int>& boundary,
                long& n_interior, long& n_boundary) {
  interior.assign(mesh.n_edges(), -1);
  boundary.assign(mesh.n_edges(), -1);
  n_interior = 0;
  n_boundary = 0;
  for (int edge = 0; edge < mesh.n_edges(); ++edge) {
    if (mesh.edge_on_boundary(edge)) {
      boundary[edge] = static_cast<int>(n_boundary++);
    } else {
      interior[edge] = static_cast<int>(n_interior++);
    }
  }
}

} // namespace

DofLayout coupled_layout(const Mesh& mesh, int degree) {
  DofLayout layout;
  layout.degree = degree;
  layout.m = simplex_space_dim(degree);
  layout.e = degree + 1;
  layout.n_elements = mesh.n_elements();
  rank_edges(mesh, layout.interior_rank, layout.boundary_rank,
             layout.n_interior_edges, layout.n_boundary_edges);
  layout.elem_stride = 6L * layout.m;
  layout.trace_offset = layout.n_elements * layout.elem_stride;
  layout.control_offset =
      layout.trace_offset + 2L * layout.e * layout.n_interior_edges;
  layout.size = layout.control_offset + layout.e * layout.n_boundary_edges;
  return layout;
}

FormLayout form_layout(const Mesh& mesh, int degree) {
  FormLayout layout;
  layout.degree = degree;
  layout.m = simplex_space_dim(degree);
  layout.e = degree + 1;
  layout.n_elements = mesh.n_elements();
  rank_edges(mesh, layout.interior_rank, layout.boundary_rank,
             layout.n_interior_edges, layout.n_boundary_edges);
  layout.elem_stride = 3L * layout.m;
  layout.trace_offset = layout.n_elements * layout.elem_stride;
  layout.size = layout.trace_offset + layout.e * layout.n_interior_edges;
  return layout;
}

} // namespace hdgbc
