#ifndef HDGBC_DOF_LAYOUT_HPP
#define HDGBC_DOF_LAYOUT_HPP

#include "hdgbc/basis.hpp"
#include "hdgbc/mesh.hpp"

#include <vector>

namespace hdgbc {

/// Unknown ordering of the coupled optimality system:
///   per element: q (2m), y (m), p (2m), z (m),
///   then per interior edge: yhat (e), zhat (e),
///   then per boundary edge: u (e),
/// with m the element space dimension and e = degree+1 the edge space
/// dimension. Traces on boundary edges carry no unknowns (they vanish for
/// the state and adjoint; the control u replaces them in the data).
/// Keeping every trace and control unknown in one contiguous tail makes the
/// statically condensed system a suffix of this layout.
struct DofLayout {
  int degree = 0;
  int m = 0; // element space dimension
  int e = 0; // edge space dimension
  long n_elements = 0;
  long n_interior_edges = 0;
  long n_boundary_edges = 0;
  long elem_stride = 0;    // 6m
  long trace_offset = 0;   // first interior-edge trace unknown
  long control_offset = 0; // first control unknown
  long size = 0;
  std::vector<int> interior_rank; // edge id -> dense rank or -1
  std::vector<int> boundary_rank; // edge id -> dense rank or -1

  long q_offset(long element) const { return element * elem_stride; }
  long y_offset(long element) const { return element * elem_stride + 2 * m; }
  long p_offset(long element) const { return element * elem_stride + 3 * m; }
  long z_offset(long element) const { return element * elem_stride + 5 * m; }
  long yhat_offset(int edge) const {
    return trace_offset + 2L * e * interior_rank[edge];
  }
  long zhat_offset(int edge) const { return yhat_offset(edge) + e; }
  long u_offset(int edge) const {
    return control_offset + static_cast<long>(e) * boundary_rank[edge];
  }
  long n_condensed() const { return size - trace_offset; }
};

DofLayout coupled_layout(const Mesh& mesh, int degree);

/// Unknown ordering for a single hybridized form (state or adjoint alone):
/// per element q (2m), y (m), then yhat (e) per interior edge.
struct FormLayout {
  int degree = 0;
  int m = 0;
  int e = 0;
  long n_elements = 0;
  long n_interior_edges = 0;
  long n_boundary_edges = 0;
  long elem_stride = 0; // 3m
  long trace_offset = 0;
  long size = 0;
  std::vector<int> interior_rank;
  std::vector<int> boundary_rank; // packing order of boundary-edge data

  long q_offset(long element) const { return element * elem_stride; }
  long y_offset(long element) const { return element * elem_stride + 2 * m; }
  long trace_offset_of(int edge) const {
    return trace_offset + static_cast<long>(e) * interior_rank[edge];
  }
};

FormLayout form_layout(const Mesh& mesh, int degree);

} // namespace hdgbc

#endif
