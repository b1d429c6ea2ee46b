#ifndef HDGBC_ASSEMBLY_HPP
#define HDGBC_ASSEMBLY_HPP

#include "hdgbc/local_ops.hpp"
#include "hdgbc/sparse.hpp"

namespace hdgbc {

/// The full coupled optimality system over the DofLayout ordering:
/// state and adjoint flux/scalar equations per element, trace equations per
/// interior edge, first-order optimality rows per boundary edge.
struct GlobalSystem {
  DofLayout layout;
  SparseMat matrix;
  VecX rhs;
  ValidationReport validation;
};

GlobalSystem assemble_global(const Mesh& mesh, const ProblemData& data);

/// One hybridized form (state or adjoint) assembled alone over the
/// FormLayout unknowns (q, y, interior traces). The state form tested
/// against the adjoint form's unknowns is the transpose of the adjoint form,
/// which assemble_form_matrix makes checkable at the matrix level.
struct FormSystem {
  FormLayout layout;
  SparseMat matrix;
};

FormSystem assemble_form_matrix(const Mesh& mesh, const ProblemData& data,
                                FormKind kind);

} // namespace hdgbc

#endif
