#ifndef HDGBC_VTK_HPP
#define HDGBC_VTK_HPP

#include "hdgbc/norms.hpp"

#include <string>

namespace hdgbc {

/// Legacy ASCII VTK export of a piecewise polynomial. Piecewise constants
/// attach to cells of the shared vertex set; higher degrees duplicate the
/// three corner points per element and attach vertex values, so jumps
/// across edges survive in the output. Output is byte-deterministic.
void export_element_field_vtk(const Mesh& mesh, int degree,
                              const ElementCoeffs& coeffs,
                              const std::string& field_name,
                              const std::string& path);

/// Legacy ASCII VTK export of a boundary-skeleton polynomial as line cells.
void export_boundary_field_vtk(const Mesh& mesh, int degree,
                               const EdgeCoeffs& coeffs,
                               const std::string& field_name,
                               const std::string& path);

} // namespace hdgbc

#endif
