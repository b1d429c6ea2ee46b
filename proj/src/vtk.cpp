#include "hdgbc/vtk.hpp"

#include "hdgbc/basis.hpp"
#include "hdgbc/projections.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace hdgbc {

namespace {

struct FilePtr {
  std::FILE* f;
  explicit FilePtr(const std::string& path) : f(std::fopen(path.c_str(), "wb")) {
    if (!f) throw std::runtime_error("cannot open " + path + " for writing");
  }
  ~FilePtr() {
    if (f) std::fclose(f);
  }
  FilePtr(const FilePtr&) = delete;
  FilePtr& operator=(const FilePtr&) = delete;
};

void write_header(std::FILE* f, const char* title) {
  std::fprintf(f, "# vtk DataFile Version 3.0\n%s\nASCII\nDATASET UNSTRUCTURED_GRID\n", title);
}

void write_point(std::FILE* f, const Vec2& x) {
  std::fprintf(f, "%.9g %.9g 0\n", x[0], x[1]);
}

void write_scalars(std::FILE* f, const char* name) {
  std::fprintf(f, "SCALARS %s double 1\nLOOKUP_TABLE default\n", name);
}

} // namespace

void export_element_field_vtk(const Mesh& mesh, int degree,
                              const ElementCoeffs& coeffs,
                              const std::string& field_name,
                              const std::string& path) {
  SimplexBasis ref(degree);
  FilePtr out(path);
  std::FILE* f = out.f;
  write_header(f, "element field");
  const int nt = mesh.n_elements();

  if (degree == 0) {
    std::fprintf(f, "POINTS %d double\n", mesh.n_vertices());
    for (const Vec2& v : mesh.vertices) write_point(f, v);
    std::fprintf(f, "CELLS %d %d\n", nt, 4 * nt);
    for (const auto& el : mesh.elements)
      std::fprintf(f, "3 %d %d %d\n", el[0], el[1], el[2]);
    std::fprintf(f, "CELL_TYPES %d\n", nt);
    for (int t = 0; t < nt; ++t) std::fprintf(f, "5\n");
    std::fprintf(f, "CELL_DATA %d\n", nt);
    write_scalars(f, field_name.c_str());
    for (int t = 0; t < nt; ++t) {
      Vec2 centroid = Vec2::Zero();
      for (int v : mesh.elements[t]) centroid += mesh.vertices[v] / 3.0;
      ElementBasis basis = element_basis(ref, mesh, t);
      std::fprintf(f, "%.9g\n", basis.eval(centroid).dot(coeffs(t)));
    }
    return;
  }

  std::fprintf(f, "POINTS %d double\n", 3 * nt);
  for (const auto& el : mesh.elements)
    for (int v : el) write_point(f, mesh.vertices[v]);
  std::fprintf(f, "CELLS %d %d\n", nt, 4 * nt);
  for (int t = 0; t < nt; ++t)
    std::fprintf(f, "3 %d %d %d\n", 3 * t, 3 * t + 1, 3 * t + 2);
  std::fprintf(f, "CELL_TYPES %d\n", nt);
  for (int t = 0; t < nt; ++t) std::fprintf(f, "5\n");
  std::fprintf(f, "POINT_DATA %d\n", 3 * nt);
  write_scalars(f, field_name.c_str());
  for (int t = 0; t < nt; ++t) {
    ElementBasis basis = element_basis(ref, mesh, t);
    VecX c = coeffs(t);
    for (int v : mesh.elements[t])
      std::fprintf(f, "%.9g\n", basis.eval(mesh.vertices[v]).dot(c));
  }
}

void export_boundary_field_vtk(const Mesh& mesh, int degree,
                               const EdgeCoeffs& coeffs,
                               const std::string& field_name,
                               const std::string& path) {
  EdgeBasis basis(degree);
  FilePtr out(path);
  std::FILE* f = out.f;
  write_header(f, "boundary field");
  const int nb = mesh.n_boundary_edges();

  std::fprintf(f, "POINTS %d double\n", 2 * nb);
  for (int edge = 0; edge < mesh.n_edges(); ++edge) {
    if (!mesh.edge_on_boundary(edge)) continue;
    write_point(f, mesh.vertices[mesh.edges[edge][0]]);
    write_point(f, mesh.vertices[mesh.edges[edge][1]]);
  }
  std::fprintf(f, "CELLS %d %d\n", nb, 3 * nb);
  for (int r = 0; r < nb; ++r) std::fprintf(f, "2 %d %d\n", 2 * r, 2 * r + 1);
  std::fprintf(f, "CELL_TYPES %d\n", nb);
  for (int r = 0; r < nb; ++r) std::fprintf(f, "3\n");

  if (degree == 0) {
    std::fprintf(f, "CELL_DATA %d\n", nb);
    write_scalars(f, field_name.c_str());
    for (int edge = 0; edge < mesh.n_edges(); ++edge) {
      if (!mesh.edge_on_boundary(edge)) continue;
      double scale = 1.0 / std::sqrt(edge_length(mesh, edge));
      std::fprintf(f, "%.9g\n", basis.eval(0.5).dot(coeffs(edge)) * scale);
    }
    return;
  }

  std::fprintf(f, "POINT_DATA %d\n", 2 * nb);
  write_scalars(f, field_name.c_str());
  for (int edge = 0; edge < mesh.n_edges(); ++edge) {
    if (!mesh.edge_on_boundary(edge)) continue;
    double scale = 1.0 / std::sqrt(edge_length(mesh, edge));
    VecX c = coeffs(edge);
    std::fprintf(f, "%.9g\n%.9g\n", basis.eval(0.0).dot(c) * scale,
                 basis.eval(1.0).dot(c) * scale);
  }
}

} // namespace hdgbc
