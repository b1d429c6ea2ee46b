#ifndef HDGBC_MESH_HPP
#define HDGBC_MESH_HPP

#include "hdgbc/common.hpp"

#include <array>
#include <vector>

namespace hdgbc {

constexpr int max_mesh_level = 12;

/// Conforming triangulation of the unit square: 2^level x 2^level squares,
/// each split along the lower-left to upper-right diagonal. Meshes of
/// consecutive levels are nested, which the reference-solution comparison
/// relies on.
///
/// Conventions: element vertices are CCW; local edge j of an element joins
/// local vertices j and (j+1)%3; a global edge stores its vertex pair with
/// the smaller id first and is parametrized from that vertex.
struct Mesh {
  int level = 0;

  std::vector<Vec2> vertices;
  std::vector<bool> vertex_on_boundary;
  std::vector<std::array<int, 3>> elements;      // vertex ids, CCW
  std::vector<std::array<int, 2>> edges;         // vertex ids, ascending
  std::vector<std::array<int, 3>> element_edges; // global edge per local edge
  std::vector<std::array<int, 2>> edge_elements; // incident elements, -1 if none

  int n_vertices() const { return static_cast<int>(vertices.size()); }
  int n_elements() const { return static_cast<int>(elements.size()); }
  int n_edges() const { return static_cast<int>(edges.size()); }
  bool edge_on_boundary(int edge) const;
  int n_boundary_edges() const;
};

Mesh build_uniform_mesh(int level);

/// Affine map from the reference triangle onto one element.
struct ElementMap {
  Vec2 v0;
  Eigen::Matrix2d jac;       // [v1-v0 | v2-v0]
  Eigen::Matrix2d inv_jac;
  double det_jac = 0.0;      // 2 |T|, positive

  Vec2 to_physical(const Vec2& xhat) const { return v0 + jac * xhat; }
  Vec2 to_reference(const Vec2& x) const { return inv_jac * (x - v0); }
};

ElementMap element_map(const Mesh& mesh, int element);

std::array<Vec2, 3> element_vertices(const Mesh& mesh, int element);
double element_area(const Mesh& mesh, int element);
/// Element diameter, the length of the longest edge.
double element_diameter(const Mesh& mesh, int element);

double edge_length(const Mesh& mesh, int edge);
/// Point on an edge at parameter s in [0,1], measured from the vertex with
/// the smaller id.
Vec2 edge_point(const Mesh& mesh, int edge, double s);
/// Unit normal on local edge of an element, pointing out of the element.
Vec2 outward_normal(const Mesh& mesh, int element, int local_edge);
/// Local index of the given edge within the element.
int local_edge_index(const Mesh& mesh, int element, int edge);

struct MeshStats {
  int n_vertices = 0;
  int n_elements = 0;
  int n_edges = 0;
  int n_boundary_edges = 0;
  double h_min = 0.0;
  double h_max = 0.0;
};

MeshStats mesh_statistics(const Mesh& mesh);

} // namespace hdgbc

#endif
