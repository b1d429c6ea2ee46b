#include "hdgbc/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

namespace hdgbc {

namespace {

void check_element_id(const Mesh& mesh, int element) {
  if (element < 0 || element >= mesh.n_elements()) {
    throw std::out_of_range("element id " + std::to_string(element) +
                            " out of range [0, " +
                            std::to_string(mesh.n_elements()) + ")");
  }
}

void check_edge_id(const Mesh& mesh, int edge) {
  if (edge < 0 || edge >= mesh.n_edges()) {
    throw std::out_of_range("edge id " + std::to_string(edge) +
                            " out of range [0, " + std::to_string(mesh.n_edges()) +
                            ")");
  }
}

} // namespace

bool Mesh::edge_on_boundary(int edge) const {
  if (edge < 0 || edge >= n_edges()) {
    throw std::out_of_range("edge id " + std::to_string(edge) +
                            " out of range [0, " + std::to_string(n_edges()) + ")");
  }
  return edge_elements[edge][1] < 0;
}

int Mesh::n_boundary_edges() const {
  int count = 0;
  for (int e = 0; e < n_edges(); ++e) count += edge_on_boundary(e) ? 1 : 0;
  return count;
}

Mesh build_uniform_mesh(int level) {
  if (level < 0 || level > max_mesh_level) {
    throw config_error("mesh level " + std::to_string(level) +
                       " outside supported range [0, " +
                       std::to_string(max_mesh_level) + "]");
  }

  Mesh mesh;
  mesh.level = level;
  const int n = 1 << level;
  const double h = 1.0 / n;

  mesh.vertices.reserve((n + 1) * (n + 1));
  mesh.vertex_on_boundary.reserve((n + 1) * (n + 1));
  for (int j = 0; j <= n; ++j) {
    for (int i = 0; i <= n; ++i) {
      mesh.vertices.emplace_back(i * h, j * h);
      mesh.vertex_on_boundary.push_back(i == 0 || i == n || j == 0 || j == n);
    }
  }

  const auto vid = [n](int i, int j) { return j * (n + 1) + i; };

  // Each square is split along its lower-left to upper-right diagonal; the
  // resulting family is nested under level increments.
  mesh.elements.reserve(2 * n * n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const int ll = vid(i, j), lr = vid(i + 1, j);
      const int ul = vid(i, j + 1), ur = vid(i + 1, j + 1);
      mesh.elements.push_back({ll, lr, ur});
      mesh.elements.push_back({ll, ur, ul});
    }
  }

  // Global edge ids are lexicographic in the sorted vertex pair, which a
  // key-ordered map delivers directly.
  std::map<std::array<int, 2>, int> edge_ids;
  for (int t = 0; t < mesh.n_elements(); ++t) {
    for (int le = 0; le < 3; ++le) {
      const int a = mesh.elements[t][le];
      const int b = mesh.elements[t][(le + 1) % 3];
      edge_ids.try_emplace({std::min(a, b), std::max(a, b)}, -1);
    }
  }
  mesh.edges.reserve(edge_ids.size());
  for (auto& [key, id] : edge_ids) {
    id = mesh.n_edges();
    mesh.edges.push_back(key);
  }
  mesh.edge_elements.assign(edge_ids.size(), {-1, -1});
  mesh.element_edges.resize(mesh.elements.size());
  for (int t = 0; t < mesh.n_elements(); ++t) {
    for (int le = 0; le < 3; ++le) {
      const int a = mesh.elements[t][le];
      const int b = mesh.elements[t][(le + 1) % 3];
      const int id = edge_ids.at({std::min(a, b), std::max(a, b)});
      auto& inc = mesh.edge_elements[id];
      (inc[0] < 0 ? inc[0] : inc[1]) = t;
      mesh.element_edges[t][le] = id;
    }
  }
  return mesh;
}

ElementMap element_map(const Mesh& mesh, int element) {
  const auto v = element_vertices(mesh, element);
  ElementMap map;
  map.v0 = v[0];
  map.jac.col(0) = v[1] - v[0];
  map.jac.col(1) = v[2] - v[0];
  map.det_jac = map.jac.determinant();
  map.inv_jac << map.jac(1, 1), -map.jac(0, 1), -map.jac(1, 0), map.jac(0, 0);
  map.inv_jac /= map.det_jac;
  return map;
}

std::array<Vec2, 3> element_vertices(const Mesh& mesh, int element) {
  check_element_id(mesh, element);
  const auto& ids = mesh.elements[element];
  return {mesh.vertices[ids[0]], mesh.vertices[ids[1]], mesh.vertices[ids[2]]};
}

double element_area(const Mesh& mesh, int element) {
  return 0.5 * element_map(mesh, element).det_jac;
}

double element_diameter(const Mesh& mesh, int element) {
  const auto v = element_vertices(mesh, element);
  return std::max({(v[1] - v[0]).norm(), (v[2] - v[1]).norm(), (v[0] - v[2]).norm()});
}

double edge_length(const Mesh& mesh, int edge) {
  check_edge_id(mesh, edge);
  const auto& e = mesh.edges[edge];
  return (mesh.vertices[e[1]] - mesh.vertices[e[0]]).norm();
}

Vec2 edge_point(const Mesh& mesh, int edge, double s) {
  check_edge_id(mesh, edge);
  const auto& e = mesh.edges[edge];
  return mesh.vertices[e[0]] + s * (mesh.vertices[e[1]] - mesh.vertices[e[0]]);
}

Vec2 outward_normal(const Mesh& mesh, int element, int local_edge) {
  check_element_id(mesh, element);
  if (local_edge < 0 || local_edge > 2) {
    throw std::out_of_range("local edge index " + std::to_string(local_edge));
  }
  const auto& ids = mesh.elements[element];
  const Vec2 d = mesh.vertices[ids[(local_edge + 1) % 3]] -
                 mesh.vertices[ids[local_edge]];
  // For a CCW element the right-hand normal of the directed edge points out.
  return Vec2(d(1), -d(0)).normalized();
}

int local_edge_index(const Mesh& mesh, int element, int edge) {
  check_element_id(mesh, element);
  check_edge_id(mesh, edge);
  for (int le = 0; le < 3; ++le) {
    if (mesh.element_edges[element][le] == edge) return le;
  }
  throw std::out_of_range("edge " + std::to_string(edge) +
                          " is not an edge of element " + std::to_string(element));
}

MeshStats mesh_statistics(const Mesh& mesh) {
  MeshStats stats;
  stats.n_vertices = mesh.n_vertices();
  stats.n_elements = mesh.n_elements();
  stats.n_edges = mesh.n_edges();
  stats.n_boundary_edges = mesh.n_boundary_edges();
  stats.h_min = std::numeric_limits<double>::max();
  stats.h_max = 0.0;
  for (int t = 0; t < mesh.n_elements(); ++t) {
    const double h = element_diameter(mesh, t);
    stats.h_min = std::min(stats.h_min, h);
    stats.h_max = std::max(stats.h_max, h);
  }
  return stats;
}

} // namespace hdgbc
