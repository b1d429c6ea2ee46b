#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hdgbc/mesh.hpp"

#include <algorithm>
#include <cmath>

using namespace hdgbc;

TEST_CASE("entity counts follow the structured pattern") {
  struct Row { int level, nv, nt, ne, nb; };
  const Row rows[] = {{0, 4, 2, 5, 4}, {1, 9, 8, 16, 8}, {2, 25, 32, 56, 16},
                      {3, 81, 128, 208, 32}};
  for (const Row& r : rows) {
    Mesh mesh = build_uniform_mesh(r.level);
    CHECK(mesh.n_vertices() == r.nv);
    CHECK(mesh.n_elements() == r.nt);
    CHECK(mesh.n_edges() == r.ne);
    CHECK(mesh.n_boundary_edges() == r.nb);
    MeshStats st = mesh_statistics(mesh);
    CHECK(st.n_vertices == r.nv);
    CHECK(st.n_elements == r.nt);
    CHECK(st.n_edges == r.ne);
    CHECK(st.n_boundary_edges == r.nb);
  }
}

TEST_CASE("levels outside the supported range are rejected") {
  CHECK_THROWS_AS(build_uniform_mesh(-1), config_error);
  CHECK_THROWS_AS(build_uniform_mesh(max_mesh_level + 1), config_error);
}

TEST_CASE("elements are counterclockwise with positive maps") {
  Mesh mesh = build_uniform_mesh(2);
  for (int t = 0; t < mesh.n_elements(); ++t) {
    ElementMap map = element_map(mesh, t);
    CHECK(map.det_jac > 0.0);
    CHECK(map.det_jac == doctest::Approx(2.0 * element_area(mesh, t)));
    // the map and its stored inverse agree
    Vec2 xhat(0.3, 0.2);
    Vec2 back = map.to_reference(map.to_physical(xhat));
    CHECK((back - xhat).norm() < 1e-14);
  }
}

TEST_CASE("element diameters are uniform") {
  for (int level : {1, 2, 3}) {
    Mesh mesh = build_uniform_mesh(level);
    const double h = std::sqrt(2.0) / (1 << level);
    for (int t = 0; t < mesh.n_elements(); ++t)
      CHECK(element_diameter(mesh, t) == doctest::Approx(h).epsilon(1e-14));
    MeshStats st = mesh_statistics(mesh);
    CHECK(st.h_min == doctest::Approx(h));
    CHECK(st.h_max == doctest::Approx(h));
  }
}

TEST_CASE("edges are ordered lexicographically by vertex pair") {
  Mesh mesh = build_uniform_mesh(2);
  for (int e = 0; e < mesh.n_edges(); ++e) {
    CHECK(mesh.edges[e][0] < mesh.edges[e][1]);
    if (e > 0) {
      const auto& a = mesh.edges[e - 1];
      const auto& b = mesh.edges[e];
      CHECK((a[0] < b[0] || (a[0] == b[0] && a[1] < b[1])));
    }
  }
  // the first edge joins the two lowest-numbered vertices
  CHECK(mesh.edges[0][0] == 0);
  CHECK(mesh.edges[0][1] == 1);
}

TEST_CASE("edge parametrization starts at the smaller vertex id") {
  Mesh mesh = build_uniform_mesh(1);
  for (int e = 0; e < mesh.n_edges(); ++e) {
    Vec2 a = mesh.vertices[mesh.edges[e][0]];
    Vec2 b = mesh.vertices[mesh.edges[e][1]];
    CHECK((edge_point(mesh, e, 0.0) - a).norm() < 1e-15);
    CHECK((edge_point(mesh, e, 1.0) - b).norm() < 1e-15);
    CHECK(edge_length(mesh, e) == doctest::Approx((b - a).norm()));
  }
}

TEST_CASE("local edges join consecutive vertices and normals point outward") {
  Mesh mesh = build_uniform_mesh(2);
  for (int t = 0; t < mesh.n_elements(); ++t) {
    auto vs = element_vertices(mesh, t);
    Vec2 centroid = (vs[0] + vs[1] + vs[2]) / 3.0;
    for (int le = 0; le < 3; ++le) {
      int e = mesh.element_edges[t][le];
      Vec2 mid = 0.5 * (vs[le] + vs[(le + 1) % 3]);
      CHECK((edge_point(mesh, e, 0.5) - mid).norm() < 1e-14);
      Vec2 n = outward_normal(mesh, t, le);
      CHECK(n.norm() == doctest::Approx(1.0).epsilon(1e-14));
      CHECK(n.dot(mid - centroid) > 0.0);
      CHECK(local_edge_index(mesh, t, e) == le);
    }
  }
}

TEST_CASE("edge and element incidence agree") {
  Mesh mesh = build_uniform_mesh(2);
  std::vector<int> incidence_count(mesh.n_edges(), 0);
  for (int t = 0; t < mesh.n_elements(); ++t)
    for (int le = 0; le < 3; ++le) {
      int e = mesh.element_edges[t][le];
      ++incidence_count[e];
      const auto& inc = mesh.edge_elements[e];
      CHECK((inc[0] == t || inc[1] == t));
    }
  for (int e = 0; e < mesh.n_edges(); ++e) {
    const auto& inc = mesh.edge_elements[e];
    if (mesh.edge_on_boundary(e)) {
      CHECK(incidence_count[e] == 1);
      CHECK(inc[0] >= 0);
      CHECK(inc[1] == -1);
    } else {
      CHECK(incidence_count[e] == 2);
      CHECK(inc[0] >= 0);
      CHECK(inc[1] >= 0);
      CHECK(inc[0] != inc[1]);
    }
  }
}

TEST_CASE("boundary flags match the geometry") {
  Mesh mesh = build_uniform_mesh(2);
  auto on_rim = [](const Vec2& x) {
    return x.x() < 1e-14 || x.x() > 1 - 1e-14 || x.y() < 1e-14 || x.y() > 1 - 1e-14;
  };
  for (int v = 0; v < mesh.n_vertices(); ++v)
    CHECK(mesh.vertex_on_boundary[v] == on_rim(mesh.vertices[v]));
  for (int e = 0; e < mesh.n_edges(); ++e)
    CHECK(mesh.edge_on_boundary(e) == on_rim(edge_point(mesh, e, 0.5)));
}

TEST_CASE("consecutive levels are nested") {
  Mesh coarse = build_uniform_mesh(1);
  Mesh fine = build_uniform_mesh(2);
  // every coarse vertex appears among the fine vertices
  for (const Vec2& v : coarse.vertices) {
    bool found = false;
    for (const Vec2& w : fine.vertices)
      if ((v - w).norm() < 1e-14) { found = true; break; }
    CHECK(found);
  }
  // each coarse element is tiled by fine elements of a quarter of its area
  for (int T = 0; T < coarse.n_elements(); ++T) {
    ElementMap map = element_map(coarse, T);
    double covered = 0.0;
    for (int t = 0; t < fine.n_elements(); ++t) {
      auto vs = element_vertices(fine, t);
      Vec2 c = map.to_reference((vs[0] + vs[1] + vs[2]) / 3.0);
      if (c.x() > -1e-12 && c.y() > -1e-12 && c.x() + c.y() < 1 + 1e-12)
        covered += element_area(fine, t);
    }
    CHECK(covered == doctest::Approx(element_area(coarse, T)).epsilon(1e-13));
  }
}

TEST_CASE("entity queries reject bad ids") {
  Mesh mesh = build_uniform_mesh(1);
  CHECK_THROWS_AS(element_map(mesh, -1), std::out_of_range);
  CHECK_THROWS_AS(element_map(mesh, mesh.n_elements()), std::out_of_range);
  CHECK_THROWS_AS(edge_length(mesh, mesh.n_edges()), std::out_of_range);
  CHECK_THROWS_AS(local_edge_index(mesh, 0, mesh.n_edges() - 1), std::out_of_range);
}
