#include "hdgbc/reference.hpp"

#include "hdgbc/basis.hpp"
#include "hdgbc/projections.hpp"
#include "hdgbc/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace hdgbc {

namespace {

int clamp_index(double t, int n) {
  int i = static_cast<int>(std::floor(t));
  return std::min(std::max(i, 0), n - 1);
}

} // namespace

int containing_element(const Mesh& mesh, const Vec2& x) {
  int n = 1 << mesh.level;
  int i = clamp_index(x[0] * n, n);
  int j = clamp_index(x[1] * n, n);
  double lx = x[0] * n - i;
  double ly = x[1] * n - j;
  return 2 * (j * n + i) + (ly > lx ? 1 : 0);
}

int containing_boundary_edge(const Mesh& mesh, const Vec2& x) {
  int n = 1 << mesh.level;
  const double tol = 1e-12;
  if (x[1] < tol) {
    int i = clamp_index(x[0] * n, n);
    return mesh.element_edges[2 * i][0];
  }
  if (x[0] > 1.0 - tol) {
    int j = clamp_index(x[1] * n, n);
    return mesh.element_edges[2 * (j * n + n - 1)][1];
  }
  if (x[1] > 1.0 - tol) {
    int i = clamp_index(x[0] * n, n);
    return mesh.element_edges[2 * ((n - 1) * n + i) + 1][1];
  }
  if (x[0] < tol) {
    int j = clamp_index(x[1] * n, n);
    return mesh.element_edges[2 * (j * n) + 1][2];
  }
  throw std::out_of_range("containing_boundary_edge: point is not on the boundary");
}

double nested_l2_distance_domain(const Mesh& coarse, const ElementCoeffs& coarse_coeffs,
                                 const Mesh& fine, const ElementCoeffs& fine_coeffs,
                                 int degree) {
  SimplexBasis ref(degree);
  const QuadratureRule& quad = triangle_quadrature(2 * degree + 2);

  std::vector<ElementBasis> cbasis;
  std::vector<VecX> ccoeffs;
  cbasis.reserve(coarse.n_elements());
  ccoeffs.reserve(coarse.n_elements());
  for (int t = 0; t < coarse.n_elements(); ++t) {
    cbasis.push_back(element_basis(ref, coarse, t));
    ccoeffs.push_back(coarse_coeffs(t));
  }

  double acc = 0.0;
  for (int t = 0; t < fine.n_elements(); ++t) {
    ElementBasis basis = element_basis(ref, fine, t);
    VecX c = fine_coeffs(t);
    for (int g = 0; g < quad.size(); ++g) {
      Vec2 x = basis.map.to_physical(quad.points.row(g).transpose());
      int parent = containing_element(coarse, x);
      double diff = basis.eval(x).dot(c) - cbasis[parent].eval(x).dot(ccoeffs[parent]);
      acc += quad.weights[g] * basis.map.det_jac * diff * diff;
    }
  }
  return std::sqrt(acc);
}

double nested_l2_distance_boundary(const Mesh& coarse, const EdgeCoeffs& coarse_coeffs,
                                   const Mesh& fine, const EdgeCoeffs& fine_coeffs,
                                   int degree) {
  EdgeBasis basis(degree);
  const QuadratureRule& quad = edge_quadrature(2 * degree + 2);
  double acc = 0.0;
  for (int edge = 0; edge < fine.n_edges(); ++edge) {
    if (!fine.edge_on_boundary(edge)) continue;
    double len = edge_length(fine, edge);
    VecX c = fine_coeffs(edge);
    for (int g = 0; g < quad.size(); ++g) {
      double s = quad.points(g, 0);
      Vec2 x = edge_point(fine, edge, s);
      int parent = containing_boundary_edge(coarse, x);
      const auto& pv = coarse.edges[parent];
      Vec2 pa = coarse.vertices[pv[0]];
      Vec2 pb = coarse.vertices[pv[1]];
      double plen = (pb - pa).norm();
      double ps = (x - pa).dot(pb - pa) / (plen * plen);
      double fval = basis.eval(s).dot(c) / std::sqrt(len);
      double cval = basis.eval(ps).dot(coarse_coeffs(parent)) / std::sqrt(plen);
      acc += quad.weights[g] * len * (fval - cval) * (fval - cval);
    }
  }
  return std::sqrt(acc);
}

} // namespace hdgbc
