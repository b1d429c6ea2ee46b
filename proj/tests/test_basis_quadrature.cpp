#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hdgbc/basis.hpp"
#include "hdgbc/mesh.hpp"
#include "hdgbc/projections.hpp"
#include "hdgbc/quadrature.hpp"

#include <cmath>

using namespace hdgbc;

namespace {

// exact integral of x^a y^b over the reference triangle: a! b! / (a+b+2)!
double triangle_moment(int a, int b) {
  double v = 1.0;
  for (int i = 1; i <= b; ++i) v *= double(i) / (a + i);
  for (int i = a + b + 1; i <= a + b + 2; ++i) v /= i;
  return v;
}

} // namespace

TEST_CASE("interval rules integrate monomials to their exactness") {
  for (int d = 0; d <= max_quadrature_exactness; ++d) {
    QuadratureRule rule = edge_quadrature(d);
    CHECK(rule.exactness >= d);
    for (int i = 0; i < rule.size(); ++i) {
      CHECK(rule.weights[i] > 0.0);
      CHECK(rule.points(i, 0) >= 0.0);
      CHECK(rule.points(i, 0) <= 1.0);
    }
    for (int j = 0; j <= d; ++j) {
      double sum = 0.0;
      for (int i = 0; i < rule.size(); ++i)
        sum += rule.weights[i] * std::pow(rule.points(i, 0), j);
      CHECK(sum == doctest::Approx(1.0 / (j + 1)).epsilon(1e-13));
    }
  }
}

TEST_CASE("triangle rules integrate monomials to their exactness") {
  QuadratureRule r2 = triangle_quadrature(2);
  double one = 0.0, x = 0.0, xy = 0.0;
  for (int i = 0; i < r2.size(); ++i) {
    one += r2.weights[i];
    x += r2.weights[i] * r2.points(i, 0);
    xy += r2.weights[i] * r2.points(i, 0) * r2.points(i, 1);
  }
  CHECK(one == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(x == doctest::Approx(1.0 / 6.0).epsilon(1e-14));
  // xy has degree 2, so the degree-2 rule already integrates it
  CHECK(xy == doctest::Approx(1.0 / 24.0).epsilon(1e-13));

  for (int d = 0; d <= max_quadrature_exactness; ++d) {
    QuadratureRule rule = triangle_quadrature(d);
    for (int i = 0; i < rule.size(); ++i) CHECK(rule.weights[i] > 0.0);
    for (int a = 0; a + 0 <= d; ++a)
      for (int b = 0; a + b <= d; ++b) {
        double sum = 0.0;
        for (int i = 0; i < rule.size(); ++i)
          sum += rule.weights[i] * std::pow(rule.points(i, 0), a) *
                 std::pow(rule.points(i, 1), b);
        CHECK(sum == doctest::Approx(triangle_moment(a, b)).epsilon(1e-12));
      }
  }
}

TEST_CASE("quadrature requests outside the supported range are rejected") {
  CHECK_THROWS_AS(edge_quadrature(-1), config_error);
  CHECK_THROWS_AS(edge_quadrature(max_quadrature_exactness + 1), config_error);
  CHECK_THROWS_AS(triangle_quadrature(max_quadrature_exactness + 1), config_error);
}

TEST_CASE("reference element basis is orthonormal") {
  for (int k = 0; k <= max_basis_degree; ++k) {
    SimplexBasis basis(k);
    CHECK(basis.size() == simplex_space_dim(k));
    QuadratureRule rule = triangle_quadrature(2 * k);
    MatX vals = basis.eval(rule.points);
    MatX gram = vals.transpose() * rule.weights.asDiagonal() * vals;
    CHECK((gram - MatX::Identity(basis.size(), basis.size())).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("unsupported degrees are rejected") {
  CHECK_THROWS_AS(SimplexBasis(-1), config_error);
  CHECK_THROWS_AS(SimplexBasis(max_basis_degree + 1), config_error);
  CHECK_THROWS_AS(EdgeBasis(max_basis_degree + 1), config_error);
}

TEST_CASE("edge basis is the scaled shifted legendre family") {
  EdgeBasis basis(3);
  QuadratureRule rule = edge_quadrature(6);
  MatX vals = basis.eval(rule.points.col(0));
  MatX gram = vals.transpose() * rule.weights.asDiagonal() * vals;
  CHECK((gram - MatX::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-13);
  // endpoint values sqrt(2n+1), midpoint values from the legendre family
  VecX at1 = basis.eval(1.0);
  CHECK(at1[0] == doctest::Approx(1.0));
  CHECK(at1[1] == doctest::Approx(std::sqrt(3.0)));
  CHECK(at1[2] == doctest::Approx(std::sqrt(5.0)));
  CHECK(at1[3] == doctest::Approx(std::sqrt(7.0)));
  VecX mid = basis.eval(0.5);
  CHECK(mid[1] == doctest::Approx(0.0));
  CHECK(mid[2] == doctest::Approx(-0.5 * std::sqrt(5.0)));
  CHECK(mid[3] == doctest::Approx(0.0));
}

TEST_CASE("basis gradients match finite differences") {
  SimplexBasis basis(3);
  const double step = 1e-6;
  const Vec2 pts[] = {{0.2, 0.3}, {0.1, 0.7}, {0.45, 0.45}};
  for (const Vec2& p : pts) {
    MatX grad = basis.eval_gradient(p);
    VecX dx = (basis.eval(Vec2(p.x() + step, p.y())) -
               basis.eval(Vec2(p.x() - step, p.y()))) / (2 * step);
    VecX dy = (basis.eval(Vec2(p.x(), p.y() + step)) -
               basis.eval(Vec2(p.x(), p.y() - step))) / (2 * step);
    CHECK((grad.col(0) - dx).cwiseAbs().maxCoeff() < 1e-6);
    CHECK((grad.col(1) - dy).cwiseAbs().maxCoeff() < 1e-6);
  }
}

TEST_CASE("batch evaluation agrees with pointwise evaluation") {
  SimplexBasis basis(2);
  QuadratureRule rule = triangle_quadrature(4);
  MatX vals = basis.eval(rule.points);
  MatX dx, dy;
  basis.eval_gradient(rule.points, dx, dy);
  for (int i = 0; i < rule.size(); ++i) {
    Vec2 p = rule.points.row(i);
    CHECK((vals.row(i).transpose() - basis.eval(p)).cwiseAbs().maxCoeff() < 1e-14);
    MatX g = basis.eval_gradient(p);
    CHECK((dx.row(i).transpose() - g.col(0)).cwiseAbs().maxCoeff() < 1e-13);
    CHECK((dy.row(i).transpose() - g.col(1)).cwiseAbs().maxCoeff() < 1e-13);
  }
}

TEST_CASE("physical element basis stays orthonormal") {
  Mesh mesh = build_uniform_mesh(1);
  SimplexBasis ref(2);
  QuadratureRule rule = triangle_quadrature(4);
  for (int t : {0, 3, 7}) {
    ElementBasis basis = element_basis(ref, mesh, t);
    MatX gram = MatX::Zero(basis.size(), basis.size());
    for (int i = 0; i < rule.size(); ++i) {
      Vec2 x = basis.map.to_physical(rule.points.row(i).transpose());
      VecX v = basis.eval(x);
      gram += rule.weights[i] * basis.map.det_jac * v * v.transpose();
    }
    CHECK((gram - MatX::Identity(basis.size(), basis.size())).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("element projection reproduces polynomials of the space") {
  Mesh mesh = build_uniform_mesh(1);
  SimplexBasis basis(2);
  auto f = [](const Vec2& x) { return 1.0 - 2.0 * x.x() + 0.5 * x.x() * x.y(); };
  for (int t = 0; t < mesh.n_elements(); ++t) {
    VecX c = project_element(mesh, t, basis, f, 6);
    auto vs = element_vertices(mesh, t);
    Vec2 centroid = (vs[0] + vs[1] + vs[2]) / 3.0;
    for (const Vec2& x : {vs[0], vs[1], vs[2], centroid})
      CHECK(eval_element_poly(mesh, t, basis, c, x) == doctest::Approx(f(x)).epsilon(1e-12));
  }
}

TEST_CASE("interval projection of a parabola onto lines") {
  EdgeBasis basis(1);
  VecX c = project_interval(basis, [](double s) { return s * s; }, 4);
  // best line approximation of s^2 on [0,1] is s - 1/6
  for (double s : {0.0, 0.25, 0.5, 1.0}) {
    double v = c[0] * basis.eval(s)[0] + c[1] * basis.eval(s)[1];
    CHECK(v == doctest::Approx(s - 1.0 / 6.0).epsilon(1e-13));
  }
}

TEST_CASE("edge projection is exact on the edge space and preserves norms") {
  Mesh mesh = build_uniform_mesh(1);
  EdgeBasis basis(1);
  auto f = [](const Vec2& x) { return 2.0 * x.x() - x.y() + 0.25; };
  for (int e = 0; e < mesh.n_edges(); ++e) {
    VecX c = project_edge(mesh, e, basis, f, 4);
    for (double s : {0.0, 0.5, 1.0})
      CHECK(eval_edge_poly(mesh, e, basis, c, s) ==
            doctest::Approx(f(edge_point(mesh, e, s))).epsilon(1e-12));
  }
  // coefficient norm of a constant equals its boundary-edge L2 norm
  VecX c1 = project_edge(mesh, 0, basis, [](const Vec2&) { return 1.0; }, 4);
  CHECK(c1.norm() == doctest::Approx(std::sqrt(edge_length(mesh, 0))).epsilon(1e-13));
}
