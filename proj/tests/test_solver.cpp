#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hdgbc/model_problems.hpp"
#include "hdgbc/projections.hpp"
#include "hdgbc/solver.hpp"

#include <cmath>

using namespace hdgbc;

TEST_CASE("method names parse and print") {
  CHECK(parse_method("condensed") == SolveMethod::condensed);
  CHECK(parse_method("monolithic") == SolveMethod::monolithic);
  CHECK(method_name(SolveMethod::condensed) == "condensed");
  CHECK(method_name(SolveMethod::monolithic) == "monolithic");
  CHECK_THROWS_AS(parse_method("direct"), config_error);
}

TEST_CASE("condensed and monolithic coupled solves agree") {
  Mesh mesh = build_uniform_mesh(2);
  ProblemData data = smooth_problem(0.01, 1.0, 1, constant_field(2.0));
  Solution mono = solve_optimal_control(mesh, data, SolveMethod::monolithic);
  Solution cond = solve_optimal_control(mesh, data, SolveMethod::condensed);
  CHECK(mono.solved_dimension == mono.layout.size);
  CHECK(cond.solved_dimension == cond.layout.n_condensed());
  double scale = mono.coeffs.norm();
  CHECK((mono.coeffs - cond.coeffs).norm() < 1e-10 * scale);
  CHECK(mono.algebraic_residual_rel < 1e-10);
  CHECK(cond.algebraic_residual_rel < 1e-10);
}

TEST_CASE("condensed system is the tail of the coupled layout") {
  Mesh mesh = build_uniform_mesh(2);
  ProblemData data = smooth_problem(0.01, 1.0, 1, constant_field(2.0));
  CondensedSystem sys = static_condense(mesh, data);
  CHECK(sys.matrix.rows() == sys.layout.n_condensed());
  CHECK(sys.rhs.size() == sys.layout.n_condensed());
  // back substitution rebuilds the interiors of a monolithic solution
  Solution mono = solve_optimal_control(mesh, data, SolveMethod::monolithic);
  VecX tail = mono.coeffs.tail(sys.layout.n_condensed());
  VecX rebuilt = recover_interior(mesh, data, sys.layout, tail);
  CHECK((rebuilt - mono.coeffs).cwiseAbs().maxCoeff() < 1e-9 * mono.coeffs.norm());
}

TEST_CASE("solution accessors tile the coefficient vector") {
  Mesh mesh = build_uniform_mesh(1);
  ProblemData data = smooth_problem(0.05, 1.0, 0, constant_field(2.0));
  Solution sol = solve_optimal_control(mesh, data, SolveMethod::condensed);
  double sq = 0.0;
  for (int t = 0; t < mesh.n_elements(); ++t)
    sq += sol.q(t).squaredNorm() + sol.y(t).squaredNorm() + sol.p(t).squaredNorm() +
          sol.z(t).squaredNorm();
  for (int e = 0; e < mesh.n_edges(); ++e) {
    if (mesh.edge_on_boundary(e))
      sq += sol.u(e).squaredNorm();
    else
      sq += sol.yhat(e).squaredNorm() + sol.zhat(e).squaredNorm();
  }
  CHECK(sq == doctest::Approx(sol.coeffs.squaredNorm()).epsilon(1e-13));
}

TEST_CASE("forward solve reproduces an exact linear state") {
  // with y = x1, q = -eps grad y = (-eps, 0), constant beta = (1,0), sigma = 1:
  // -eps lap y + beta.grad y + sigma y = 1 + x1
  const double eps = 0.3;
  Mesh mesh = build_uniform_mesh(2);
  ProblemData data;
  data.epsilon = eps;
  data.degree = 1;
  data.beta = constant_convection(1.0, 0.0);
  data.sigma = constant_field(1.0);
  data.source = [](const Vec2& x) { return 1.0 + x.x(); };
  data.desired_state = constant_field(0.0);
  auto exact = [](const Vec2& x) { return x.x(); };
  FormSolution fs = solve_state(mesh, data, ScalarField(exact));

  SimplexBasis eb(data.degree);
  EdgeBasis gb(data.degree);
  double worst = 0.0;
  for (int t = 0; t < mesh.n_elements(); ++t) {
    VecX yc = project_element(mesh, t, eb, exact, data.element_exactness());
    VecX qx = project_element(mesh, t, eb, [&](const Vec2&) { return -eps; },
                              data.element_exactness());
    worst = std::max(worst, (fs.y(t) - yc).cwiseAbs().maxCoeff());
    worst = std::max(worst, (fs.q(t).head(eb.size()) - qx).cwiseAbs().maxCoeff());
    worst = std::max(worst, fs.q(t).tail(eb.size()).cwiseAbs().maxCoeff());
  }
  for (int e = 0; e < mesh.n_edges(); ++e) {
    if (mesh.edge_on_boundary(e)) continue;
    VecX tc = project_edge(mesh, e, gb, exact, data.edge_exactness());
    worst = std::max(worst, (fs.trace(e) - tc).cwiseAbs().maxCoeff());
  }
  CHECK(worst < 1e-9);
}

TEST_CASE("split solves recover the coupled solution blocks") {
  Mesh mesh = build_uniform_mesh(2);
  ProblemData data = smooth_problem(0.01, 1.0, 1, constant_field(2.0));
  Solution sol = solve_optimal_control(mesh, data, SolveMethod::condensed);
  FormLayout layout = form_layout(mesh, data.degree);

  FormSolution state = solve_state(mesh, data, extract_control(sol));
  VecX state_triple = extract_state_triple(sol, layout);
  CHECK((state.coeffs - state_triple).norm() < 1e-9 * state_triple.norm());

  FormSolution adj = solve_adjoint(mesh, data, extract_state_coeffs(sol));
  VecX adjoint_triple = extract_adjoint_triple(sol, layout);
  CHECK((adj.coeffs - adjoint_triple).norm() < 1e-9 * adjoint_triple.norm());
}

TEST_CASE("optimality residual vanishes only at the solution") {
  Mesh mesh = build_uniform_mesh(2);
  ProblemData data = smooth_problem(0.01, 1.0, 1, constant_field(2.0));
  Solution sol = solve_optimal_control(mesh, data, SolveMethod::condensed);
  OptimalityResidual res = optimality_residual(mesh, data, sol);
  CHECK(res.relative() < 1e-10);
  CHECK(res.scale > 0.0);
  // perturbing the control breaks the condition
  Solution bent = sol;
  for (int e = 0; e < mesh.n_edges(); ++e)
    if (mesh.edge_on_boundary(e))
      bent.coeffs[bent.layout.u_offset(e)] += 0.1;
  CHECK(optimality_residual(mesh, data, bent).relative() > 1e-3);
}

TEST_CASE("validation is reported through the solution") {
  Mesh mesh = build_uniform_mesh(2);
  ProblemData data = smooth_problem(0.01, 1.0, 1, constant_field(2.0));
  Solution sol = solve_optimal_control(mesh, data, SolveMethod::condensed);
  CHECK(sol.validation.effective_reaction_ok);
  CHECK(sol.validation.thin_diffusion_ok);
  CHECK(sol.validation.min_sigma_bar > 0.0);
}

TEST_CASE("thin diffusion violations throw unless relaxed") {
  Mesh mesh = build_uniform_mesh(1);
  // epsilon above the element diameter violates the mesh assumption
  ProblemData data = smooth_problem(1.0, 1.0, 1, constant_field(2.0));
  CHECK_THROWS_AS(solve_optimal_control(mesh, data, SolveMethod::condensed),
                  validation_error);
  data.relax_thin_diffusion = true;
  Solution sol = solve_optimal_control(mesh, data, SolveMethod::condensed);
  CHECK_FALSE(sol.validation.thin_diffusion_ok);
}

TEST_CASE("negative effective reaction is rejected") {
  Mesh mesh = build_uniform_mesh(1);
  ProblemData data = smooth_problem(0.05, 1.0, 1, constant_field(-5.0));
  CHECK_THROWS_AS(solve_optimal_control(mesh, data, SolveMethod::condensed),
                  validation_error);
}
