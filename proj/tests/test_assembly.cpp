#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hdgbc/assembly.hpp"
#include "hdgbc/model_problems.hpp"
#include "hdgbc/solver.hpp"

#include <cmath>
#include <vector>

using namespace hdgbc;

namespace {

ProblemData basic_data(double epsilon, int degree) {
  ProblemData data;
  data.epsilon = epsilon;
  data.degree = degree;
  data.beta = zero_convection();
  data.sigma = constant_field(1.0);
  data.source = constant_field(1.0);
  data.desired_state = constant_field(0.0);
  return data;
}

} // namespace

TEST_CASE("stabilization kernel mixes sup, direction and diffusion") {
  StabilizationValues s = stabilization_from(1.0, 1.0, 0.01, 0.1);
  CHECK(s.tau1 == doctest::Approx(1.6).epsilon(1e-14));
  CHECK(s.tau2 == doctest::Approx(0.6).epsilon(1e-14));
  CHECK(s.tau == doctest::Approx(1.1).epsilon(1e-14));
  // the two weights differ by exactly beta.n and average to tau
  for (double bn : {-0.7, 0.0, 0.4}) {
    StabilizationValues t = stabilization_from(2.0, bn, 1e-3, 0.25);
    CHECK(t.tau1 - t.tau2 == doctest::Approx(bn).epsilon(1e-14));
    CHECK(0.5 * (t.tau1 + t.tau2) == doctest::Approx(t.tau).epsilon(1e-14));
    CHECK(t.tau2 >= 0.0);
  }
}

TEST_CASE("face sup of beta.n bounds the sampled values") {
  Mesh mesh = build_uniform_mesh(2);
  ProblemData data = basic_data(0.01, 1);
  data.beta = benchmark_convection();
  for (int t : {0, 9, 21}) {
    double sup = maxnorm_beta_n(mesh, data, t);
    for (int le = 0; le < 3; ++le) {
      Vec2 n = outward_normal(mesh, t, le);
      for (double s : {0.1, 0.5, 0.9}) {
        Vec2 x = edge_point(mesh, mesh.element_edges[t][le], s);
        CHECK(sup >= std::abs(data.beta.value(x).dot(n)) - 1e-12);
        StabilizationValues sv = stabilization(mesh, data, t, le, s);
        double h = element_diameter(mesh, t);
        CHECK(sv.tau1 == doctest::Approx(sup + 0.5 * data.beta.value(x).dot(n) +
                                         data.epsilon / h).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("flux block of the local form is the scaled identity") {
  Mesh mesh = build_uniform_mesh(1);
  for (int degree : {0, 1, 2}) {
    ProblemData data = basic_data(0.05, degree);
    data.beta = benchmark_convection();
    SimplexBasis eb(degree);
    EdgeBasis gb(degree);
    ElementContext ctx = element_context(mesh, data, 2, eb, gb);
    const int m = eb.size();
    LocalBlocks blocks = local_form(ctx, data, FormKind::state);
    MatX flux = blocks.mat.topLeftCorner(2 * m, 2 * m);
    CHECK((flux - MatX::Identity(2 * m, 2 * m) / data.epsilon).cwiseAbs().maxCoeff()
          < 1e-11 / data.epsilon);
  }
}

TEST_CASE("constant loads on the lowest order space") {
  Mesh mesh = build_uniform_mesh(1);
  ProblemData data = basic_data(0.05, 0);
  SimplexBasis eb(0);
  EdgeBasis gb(0);
  ElementContext ctx = element_context(mesh, data, 0, eb, gb);
  const double area = element_area(mesh, 0);
  // unit source loads -(f, w); unit target loads +(y_d, w)
  VecX fs = local_state_load(ctx, data);
  CHECK(fs.size() == 1);
  CHECK(fs[0] == doctest::Approx(-std::sqrt(area)).epsilon(1e-13));
  data.desired_state = constant_field(1.0);
  VecX fa = local_adjoint_load(ctx, data);
  CHECK(fa[0] == doctest::Approx(std::sqrt(area)).epsilon(1e-13));
}

TEST_CASE("state and adjoint forms coincide without convection and reaction") {
  Mesh mesh = build_uniform_mesh(2);
  ProblemData data = basic_data(0.03, 1);
  data.sigma = constant_field(0.0);
  FormSystem s = assemble_form_matrix(mesh, data, FormKind::state);
  FormSystem a = assemble_form_matrix(mesh, data, FormKind::adjoint);
  CHECK((MatX(s.matrix) - MatX(a.matrix)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("element form defect against the transposed adjoint form is the trace coupling") {
  Mesh mesh = build_uniform_mesh(2);
  ProblemData data = basic_data(0.05, 1);
  data.beta = {[](const Vec2& x) { return Vec2(x.y(), -x.x()); },
               [](const Vec2&) { return 0.0; }};
  SimplexBasis eb(1);
  EdgeBasis gb(1);
  for (int t : {0, 5, 30}) {
    ElementContext ctx = element_context(mesh, data, t, eb, gb);
    LocalBlocks b1 = local_form(ctx, data, FormKind::state);
    LocalBlocks b2 = local_form(ctx, data, FormKind::adjoint);
    MatX defect = b1.mat - b2.mat.transpose();
    const int m = eb.size(), e = gb.size();
    // interior-interior and interior-trace blocks cancel
    CHECK(defect.topLeftCorner(3 * m, 3 * m).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(defect.topRightCorner(3 * m, 3 * e).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(defect.bottomLeftCorner(3 * e, 3 * m).cwiseAbs().maxCoeff() < 1e-12);
    // what survives is -<beta.n psi_i, psi_j> per face, diagonal in the faces
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) {
        MatX block = defect.block(3 * m + a * e, 3 * m + b * e, e, e);
        if (a != b) {
          CHECK(block.cwiseAbs().maxCoeff() < 1e-12);
          continue;
        }
        const EdgeContext& ec = ctx.edges[a];
        MatX oracle = MatX::Zero(e, e);
        for (int q = 0; q < static_cast<int>(ec.w.size()); ++q)
          oracle -= ec.w(q) * ec.beta_n(q) *
                    ec.edge_vals.row(q).transpose() * ec.edge_vals.row(q);
        CHECK((block - oracle).cwiseAbs().maxCoeff() < 1e-12);
      }
  }
}

TEST_CASE("assembled forms are mutual transposes") {
  Mesh mesh = build_uniform_mesh(2);
  ProblemData data = basic_data(0.01, 0);
  data.beta = {[](const Vec2& x) { return Vec2(x.y(), -x.x()); },
               [](const Vec2&) { return 0.0; }};
  FormSystem s = assemble_form_matrix(mesh, data, FormKind::state);
  FormSystem a = assemble_form_matrix(mesh, data, FormKind::adjoint);
  MatX d1(s.matrix), d2(a.matrix);
  double scale = d1.cwiseAbs().maxCoeff();
  CHECK((d1 - d2.transpose()).cwiseAbs().maxCoeff() < 1e-11 * scale);
}

TEST_CASE("control columns mirror the boundary trace columns of the state form") {
  Mesh mesh = build_uniform_mesh(1);
  ProblemData data = basic_data(0.05, 1);
  data.beta = benchmark_convection();
  SimplexBasis eb(1);
  EdgeBasis gb(1);
  // element 0 touches the lower boundary with its first local edge
  ElementContext ctx = element_context(mesh, data, 0, eb, gb);
  LocalBlocks b1 = local_form(ctx, data, FormKind::state);
  const int m = eb.size(), e = gb.size();
  for (int le = 0; le < 3; ++le) {
    if (ctx.edges[le].interior) continue;
    MatX ccols = local_control_columns(ctx, le);
    MatX trace_cols = b1.mat.block(0, b1.trace_index(le), 3 * m, e);
    CHECK((ccols + trace_cols).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("optimality rows integrate the boundary gradient condition") {
  Mesh mesh = build_uniform_mesh(1);
  ProblemData data = basic_data(0.05, 1);
  data.beta = benchmark_convection();
  data.gamma = 2.5;
  SimplexBasis eb(1);
  EdgeBasis gb(1);
  ElementContext ctx = element_context(mesh, data, 0, eb, gb);
  const int m = eb.size(), e = gb.size();
  for (int le = 0; le < 3; ++le) {
    if (ctx.edges[le].interior) continue;
    OptimalityRowBlocks rows = local_optimality_row(ctx, data, le);
    // the control block is gamma times the edge mass matrix, an identity here
    CHECK((rows.u_cols - data.gamma * MatX::Identity(e, e)).cwiseAbs().maxCoeff() < 1e-12);
    const EdgeContext& ec = ctx.edges[le];
    MatX p_oracle = MatX::Zero(e, 2 * m), z_oracle = MatX::Zero(e, m);
    for (int q = 0; q < static_cast<int>(ec.w.size()); ++q) {
      p_oracle.leftCols(m) += ec.w(q) * ec.normal(0) *
                              ec.edge_vals.row(q).transpose() * ec.elem_vals.row(q);
      p_oracle.rightCols(m) += ec.w(q) * ec.normal(1) *
                               ec.edge_vals.row(q).transpose() * ec.elem_vals.row(q);
      z_oracle += ec.w(q) * ec.tau2(q) *
                  ec.edge_vals.row(q).transpose() * ec.elem_vals.row(q);
    }
    CHECK((rows.p_cols - p_oracle).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((rows.z_cols - z_oracle).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("coupled layout partitions the unknowns") {
  Mesh mesh = build_uniform_mesh(2);
  DofLayout layout = coupled_layout(mesh, 1);
  CHECK(layout.m == 3);
  CHECK(layout.e == 2);
  CHECK(layout.size == 768);
  CHECK(layout.trace_offset == 576);
  CHECK(layout.control_offset == 736);
  CHECK(layout.n_condensed() == 192);
  std::vector<int> marks(layout.size, 0);
  auto mark = [&](long off, int count) {
    for (int i = 0; i < count; ++i) ++marks[off + i];
  };
  for (int t = 0; t < mesh.n_elements(); ++t) {
    mark(layout.q_offset(t), 2 * layout.m);
    mark(layout.y_offset(t), layout.m);
    mark(layout.p_offset(t), 2 * layout.m);
    mark(layout.z_offset(t), layout.m);
  }
  for (int e = 0; e < mesh.n_edges(); ++e) {
    if (mesh.edge_on_boundary(e)) {
      mark(layout.u_offset(e), layout.e);
    } else {
      mark(layout.yhat_offset(e), layout.e);
      mark(layout.zhat_offset(e), layout.e);
    }
  }
  for (int i = 0; i < layout.size; ++i) CHECK(marks[i] == 1);

  DofLayout tiny = coupled_layout(build_uniform_mesh(1), 0);
  CHECK(tiny.size == 72);
  CHECK(tiny.trace_offset == 48);
  CHECK(tiny.control_offset == 64);
  CHECK(tiny.n_condensed() == 24);
}

TEST_CASE("global system has the layout size and finite entries") {
  Mesh mesh = build_uniform_mesh(1);
  ProblemData data = basic_data(0.05, 0);
  GlobalSystem sys = assemble_global(mesh, data);
  CHECK(sys.matrix.rows() == sys.layout.size);
  CHECK(sys.matrix.cols() == sys.layout.size);
  CHECK(sys.rhs.size() == sys.layout.size);
  CHECK(sys.rhs.allFinite());
  CHECK(sys.validation.effective_reaction_ok);
  CHECK(MatX(sys.matrix).allFinite());
}

TEST_CASE("zero data produce the zero solution") {
  Mesh mesh = build_uniform_mesh(2);
  ProblemData data = basic_data(0.01, 1);
  data.beta = benchmark_convection();
  data.sigma = constant_field(2.0);
  data.source = constant_field(0.0);
  for (SolveMethod method : {SolveMethod::monolithic, SolveMethod::condensed}) {
    Solution sol = solve_optimal_control(mesh, data, method);
    CHECK(sol.coeffs.cwiseAbs().maxCoeff() < 1e-12);
  }
}
