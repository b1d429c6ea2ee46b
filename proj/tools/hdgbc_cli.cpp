#include "hdgbc/assembly.hpp"
#include "hdgbc/cli_io.hpp"
#include "hdgbc/norms.hpp"
#include "hdgbc/projections.hpp"
#include "hdgbc/solver.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <random>

using namespace hdgbc;

namespace {

// ------------------------------------------------------------------------
// check-invariants suites
// ------------------------------------------------------------------------

VecX flip_test_vector(const FormLayout& layout, const VecX& v) {
  VecX w = v;
  for (long t = 0; t < layout.n_elements; ++t)
    w.segment(layout.y_offset(t), layout.m) *= -1.0;
  w.tail(layout.size - layout.trace_offset) *= -1.0;
  return w;
}

bool check_transpose_identity() {
  bool ok = true;
  ProblemData data;
  data.epsilon = 0.01;
  data.beta.value = [](const Vec2& x) { return Vec2(x[1], -x[0]); };
  data.beta.divergence = [](const Vec2&) { return 0.0; };
  data.sigma = constant_field(1.0);
  data.source = constant_field(0.0);
  data.desired_state = constant_field(0.0);
  for (int level : {2, 3}) {
    Mesh mesh = build_uniform_mesh(level);
    for (int k : {0, 1}) {
      data.degree = k;
      FormSystem s1 = assemble_form_matrix(mesh, data, FormKind::state);
      FormSystem s2 = assemble_form_matrix(mesh, data, FormKind::adjoint);
      MatX d1 = MatX(s1.matrix);
      MatX d2 = MatX(s2.matrix);
      double defect = (d1 - d2.transpose()).cwiseAbs().maxCoeff();
      double scale = d1.cwiseAbs().maxCoeff();
      bool pass = defect <= 1e-11 * scale;
      ok = ok && pass;
      std::printf("  transpose identity level %d k %d: %s (defect %.3e, scale %.3e)\n",
                  level, k, pass ? "ok" : "FAIL", defect, scale);
    }
  }
  return ok;
}

bool check_energy_identity() {
  ProblemData data;
  data.epsilon = 0.01;
  data.degree = 1;
  data.beta = constant_convection(1.0, 0.5);
  data.sigma = constant_field(1.0);
  data.source = constant_field(0.0);
  data.desired_state = constant_field(0.0);
  Mesh mesh = build_uniform_mesh(2);
  FormSystem sys = assemble_form_matrix(mesh, data, FormKind::state);
  std::mt19937 gen(12345);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    VecX v(sys.layout.size);
    for (long i = 0; i < v.size(); ++i) v[i] = dist(gen);
    double lhs = flip_test_vector(sys.layout, v).dot(sys.matrix * v);
    double rhs = energy_quadratic(mesh, data, sys.layout, v);
    worst = std::max(worst, std::abs(lhs - rhs) / std::abs(rhs));
  }
  bool pass = worst <= 1e-9;
  std::printf("  energy identity (100 random vectors): %s (worst rel %.3e)\n",
              pass ? "ok" : "FAIL", worst);
  return pass;
}

bool check_polynomial_consistency() {
  ProblemData data;
  data.epsilon = 0.3;
  data.degree = 1;
  data.beta = constant_convection(1.0, 0.0);
  data.sigma = constant_field(1.0);
  data.source = [](const Vec2& x) { return 1.0 + x[0]; };
  data.desired_state = constant_field(0.0);
  Mesh mesh = build_uniform_mesh(2);
  FormSolution sol = solve_state(mesh, data, [](const Vec2& x) { return x[0]; });

  SimplexBasis ref(1);
  EdgeBasis edge_ref(1);
  double worst = 0.0;
  for (int t = 0; t < mesh.n_elements(); ++t) {
    VecX qx = project_element(mesh, t, ref, constant_field(-0.3), 4);
    VecX qy = project_element(mesh, t, ref, constant_field(0.0), 4);
    VecX yc = project_element(mesh, t, ref, [](const Vec2& x) { return x[0]; }, 4);
    VecX q = sol.q(t);
    worst = std::max(worst, (q.head(qx.size()) - qx).cwiseAbs().maxCoeff());
    worst = std::max(worst, (q.tail(qy.size()) - qy).cwiseAbs().maxCoeff());
    worst = std::max(worst, (sol.y(t) - yc).cwiseAbs().maxCoeff());
  }
  for (int edge = 0; edge < mesh.n_edges(); ++edge) {
    if (mesh.edge_on_boundary(edge)) continue;
    VecX tc = project_edge(mesh, edge, edge_ref, [](const Vec2& x) { return x[0]; }, 5);
    worst = std::max(worst, (sol.trace(edge) - tc).cwiseAbs().maxCoeff());
  }
  bool pass = worst <= 1e-9;
  std::printf("  polynomial consistency (linear state): %s (worst dof defect %.3e)\n",
              pass ? "ok" : "FAIL", worst);
  return pass;
}

bool check_condensation_agreement() {
  ProblemData data = smooth_problem(0.01, 1.0, 1, constant_field(2.0));
  Mesh mesh = build_uniform_mesh(2);
  Solution mono = solve_optimal_control(mesh, data, SolveMethod::monolithic);
  Solution cond = solve_optimal_control(mesh, data, SolveMethod::condensed);
  double rel = (mono.coeffs - cond.coeffs).norm() / mono.coeffs.norm();
  bool pass = rel <= 1e-8;
  std::printf("  condensed vs monolithic: %s (rel diff %.3e)\n", pass ? "ok" : "FAIL", rel);
  return pass;
}

int check_invariants() {
  std::printf("running invariant suites\n");
  bool ok = true;
  ok = check_transpose_identity() && ok;
  ok = check_energy_identity() && ok;
  ok = check_polynomial_consistency() && ok;
  ok = check_condensation_agreement() && ok;
  std::printf("invariants: %s\n", ok ? "all ok" : "FAILURES");
  return ok ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"HDG solver for Dirichlet boundary control of convection dominated problems"};
  app.require_subcommand(1);

  std::string config_path, levels_str, sigma, beta, method, out;
  double epsilon = 0.0, gamma = 0.0;
  int k = 0, quad_boost = 0, reference_level = 0;
  bool allow_thin = false;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "JSON config file; flags override its values");
    sub->add_option("--epsilon", epsilon, "diffusion coefficient");
    sub->add_option("--gamma", gamma, "control regularization weight");
    sub->add_option("--k", k, "polynomial degree (0..3)");
    sub->add_option("--levels", levels_str, "mesh level range A..B");
    sub->add_option("--method", method, "condensed or monolithic");
    sub->add_option("--sigma", sigma, "reaction specifier, e.g. constant:2");
    sub->add_option("--beta", beta, "convection specifier: benchmark, zero, constant:(a,b)");
    sub->add_option("--quad-boost", quad_boost, "additive quadrature exactness boost");
    sub->add_option("--out", out, "output directory");
    sub->add_option("--reference-level", reference_level, "nested reference mesh level");
    sub->add_flag("--allow-thin-diffusion", allow_thin,
                  "accept epsilon above the mesh size (layer studies)");
  };

  CLI::App* run_smooth = app.add_subcommand("run-smooth", "manufactured smooth optimum study");
  CLI::App* run_nonsmooth = app.add_subcommand("run-nonsmooth", "layer study vs nested reference");
  CLI::App* run_custom = app.add_subcommand("run-custom", "layer data with configured coefficients");
  CLI::App* check = app.add_subcommand("check-invariants", "run the structural property suites");
  add_common(run_smooth);
  add_common(run_nonsmooth);
  add_common(run_custom);

  CLI11_PARSE(app, argc, argv);

  try {
    if (check->parsed()) return check_invariants();

    CLI::App* sub = app.get_subcommands().front();
    RunConfig config;
    if (sub->count("--config")) config = parse_config_file(config_path);
    if (run_smooth->parsed()) config.experiment = "smooth";
    if (run_nonsmooth->parsed()) config.experiment = "nonsmooth";
    if (run_custom->parsed()) config.experiment = "custom";
    if (sub->count("--epsilon")) config.epsilon = epsilon;
    if (sub->count("--gamma")) config.gamma = gamma;
    if (sub->count("--k")) config.degree = k;
    if (sub->count("--levels")) {
      int a = 0, b = 0;
      if (std::sscanf(levels_str.c_str(), "%d..%d", &a, &b) != 2)
        throw config_error("config field 'levels': expected A..B, got '" + levels_str + "'");
      config.level_min = a;
      config.level_max = b;
    }
    if (sub->count("--method")) config.method = method;
    if (sub->count("--sigma")) config.sigma = sigma;
    if (sub->count("--beta")) config.beta = beta;
    if (sub->count("--quad-boost")) config.quad_boost = quad_boost;
    if (sub->count("--out")) config.out = out;
    if (sub->count("--reference-level")) config.reference_level = reference_level;
    if (sub->count("--allow-thin-diffusion")) config.allow_thin_diffusion = allow_thin;

    // Re-validate the merged configuration so flag values get the same
    // screening as file values.
    config = parse_config(emit_config(config));

    ConvergenceReport report;
    if (config.experiment == "smooth") report = run_smooth_experiment(config);
    else if (config.experiment == "nonsmooth") report = run_nonsmooth_experiment(config);
    else report = run_custom_experiment(config);

    std::printf("%s", csv_text(report).c_str());
    std::printf("outputs written to %s\n", config.out.c_str());
    return 0;
  } catch (const config_error& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const validation_error& e) {
    std::fprintf(stderr, "validation error: %s\n", e.what());
    return 3;
  } catch (const solver_error& e) {
    std::fprintf(stderr, "solver error: %s\n", e.what());
    return 4;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
