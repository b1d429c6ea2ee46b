#include "hdgbc/cli_io.hpp"

#include "hdgbc/norms.hpp"
#include "hdgbc/reference.hpp"
#include "hdgbc/vtk.hpp"

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <set>

namespace hdgbc {

namespace {

double require_number(const nlohmann::json& j, const std::string& key, double fallback) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_number()) throw config_error("config field '" + key + "' must be a number");
  return j.at(key).get<double>();
}

int require_int(const nlohmann::json& j, const std::string& key, int fallback) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_number_integer())
    throw config_error("config field '" + key + "' must be an integer");
  return j.at(key).get<int>();
}

std::string require_string(const nlohmann::json& j, const std::string& key,
                           const std::string& fallback) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_string()) throw config_error("config field '" + key + "' must be a string");
  return j.at(key).get<std::string>();
}

bool require_bool(const nlohmann::json& j, const std::string& key, bool fallback) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_boolean()) throw config_error("config field '" + key + "' must be a boolean");
  return j.at(key).get<bool>();
}

} // namespace

RunConfig parse_config(const nlohmann::json& j) {
  if (!j.is_object()) throw config_error("config root must be a JSON object");
  static const std::set<std::string> known = {
      "experiment", "epsilon", "gamma", "k", "levels", "method", "sigma",
      "beta", "quad-boost", "out", "reference-level", "allow-thin-diffusion"};
  for (const auto& item : j.items()) {
    if (!known.count(item.key()))
      throw config_error("unknown config field '" + item.key() + "'");
  }

  RunConfig c;
  c.experiment = require_string(j, "experiment", c.experiment);
  if (c.experiment != "smooth" && c.experiment != "nonsmooth" && c.experiment != "custom")
    throw config_error("config field 'experiment' must be smooth, nonsmooth or custom");
  c.epsilon = require_number(j, "epsilon", c.epsilon);
  if (!(c.epsilon > 0.0)) throw config_error("config field 'epsilon' must be positive");
  c.gamma = require_number(j, "gamma", c.gamma);
  if (!(c.gamma > 0.0)) throw config_error("config field 'gamma' must be positive");
  c.degree = require_int(j, "k", c.degree);
  if (c.degree < 0 || c.degree > max_basis_degree)
    throw config_error("config field 'k' must lie in [0, " +
                       std::to_string(max_basis_degree) + "]");
  if (j.contains("levels")) {
    const auto& lv = j.at("levels");
    if (!lv.is_array() || lv.size() != 2 || !lv[0].is_number_integer() ||
        !lv[1].is_number_integer())
      throw config_error("config field 'levels' must be an array of two integers");
    c.level_min = lv[0].get<int>();
    c.level_max = lv[1].get<int>();
  }
  if (c.level_min < 0 || c.level_max > max_mesh_level || c.level_min > c.level_max)
    throw config_error("config field 'levels' must satisfy 0 <= min <= max <= " +
                       std::to_string(max_mesh_level));
  c.method = require_string(j, "method", c.method);
  make_method(c.method);
  c.sigma = require_string(j, "sigma", c.sigma);
  make_sigma(c.sigma);
  c.beta = require_string(j, "beta", c.beta);
  make_beta(c.beta);
  c.quad_boost = require_int(j, "quad-boost", c.quad_boost);
  c.out = require_string(j, "out", c.out);
  c.reference_level = require_int(j, "reference-level", c.reference_level);
  if (c.reference_level < 0 || c.reference_level > max_mesh_level)
    throw config_error("config field 'reference-level' must lie in [0, " +
                       std::to_string(max_mesh_level) + "]");
  c.allow_thin_diffusion = require_bool(j, "allow-thin-diffusion", c.allow_thin_diffusion);
  return c;
}

RunConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw config_error("cannot open config file " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw config_error("config file " + path + " is not valid JSON: " + e.what());
  }
  return parse_config(j);
}

nlohmann::json emit_config(const RunConfig& c) {
  nlohmann::json j;
  j["experiment"] = c.experiment;
  j["epsilon"] = c.epsilon;
  j["gamma"] = c.gamma;
  j["k"] = c.degree;
  j["levels"] = {c.level_min, c.level_max};
  j["method"] = c.method;
  j["sigma"] = c.sigma;
  j["beta"] = c.beta;
  j["quad-boost"] = c.quad_boost;
  j["out"] = c.out;
  j["reference-level"] = c.reference_level;
  j["allow-thin-diffusion"] = c.allow_thin_diffusion;
  return j;
}

ScalarField make_sigma(const std::string& specifier) {
  const std::string prefix = "constant:";
  if (specifier.rfind(prefix, 0) == 0) {
    const std::string tail = specifier.substr(prefix.size());
    std::size_t used = 0;
    double value = 0.0;
    try {
      value = std::stod(tail, &used);
    } catch (const std::exception&) {
      throw config_error("config field 'sigma': cannot parse '" + specifier + "'");
    }
    if (used != tail.size())
      throw config_error("config field 'sigma': cannot parse '" + specifier + "'");
    return constant_field(value);
  }
  throw config_error("config field 'sigma': unknown specifier '" + specifier +
                     "' (expected constant:<value>)");
}

VectorField make_beta(const std::string& specifier) {
  if (specifier == "benchmark") return benchmark_convection();
  if (specifier == "zero") return zero_convection();
  const std::string prefix = "constant:";
  if (specifier.rfind(prefix, 0) == 0) {
    double bx = 0.0, by = 0.0;
    if (std::sscanf(specifier.c_str() + prefix.size(), "(%lf,%lf)", &bx, &by) != 2)
      throw config_error("config field 'beta': cannot parse '" + specifier + "'");
    return constant_convection(bx, by);
  }
  throw config_error("config field 'beta': unknown specifier '" + specifier +
                     "' (expected benchmark, zero or constant:(a,b))");
}

SolveMethod make_method(const std::string& specifier) {
  if (specifier == "monolithic") return SolveMethod::monolithic;
  if (specifier == "condensed") return SolveMethod::condensed;
  throw config_error("config field 'method': unknown value '" + specifier +
                     "' (expected monolithic or condensed)");
}

double smooth_optimality_defect(const SmoothCase& c, double epsilon, double gamma) {
  const int ns = 201;
  const Vec2 normals[4] = {{0, -1}, {1, 0}, {0, 1}, {-1, 0}};
  double defect = 0.0;
  for (int side = 0; side < 4; ++side) {
    for (int i = 0; i < ns; ++i) {
      const double t = static_cast<double>(i) / (ns - 1);
      Vec2 x;
      switch (side) {
        case 0: x = Vec2(t, 0.0); break;
        case 1: x = Vec2(1.0, t); break;
        case 2: x = Vec2(t, 1.0); break;
        default: x = Vec2(0.0, t); break;
      }
      const double v =
          gamma * c.control(x) - epsilon * c.adjoint_gradient(x).dot(normals[side]);
      defect = std::max(defect, std::abs(v));
    }
  }
  return defect;
}

// ------------------------------------------------------------------------
// Experiment drivers
// ------------------------------------------------------------------------

namespace {

ProblemData base_problem(const RunConfig& config) {
  ProblemData data;
  data.epsilon = config.epsilon;
  data.gamma = config.gamma;
  data.degree = config.degree;
  data.quad_boost = config.quad_boost;
  data.beta = make_beta(config.beta);
  data.sigma = make_sigma(config.sigma);
  data.relax_thin_diffusion = config.allow_thin_diffusion;
  return data;
}

double seconds_since(const std::chrono::steady_clock::time_point& t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

LevelRecord solve_level(const Mesh& mesh, const ProblemData& data, SolveMethod method,
                        Solution& sol) {
  const auto t0 = std::chrono::steady_clock::now();
  sol = solve_optimal_control(mesh, data, method);
  LevelRecord rec;
  rec.level = mesh.level;
  rec.h_over_sqrt2 = std::pow(2.0, -mesh.level);
  rec.solve_seconds = seconds_since(t0);
  rec.algebraic_residual_rel = sol.algebraic_residual_rel;
  rec.optimality_residual_rel = optimality_residual(mesh, data, sol).relative();
  rec.thin_diffusion_ok = sol.validation.thin_diffusion_ok;
  rec.solved_dimension = sol.solved_dimension;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  rec.err_y = rec.err_z = rec.err_u = nan;
  return rec;
}

void finish_rates(ConvergenceReport& report) {
  std::vector<double> ey, ez, eu, hs;
  for (const LevelRecord& rec : report.levels) {
    ey.push_back(rec.err_y);
    ez.push_back(rec.err_z);
    eu.push_back(rec.err_u);
    hs.push_back(rec.h_over_sqrt2);
  }
  report.rate_y = convergence_rates(ey, hs);
  report.rate_z = convergence_rates(ez, hs);
  report.rate_u = convergence_rates(eu, hs);
}

void write_outputs(const ConvergenceReport& report) {
  std::filesystem::create_directories(report.config.out);
  write_text_file(report.config.out + "/report.csv", csv_text(report));
  write_text_file(report.config.out + "/manifest.json", manifest_text(report));
}

void export_solution_vtk(const Mesh& mesh, const RunConfig& config, const Solution& sol) {
  ElementCoeffs yf = [&sol](int t) { return sol.y(t); };
  EdgeCoeffs uf = [&sol](int edge) { return sol.u(edge); };
  export_element_field_vtk(mesh, config.degree, yf, "state", config.out + "/state.vtk");
  export_boundary_field_vtk(mesh, config.degree, uf, "control", config.out + "/control.vtk");
}

} // namespace

ConvergenceReport run_smooth_experiment(const RunConfig& config) {
  if (config.experiment != "smooth")
    throw config_error("config field 'experiment' must be smooth for this driver");
  ProblemData data = base_problem(config);
  SmoothCase exact = smooth_case(config.epsilon, data.beta, data.sigma);
  data.source = exact.source;
  data.desired_state = exact.desired_state;

  ConvergenceReport report;
  report.config = config;
  report.element_exactness = data.element_exactness();
  report.edge_exactness = data.edge_exactness();
  report.manufactured_defect = smooth_optimality_defect(exact, config.epsilon, config.gamma);
  report.manufactured_checked = true;

  const SolveMethod method = make_method(config.method);
  const int err_elem = std::max(2 * config.degree + 4, data.element_exactness());
  const int err_edge = std::max(2 * config.degree + 5, data.edge_exactness());
  for (int level = config.level_min; level <= config.level_max; ++level) {
    Mesh mesh = build_uniform_mesh(level);
    Solution sol;
    LevelRecord rec = solve_level(mesh, data, method, sol);
    ElementCoeffs yf = [&sol](int t) { return sol.y(t); };
    ElementCoeffs zf = [&sol](int t) { return sol.z(t); };
    EdgeCoeffs uf = [&sol](int edge) { return sol.u(edge); };
    rec.err_y = l2_error_domain(mesh, config.degree, yf, exact.state, err_elem);
    rec.err_z = l2_error_domain(mesh, config.degree, zf, exact.adjoint, err_elem);
    rec.err_u = l2_error_boundary(mesh, config.degree, uf, exact.control, err_edge);
    if (report.levels.empty()) {
      report.min_sigma_bar = sol.validation.min_sigma_bar;
      report.beta_sup = sol.validation.beta_sup;
    }
    report.levels.push_back(rec);
  }
  finish_rates(report);
  write_outputs(report);
  return report;
}

ConvergenceReport run_nonsmooth_experiment(const RunConfig& config) {
  if (config.experiment != "nonsmooth")
    throw config_error("config field 'experiment' must be nonsmooth for this driver");
  if (config.reference_level <= config.level_max)
    throw config_error("config field 'reference-level' must exceed the finest study level");
  ProblemData data = base_problem(config);
  data.source = constant_field(0.0);
  data.desired_state = layer_desired_state();
  data.relax_thin_diffusion = true;

  ConvergenceReport report;
  report.config = config;
  report.element_exactness = data.element_exactness();
  report.edge_exactness = data.edge_exactness();
  report.reference_level = config.reference_level;

  const SolveMethod method = make_method(config.method);

  const auto tref = std::chrono::steady_clock::now();
  Mesh ref_mesh = build_uniform_mesh(config.reference_level);
  Solution ref = solve_optimal_control(ref_mesh, data, method);
  report.reference_solve_seconds = seconds_since(tref);
  report.reference_elements = ref_mesh.n_elements();
  report.min_sigma_bar = ref.validation.min_sigma_bar;
  report.beta_sup = ref.validation.beta_sup;
  ElementCoeffs ref_y = [&ref](int t) { return ref.y(t); };
  ElementCoeffs ref_z = [&ref](int t) { return ref.z(t); };
  EdgeCoeffs ref_u = [&ref](int edge) { return ref.u(edge); };

  Mesh finest_mesh;
  Solution finest;
  for (int level = config.level_min; level <= config.level_max; ++level) {
    Mesh mesh = build_uniform_mesh(level);
    Solution sol;
    LevelRecord rec = solve_level(mesh, data, method, sol);
    ElementCoeffs yf = [&sol](int t) { return sol.y(t); };
    ElementCoeffs zf = [&sol](int t) { return sol.z(t); };
    EdgeCoeffs uf = [&sol](int edge) { return sol.u(edge); };
    rec.err_y = nested_l2_distance_domain(mesh, yf, ref_mesh, ref_y, config.degree);
    rec.err_z = nested_l2_distance_domain(mesh, zf, ref_mesh, ref_z, config.degree);
    rec.err_u = nested_l2_distance_boundary(mesh, uf, ref_mesh, ref_u, config.degree);
    report.levels.push_back(rec);
    if (level == config.level_max) {
      finest_mesh = mesh;
      finest = sol;
    }
  }
  finish_rates(report);
  write_outputs(report);
  export_solution_vtk(finest_mesh, config, finest);
  return report;
}

ConvergenceReport run_custom_experiment(const RunConfig& config) {
  if (config.experiment != "custom")
    throw config_error("config field 'experiment' must be custom for this driver");
  ProblemData data = base_problem(config);
  data.source = constant_field(0.0);
  data.desired_state = layer_desired_state();

  ConvergenceReport report;
  report.config = config;
  report.element_exactness = data.element_exactness();
  report.edge_exactness = data.edge_exactness();

  const SolveMethod method = make_method(config.method);
  Mesh finest_mesh;
  Solution finest;
  for (int level = config.level_min; level <= config.level_max; ++level) {
    Mesh mesh = build_uniform_mesh(level);
    Solution sol;
    LevelRecord rec = solve_level(mesh, data, method, sol);
    if (report.levels.empty()) {
      report.min_sigma_bar = sol.validation.min_sigma_bar;
      report.beta_sup = sol.validation.beta_sup;
    }
    report.levels.push_back(rec);
    if (level == config.level_max) {
      finest_mesh = mesh;
      finest = sol;
    }
  }
  finish_rates(report);
  write_outputs(report);
  export_solution_vtk(finest_mesh, config, finest);
  return report;
}

// ------------------------------------------------------------------------
// Emission
// ------------------------------------------------------------------------

namespace {

void append_printf(std::string& s, const char* fmt, ...) {
  char buf[256];
  va_list args;
  va_start(args, fmt);
  std::vsnprintf(buf, sizeof(buf), fmt, args);
  va_end(args);
  s += buf;
}

std::string error_cell(double err) {
  if (std::isnan(err)) return "";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3e", err);
  return buf;
}

std::string rate_cell(const std::vector<double>& rates, std::size_t row) {
  if (row == 0 || row - 1 >= rates.size() || std::isnan(rates[row - 1])) return "";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4f", rates[row - 1]);
  return buf;
}

} // namespace

std::string csv_text(const ConvergenceReport& report) {
  std::string s;
  append_printf(s, "# epsilon = %g\n", report.config.epsilon);
  append_printf(s, "# k = %d\n", report.config.degree);
  append_printf(s, "# gamma = %g\n", report.config.gamma);
  append_printf(s, "# sigma = %s\n", report.config.sigma.c_str());
  append_printf(s, "# method = %s\n", report.config.method.c_str());
  if (report.reference_level >= 0)
    append_printf(s, "# reference_level = %d\n", report.reference_level);
  s += "level,h_over_sqrt2,err_y,rate_y,err_z,rate_z,err_u,rate_u\n";
  for (std::size_t row = 0; row < report.levels.size(); ++row) {
    const LevelRecord& rec = report.levels[row];
    append_printf(s, "%d,%g,%s,%s,%s,%s,%s,%s\n", rec.level, rec.h_over_sqrt2,
                  error_cell(rec.err_y).c_str(), rate_cell(report.rate_y, row).c_str(),
                  error_cell(rec.err_z).c_str(), rate_cell(report.rate_z, row).c_str(),
                  error_cell(rec.err_u).c_str(), rate_cell(report.rate_u, row).c_str());
  }
  return s;
}

std::string manifest_text(const ConvergenceReport& report) {
  nlohmann::json m;
  m["config"] = emit_config(report.config);
  m["quadrature"] = {{"element_exactness", report.element_exactness},
                     {"edge_exactness", report.edge_exactness}};
  m["validation"] = {{"min_sigma_bar", report.min_sigma_bar},
                     {"beta_sup", report.beta_sup}};
  if (report.manufactured_checked)
    m["manufactured_optimality_defect"] = report.manufactured_defect;
  if (report.reference_level >= 0) {
    m["reference"] = {{"level", report.reference_level},
                      {"elements", report.reference_elements},
                      {"solve_seconds", report.reference_solve_seconds}};
  }
  nlohmann::json levels = nlohmann::json::array();
  for (const LevelRecord& rec : report.levels) {
    levels.push_back({{"level", rec.level},
                      {"h_over_sqrt2", rec.h_over_sqrt2},
                      {"err_y", rec.err_y},
                      {"err_z", rec.err_z},
                      {"err_u", rec.err_u},
                      {"optimality_residual_rel", rec.optimality_residual_rel},
                      {"algebraic_residual_rel", rec.algebraic_residual_rel},
                      {"thin_diffusion_ok", rec.thin_diffusion_ok},
                      {"solved_dimension", rec.solved_dimension},
                      {"solve_seconds", rec.solve_seconds}});
  }
  m["levels"] = levels;
  m["rates"] = {{"y", report.rate_y}, {"z", report.rate_z}, {"u", report.rate_u}};
  return m.dump(2) + "\n";
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << content;
  if (!out) throw std::runtime_error("failed writing " + path);
}

} // namespace hdgbc
