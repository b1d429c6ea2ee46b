#ifndef HDGBC_CLI_IO_HPP
#define HDGBC_CLI_IO_HPP

#include "hdgbc/model_problems.hpp"
#include "hdgbc/solver.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace hdgbc {

/// Resolved run parameters. JSON config keys mirror the CLI flag names
/// (kebab-case); flags override file values.
struct RunConfig {
  std::string experiment = "smooth"; // smooth | nonsmooth | custom
  double epsilon = 1e-7;
  double gamma = 1.0;
  int degree = 1;
  int level_min = 1;
  int level_max = 5;
  std::string method = "condensed"; // condensed | monolithic
  std::string sigma = "constant:2";
  std::string beta = "benchmark"; // benchmark | zero | constant:(a,b)
  int quad_boost = 0;
  std::string out = ".";
  int reference_level = 8;
  bool allow_thin_diffusion = false;

  bool operator==(const RunConfig&) const = default;
};

/// Parse and validate a config object; unknown keys and out-of-range values
/// raise config_error naming the offending field.
RunConfig parse_config(const nlohmann::json& j);
RunConfig parse_config_file(const std::string& path);
nlohmann::json emit_config(const RunConfig& config);

ScalarField make_sigma(const std::string& specifier);
VectorField make_beta(const std::string& specifier);
SolveMethod make_method(const std::string& specifier);

/// Largest sampled boundary defect of gamma*u - eps*grad(z).n for the
/// manufactured smooth pair; zero (to roundoff) exactly when gamma = 1.
double smooth_optimality_defect(const SmoothCase& c, double epsilon, double gamma);

struct LevelRecord {
  int level = 0;
  double h_over_sqrt2 = 0.0;
  double err_y = 0.0, err_z = 0.0, err_u = 0.0;
  double optimality_residual_rel = 0.0;
  double algebraic_residual_rel = 0.0;
  bool thin_diffusion_ok = true;
  long solved_dimension = 0;
  double solve_seconds = 0.0;
};

struct ConvergenceReport {
  RunConfig config;
  int element_exactness = 0;
  int edge_exactness = 0;
  double min_sigma_bar = 0.0;
  double beta_sup = 0.0;
  std::vector<LevelRecord> levels;
  std::vector<double> rate_y, rate_z, rate_u; // levels.size() - 1 entries
  // smooth only: sampled defect of the manufactured optimality condition
  double manufactured_defect = 0.0;
  bool manufactured_checked = false;
  // nonsmooth only
  int reference_level = -1;
  long reference_elements = 0;
  double reference_solve_seconds = 0.0;
};

/// Experiment drivers. Each solves the configured level range and writes
/// report.csv plus manifest.json into config.out; the nonsmooth and custom
/// drivers also export state.vtk and control.vtk at the finest level.
ConvergenceReport run_smooth_experiment(const RunConfig& config);
ConvergenceReport run_nonsmooth_experiment(const RunConfig& config);
ConvergenceReport run_custom_experiment(const RunConfig& config);

/// Table-shaped CSV: deterministic byte-for-byte output.
std::string csv_text(const ConvergenceReport& report);
std::string manifest_text(const ConvergenceReport& report);

void write_text_file(const std::string& path, const std::string& content);

} // namespace hdgbc

#endif
