#include "hdgbc/problem_data.hpp"

#include "hdgbc/basis.hpp"
#include "hdgbc/quadrature.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace hdgbc {

namespace {

constexpr int grid_samples = 201; // per direction, endpoints included
constexpr double a1_slack = 1e-10;

} // namespace

ValidationReport validate(const ProblemData& data, const Mesh& mesh) {
  if (data.epsilon <= 0.0) throw validation_error("epsilon must be positive");
  if (data.gamma <= 0.0) throw validation_error("gamma must be positive");
  if (data.degree < 0 || data.degree > max_basis_degree) {
    throw validation_error("degree " + std::to_string(data.degree) +
                           " outside supported range [0, " +
                           std::to_string(max_basis_degree) + "]");
  }
  if (data.element_exactness() < 2 * data.degree ||
      data.edge_exactness() > max_quadrature_exactness) {
    throw validation_error("quadrature boost " + std::to_string(data.quad_boost) +
                           " leaves exactness outside [" +
                           std::to_string(2 * data.degree) + ", " +
                           std::to_string(max_quadrature_exactness) + "]");
  }
  if (!data.beta.value || !data.beta.divergence || !data.sigma) {
    throw validation_error("beta, div(beta) and sigma must all be set");
  }

  ValidationReport report;
  report.min_sigma_bar = std::numeric_limits<double>::max();
  const double step = 1.0 / (grid_samples - 1);
  for (int j = 0; j < grid_samples; ++j) {
    for (int i = 0; i < grid_samples; ++i) {
      const Vec2 x(i * step, j * step);
      const double sb = data.sigma_bar(x);
      if (sb < report.min_sigma_bar) {
        report.min_sigma_bar = sb;
        report.argmin_sigma_bar = x;
      }
      report.beta_sup = std::max(report.beta_sup, data.beta.value(x).norm());
    }
  }
  report.effective_reaction_ok = report.min_sigma_bar >= -a1_slack;

  report.min_h = mesh_statistics(mesh).h_min;
  report.thin_diffusion_ok = data.epsilon < report.min_h;

  if (!report.effective_reaction_ok) {
    std::ostringstream msg;
    msg << "effective reaction sigma + div(beta)/2 = " << report.min_sigma_bar
        << " < 0 at (" << report.argmin_sigma_bar(0) << ", "
        << report.argmin_sigma_bar(1) << ")";
    throw validation_error(msg.str());
  }
  if (!report.thin_diffusion_ok && !data.relax_thin_diffusion) {
    std::ostringstream msg;
    msg << "epsilon = " << data.epsilon
        << " is not below the smallest element diameter " << report.min_h
        << " (convection-dominated regime assumption)";
    throw validation_error(msg.str());
  }
  return report;
}

double beta0(const ProblemData& data) {
  double sup = 0.0;
  const double step = 1.0 / (grid_samples - 1);
  for (int j = 0; j < grid_samples; ++j) {
    for (int i = 0; i < grid_samples; ++i) {
      sup = std::max(sup, data.beta.value(Vec2(i * step, j * step)).norm());
    }
  }
  return sup / std::sqrt(2.0);
}

} // namespace hdgbc
