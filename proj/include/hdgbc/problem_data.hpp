#ifndef HDGBC_PROBLEM_DATA_HPP
#define HDGBC_PROBLEM_DATA_HPP

#include "hdgbc/common.hpp"
#include "hdgbc/mesh.hpp"

namespace hdgbc {

/// Everything that defines one discrete optimal-control problem apart from
/// the mesh: PDE coefficients, data, regularization weight, discretization
/// degree and quadrature strength.
///
/// Standing assumptions checked by validate():
///   effective reaction: sigma + div(beta)/2 >= 0 on the closure of the domain,
///   thin diffusion: epsilon < min element diameter (convection-dominated regime).
/// The thin-diffusion bound excludes fine meshes at moderate epsilon; the layer
/// experiments need exactly those runs, so relax_thin_diffusion downgrades that
/// violation to a diagnostic instead of an error.
struct ProblemData {
  double epsilon = 1e-7;
  double gamma = 1.0;
  int degree = 1;
  int quad_boost = 0;
  VectorField beta;
  ScalarField sigma;
  ScalarField source;        // state equation right-hand side
  ScalarField desired_state; // misfit target in the cost functional
  bool relax_thin_diffusion = false;

  int element_exactness() const { return 2 * degree + 4 + quad_boost; }
  int edge_exactness() const { return 2 * degree + 5 + quad_boost; }

  /// Effective reaction of the symmetrized operator, sigma + div(beta)/2.
  double sigma_bar(const Vec2& x) const {
    return sigma(x) + 0.5 * beta.divergence(x);
  }
};

struct ValidationReport {
  double min_sigma_bar = 0.0;
  Vec2 argmin_sigma_bar = Vec2::Zero();
  double beta_sup = 0.0; // max |beta| over the sample grid
  double min_h = 0.0;
  bool effective_reaction_ok = false;
  bool thin_diffusion_ok = false;
};

/// Samples the effective reaction on a dense grid, checks the thin-diffusion
/// bound against the mesh, and collects the convection magnitude. Throws
/// validation_error on violations (thin diffusion only when not relaxed).
ValidationReport validate(const ProblemData& data, const Mesh& mesh);

/// sup|beta| / L with L = sqrt(2), the domain diameter; scales the zeroth
/// order weight of the stronger seminorm.
double beta0(const ProblemData& data);

} // namespace hdgbc

#endif
