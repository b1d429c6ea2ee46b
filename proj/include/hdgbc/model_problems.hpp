#ifndef HDGBC_MODEL_PROBLEMS_HPP
#define HDGBC_MODEL_PROBLEMS_HPP

#include "hdgbc/problem_data.hpp"

namespace hdgbc {

// ------------------------------------------------------------------------
// Named convection fields selectable from configuration
// ------------------------------------------------------------------------

/// The benchmark convection -(x1^2 sin x2, cos(x1) e^{x2}) used by both
/// experiment drivers, with its closed-form divergence.
VectorField benchmark_convection();
VectorField constant_convection(double bx, double by);
VectorField zero_convection();

ScalarField constant_field(double value);

// ------------------------------------------------------------------------
// Smooth manufactured optimum
// ------------------------------------------------------------------------

/// Exact optimal-control triple with
///   y = -eps*pi*(sin(pi x1) + sin(pi x2)),  z = sin(pi x1) sin(pi x2),
/// and u = y restricted to the boundary. The pair satisfies the first-order
/// optimality condition gamma*u - eps*dz/dn = 0 exactly when gamma = 1; the
/// data f and y_d below are manufactured from the chosen sigma so that y and
/// z solve the state and adjoint equations.
struct SmoothCase {
  ScalarField state;          // y
  ScalarField adjoint;        // z
  ScalarField control;        // u = y restricted to the boundary
  std::function<Vec2(const Vec2&)> state_gradient;
  std::function<Vec2(const Vec2&)> adjoint_gradient;
  ScalarField source;         // f
  ScalarField desired_state;  // y_d
};

SmoothCase smooth_case(double epsilon, const VectorField& beta, const ScalarField& sigma);

/// Problem data for the smooth study: benchmark convection, manufactured
/// f and y_d for the given sigma.
ProblemData smooth_problem(double epsilon, double gamma, int degree,
                           const ScalarField& sigma);

// ------------------------------------------------------------------------
// Layer (non-smooth) study
// ------------------------------------------------------------------------

/// Desired state x1(1-x1) x2(1-x2), zero source; the optimal control is not
/// known in closed form and develops boundary layers as epsilon shrinks.
ScalarField layer_desired_state();

ProblemData nonsmooth_problem(double epsilon, double gamma, int degree,
                              const ScalarField& sigma);

} // namespace hdgbc

#endif
