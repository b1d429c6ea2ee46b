#include "hdgbc/model_problems.hpp"

#include <cmath>

namespace hdgbc {

VectorField benchmark_convection() {
  VectorField beta;
  beta.value = [](const Vec2& x) {
    return Vec2(-x[0] * x[0] * std::sin(x[1]), -std::cos(x[0]) * std::exp(x[1]));
  };
  beta.divergence = [](const Vec2& x) {
    return -(2.0 * x[0] * std::sin(x[1]) + std::cos(x[0]) * std::exp(x[1]));
  };
  return beta;
}

VectorField constant_convection(double bx, double by) {
  VectorField beta;
  beta.value = [bx, by](const Vec2&) { return Vec2(bx, by); };
  beta.divergence = [](const Vec2&) { return 0.0; };
  return beta;
}

VectorField zero_convection() { return constant_convection(0.0, 0.0); }

ScalarField constant_field(double value) {
  return [value](const Vec2&) { return value; };
}

SmoothCase smooth_case(double epsilon, const VectorField& beta, const ScalarField& sigma) {
  const double pi = M_PI;
  SmoothCase c;
  c.state = [epsilon, pi](const Vec2& x) {
    return -epsilon * pi * (std::sin(pi * x[0]) + std::sin(pi * x[1]));
  };
  c.adjoint = [pi](const Vec2& x) { return std::sin(pi * x[0]) * std::sin(pi * x[1]); };
  c.control = c.state;
  c.state_gradient = [epsilon, pi](const Vec2& x) {
    return Vec2(-epsilon * pi * pi * std::cos(pi * x[0]),
                -epsilon * pi * pi * std::cos(pi * x[1]));
  };
  c.adjoint_gradient = [pi](const Vec2& x) {
    return Vec2(pi * std::cos(pi * x[0]) * std::sin(pi * x[1]),
                pi * std::sin(pi * x[0]) * std::cos(pi * x[1]));
  };

  auto state_laplacian = [epsilon, pi](const Vec2& x) {
    return epsilon * pi * pi * pi * (std::sin(pi * x[0]) + std::sin(pi * x[1]));
  };
  auto adjoint_laplacian = [pi](const Vec2& x) {
    return -2.0 * pi * pi * std::sin(pi * x[0]) * std::sin(pi * x[1]);
  };

  c.source = [epsilon, beta, sigma, y = c.state, dy = c.state_gradient,
              lap = state_laplacian](const Vec2& x) {
    return -epsilon * lap(x) + beta.value(x).dot(dy(x)) +
           (beta.divergence(x) + sigma(x)) * y(x);
  };
  c.desired_state = [epsilon, beta, sigma, y = c.state, z = c.adjoint,
                     dz = c.adjoint_gradient, lap = adjoint_laplacian](const Vec2& x) {
    return y(x) + epsilon * lap(x) + beta.value(x).dot(dz(x)) - sigma(x) * z(x);
  };
  return c;
}

ProblemData smooth_problem(double epsilon, double gamma, int degree,
                           const ScalarField& sigma) {
  ProblemData data;
  data.epsilon = epsilon;
  data.gamma = gamma;
  data.degree = degree;
  data.beta = benchmark_convection();
  data.sigma = sigma;
  SmoothCase c = smooth_case(epsilon, data.beta, sigma);
  data.source = c.source;
  data.desired_state = c.desired_state;
  return data;
}

ScalarField layer_desired_state() {
  return [](const Vec2& x) {
    return x[0] * (1.0 - x[0]) * x[1] * (1.0 - x[1]);
  };
}

ProblemData nonsmooth_problem(double epsilon, double gamma, int degree,
                              const ScalarField& sigma) {
  ProblemData data;
  data.epsilon = epsilon;
  data.gamma = gamma;
  data.degree = degree;
  data.beta = benchmark_convection();
  data.sigma = sigma;
  data.source = constant_field(0.0);
  data.desired_state = layer_desired_state();
  data.relax_thin_diffusion = true;
  return data;
}

} // namespace hdgbc
