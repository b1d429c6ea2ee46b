#ifndef HDGBC_COMMON_HPP
#define HDGBC_COMMON_HPP

#include <Eigen/Dense>

#include <functional>
#include <stdexcept>
#include <string>

namespace hdgbc {

using Vec2 = Eigen::Vector2d;
using VecX = Eigen::VectorXd;
using MatX = Eigen::MatrixXd;

/// Pointwise scalar coefficient or datum, evaluated at physical coordinates.
using ScalarField = std::function<double(const Vec2&)>;

/// Convection field together with its analytic divergence (needed by the
/// reaction coefficient of the adjoint equation and the effective-reaction
/// check).
struct VectorField {
  std::function<Vec2(const Vec2&)> value;
  ScalarField divergence;
};

/// Invalid run parameters, unsupported degrees, malformed config files.
struct config_error : std::runtime_error {
  explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

/// Violated model assumptions (nonnegativity of the effective reaction,
/// diffusion vs. mesh-size requirement).
struct validation_error : std::runtime_error {
  explicit validation_error(const std::string& what) : std::runtime_error(what) {}
};

/// Linear algebra failures: singular matrices, factorization breakdown.
struct solver_error : std::runtime_error {
  explicit solver_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace hdgbc

#endif
