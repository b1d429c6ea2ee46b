#include "hdgbc/basis.hpp"

#include <cmath>

namespace hdgbc {

namespace {

void check_degree(int degree) {
  if (degree < 0 || degree > max_basis_degree) {
    throw config_error("polynomial degree " + std::to_string(degree) +
                       " outside supported range [0, " +
                       std::to_string(max_basis_degree) + "]");
  }
}

// Exact monomial moment over the reference triangle: a! b! / (a+b+2)!.
double triangle_moment(int a, int b) {
  double value = 1.0;
  // a! b! / (a+b+2)! evaluated as a stable product of ratios.
  for (int i = 1; i <= a; ++i) value *= static_cast<double>(i);
  for (int i = 1; i <= b; ++i) value *= static_cast<double>(i);
  for (int i = 1; i <= a + b + 2; ++i) value /= static_cast<double>(i);
  return value;
}

} // namespace

SimplexBasis::SimplexBasis(int degree) : degree_(degree) {
  check_degree(degree);
  const int n = simplex_space_dim(degree);

  expo_.resize(n, 2);
  int row = 0;
  for (int total = 0; total <= degree; ++total) {
    for (int b = 0; b <= total; ++b, ++row) {
      expo_(row, 0) = total - b;
      expo_(row, 1) = b;
    }
  }

  MatX moments(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      moments(i, j) = triangle_moment(expo_(i, 0) + expo_(j, 0),
                                      expo_(i, 1) + expo_(j, 1));
    }
  }

  // Two Cholesky passes bring the Gram residual down to rounding level even
  // for degree 3, where the monomial moment matrix is poorly conditioned.
  MatX basis = MatX::Identity(n, n);
  for (int pass = 0; pass < 2; ++pass) {
    const MatX gram = basis.transpose() * moments * basis;
    Eigen::LLT<MatX> llt(gram);
    basis = llt.matrixL().solve(basis.transpose()).transpose();
  }
  coeff_ = basis.transpose();
}

VecX SimplexBasis::eval(const Vec2& xhat) const {
  const int nm = static_cast<int>(expo_.rows());
  VecX mono(nm);
  for (int j = 0; j < nm; ++j) {
    mono(j) = std::pow(xhat(0), expo_(j, 0)) * std::pow(xhat(1), expo_(j, 1));
  }
  return coeff_ * mono;
}

MatX SimplexBasis::eval(const MatX& points) const {
  const int np = static_cast<int>(points.rows());
  MatX values(np, size());
  for (int q = 0; q < np; ++q) {
    values.row(q) = eval(Vec2(points(q, 0), points(q, 1))).transpose();
  }
  return values;
}

MatX SimplexBasis::eval_gradient(const Vec2& xhat) const {
  const int nm = static_cast<int>(expo_.rows());
  VecX dmx(nm), dmy(nm);
  for (int j = 0; j < nm; ++j) {
    const int a = expo_(j, 0), b = expo_(j, 1);
    dmx(j) = a == 0 ? 0.0 : a * std::pow(xhat(0), a - 1) * std::pow(xhat(1), b);
    dmy(j) = b == 0 ? 0.0 : b * std::pow(xhat(0), a) * std::pow(xhat(1), b - 1);
  }
  MatX grad(size(), 2);
  grad.col(0) = coeff_ * dmx;
  grad.col(1) = coeff_ * dmy;
  return grad;
}

void SimplexBasis::eval_gradient(const MatX& points, MatX& dx, MatX& dy) const {
  const int np = static_cast<int>(points.rows());
  dx.resize(np, size());
  dy.resize(np, size());
  for (int q = 0; q < np; ++q) {
    const MatX grad = eval_gradient(Vec2(points(q, 0), points(q, 1)));
    dx.row(q) = grad.col(0).transpose();
    dy.row(q) = grad.col(1).transpose();
  }
}

EdgeBasis::EdgeBasis(int degree) : degree_(degree) { check_degree(degree); }

VecX EdgeBasis::eval(double s) const {
  // sqrt(2n+1) P_n(2s-1) is orthonormal on [0,1].
  VecX values(size());
  const double x = 2.0 * s - 1.0;
  double p0 = 1.0, p1 = x;
  for (int n = 0; n <= degree_; ++n) {
    if (n == 0) {
      values(n) = 1.0;
    } else if (n == 1) {
      values(n) = std::sqrt(3.0) * x;
    } else {
      const double p2 = ((2 * n - 1) * x * p1 - (n - 1) * p0) / n;
      p0 = p1;
      p1 = p2;
      values(n) = std::sqrt(2.0 * n + 1.0) * p2;
    }
  }
  return values;
}

MatX EdgeBasis::eval(const VecX& points) const {
  MatX values(points.size(), size());
  for (int q = 0; q < points.size(); ++q) {
    values.row(q) = eval(points(q)).transpose();
  }
  return values;
}

} // namespace hdgbc
