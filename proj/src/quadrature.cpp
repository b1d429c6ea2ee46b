#include "hdgbc/quadrature.hpp"

#include <cmath>
#include <map>

namespace hdgbc {

namespace {

void check_exactness(int exactness) {
  if (exactness < 0 || exactness > max_quadrature_exactness) {
    throw config_error("quadrature exactness " + std::to_string(exactness) +
                       " outside supported range [0, " +
                       std::to_string(max_quadrature_exactness) + "]");
  }
}

// Legendre value and derivative at x by the three-term recurrence.
std::pair<double, double> legendre(int n, double x) {
  double p0 = 1.0, p1 = x;
  if (n == 0) return {p0, 0.0};
  for (int j = 2; j <= n; ++j) {
    const double p2 = ((2 * j - 1) * x * p1 - (j - 1) * p0) / j;
    p0 = p1;
    p1 = p2;
  }
  const double dp = n * (x * p1 - p0) / (x * x - 1.0);
  return {p1, dp};
}

// n-point Gauss-Legendre nodes/weights on [-1,1], Newton refinement of the
// Chebyshev initial guess.
void gauss_legendre(int n, VecX& nodes, VecX& weights) {
  nodes.resize(n);
  weights.resize(n);
  for (int i = 0; i < n; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      const auto [p, d] = legendre(n, x);
      dp = d;
      const double dx = p / d;
      x -= dx;
      if (std::abs(dx) < 1e-15) {
        dp = legendre(n, x).second;
        break;
      }
    }
    nodes(n - 1 - i) = x;
    weights(n - 1 - i) = 2.0 / ((1.0 - x * x) * dp * dp);
  }
}

// Same rule shifted to [0,1].
void gauss_legendre_unit(int n, VecX& nodes, VecX& weights) {
  gauss_legendre(n, nodes, weights);
  nodes = (nodes.array() + 1.0) * 0.5;
  weights *= 0.5;
}

} // namespace

QuadratureRule edge_quadrature(int exactness) {
  check_exactness(exactness);
  static std::map<int, QuadratureRule> cache;
  auto it = cache.find(exactness);
  if (it != cache.end()) return it->second;

  const int n = (exactness + 2) / 2; // 2n-1 >= exactness
  QuadratureRule rule;
  VecX s, w;
  gauss_legendre_unit(n, s, w);
  rule.points = s;
  rule.weights = w;
  rule.exactness = exactness;
  cache[exactness] = rule;
  return rule;
}

QuadratureRule triangle_quadrature(int exactness) {
  check_exactness(exactness);
  static std::map<int, QuadratureRule> cache;
  auto it = cache.find(exactness);
  if (it != cache.end()) return it->second;

  // Collapse [0,1]^2 onto the triangle via x = xi*(1-eta), y = eta. The
  // Jacobian factor (1-eta) raises the eta-degree by one.
  const int n_xi = (exactness + 2) / 2;
  const int n_eta = (exactness + 3) / 2;
  VecX xi, wxi, eta, weta;
  gauss_legendre_unit(n_xi, xi, wxi);
  gauss_legendre_unit(n_eta, eta, weta);

  QuadratureRule rule;
  rule.points.resize(n_xi * n_eta, 2);
  rule.weights.resize(n_xi * n_eta);
  int q = 0;
  for (int j = 0; j < n_eta; ++j) {
    for (int i = 0; i < n_xi; ++i, ++q) {
      rule.points(q, 0) = xi(i) * (1.0 - eta(j));
      rule.points(q, 1) = eta(j);
      rule.weights(q) = wxi(i) * weta(j) * (1.0 - eta(j));
    }
  }
  rule.exactness = exactness;
  cache[exactness] = rule;
  return rule;
}

} // namespace hdgbc
