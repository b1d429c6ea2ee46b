#include "hdgbc/norms.hpp"

#include "hdgbc/basis.hpp"
#include "hdgbc/local_ops.hpp"
#include "hdgbc/projections.hpp"
#include "hdgbc/quadrature.hpp"

#include <cmath>
#include <limits>

namespace hdgbc {

double l2_error_domain(const Mesh& mesh, int degree, const ElementCoeffs& coeffs,
                       const ScalarField& exact, int quad_exactness) {
  SimplexBasis ref(degree);
  const QuadratureRule& quad = triangle_quadrature(quad_exactness);
  double acc = 0.0;
  for (int t = 0; t < mesh.n_elements(); ++t) {
    ElementBasis basis = element_basis(ref, mesh, t);
    VecX c = coeffs(t);
    for (int g = 0; g < quad.size(); ++g) {
      Vec2 xr = quad.points.row(g).transpose();
      Vec2 x = basis.map.to_physical(xr);
      double diff = basis.eval(x).dot(c) - exact(x);
      acc += quad.weights[g] * basis.map.det_jac * diff * diff;
    }
  }
  return std::sqrt(acc);
}

double l2_error_boundary(const Mesh& mesh, int degree, const EdgeCoeffs& coeffs,
                         const ScalarField& exact, int quad_exactness) {
  EdgeBasis basis(degree);
  const QuadratureRule& quad = edge_quadrature(quad_exactness);
  double acc = 0.0;
  for (int edge = 0; edge < mesh.n_edges(); ++edge) {
    if (!mesh.edge_on_boundary(edge)) continue;
    double len = edge_length(mesh, edge);
    VecX c = coeffs(edge);
    for (int g = 0; g < quad.size(); ++g) {
      double s = quad.points(g, 0);
      double diff = basis.eval(s).dot(c) / std::sqrt(len) - exact(edge_point(mesh, edge, s));
      acc += quad.weights[g] * len * diff * diff;
    }
  }
  return std::sqrt(acc);
}

double triple_norm(const Mesh& mesh, const ProblemData& data,
                   const FormLayout& layout, const VecX& triple,
                   TripleNormVariant variant) {
  SimplexBasis ref(data.degree);
  EdgeBasis edge_ref(data.degree);
  const double eps = data.epsilon;
  const double shift = variant == TripleNormVariant::full ? beta0(data) : 0.0;
  const int m = layout.m;
  double acc = 0.0;
  for (int t = 0; t < mesh.n_elements(); ++t) {
    ElementContext ctx = element_context(mesh, data, t, ref, edge_ref);
    VecX qx = triple.segment(layout.q_offset(t), m);
    VecX qy = triple.segment(layout.q_offset(t) + m, m);
    VecX yc = triple.segment(layout.y_offset(t), m);
    for (int g = 0; g < ctx.w.size(); ++g) {
      Vec2 x = ctx.x.row(g).transpose();
      double q2 = std::pow(ctx.vals.row(g).dot(qx), 2) + std::pow(ctx.vals.row(g).dot(qy), 2);
      double dy2 = std::pow(ctx.grad_x.row(g).dot(yc), 2) + std::pow(ctx.grad_y.row(g).dot(yc), 2);
      double y = ctx.vals.row(g).dot(yc);
      double weight = shift + data.sigma_bar(x);
      acc += ctx.w[g] * (q2 / eps + eps * dy2 + weight * y * y);
    }
    for (const EdgeContext& ec : ctx.edges) {
      VecX trace = VecX::Zero(layout.e);
      if (ec.interior) trace = triple.segment(layout.trace_offset_of(ec.edge), layout.e);
      for (int g = 0; g < ec.w.size(); ++g) {
        double tau = 0.5 * (ec.tau1[g] + ec.tau2[g]);
        double jump = ec.elem_vals.row(g).dot(yc) - ec.edge_vals.row(g).dot(trace);
        acc += ec.w[g] * tau * jump * jump;
      }
    }
  }
  return std::sqrt(acc);
}

double energy_quadratic(const Mesh& mesh, const ProblemData& data,
                        const FormLayout& layout, const VecX& triple) {
  SimplexBasis ref(data.degree);
  EdgeBasis edge_ref(data.degree);
  const int m = layout.m;
  double acc = 0.0;
  for (int t = 0; t < mesh.n_elements(); ++t) {
    ElementContext ctx = element_context(mesh, data, t, ref, edge_ref);
    VecX qx = triple.segment(layout.q_offset(t), m);
    VecX qy = triple.segment(layout.q_offset(t) + m, m);
    VecX yc = triple.segment(layout.y_offset(t), m);
    for (int g = 0; g < ctx.w.size(); ++g) {
      Vec2 x = ctx.x.row(g).transpose();
      double q2 = std::pow(ctx.vals.row(g).dot(qx), 2) + std::pow(ctx.vals.row(g).dot(qy), 2);
      double y = ctx.vals.row(g).dot(yc);
      acc += ctx.w[g] * (q2 / data.epsilon + data.sigma_bar(x) * y * y);
    }
    for (const EdgeContext& ec : ctx.edges) {
      VecX trace = VecX::Zero(layout.e);
      if (ec.interior) trace = triple.segment(layout.trace_offset_of(ec.edge), layout.e);
      for (int g = 0; g < ec.w.size(); ++g) {
        double tau = 0.5 * (ec.tau1[g] + ec.tau2[g]);
        double jump = ec.elem_vals.row(g).dot(yc) - ec.edge_vals.row(g).dot(trace);
        acc += ec.w[g] * tau * jump * jump;
      }
    }
  }
  return acc;
}

std::vector<double> convergence_rates(const std::vector<double>& errors,
                                      const std::vector<double>& h) {
  std::vector<double> rates;
  for (std::size_t l = 1; l < errors.size(); ++l) {
    double rate = std::numeric_limits<double>::quiet_NaN();
    if (errors[l] > 0.0 && errors[l - 1] > 0.0 && h[l] != h[l - 1])
      rate = std::log(errors[l - 1] / errors[l]) / std::log(h[l - 1] / h[l]);
    rates.push_back(rate);
  }
  return rates;
}

// ------------------------------------------------------------------------
// Field location utilities
// ------------------------------------------------------------------------

int argmax_element_abs(const Mesh& mesh, int degree, const ElementCoeffs& coeffs) {
  SimplexBasis ref(degree);
  MatX samples(7, 2);
  samples << 0, 0, 1, 0, 0, 1, 0.5, 0, 0.5, 0.5, 0, 0.5, 1.0 / 3.0, 1.0 / 3.0;
  int best = 0;
  double best_val = -1.0;
  for (int t = 0; t < mesh.n_elements(); ++t) {
    ElementBasis basis = element_basis(ref, mesh, t);
    VecX c = coeffs(t);
    for (int g = 0; g < samples.rows(); ++g) {
      Vec2 x = basis.map.to_physical(samples.row(g).transpose());
      double v = std::abs(basis.eval(x).dot(c));
      if (v > best_val) {
        best_val = v;
        best = t;
      }
    }
  }
  return best;
}

int argmax_boundary_edge_abs(const Mesh& mesh, int degree, const EdgeCoeffs& coeffs) {
  EdgeBasis basis(degree);
  int best = -1;
  double best_val = -1.0;
  for (int edge = 0; edge < mesh.n_edges(); ++edge) {
    if (!mesh.edge_on_boundary(edge)) continue;
    double scale = 1.0 / std::sqrt(edge_length(mesh, edge));
    VecX c = coeffs(edge);
    for (double s : {0.0, 0.25, 0.5, 0.75, 1.0}) {
      double v = std::abs(basis.eval(s).dot(c)) * scale;
      if (v > best_val) {
        best_val = v;
        best = edge;
      }
    }
  }
  return best;
}

bool element_touches_boundary(const Mesh& mesh, int element) {
  for (int v : mesh.elements.at(element))
    if (mesh.vertex_on_boundary[v]) return true;
  return false;
}

double edge_distance_to_corner(const Mesh& mesh, int edge) {
  const auto& ev = mesh.edges.at(edge);
  Vec2 mid = 0.5 * (mesh.vertices[ev[0]] + mesh.vertices[ev[1]]);
  double best = std::numeric_limits<double>::infinity();
  for (double cx : {0.0, 1.0})
    for (double cy : {0.0, 1.0}) best = std::min(best, (mid - Vec2(cx, cy)).norm());
  return best;
}

} // namespace hdgbc
