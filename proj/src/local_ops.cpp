#include "hdgbc/local_ops.hpp"

#include <cmath>

namespace hdgbc {

StabilizationValues stabilization_from(double beta_n_sup, double beta_n,
                                       double epsilon, double h) {
  StabilizationValues v;
  const double diffusive = epsilon / h;
  v.tau1 = beta_n_sup + 0.5 * beta_n + diffusive;
  v.tau2 = beta_n_sup - 0.5 * beta_n + diffusive;
  v.tau = beta_n_sup + diffusive;
  return v;
}

namespace {

// beta.n at the edge-rule points of one face; the sup over all faces feeds
// the stabilization weights.
VecX face_beta_n(const Mesh& mesh, const ProblemData& data, int element,
                 int local_edge, const QuadratureRule& rule) {
  const int edge = mesh.element_edges[element][local_edge];
  const Vec2 normal = outward_normal(mesh, element, local_edge);
  VecX values(rule.size());
  for (int q = 0; q < rule.size(); ++q) {
    values(q) = data.beta.value(edge_point(mesh, edge, rule.points(q, 0))).dot(normal);
  }
  return values;
}

} // namespace

double maxnorm_beta_n(const Mesh& mesh, const ProblemData& data, int element) {
  const auto rule = edge_quadrature(data.edge_exactness());
  double sup = 0.0;
  for (int le = 0; le < 3; ++le) {
    sup = std::max(sup, face_beta_n(mesh, data, element, le, rule).cwiseAbs().maxCoeff());
  }
  return sup;
}

StabilizationValues stabilization(const Mesh& mesh, const ProblemData& data,
                                  int element, int local_edge, double s) {
  const int edge = mesh.element_edges[element][local_edge];
  const Vec2 normal = outward_normal(mesh, element, local_edge);
  const double bn = data.beta.value(edge_point(mesh, edge, s)).dot(normal);
  return stabilization_from(maxnorm_beta_n(mesh, data, element), bn, data.epsilon,
                            element_diameter(mesh, element));
}

ElementContext element_context(const Mesh& mesh, const ProblemData& data,
                               int element, const SimplexBasis& elem_basis,
                               const EdgeBasis& edge_basis) {
  ElementContext ctx;
  ctx.element = element;
  ctx.h = element_diameter(mesh, element);
  const ElementMap map = element_map(mesh, element);
  ctx.det_jac = map.det_jac;
  const double scale = 1.0 / std::sqrt(map.det_jac);

  const auto vol_rule = triangle_quadrature(data.element_exactness());
  const int nq = vol_rule.size();
  ctx.x.resize(nq, 2);
  ctx.w.resize(nq);
  ctx.vals.resize(nq, elem_basis.size());
  ctx.grad_x.resize(nq, elem_basis.size());
  ctx.grad_y.resize(nq, elem_basis.size());
  for (int q = 0; q < nq; ++q) {
    const Vec2 xhat(vol_rule.points(q, 0), vol_rule.points(q, 1));
    ctx.x.row(q) = map.to_physical(xhat).transpose();
    ctx.w(q) = vol_rule.weights(q) * map.det_jac;
    ctx.vals.row(q) = (scale * elem_basis.eval(xhat)).transpose();
    const MatX grad = scale * elem_basis.eval_gradient(xhat) * map.inv_jac;
    ctx.grad_x.row(q) = grad.col(0).transpose();
    ctx.grad_y.row(q) = grad.col(1).transpose();
  }

  const auto edge_rule = edge_quadrature(data.edge_exactness());
  const int nqe = edge_rule.size();
  for (int le = 0; le < 3; ++le) {
    EdgeContext& ec = ctx.edges[le];
    ec.edge = mesh.element_edges[element][le];
    ec.interior = !mesh.edge_on_boundary(ec.edge);
    ec.length = edge_length(mesh, ec.edge);
    ec.normal = outward_normal(mesh, element, le);
    ec.s = edge_rule.points.col(0);
    ec.x.resize(nqe, 2);
    ec.w = edge_rule.weights * ec.length;
    ec.elem_vals.resize(nqe, elem_basis.size());
    ec.edge_vals.resize(nqe, edge_basis.size());
    ec.beta_n.resize(nqe);
    const double edge_scale = 1.0 / std::sqrt(ec.length);
    for (int q = 0; q < nqe; ++q) {
      const Vec2 x = edge_point(mesh, ec.edge, ec.s(q));
      ec.x.row(q) = x.transpose();
      ec.elem_vals.row(q) = (scale * elem_basis.eval(map.to_reference(x))).transpose();
      ec.edge_vals.row(q) = (edge_scale * edge_basis.eval(ec.s(q))).transpose();
      ec.beta_n(q) = data.beta.value(x).dot(ec.normal);
    }
    ctx.beta_n_sup = std::max(ctx.beta_n_sup, ec.beta_n.cwiseAbs().maxCoeff());
  }

  for (int le = 0; le < 3; ++le) {
    EdgeContext& ec = ctx.edges[le];
    ec.tau1.resize(nqe);
    ec.tau2.resize(nqe);
    for (int q = 0; q < nqe; ++q) {
      const auto sv =
          stabilization_from(ctx.beta_n_sup, ec.beta_n(q), data.epsilon, ctx.h);
      ec.tau1(q) = sv.tau1;
      ec.tau2(q) = sv.tau2;
    }
  }
  return ctx;
}

LocalBlocks local_form(const ElementContext& ctx, const ProblemData& data,
                       FormKind kind) {
  const int m = static_cast<int>(ctx.vals.cols());
  const int e = static_cast<int>(ctx.edges[0].edge_vals.cols());
  const double conv_sign = kind == FormKind::state ? 1.0 : -1.0;

  LocalBlocks blocks;
  blocks.m = m;
  blocks.e = e;
  blocks.mat = MatX::Zero(blocks.size(), blocks.size());
  MatX& A = blocks.mat;

  const int qx = 0, qy = m, yy = 2 * m; // local offsets

  // Volume terms. Tests index rows, trials index columns.
  const int nq = static_cast<int>(ctx.w.size());
  for (int q = 0; q < nq; ++q) {
    const Vec2 x = ctx.x.row(q).transpose();
    const double w = ctx.w(q);
    const Vec2 beta = data.beta.value(x);
    const double reaction = kind == FormKind::state
                                ? data.sigma(x)
                                : data.sigma(x) + data.beta.divergence(x);
    const auto phi = ctx.vals.row(q);
    const auto dphix = ctx.grad_x.row(q);
    const auto dphiy = ctx.grad_y.row(q);

    // eps^{-1} (q, r)
    A.block(qx, qx, m, m).noalias() += (w / data.epsilon) * phi.transpose() * phi;
    A.block(qy, qy, m, m).noalias() += (w / data.epsilon) * phi.transpose() * phi;
    // -(y, div r)
    A.block(qx, yy, m, m).noalias() -= w * dphix.transpose() * phi;
    A.block(qy, yy, m, m).noalias() -= w * dphiy.transpose() * phi;
    // -(w, div q)
    A.block(yy, qx, m, m).noalias() -= w * phi.transpose() * dphix;
    A.block(yy, qy, m, m).noalias() -= w * phi.transpose() * dphiy;
    // +/- (y, beta . grad w) and the reaction
    const auto beta_grad = (beta(0) * dphix + beta(1) * dphiy).eval();
    A.block(yy, yy, m, m).noalias() +=
        conv_sign * w * beta_grad.transpose() * phi;
    A.block(yy, yy, m, m).noalias() -= w * reaction * phi.transpose() * phi;
  }

  // Face terms.
  for (int le = 0; le < 3; ++le) {
    const EdgeContext& ec = ctx.edges[le];
    const int tt = blocks.trace_index(le);
    blocks.edge_ids[le] = ec.edge;
    blocks.edge_interior[le] = ec.interior;
    const int nqe = static_cast<int>(ec.w.size());
    for (int q = 0; q < nqe; ++q) {
      const double w = ec.w(q);
      const double tau = kind == FormKind::state ? ec.tau1(q) : ec.tau2(q);
      const auto phi = ec.elem_vals.row(q);
      const auto psi = ec.edge_vals.row(q);

      // +<trace, r.n>
      A.block(qx, tt, m, e).noalias() += w * ec.normal(0) * phi.transpose() * psi;
      A.block(qy, tt, m, e).noalias() += w * ec.normal(1) * phi.transpose() * psi;
      // +<what, q.n>
      A.block(tt, qx, e, m).noalias() += w * ec.normal(0) * psi.transpose() * phi;
      A.block(tt, qy, e, m).noalias() += w * ec.normal(1) * psi.transpose() * phi;
      // -<tau (y - trace), w - what>
      A.block(yy, yy, m, m).noalias() -= w * tau * phi.transpose() * phi;
      A.block(yy, tt, m, e).noalias() += w * tau * phi.transpose() * psi;
      A.block(tt, yy, e, m).noalias() += w * tau * psi.transpose() * phi;
      A.block(tt, tt, e, e).noalias() -= w * tau * psi.transpose() * psi;
      // -/+ <trace, beta.n w>
      A.block(yy, tt, m, e).noalias() -=
          conv_sign * w * ec.beta_n(q) * phi.transpose() * psi;
    }
  }
  return blocks;
}

MatX local_mass(const ElementContext& ctx) {
  const int m = static_cast<int>(ctx.vals.cols());
  MatX mass = MatX::Zero(m, m);
  for (int q = 0; q < static_cast<int>(ctx.w.size()); ++q) {
    mass.noalias() += ctx.w(q) * ctx.vals.row(q).transpose() * ctx.vals.row(q);
  }
  return mass;
}

MatX local_control_columns(const ElementContext& ctx, int local_edge) {
  const EdgeContext& ec = ctx.edges[local_edge];
  const int m = static_cast<int>(ctx.vals.cols());
  const int e = static_cast<int>(ec.edge_vals.cols());
  MatX cols = MatX::Zero(3 * m, e);
  for (int q = 0; q < static_cast<int>(ec.w.size()); ++q) {
    const double w = ec.w(q);
    const auto phi = ec.elem_vals.row(q);
    const auto psi = ec.edge_vals.row(q);
    cols.block(0, 0, m, e).noalias() -= w * ec.normal(0) * phi.transpose() * psi;
    cols.block(m, 0, m, e).noalias() -= w * ec.normal(1) * phi.transpose() * psi;
    cols.block(2 * m, 0, m, e).noalias() -= w * ec.tau2(q) * phi.transpose() * psi;
  }
  return cols;
}

OptimalityRowBlocks local_optimality_row(const ElementContext& ctx,
                                         const ProblemData& data,
                                         int local_edge) {
  const EdgeContext& ec = ctx.edges[local_edge];
  const int m = static_cast<int>(ctx.vals.cols());
  const int e = static_cast<int>(ec.edge_vals.cols());
  OptimalityRowBlocks rows;
  rows.p_cols = MatX::Zero(e, 2 * m);
  rows.z_cols = MatX::Zero(e, m);
  rows.u_cols = MatX::Zero(e, e);
  for (int q = 0; q < static_cast<int>(ec.w.size()); ++q) {
    const double w = ec.w(q);
    const auto phi = ec.elem_vals.row(q);
    const auto psi = ec.edge_vals.row(q);
    rows.p_cols.block(0, 0, e, m).noalias() +=
        w * ec.normal(0) * psi.transpose() * phi;
    rows.p_cols.block(0, m, e, m).noalias() +=
        w * ec.normal(1) * psi.transpose() * phi;
    rows.z_cols.noalias() += w * ec.tau2(q) * psi.transpose() * phi;
    rows.u_cols.noalias() += w * data.gamma * psi.transpose() * psi;
  }
  return rows;
}

VecX local_state_load(const ElementContext& ctx, const ProblemData& data) {
  const int m = static_cast<int>(ctx.vals.cols());
  VecX load = VecX::Zero(m);
  for (int q = 0; q < static_cast<int>(ctx.w.size()); ++q) {
    load.noalias() -= ctx.w(q) * data.source(ctx.x.row(q).transpose()) *
                      ctx.vals.row(q).transpose();
  }
  return load;
}

VecX local_adjoint_load(const ElementContext& ctx, const ProblemData& data) {
  const int m = static_cast<int>(ctx.vals.cols());
  VecX load = VecX::Zero(m);
  for (int q = 0; q < static_cast<int>(ctx.w.size()); ++q) {
    load.noalias() += ctx.w(q) * data.desired_state(ctx.x.row(q).transpose()) *
                      ctx.vals.row(q).transpose();
  }
  return load;
}

} // namespace hdgbc
