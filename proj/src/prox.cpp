#include "bvms/prox.hpp"

#include "parallel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace bvms {

namespace {

void require_positive(double x, const char* what) {
  if (!(x > 0.0) || !std::isfinite(x)) throw std::invalid_argument(std::string(what) + " must be positive");
}

void ensure_shape(ScalarField& out, const ScalarField& like) {
  if (!out.same_shape(like)) out = ScalarField(like.rows(), like.cols());
}

void ensure_shape(VectorField& out, const VectorField& like) {
  if (!out.same_shape(like)) out = VectorField(like.rows(), like.cols());
}

}  // namespace

void prox_data_u_into(const ScalarField& ubar, const ScalarField& g, double t, double beta, ScalarField& out) {
  require_same_shape(ubar, g, "prox_data_u");
  require_positive(t, "prox_data_u: t");
  if (!(beta >= 0.0)) throw std::invalid_argument("prox_data_u: beta must be >= 0");
  ensure_shape(out, ubar);
  // ubar + tb (g - ubar)/(1 + tb) == (ubar + tb g)/(1 + tb), and returns g exactly when ubar == g.
  const double tb = t * beta;
  const double w = tb / (1.0 + tb);
  parallel_rows(ubar.rows(), [&](std::size_t i) {
    const double* a = ubar.row(i);
    const double* b = g.row(i);
    double* o = out.row(i);
    for (std::size_t j = 0; j < ubar.cols(); ++j) o[j] = a[j] + w * (b[j] - a[j]);
  });
}

ScalarField prox_data_u(const ScalarField& ubar, const ScalarField& g, double t, double beta) {
  ScalarField out;
  prox_data_u_into(ubar, g, t, beta, out);
  return out;
}

void project_linf_ball_into(const VectorField& qbar, double radius, VectorField& out) {
  require_positive(radius, "project_linf_ball: radius");
  ensure_shape(out, qbar);
  const double inv_r = 1.0 / radius;
  parallel_rows(qbar.rows(), [&](std::size_t i) {
    const double* a = qbar.c1.row(i);
    const double* b = qbar.c2.row(i);
    double* oa = out.c1.row(i);
    double* ob = out.c2.row(i);
    for (std::size_t j = 0; j < qbar.cols(); ++j) {
      const double scale = std::max(1.0, std::sqrt(a[j] * a[j] + b[j] * b[j]) * inv_r);
      oa[j] = a[j] / scale;
      ob[j] = b[j] / scale;
    }
  });
}

VectorField project_linf_ball(const VectorField& qbar, double radius) {
  VectorField out;
  project_linf_ball_into(qbar, radius, out);
  return out;
}

void shrink_quadratic_dual_into(const VectorField& qbar, double mu, double tau, VectorField& out) {
  require_positive(mu, "shrink_quadratic_dual: mu");
  require_positive(tau, "shrink_quadratic_dual: tau");
  ensure_shape(out, qbar);
  // 1 - tau/(mu + tau) keeps full relative accuracy when tau << mu.
  const double scale = tau <= mu ? 1.0 - tau / (mu + tau) : mu / (mu + tau);
  parallel_rows(qbar.rows(), [&](std::size_t i) {
    const double* a = qbar.c1.row(i);
    const double* b = qbar.c2.row(i);
    double* oa = out.c1.row(i);
    double* ob = out.c2.row(i);
    for (std::size_t j = 0; j < qbar.cols(); ++j) {
      oa[j] = scale * a[j];
      ob[j] = scale * b[j];
    }
  });
}

VectorField shrink_quadratic_dual(const VectorField& qbar, double mu, double tau) {
  VectorField out;
  shrink_quadratic_dual_into(qbar, mu, tau, out);
  return out;
}

void prox_clamped_quadratic_into(const ScalarField& pbar, const ScalarField& anchor, double tau,
                                 ScalarField& out) {
  require_same_shape(pbar, anchor, "prox_clamped_quadratic");
  require_positive(tau, "prox_clamped_quadratic: tau");
  ensure_shape(out, pbar);
  // Written as pbar + w (anchor - pbar) so that pbar == anchor is an exact fixed point.
  const double w = tau / (1.0 + tau);
  parallel_rows(pbar.rows(), [&](std::size_t i) {
    const double* a = pbar.row(i);
    const double* b = anchor.row(i);
    double* o = out.row(i);
    for (std::size_t j = 0; j < pbar.cols(); ++j) o[j] = std::clamp(a[j] + w * (b[j] - a[j]), 0.0, 1.0);
  });
}

ScalarField prox_clamped_quadratic(const ScalarField& pbar, const ScalarField& anchor, double tau) {
  ScalarField out;
  prox_clamped_quadratic_into(pbar, anchor, tau, out);
  return out;
}

void aux_primal_into(const ScalarField& anchor, const ScalarField& divq, ScalarField& out) {
  require_same_shape(anchor, divq, "aux_primal");
  ensure_shape(out, anchor);
  parallel_rows(anchor.rows(), [&](std::size_t i) {
    const double* a = anchor.row(i);
    const double* d = divq.row(i);
    double* o = out.row(i);
    for (std::size_t j = 0; j < anchor.cols(); ++j) o[j] = std::clamp(a[j] + d[j], 0.0, 1.0);
  });
}

ScalarField aux_primal(const ScalarField& anchor, const ScalarField& divq) {
  ScalarField out;
  aux_primal_into(anchor, divq, out);
  return out;
}

}  // namespace bvms
