#pragma once

/// \file prox.hpp
/// \brief Closed-form proximal maps and projections used by the PALM outer loop
/// and the primal-dual inner solver.
///
/// Model-specific anchors (the "target" fields) are computed by the caller; these
/// maps only implement the per-pixel formulas. Each map has an `_into` form that
/// writes to a preallocated output, which may alias the input.

#include "bvms/field.hpp"

namespace bvms {

/// u = (ubar + t*beta*g) / (1 + t*beta): prox of (beta/2)||. - g||^2 with step t.
ScalarField prox_data_u(const ScalarField& ubar, const ScalarField& g, double t, double beta);
void prox_data_u_into(const ScalarField& ubar, const ScalarField& g, double t, double beta, ScalarField& out);

/// Pointwise projection onto {|q_ij| <= radius}: q / max(1, |q|/radius).
VectorField project_linf_ball(const VectorField& qbar, double radius);
void project_linf_ball_into(const VectorField& qbar, double radius, VectorField& out);

/// mu/(mu + tau) * qbar: prox of tau * (1/2mu)|| |q| ||^2.
VectorField shrink_quadratic_dual(const VectorField& qbar, double mu, double tau);
void shrink_quadratic_dual_into(const VectorField& qbar, double mu, double tau, VectorField& out);

/// clamp((pbar + tau*anchor)/(1 + tau), 0, 1): prox of (1/2)||. - anchor||^2 + box indicator.
ScalarField prox_clamped_quadratic(const ScalarField& pbar, const ScalarField& anchor, double tau);
void prox_clamped_quadratic_into(const ScalarField& pbar, const ScalarField& anchor, double tau, ScalarField& out);

/// clamp(anchor + divq, 0, 1): maximiser in the conjugate of the clamped quadratic.
ScalarField aux_primal(const ScalarField& anchor, const ScalarField& divq);
void aux_primal_into(const ScalarField& anchor, const ScalarField& divq, ScalarField& out);

}  // namespace bvms
