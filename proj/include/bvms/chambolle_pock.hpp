#pragma once

/// \file chambolle_pock.hpp
/// \brief Primal-dual solver for the phase-field subproblem of one PALM step.
///
/// For the BV model the subproblem is
///   min_v (1/2)||v - vbar - (gamma s / 2 eps) 1||^2 + (gamma s / 2h) || |grad_1 v| ||_1 + box(v),
/// and for the H1 model
///   min_v (1/2)||v - a||^2 + (mu/2) || |grad_1 v| ||^2 + box(v),
///   a = (2 eps vbar + gamma s) / (2 eps + gamma s),  mu = 4 gamma eps^2 s / (h^2 (2 eps + gamma s)).
/// Both are solved with the fixed-step primal-dual iteration (tau = sigma = 1/sqrt(8))
/// and stopped on the explicit primal-dual gap.

#include "bvms/energies.hpp"
#include "bvms/field.hpp"

#include <cmath>

namespace bvms {

struct InnerProblem {
  ScalarField vbar;  ///< v - s*alpha*v|grad_h u|^2
  double s = 1.0;    ///< PALM step for the phase field
  ModelParams params;

  /// BV: vbar + gamma s/(2 eps); H1: (2 eps vbar + gamma s)/(2 eps + gamma s).
  ScalarField anchor() const;
  /// BV dual ball radius gamma s / (2h).
  double dual_radius() const { return params.gamma * s / (2.0 * params.h); }
  /// H1 quadratic dual weight.
  double mu() const;
  void validate() const;
};

struct InnerOptions {
  double tol2 = 1e-5;
  int max_inner = 5000;
  int gap_every = 1;  ///< evaluate the gap every k-th iteration
  double tau = 1.0 / std::sqrt(8.0);
};

struct PdState {
  ScalarField p;
  ScalarField p_hat;
  VectorField q;
  double gap = 0.0;
  int iters = 0;

  /// p = p_hat = v0, q = 0.
  static PdState start_from(const ScalarField& v0);
};

struct InnerReport {
  int iterations = 0;
  double gap = 0.0;
  bool converged = false;  ///< false: max_inner exhausted
};

/// Runs the iteration from the given state (p, p_hat, q are used as is; p is the warm start).
/// On return state.p is the new phase field.
InnerReport run_inner(const InnerProblem& problem, PdState& state, const InnerOptions& opts = {});

struct InnerResult {
  ScalarField v;
  InnerReport report;
};

/// Cold start: p = p_hat = v0, q = 0.
InnerResult solve_inner(const InnerProblem& problem, const ScalarField& v0, const InnerOptions& opts = {});

/// BV gap (gamma s/2h)|| |grad_1 p| ||_1 + <p', div_1 q> + (1/2)(||p||^2 - ||p'||^2) - <p - p', a>,
/// p' = clamp(a + div_1 q, 0, 1). q is projected onto the dual ball first if it lies outside.
double gap_bv(const ScalarField& p, const VectorField& q, const InnerProblem& problem);

/// H1 gap (mu/2)|| |grad_1 p| ||^2 + <div_1 q, p'> + (1/2mu)|| |q| ||^2 + (1/2)(||p||^2 - ||p'||^2) - <p - p', a>.
double gap_h1(const ScalarField& p, const VectorField& q, const InnerProblem& problem);

/// Dispatches on problem.params.model.
double primal_dual_gap(const ScalarField& p, const VectorField& q, const InnerProblem& problem);

/// max(0, max_ij |q_ij| - radius).
double dual_infeasibility(const VectorField& q, double radius);

}  // namespace bvms
