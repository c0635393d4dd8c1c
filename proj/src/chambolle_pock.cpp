#include "bvms/chambolle_pock.hpp"

#include "bvms/prox.hpp"
#include "parallel.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace bvms {

ScalarField InnerProblem::anchor() const {
  ScalarField a(vbar.rows(), vbar.cols());
  const double gs = params.gamma * s;
  const double eps = params.epsilon;
  if (params.model == Model::BV) {
    const double shift = gs / (2.0 * eps);
    for (std::size_t k = 0; k < a.size(); ++k) a[k] = vbar[k] + shift;
  } else {
    const double denom = 2.0 * eps + gs;
    for (std::size_t k = 0; k < a.size(); ++k) a[k] = (2.0 * eps * vbar[k] + gs) / denom;
  }
  return a;
}

double InnerProblem::mu() const {
  const double eps = params.epsilon;
  const double gs = params.gamma * s;
  return 4.0 * gs * eps * eps / (params.h * params.h * (2.0 * eps + gs));
}

void InnerProblem::validate() const {
  params.validate();
  if (!(s > 0.0) || !std::isfinite(s)) throw std::invalid_argument("InnerProblem: step s must be positive");
  if (vbar.empty() || !vbar.all_finite()) throw std::invalid_argument("InnerProblem: vbar must be finite");
}

PdState PdState::start_from(const ScalarField& v0) {
  PdState st;
  st.p = v0;
  st.p_hat = v0;
  st.q = VectorField(v0.rows(), v0.cols());
  return st;
}

double dual_infeasibility(const VectorField& q, double radius) {
  return std::max(0.0, std::sqrt(max_squared_norm(q)) - radius);
}

namespace {

enum class DualTerm { L1, Quadratic };

// Sum of the gap terms that do not depend on the model, plus the model's regulariser on
// grad_1 p and its conjugate on q. `divq` must be div_1 q for the same q.
double gap_terms(const ScalarField& p, const VectorField& q, const ScalarField& divq, const ScalarField& a,
                 DualTerm kind, double weight) {
  const std::size_t m = p.rows(), n = p.cols();
  return reduce_rows_sum(m, [&](std::size_t i) {
    const double* pi = p.row(i);
    const double* pn = i + 1 < m ? p.row(i + 1) : nullptr;
    const double* di = divq.row(i);
    const double* ai = a.row(i);
    const double* q1 = q.c1.row(i);
    const double* q2 = q.c2.row(i);
    double reg = 0.0, conj = 0.0, rest = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double g1 = pn ? pn[j] - pi[j] : 0.0;
      const double g2 = j + 1 < n ? pi[j + 1] - pi[j] : 0.0;
      const double sq = g1 * g1 + g2 * g2;
      if (kind == DualTerm::L1) {
        reg += std::sqrt(sq);
      } else {
        reg += sq;
        conj += q1[j] * q1[j] + q2[j] * q2[j];
      }
      const double pp = std::clamp(ai[j] + di[j], 0.0, 1.0);
      rest += pp * di[j] + 0.5 * (pi[j] * pi[j] - pp * pp) - (pi[j] - pp) * ai[j];
    }
    if (kind == DualTerm::L1) return weight * reg + rest;
    return 0.5 * weight * reg + conj / (2.0 * weight) + rest;
  });
}

double model_gap(const ScalarField& p, const VectorField& q, const ScalarField& divq, const ScalarField& a,
                 const InnerProblem& problem) {
  if (problem.params.model == Model::BV) return gap_terms(p, q, divq, a, DualTerm::L1, problem.dual_radius());
  return gap_terms(p, q, divq, a, DualTerm::Quadratic, problem.mu());
}

void check_gap_inputs(const ScalarField& p, const VectorField& q, const InnerProblem& problem) {
  problem.validate();
  require_same_shape(p, problem.vbar, "gap");
  require_same_shape(q, p, "gap");
}

}  // namespace

double gap_bv(const ScalarField& p, const VectorField& q, const InnerProblem& problem) {
  check_gap_inputs(p, q, problem);
  InnerProblem bv = problem;
  bv.params.model = Model::BV;
  const double radius = bv.dual_radius();
  const VectorField feasible = dual_infeasibility(q, radius) > 0.0 ? project_linf_ball(q, radius) : q;
  const ScalarField divq = div(feasible, 1.0);
  return model_gap(p, feasible, divq, bv.anchor(), bv);
}

double gap_h1(const ScalarField& p, const VectorField& q, const InnerProblem& problem) {
  check_gap_inputs(p, q, problem);
  InnerProblem h1 = problem;
  h1.params.model = Model::H1;
  const ScalarField divq = div(q, 1.0);
  return model_gap(p, q, divq, h1.anchor(), h1);
}

double primal_dual_gap(const ScalarField& p, const VectorField& q, const InnerProblem& problem) {
  return problem.params.model == Model::BV ? gap_bv(p, q, problem) : gap_h1(p, q, problem);
}

InnerReport run_inner(const InnerProblem& problem, PdState& st, const InnerOptions& opts) {
  problem.validate();
  if (!(opts.tol2 > 0.0)) throw std::invalid_argument("solve_inner: tol2 must be positive");
  if (opts.max_inner < 1) throw std::invalid_argument("solve_inner: max_inner must be >= 1");
  if (opts.gap_every < 1) throw std::invalid_argument("solve_inner: gap_every must be >= 1");
  // tau = sigma, ||grad_1||^2 < 8; allow a few ulps so that tau = 1/sqrt(8) itself is accepted.
  const double tau = opts.tau;
  if (!(tau > 0.0) || tau * tau > 0.125 * (1.0 + 1e-15))
    throw std::invalid_argument("solve_inner: step requires 0 < tau^2 <= 1/8");

  const std::size_t m = problem.vbar.rows(), n = problem.vbar.cols();
  require_same_shape(st.p, problem.vbar, "solve_inner");
  require_same_shape(st.p_hat, problem.vbar, "solve_inner");
  if (!st.q.same_shape(problem.vbar)) st.q = VectorField(m, n);

  const bool bv = problem.params.model == Model::BV;
  const ScalarField a = problem.anchor();
  const double radius = bv ? problem.dual_radius() : 0.0;
  const double mu = bv ? 0.0 : problem.mu();

  VectorField grad_hat(m, n);
  ScalarField divq(m, n);
  ScalarField p_prev(m, n);

  InnerReport rep;
  for (int it = 1; it <= opts.max_inner; ++it) {
    std::swap(p_prev, st.p);  // p_prev holds p^{l-1}

    // dual ascent: q <- prox_{tau Q*}(q + tau grad_1 p_hat)
    grad_into(st.p_hat, 1.0, grad_hat);
    parallel_rows(m, [&](std::size_t i) {
      double* q1 = st.q.c1.row(i);
      double* q2 = st.q.c2.row(i);
      const double* g1 = grad_hat.c1.row(i);
      const double* g2 = grad_hat.c2.row(i);
      for (std::size_t j = 0; j < n; ++j) {
        q1[j] += tau * g1[j];
        q2[j] += tau * g2[j];
      }
    });
    if (bv)
      project_linf_ball_into(st.q, radius, st.q);
    else
      shrink_quadratic_dual_into(st.q, mu, tau, st.q);

    // primal descent: p <- prox_{tau P}(p + tau div_1 q)
    div_into(st.q, 1.0, divq);
    parallel_rows(m, [&](std::size_t i) {
      const double* pp = p_prev.row(i);
      const double* d = divq.row(i);
      double* pb = st.p.row(i);
      for (std::size_t j = 0; j < n; ++j) pb[j] = pp[j] + tau * d[j];
    });
    prox_clamped_quadratic_into(st.p, a, tau, st.p);

    // extrapolation
    parallel_rows(m, [&](std::size_t i) {
      const double* pc = st.p.row(i);
      const double* pp = p_prev.row(i);
      double* ph = st.p_hat.row(i);
      for (std::size_t j = 0; j < n; ++j) ph[j] = 2.0 * pc[j] - pp[j];
    });

    ++st.iters;
    rep.iterations = it;
    if (it % opts.gap_every == 0 || it == opts.max_inner) {
      st.gap = model_gap(st.p, st.q, divq, a, problem);
      rep.gap = st.gap;
      if (st.gap <= opts.tol2) {
        rep.converged = true;
        break;
      }
    }
  }
  return rep;
}

InnerResult solve_inner(const InnerProblem& problem, const ScalarField& v0, const InnerOptions& opts) {
  PdState st = PdState::start_from(v0);
  InnerResult res;
  res.report = run_inner(problem, st, opts);
  res.v = std::move(st.p);
  return res;
}

}  // namespace bvms
