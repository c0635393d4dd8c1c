#include "bvms/palm.hpp"

#include "bvms/prox.hpp"
#include "parallel.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <ostream>

namespace bvms {

std::string to_string(RunStatus s) { return s == RunStatus::Converged ? "converged" : "max-iterations"; }

void SolverParams::validate() const {
  model.validate();
  if (!(theta > 0.0 && theta < 1.0)) throw std::invalid_argument("theta must lie in (0,1)");
  if (!(tol1 > 0.0)) throw std::invalid_argument("tol1 must be > 0");
  if (!(tol2 > 0.0)) throw std::invalid_argument("tol2 must be > 0");
  if (max_outer < 1) throw std::invalid_argument("max_outer must be >= 1");
  if (max_inner < 1) throw std::invalid_argument("max_inner must be >= 1");
  if (gap_every < 1) throw std::invalid_argument("gap_every must be >= 1");
}

void RunReport::write_csv(std::ostream& os, bool with_time) const {
  os << kCsvHeader << '\n';
  os << std::setprecision(17);
  for (const auto& r : rows) {
    os << r.it << ',' << r.energy << ',' << r.inner_iters << ',' << r.gap << ',' << r.du_inf << ','
       << r.dv_inf << ',' << (with_time ? r.ms : 0.0) << '\n';
  }
}

namespace {

// `lip` = || |grad_h u|^2 ||_inf. When it vanishes the linearised term exerts no force
// and any finite step works.
double phase_step(double lip, const SolverParams& params) {
  const ModelParams& mp = params.model;
  if (lip > 0.0) return params.theta / (mp.alpha * lip);
  return params.theta * (mp.epsilon / mp.gamma) * 1e3;
}

}  // namespace

StepSizes step_sizes(const ScalarField& u, const SolverParams& params) {
  const ModelParams& mp = params.model;
  StepSizes st;
  st.t = mp.h * mp.h / (8.0 * mp.alpha);
  const double lip = max_squared_norm(grad(u, mp.h));
  st.s = phase_step(lip, params);
  st.s_capped = !(lip > 0.0);
  return st;
}

SolveResult solve(const ScalarField& g, const SolverParams& params, const IterationObserver& observer) {
  params.validate();
  if (g.empty() || !std::all_of(g.values().begin(), g.values().end(), [](double x) { return x >= 0.0 && x <= 1.0; }))
    throw std::invalid_argument("solve: g must have samples in [0,1]");

  const ModelParams& mp = params.model;
  const std::size_t m = g.rows(), n = g.cols();
  const double h = mp.h;

  SolveResult res;
  res.u = g;
  res.v = ScalarField(m, n, 1.0);
  ScalarField& u = res.u;
  ScalarField& v = res.v;

  PdState pd = PdState::start_from(v);  // q = 0 once, reused by every outer step
  InnerOptions inner;
  inner.tol2 = params.tol2;
  inner.max_inner = params.max_inner;
  inner.gap_every = params.gap_every;

  const double t = mp.h * mp.h / (8.0 * mp.alpha);
  VectorField flux(m, n);
  ScalarField divf(m, n);
  ScalarField ubar(m, n);
  ScalarField u0(m, n), v0(m, n);
  InnerProblem problem;
  problem.params = mp;
  problem.vbar = ScalarField(m, n);

  res.report.initial_energy = energy(u, v, mp, g);

  for (int it = 1; it <= params.max_outer; ++it) {
    const auto t_start = std::chrono::steady_clock::now();
    u0 = u;
    v0 = v;

    // u-step: ubar = u + t alpha div_h(v^2 grad_h u), then the fidelity prox.
    grad_into(u, h, flux);
    parallel_rows(m, [&](std::size_t i) {
      const double* vi = v.row(i);
      double* f1 = flux.c1.row(i);
      double* f2 = flux.c2.row(i);
      for (std::size_t j = 0; j < n; ++j) {
        const double w = vi[j] * vi[j];
        f1[j] *= w;
        f2[j] *= w;
      }
    });
    div_into(flux, h, divf);
    const double ta = t * mp.alpha;
    parallel_rows(m, [&](std::size_t i) {
      const double* ui = u.row(i);
      const double* di = divf.row(i);
      double* o = ubar.row(i);
      for (std::size_t j = 0; j < n; ++j) o[j] = ui[j] + ta * di[j];
    });
    prox_data_u_into(ubar, g, t, mp.beta, u);

    // v-step: linearise alpha/2 ||v|grad u|||^2 at v, prox by the inner solver.
    grad_into(u, h, flux);
    const double lip = max_squared_norm(flux);
    const double s = phase_step(lip, params);
    parallel_rows(m, [&](std::size_t i) {
      const double* vi = v.row(i);
      const double* f1 = flux.c1.row(i);
      const double* f2 = flux.c2.row(i);
      double* vb = problem.vbar.row(i);
      for (std::size_t j = 0; j < n; ++j) vb[j] = vi[j] - s * mp.alpha * vi[j] * (f1[j] * f1[j] + f2[j] * f2[j]);
    });
    problem.s = s;
    pd.p = v;
    pd.p_hat = v;
    const InnerReport ir = run_inner(problem, pd, inner);
    v = pd.p;
    if (!ir.converged) ++res.report.inner_exhausted;

    if (!u.all_finite() || !v.all_finite())
      throw NumericalError("non-finite iterate at outer iteration " + std::to_string(it));

    IterationRecord rec;
    rec.it = it;
    rec.energy = energy(u, v, mp, g);
    rec.inner_iters = ir.iterations;
    rec.gap = ir.gap;
    rec.du_inf = max_abs_diff(u, u0);
    rec.dv_inf = max_abs_diff(v, v0);
    rec.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t_start).count();
    res.report.rows.push_back(rec);
    if (observer) observer(rec);

    if (std::max(rec.du_inf, rec.dv_inf) <= params.tol1) {
      res.report.status = RunStatus::Converged;
      break;
    }
  }
  return res;
}

}  // namespace bvms
