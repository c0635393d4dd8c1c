#include "bvms/chambolle_pock.hpp"
#include "bvms/prox.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace bvms;

namespace {

InnerProblem make_problem(Model model, ScalarField vbar, double s, double gamma, double eps, double h) {
  InnerProblem prob;
  prob.vbar = std::move(vbar);
  prob.s = s;
  prob.params.gamma = gamma;
  prob.params.epsilon = eps;
  prob.params.h = h;
  prob.params.model = model;
  return prob;
}

InnerOptions tight(double tol2, int max_inner) {
  InnerOptions o;
  o.tol2 = tol2;
  o.max_inner = max_inner;
  return o;
}

}  // namespace

TEST_CASE("anchors, radius and mu") {
  const auto bv = make_problem(Model::BV, ScalarField(2, 2, 0.4), 2.0, 0.1, 0.5, 0.25);
  CHECK(bv.anchor()[0] == doctest::Approx(0.4 + 0.1 * 2 / 1.0).epsilon(1e-15));
  CHECK(bv.dual_radius() == doctest::Approx(0.1 * 2 / 0.5).epsilon(1e-15));
  const auto h1 = make_problem(Model::H1, ScalarField(2, 2, 0.4), 2.0, 0.1, 0.5, 0.25);
  CHECK(h1.anchor()[0] == doctest::Approx((1.0 * 0.4 + 0.2) / (1.0 + 0.2)).epsilon(1e-15));
  CHECK(h1.mu() == doctest::Approx(4 * 0.1 * 0.25 * 2 / (0.0625 * 1.2)).epsilon(1e-15));
}

TEST_CASE("constant data: the solver returns the clamped constant anchor") {
  for (double vb : {0.0, 0.3, 0.95}) {
    const auto bv = make_problem(Model::BV, ScalarField(6, 5, vb), 1.5, 0.02, 0.1, 0.2);
    const InnerResult r = solve_inner(bv, ScalarField(6, 5, 1.0), tight(1e-12, 5000));
    const double expect = std::clamp(vb + 0.02 * 1.5 / 0.2, 0.0, 1.0);
    CHECK(max_abs_diff(r.v, ScalarField(6, 5, expect)) <= 1e-6);
    CHECK(r.report.converged);

    const auto h1 = make_problem(Model::H1, ScalarField(6, 5, vb), 1.5, 0.02, 0.1, 0.2);
    const InnerResult r1 = solve_inner(h1, ScalarField(6, 5, 1.0), tight(1e-12, 5000));
    const double expect1 = std::clamp((0.2 * vb + 0.03) / (0.2 + 0.03), 0.0, 1.0);
    CHECK(max_abs_diff(r1.v, ScalarField(6, 5, expect1)) <= 1e-6);
  }
}

TEST_CASE("gaps vanish at the constant-data saddle point") {
  const auto bv = make_problem(Model::BV, ScalarField(4, 4, 0.5), 1.0, 0.01, 0.1, 0.25);
  const auto h1 = make_problem(Model::H1, ScalarField(4, 4, 0.5), 1.0, 0.01, 0.1, 0.25);
  CHECK(std::abs(gap_bv(bv.anchor(), VectorField(4, 4), bv)) <= 1e-10);
  CHECK(std::abs(gap_h1(h1.anchor(), VectorField(4, 4), h1)) <= 1e-10);
}

TEST_CASE("q = 0 and p = p' reduce the gap to the regulariser") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 10; ++trial) {
    const ScalarField vbar = oracle::random_field(rng, 4, 4, 0.0, 0.8);
    const auto bv = make_problem(Model::BV, vbar, 1.0, 0.02, 0.1, 0.25);
    const ScalarField p = bv.anchor();
    CHECK(gap_bv(p, VectorField(4, 4), bv) ==
          doctest::Approx(bv.dual_radius() * reference::norm1_of_pointwise(reference::grad(p, 1.0))).epsilon(1e-13));
    const auto h1 = make_problem(Model::H1, vbar, 1.0, 0.02, 0.1, 0.25);
    const ScalarField p1 = h1.anchor();
    const VectorField g1 = reference::grad(p1, 1.0);
    CHECK(gap_h1(p1, VectorField(4, 4), h1) ==
          doctest::Approx(0.5 * h1.mu() * (dot(g1.c1, g1.c1) + dot(g1.c2, g1.c2))).epsilon(1e-13));
  }
}

TEST_CASE("gaps agree with the Fenchel-sum oracle on random feasible points") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 20; ++trial) {
    const ScalarField vbar = oracle::random_field(rng, 4, 4);
    const ScalarField p = oracle::random_field(rng, 4, 4);
    const auto bv = make_problem(Model::BV, vbar, 2.0, 0.05, 0.2, 0.25);
    const VectorField q = project_linf_ball(oracle::random_vfield(rng, 4, 4, -1, 1), bv.dual_radius());
    const double gb = gap_bv(p, q, bv);
    CHECK(gb >= -1e-10);
    CHECK(std::abs(gb - oracle::fenchel_gap(p, q, bv.anchor(), true, bv.dual_radius(), 0)) <= 1e-8);

    const auto h1 = make_problem(Model::H1, vbar, 2.0, 0.05, 0.2, 0.25);
    const VectorField qh = oracle::random_vfield(rng, 4, 4, -1, 1);
    const double gh = gap_h1(p, qh, h1);
    CHECK(gh >= -1e-10);
    CHECK(std::abs(gh - oracle::fenchel_gap(p, qh, h1.anchor(), false, 0, h1.mu())) <= 1e-8);
  }
}

TEST_CASE("infeasible dual points are projected before the BV gap is evaluated") {
  std::mt19937_64 rng(14);
  const auto bv = make_problem(Model::BV, oracle::random_field(rng, 4, 4), 1.0, 0.02, 0.1, 0.25);
  const VectorField q = oracle::random_vfield(rng, 4, 4, -5, 5);
  CHECK(dual_infeasibility(q, bv.dual_radius()) > 0.0);
  const VectorField pq = project_linf_ball(q, bv.dual_radius());
  CHECK(dual_infeasibility(pq, bv.dual_radius()) <= 1e-15);
  const ScalarField p = oracle::random_field(rng, 4, 4);
  CHECK(gap_bv(p, q, bv) == doctest::Approx(gap_bv(p, pq, bv)).epsilon(1e-14));
}

TEST_CASE("iterates stay in the box and the extrapolation is 2p - p_prev") {
  std::mt19937_64 rng(15);
  for (Model m : {Model::BV, Model::H1}) {
    const auto prob = make_problem(m, oracle::random_field(rng, 6, 6, -0.3, 1.0), 3.0, 0.02, 0.05, 1.0 / 6);
    PdState st = PdState::start_from(ScalarField(6, 6, 1.0));
    for (int it = 0; it < 40; ++it) {
      const ScalarField prev = st.p;
      run_inner(prob, st, tight(1e-300, 1));
      for (std::size_t k = 0; k < prev.size(); ++k) {
        CHECK((st.p[k] >= 0.0 && st.p[k] <= 1.0));
        CHECK(st.p_hat[k] == 2.0 * st.p[k] - prev[k]);
      }
    }
  }
}

TEST_CASE("step size above the stability bound is rejected") {
  const auto prob = make_problem(Model::BV, ScalarField(2, 2, 0.5), 1.0, 0.01, 0.1, 0.5);
  InnerOptions o;
  o.tau = 0.36;
  CHECK_THROWS_AS(solve_inner(prob, ScalarField(2, 2, 1.0), o), std::invalid_argument);
  o.tau = 1.0 / std::sqrt(8.0);
  CHECK_NOTHROW(solve_inner(prob, ScalarField(2, 2, 1.0), o));
}

TEST_CASE("solver is deterministic") {
  std::mt19937_64 rng(16);
  const auto prob = make_problem(Model::BV, oracle::random_field(rng, 10, 9), 2.0, 0.02, 0.05, 0.1);
  const InnerResult a = solve_inner(prob, ScalarField(10, 9, 1.0));
  const InnerResult b = solve_inner(prob, ScalarField(10, 9, 1.0));
  CHECK(a.v == b.v);
  CHECK(a.report.iterations == b.report.iterations);
  CHECK(a.report.gap == b.report.gap);
}

TEST_CASE("gap sampled every 10 iterations eventually drops below tol2") {
  std::mt19937_64 rng(18);
  for (Model m : {Model::BV, Model::H1}) {
    const auto prob = make_problem(m, oracle::random_field(rng, 8, 8), 2.0, 0.02, 0.05, 0.125);
    PdState st = PdState::start_from(ScalarField(8, 8, 1.0));
    bool below = false;
    for (int block = 0; block < 500 && !below; ++block) {
      run_inner(prob, st, tight(1e-300, 10));
      below = primal_dual_gap(st.p, st.q, prob) <= 1e-5;
    }
    CHECK(below);
  }
}

TEST_CASE("BV inner solve matches the dual projected-gradient oracle on 4x4") {
  std::mt19937_64 rng(19);
  const auto prob = make_problem(Model::BV, oracle::random_field(rng, 4, 4), 2.0, 0.01, 0.05, 0.25);
  const InnerResult r = solve_inner(prob, ScalarField(4, 4, 1.0), tight(1e-13, 2000000));
  const ScalarField ref = oracle::bv_dual_projected_gradient(prob.anchor(), prob.dual_radius(), 100000);
  CHECK(max_abs_diff(r.v, ref) <= 1e-4);
  CHECK(norm1_of_pointwise(grad(r.v, 1.0)) > 0.0);
}

TEST_CASE("H1 inner solve matches projected Jacobi and satisfies KKT") {
  std::mt19937_64 rng(20);
  const auto prob = make_problem(Model::H1, oracle::random_field(rng, 5, 5), 2.0, 0.05, 0.05, 0.2);
  const InnerResult r = solve_inner(prob, ScalarField(5, 5, 1.0), tight(1e-14, 2000000));
  const ScalarField ref = oracle::h1_projected_jacobi(prob.anchor(), prob.mu());
  CHECK(oracle::h1_kkt_residual(ref, prob.anchor(), prob.mu()) <= 1e-12);
  CHECK(max_abs_diff(r.v, ref) <= 1e-5);
}
