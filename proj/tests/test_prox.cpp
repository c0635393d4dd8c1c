#include "bvms/prox.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace bvms;

TEST_CASE("prox_data_u examples") {
  std::mt19937_64 rng(1);
  const ScalarField ubar = oracle::random_field(rng, 3, 3);
  const ScalarField g = oracle::random_field(rng, 3, 3);
  CHECK(prox_data_u(ubar, g, 0.7, 0.0) == ubar);
  CHECK(prox_data_u(g, g, 0.7, 3.0) == g);
  CHECK(prox_data_u(ScalarField(2, 2), ScalarField(2, 2, 1.0), 0.5, 2.0) == ScalarField(2, 2, 0.5));
  CHECK_THROWS(prox_data_u(ScalarField(2, 2), ScalarField(2, 3), 1, 1));
}

TEST_CASE("project_linf_ball examples") {
  VectorField q(ScalarField(2, 3, 2.0 * 0.6), ScalarField(2, 3, 2.0 * 0.8));
  const VectorField p = project_linf_ball(q, 1.0);
  for (std::size_t k = 0; k < p.c1.size(); ++k) {
    CHECK(std::hypot(p.c1[k], p.c2[k]) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(p.c1[k] / p.c2[k] == doctest::Approx(0.75).epsilon(1e-15));
  }
  const VectorField inside(ScalarField(2, 2, 0.1), ScalarField(2, 2, -0.2));
  CHECK(project_linf_ball(inside, 1.0) == inside);
  const VectorField one(ScalarField(1, 1, 3.0), ScalarField(1, 1, 4.0));
  CHECK(project_linf_ball(one, 5.0) == one);
  const VectorField r = project_linf_ball(one, 2.5);
  CHECK(r.c1[0] == doctest::Approx(1.5).epsilon(1e-15));
  CHECK(r.c2[0] == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(project_linf_ball(VectorField(2, 2), 1.0) == VectorField(2, 2));
}

TEST_CASE("shrink_quadratic_dual examples") {
  const VectorField q(ScalarField(2, 2, 4.0), ScalarField(2, 2, -2.0));
  const VectorField id = shrink_quadratic_dual(q, 1.0, 1e-12);
  CHECK(std::abs(id.c1[0] / 4.0 - 1.0) <= 1e-12);
  const VectorField half = shrink_quadratic_dual(q, 0.3, 0.3);
  CHECK(half.c1[0] == 2.0);
  CHECK(half.c2[0] == -1.0);
  const VectorField s = shrink_quadratic_dual(VectorField(ScalarField(1, 1, 4.0), ScalarField(1, 1, 0.0)), 3.0, 1.0);
  CHECK(s.c1[0] == 3.0);
  CHECK(s.c2[0] == 0.0);
}

TEST_CASE("prox_clamped_quadratic examples") {
  std::mt19937_64 rng(2);
  const ScalarField a = oracle::random_field(rng, 3, 4);
  CHECK(prox_clamped_quadratic(a, a, 0.35) == a);
  CHECK(prox_clamped_quadratic(ScalarField(2, 2, 10.0), ScalarField(2, 2, 1.0), 0.2) == ScalarField(2, 2, 1.0));
  CHECK(prox_clamped_quadratic(ScalarField(2, 2), ScalarField(2, 2, 0.5), 1.0) == ScalarField(2, 2, 0.25));
}

TEST_CASE("aux_primal examples") {
  std::mt19937_64 rng(3);
  const ScalarField a = oracle::random_field(rng, 3, 4);
  CHECK(aux_primal(a, ScalarField(3, 4)) == a);
  CHECK(aux_primal(a, ScalarField(3, 4, -2.0)) == ScalarField(3, 4));
  CHECK(aux_primal(ScalarField(1, 1, 0.5), ScalarField(1, 1, 0.2))[0] == doctest::Approx(0.7).epsilon(1e-15));
}

TEST_CASE("prox maps agree with per-pixel brute-force minimisation") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> step(0.05, 3.0);
  for (int trial = 0; trial < 10; ++trial) {
    const double t = step(rng), beta = step(rng), tau = step(rng), mu = step(rng), radius = step(rng);
    const ScalarField x = oracle::random_field(rng, 4, 4, -1.5, 2.5);
    const ScalarField y = oracle::random_field(rng, 4, 4, -0.5, 1.5);
    const VectorField q = oracle::random_vfield(rng, 4, 4, -4, 4);
    const ScalarField pu = prox_data_u(x, y, t, beta);
    const VectorField pb = project_linf_ball(q, radius);
    const VectorField ps = shrink_quadratic_dual(q, mu, tau);
    const ScalarField pc = prox_clamped_quadratic(x, y, tau);
    const ScalarField pa = aux_primal(y, x);
    for (std::size_t k = 0; k < x.size(); ++k) {
      CHECK(std::abs(pu[k] - oracle::prox_data_u(x[k], y[k], t, beta)) <= 1e-6);
      const auto [b1, b2] = oracle::project_ball(q.c1[k], q.c2[k], radius);
      CHECK(std::abs(pb.c1[k] - b1) <= 1e-6);
      CHECK(std::abs(pb.c2[k] - b2) <= 1e-6);
      CHECK(std::abs(ps.c1[k] - oracle::shrink(q.c1[k], mu, tau)) <= 1e-6);
      CHECK(std::abs(ps.c2[k] - oracle::shrink(q.c2[k], mu, tau)) <= 1e-6);
      CHECK(std::abs(pc[k] - oracle::prox_clamped(x[k], y[k], tau)) <= 1e-6);
      CHECK(std::abs(pa[k] - oracle::aux_primal(y[k], x[k])) <= 1e-6);
    }
  }
}

TEST_CASE("ball projection is idempotent and nonexpansive") {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 50; ++trial) {
    const VectorField a = oracle::random_vfield(rng, 5, 5, -3, 3);
    const VectorField b = oracle::random_vfield(rng, 5, 5, -3, 3);
    const VectorField pa = project_linf_ball(a, 1.3), pb = project_linf_ball(b, 1.3);
    const VectorField ppa = project_linf_ball(pa, 1.3);
    CHECK(max_abs_diff(ppa.c1, pa.c1) <= 1e-15);
    CHECK(max_abs_diff(ppa.c2, pa.c2) <= 1e-15);
    const VectorField d = a + (-1.0) * b, pd = pa + (-1.0) * pb;
    CHECK(dot(pd, pd) <= dot(d, d) * (1 + 1e-14));
  }
}

TEST_CASE("clamped prox stays in the unit box") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const ScalarField p = prox_clamped_quadratic(oracle::random_field(rng, 4, 4, -10, 10),
                                                 oracle::random_field(rng, 4, 4, -10, 10), 0.35);
    for (double x : p.values()) CHECK((x >= 0.0 && x <= 1.0));
  }
}

TEST_CASE("in-place forms may alias the input") {
  std::mt19937_64 rng(6);
  ScalarField x = oracle::random_field(rng, 3, 3, -1, 2);
  const ScalarField a = oracle::random_field(rng, 3, 3);
  const ScalarField expect = prox_clamped_quadratic(x, a, 0.4);
  prox_clamped_quadratic_into(x, a, 0.4, x);
  CHECK(x == expect);
  VectorField q = oracle::random_vfield(rng, 3, 3, -2, 2);
  const VectorField pq = project_linf_ball(q, 0.5);
  project_linf_ball_into(q, 0.5, q);
  CHECK(q == pq);
}
