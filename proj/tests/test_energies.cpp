#include "bvms/energies.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace bvms;

namespace {

ModelParams params(double alpha, double beta, double gamma, double eps, double h = 1.0) {
  ModelParams p;
  p.alpha = alpha;
  p.beta = beta;
  p.gamma = gamma;
  p.epsilon = eps;
  p.h = h;
  return p;
}

// Independent evaluation of the contour terms from the serial reference kernels.
double contour_bv(const ScalarField& v, const ModelParams& p) {
  double defect = 0.0;
  for (double x : v.values()) defect += 1.0 - x;
  return p.gamma / (2 * p.epsilon) * defect + 0.5 * p.gamma * reference::norm1_of_pointwise(reference::grad(v, p.h));
}

double contour_at(const ScalarField& v, const ModelParams& p) {
  double defect = 0.0;
  for (double x : v.values()) defect += (1.0 - x) * (1.0 - x);
  const VectorField g = reference::grad(v, p.h);
  double grad2 = 0.0;
  for (std::size_t k = 0; k < v.size(); ++k) grad2 += g.c1[k] * g.c1[k] + g.c2[k] * g.c2[k];
  return p.gamma / (4 * p.epsilon) * defect + p.gamma * p.epsilon * grad2;
}

}  // namespace

TEST_CASE("energies vanish at constant data with v = 1") {
  const ScalarField g(4, 5, 0.3);
  const auto p = params(1.75e-4, 1, 3e-5, 1e-3, 0.25);
  CHECK(energy_bv(g, ScalarField(4, 5, 1.0), p, g) == 0.0);
  CHECK(energy_at(g, ScalarField(4, 5, 1.0), p, g) == 0.0);
}

TEST_CASE("v = 0 leaves only the defect term") {
  const ScalarField g(3, 7, 0.6);
  const auto p = params(1.0, 1.0, 0.2, 0.05);
  CHECK(energy_bv(g, ScalarField(3, 7, 0.0), p, g) == doctest::Approx(0.2 / 0.1 * 21).epsilon(1e-14));
  CHECK(energy_at(g, ScalarField(3, 7, 0.0), p, g) == doctest::Approx(0.2 / 0.2 * 21).epsilon(1e-14));
}

TEST_CASE("2x2 hand instance gives 2 for both models") {
  const auto u = ScalarField::from_rows({{0, 1}, {0, 1}});
  const auto p = params(2.0, 1.0, 0.123, 0.01);
  CHECK(energy_bv(u, ScalarField(2, 2, 1.0), p, u) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(energy_at(u, ScalarField(2, 2, 1.0), p, u) == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("energies are infinite exactly when v leaves [0,1]") {
  const ScalarField g(2, 2, 0.5);
  const auto p = params(1, 1, 1, 0.1);
  auto v = ScalarField(2, 2, 1.0);
  CHECK(std::isfinite(energy_bv(g, v, p, g)));
  v(1, 1) = 1.0 + 1e-12;
  CHECK(energy_bv(g, v, p, g) == kInfiniteEnergy);
  CHECK(energy_at(g, v, p, g) == kInfiniteEnergy);
  v(1, 1) = -1e-15;
  CHECK(energy_bv(g, v, p, g) == kInfiniteEnergy);
  CHECK(energy_at(g, v, p, g) == kInfiniteEnergy);
}

TEST_CASE("shape mismatch and invalid parameters are rejected") {
  const auto p = params(1, 1, 1, 0.1);
  CHECK_THROWS(energy_bv(ScalarField(2, 2), ScalarField(2, 3), p, ScalarField(2, 2)));
  auto bad = p;
  bad.alpha = 0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = p;
  bad.beta = -1;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = p;
  bad.eta = -1;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  CHECK_THROWS_AS(parse_model("tv"), std::invalid_argument);
  CHECK(parse_model("BV") == Model::BV);
  CHECK(parse_model("h1") == Model::H1);
}

TEST_CASE("random fields: nonnegative energies, shared first two terms") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 50; ++trial) {
    const auto p = params(0.01 + 0.1 * (trial % 3), 1.0, 0.05, 0.02, 0.125);
    const ScalarField u = oracle::random_field(rng, 6, 5);
    const ScalarField g = oracle::random_field(rng, 6, 5);
    const ScalarField v = oracle::random_field(rng, 6, 5);
    const double eb = energy_bv(u, v, p, g), ea = energy_at(u, v, p, g);
    CHECK(eb >= 0.0);
    CHECK(ea >= 0.0);
    CHECK(eb - contour_bv(v, p) == doctest::Approx(ea - contour_at(v, p)).epsilon(1e-12));
  }
}

TEST_CASE("energies in a constant phase field") {
  const ScalarField g(4, 4, 0.4);
  const auto p = params(1, 1, 0.3, 0.1);
  double prev_bv = INFINITY, prev_at = INFINITY;
  for (int k = 0; k <= 10; ++k) {
    const double c = k / 10.0;
    const double eb = energy_bv(g, ScalarField(4, 4, c), p, g);
    const double ea = energy_at(g, ScalarField(4, 4, c), p, g);
    CHECK(eb == doctest::Approx(0.3 / 0.2 * 16 * (1 - c)).epsilon(1e-13));
    CHECK(ea == doctest::Approx(0.3 / 0.4 * 16 * (1 - c) * (1 - c)).epsilon(1e-13));
    CHECK(eb < prev_bv);
    CHECK(ea < prev_at);
    prev_bv = eb;
    prev_at = ea;
  }
}

TEST_CASE("eta adds to the smoothing weight") {
  const auto u = ScalarField::from_rows({{0, 1}, {0, 1}});
  auto p = params(2.0, 1.0, 0.1, 0.1);
  p.eta = 0.5;
  CHECK(energy_bv(u, ScalarField(2, 2, 1.0), p, u) == doctest::Approx(3.0).epsilon(1e-15));
}

TEST_CASE("limit energy in one dimension") {
  CHECK(limit_energy_1d({std::vector<double>(11, 0.7), 0.1, 0}, 2.0, 3.0) == 0.0);
  CHECK(limit_energy_1d({std::vector<double>(11, 1.0), 0.1, 1}, 2.0, 3.0) == 3.0);
  std::vector<double> ramp(101);
  for (std::size_t k = 0; k < ramp.size(); ++k) ramp[k] = k / 100.0;
  CHECK(limit_energy_1d({ramp, 0.01, 0}, 0.4, 3.0) == doctest::Approx(0.2).epsilon(1e-12));
  CHECK_THROWS(limit_energy_1d({ramp, 0.01, -1}, 0.4, 3.0));
}

TEST_CASE("phi_star at eps = 1/2") {
  CHECK(phi_star(2.0, 0.5) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(phi_star(4.0, 0.5) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(phi_star(10.0, 0.5) == doctest::Approx(8.0).epsilon(1e-15));
  CHECK(phi_star(0.0, 0.5) == 0.0);
  CHECK_THROWS_AS(phi_star(1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(phi_star(1.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(phi_star(-1.0, 0.5), std::invalid_argument);
}

TEST_CASE("phi_star matches a numeric Legendre transform") {
  for (double eps : {0.5, 0.2, 0.1}) {
    AssumptionInstantiation inst{eps};
    for (double s : {0.1, 1.0, 3.0, 1.0 / (eps * eps), 2.0 / (eps * eps)}) {
      const double t = oracle::golden_min([&](double x) { return -(x * s - inst.phi(x)); }, 0.0, 1.0);
      CHECK(phi_star(s, eps) == doctest::Approx(t * s - inst.phi(t)).epsilon(1e-9));
    }
  }
}

TEST_CASE("phi_star is convex and nondecreasing") {
  for (double eps : {0.5, 0.1, 0.01}) {
    const double smax = 3.0 / (eps * eps);
    const int n = 4000;
    std::vector<double> y(n + 1);
    for (int k = 0; k <= n; ++k) y[k] = phi_star(smax * k / n, eps);
    for (int k = 1; k <= n; ++k) CHECK(y[k] >= y[k - 1]);
    for (int k = 1; k < n; ++k) CHECK(y[k + 1] - 2 * y[k] + y[k - 1] >= -1e-12 * (1 + std::abs(y[k])));
  }
}

TEST_CASE("assumption checker on the reference sequence") {
  const AssumptionReport rep = check_assumptions({0.5, 0.2, 0.1, 0.05, 0.01});
  REQUIRE(rep.checks.size() == 4);
  CHECK(rep.all_passed());
  const auto& row = rep.rows[2];
  CHECK(row.epsilon == 0.1);
  CHECK(row.a1_integral == doctest::Approx(0.1 / 1.1).epsilon(1e-6));
  CHECK(row.a3_max_excess <= 0.0);
  CHECK(row.a4_value == doctest::Approx(0.1).epsilon(1e-14));
  for (std::size_t k = 1; k < rep.rows.size(); ++k) {
    CHECK(rep.rows[k].a1_integral < rep.rows[k - 1].a1_integral);
    CHECK(rep.rows[k].a2_min_on_interval > rep.rows[k - 1].a2_min_on_interval);
    CHECK(rep.rows[k].a4_value < rep.rows[k - 1].a4_value);
  }
}

TEST_CASE("assumption checker rejects bad sequences") {
  CHECK_THROWS_AS(check_assumptions({0.1, 0.2}), std::invalid_argument);
  CHECK_THROWS_AS(check_assumptions({1.5, 0.2}), std::invalid_argument);
  CHECK_THROWS_AS(check_assumptions({}), std::invalid_argument);
}
