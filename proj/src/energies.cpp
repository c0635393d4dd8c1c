#include "bvms/energies.hpp"

#include "parallel.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace bvms {

std::string to_string(Model m) { return m == Model::BV ? "bv" : "h1"; }

Model parse_model(const std::string& name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "bv") return Model::BV;
  if (lower == "h1" || lower == "at") return Model::H1;
  throw std::invalid_argument("unknown model '" + name + "' (expected bv or h1)");
}

void ModelParams::validate() const {
  auto positive = [](double x) { return x > 0.0 && std::isfinite(x); };
  auto nonneg = [](double x) { return x >= 0.0 && std::isfinite(x); };
  if (!positive(alpha)) throw std::invalid_argument("alpha must be > 0");
  if (!nonneg(beta)) throw std::invalid_argument("beta must be >= 0");
  if (!positive(gamma)) throw std::invalid_argument("gamma must be > 0");
  if (!positive(epsilon)) throw std::invalid_argument("epsilon must be > 0");
  if (!nonneg(eta)) throw std::invalid_argument("eta must be >= 0");
  if (!positive(h)) throw std::invalid_argument("h must be > 0");
}

namespace {

bool inside_unit_box(const ScalarField& v) {
  return std::all_of(v.values().begin(), v.values().end(),
                     [](double x) { return x >= 0.0 && x <= 1.0; });
}

// (alpha/2) sum (v^2 + eta)|grad_h u|^2 + (beta/2)||u - g||^2
double smoothing_and_fidelity(const ScalarField& u, const ScalarField& v, const ModelParams& p,
                              const ScalarField& g) {
  const VectorField gu = grad(u, p.h);
  const double smooth = reduce_rows_sum(u.rows(), [&](std::size_t i) {
    const double* a = gu.c1.row(i);
    const double* b = gu.c2.row(i);
    const double* vi = v.row(i);
    double acc = 0.0;
    for (std::size_t j = 0; j < u.cols(); ++j) acc += (vi[j] * vi[j] + p.eta) * (a[j] * a[j] + b[j] * b[j]);
    return acc;
  });
  const double fidelity = reduce_rows_sum(u.rows(), [&](std::size_t i) {
    const double* a = u.row(i);
    const double* b = g.row(i);
    double acc = 0.0;
    for (std::size_t j = 0; j < u.cols(); ++j) acc += (a[j] - b[j]) * (a[j] - b[j]);
    return acc;
  });
  return 0.5 * p.alpha * smooth + 0.5 * p.beta * fidelity;
}

void check_inputs(const ScalarField& u, const ScalarField& v, const ScalarField& g, const ModelParams& p,
                  const char* where) {
  require_same_shape(u, v, where);
  require_same_shape(u, g, where);
  p.validate();
}

}  // namespace

double energy_bv(const ScalarField& u, const ScalarField& v, const ModelParams& p, const ScalarField& g) {
  check_inputs(u, v, g, p, "energy_bv");
  if (!inside_unit_box(v)) return kInfiniteEnergy;
  const double defect = static_cast<double>(v.size()) - sum(v);  // <1, 1 - v>
  const double tv = norm1_of_pointwise(grad(v, p.h));
  return smoothing_and_fidelity(u, v, p, g) + p.gamma / (2.0 * p.epsilon) * defect + 0.5 * p.gamma * tv;
}

double energy_at(const ScalarField& u, const ScalarField& v, const ModelParams& p, const ScalarField& g) {
  check_inputs(u, v, g, p, "energy_at");
  if (!inside_unit_box(v)) return kInfiniteEnergy;
  const double defect = reduce_rows_sum(v.rows(), [&](std::size_t i) {
    const double* r = v.row(i);
    double acc = 0.0;
    for (std::size_t j = 0; j < v.cols(); ++j) acc += (1.0 - r[j]) * (1.0 - r[j]);
    return acc;
  });
  const double dirichlet = norm2sq_of_pointwise(grad(v, p.h));
  return smoothing_and_fidelity(u, v, p, g) + p.gamma / (4.0 * p.epsilon) * defect +
         p.gamma * p.epsilon * dirichlet;
}

double energy(const ScalarField& u, const ScalarField& v, const ModelParams& p, const ScalarField& g) {
  return p.model == Model::BV ? energy_bv(u, v, p, g) : energy_at(u, v, p, g);
}

double limit_energy_1d(const PiecewiseSignal& u, double alpha, double gamma) {
  if (u.jumps < 0) throw std::invalid_argument("limit_energy_1d: negative jump count");
  double dirichlet = 0.0;
  for (std::size_t k = 0; k + 1 < u.samples.size(); ++k) {
    const double d = (u.samples[k + 1] - u.samples[k]) / u.h;
    dirichlet += d * d * u.h;
  }
  return 0.5 * alpha * dirichlet + gamma * u.jumps;
}

// --- instantiation -----------------------------------------------------------

double AssumptionInstantiation::W(double t) const { return std::pow(1.0 - t, epsilon); }

double AssumptionInstantiation::phi(double t) const { return std::pow(t, 1.0 / epsilon) / epsilon; }

double AssumptionInstantiation::phi_star(double s) const { return bvms::phi_star(s, epsilon); }

double phi_star(double s, double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw std::invalid_argument("phi_star: epsilon must lie in (0,1)");
  if (!(s >= 0.0)) throw std::invalid_argument("phi_star: s must be >= 0");
  const double breakpoint = 1.0 / (epsilon * epsilon);
  if (s <= breakpoint)
    return (1.0 - epsilon) * std::pow(std::pow(epsilon, 2.0 * epsilon) * s, 1.0 / (1.0 - epsilon));
  return s - 1.0 / epsilon;
}

bool AssumptionReport::all_passed() const {
  return !checks.empty() && std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed; });
}

namespace {

// int_0^1 (1 - (1-t)^eps) dt with t = 1 - x^2, composite Simpson in x. The substitution
// moves the endpoint singularity of (1-t)^eps into the smoother x^(1+2eps).
double a1_quadrature(const AssumptionInstantiation& inst, int nodes) {
  int intervals = std::max(2, nodes);
  if (intervals % 2) ++intervals;
  const double dx = 1.0 / intervals;
  auto f = [&](double x) {
    const double t = 1.0 - x * x;
    return std::abs(inst.W(t) - 1.0) * 2.0 * x;
  };
  double acc = f(0.0) + f(1.0);
  for (int k = 1; k < intervals; ++k) acc += (k % 2 ? 4.0 : 2.0) * f(k * dx);
  return acc * dx / 3.0;
}

double a2_min(const AssumptionInstantiation& inst, double T, int nodes) {
  double best = std::numeric_limits<double>::infinity();
  for (int k = 0; k <= nodes; ++k) {
    const double t = T * k / nodes;
    best = std::min(best, inst.phi(inst.W(t)));
  }
  return best;
}

double a3_max_excess(const AssumptionInstantiation& inst, int points) {
  const double eps = inst.epsilon;
  const double s_max = 10.0 / (eps * eps);
  const double s_min = 1e-12 * s_max;
  double worst = inst.phi_star(0.0) - inst.psi(0.0);
  const double ratio = std::pow(s_max / s_min, 1.0 / (points - 1));
  double s = s_min;
  for (int k = 0; k < points; ++k, s *= ratio) {
    worst = std::max(worst, inst.phi_star(std::min(s, s_max)) - inst.psi(std::min(s, s_max)));
  }
  const double bp = 1.0 / (eps * eps);
  worst = std::max(worst, inst.phi_star(bp) - inst.psi(bp));
  return worst;
}

}  // namespace

AssumptionReport check_assumptions(const std::vector<double>& eps_sequence, const AssumptionOptions& opts) {
  if (eps_sequence.empty()) throw std::invalid_argument("check_assumptions: empty eps sequence");
  for (std::size_t k = 0; k < eps_sequence.size(); ++k) {
    const double e = eps_sequence[k];
    if (!(e > 0.0 && e < 1.0)) throw std::invalid_argument("check_assumptions: eps must lie in (0,1)");
    if (k > 0 && !(e < eps_sequence[k - 1]))
      throw std::invalid_argument("check_assumptions: eps sequence must be strictly decreasing");
  }

  AssumptionReport report;
  for (double eps : eps_sequence) {
    AssumptionInstantiation inst{eps};
    AssumptionRow row;
    row.epsilon = eps;
    row.a1_integral = a1_quadrature(inst, opts.quadrature_nodes);
    row.a1_closed_form = eps / (1.0 + eps);
    row.a2_phi_at_one = inst.phi(inst.W(1.0));
    row.a2_min_on_interval = a2_min(inst, opts.blowup_T, opts.quadrature_nodes);
    row.a3_max_excess = a3_max_excess(inst, opts.conjugate_grid_points);
    const double eta = eps * eps;
    row.a4_value = eta * inst.phi(inst.W(0.0));
    report.rows.push_back(row);
  }

  const auto& rows = report.rows;
  auto decreasing = [&](auto member) {
    for (std::size_t k = 1; k < rows.size(); ++k)
      if (!(rows[k].*member < rows[k - 1].*member)) return false;
    return true;
  };
  auto increasing = [&](auto member) {
    for (std::size_t k = 1; k < rows.size(); ++k)
      if (!(rows[k].*member > rows[k - 1].*member)) return false;
    return true;
  };

  {
    AssumptionCheck c;
    c.name = "A1";
    for (const auto& r : rows) c.worst_margin = std::max(c.worst_margin, std::abs(r.a1_integral - r.a1_closed_form));
    c.passed = c.worst_margin <= 1e-6 && decreasing(&AssumptionRow::a1_integral);
    c.detail = "max |quadrature - eps/(1+eps)|, integral decreasing in eps";
    report.checks.push_back(c);
  }
  {
    AssumptionCheck c;
    c.name = "A2";
    for (const auto& r : rows) c.worst_margin = std::max(c.worst_margin, r.a2_phi_at_one);
    c.passed = c.worst_margin <= opts.tolerance && increasing(&AssumptionRow::a2_min_on_interval);
    std::ostringstream os;
    os << "max phi(W(1)); min_[0," << opts.blowup_T << "] phi(W) increasing";
    c.detail = os.str();
    report.checks.push_back(c);
    for (double level : opts.blowup_levels) {
      double first = 0.0;
      for (const auto& r : rows)
        if (r.a2_min_on_interval > level) {
          first = r.epsilon;
          break;
        }
      report.a2_crossings.emplace_back(level, first);
    }
  }
  {
    AssumptionCheck c;
    c.name = "A3";
    c.worst_margin = -std::numeric_limits<double>::infinity();
    for (const auto& r : rows) c.worst_margin = std::max(c.worst_margin, r.a3_max_excess);
    c.passed = c.worst_margin <= opts.tolerance;
    c.detail = "max over grid of phi*(s) - psi(s)";
    report.checks.push_back(c);
  }
  {
    AssumptionCheck c;
    c.name = "A4";
    c.worst_margin = rows.back().a4_value;
    c.passed = decreasing(&AssumptionRow::a4_value);
    c.detail = "eta*phi(W(0)) with eta = eps^2, decreasing";
    report.checks.push_back(c);
  }
  return report;
}

}  // namespace bvms
