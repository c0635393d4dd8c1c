#include "bvms/gamma_lab.hpp"

#include "bvms/work_pool.hpp"

#include <cmath>
#include <iomanip>
#include <ostream>
#include <stdexcept>

namespace bvms {

Solve1DResult solve_1d(const Signal1D& g, SolverParams params) {
  if (g.samples.size() < 2) throw std::invalid_argument("solve_1d: need at least two samples");
  params.model.h = g.h;
  SolveResult r = solve(g.as_column(), params);
  Solve1DResult out;
  out.energy = energy(r.u, r.v, params.model, g.as_column()) * g.h;
  out.u = Signal1D::from_column(r.u, g.h);
  out.v = Signal1D::from_column(r.v, g.h);
  out.report = std::move(r.report);
  return out;
}

Signal1D SignalSpec::make(std::size_t n) const {
  switch (kind) {
    case Kind::Step: return synth_step_1d(n, position);
    case Kind::Ramp: return synth_ramp_1d(n, slope);
    case Kind::Constant: return synth_constant_1d(n, value);
  }
  throw std::logic_error("SignalSpec: unknown kind");
}

double SignalSpec::reference(double alpha, double gamma) const {
  switch (kind) {
    case Kind::Step: return gamma;
    case Kind::Ramp: return 0.5 * alpha * slope * slope;
    case Kind::Constant: return 0.0;
  }
  throw std::logic_error("SignalSpec: unknown kind");
}

void SweepTable::write_csv(std::ostream& os) const {
  os << kCsvHeader << '\n' << std::setprecision(17);
  for (const auto& r : rows) os << r.eps << ',' << r.h << ',' << r.energy << ',' << r.reference << ',' << r.rel_err << '\n';
}

bool SweepTable::decreasing_trend(int allowed_violations) const {
  int violations = 0;
  for (std::size_t k = 1; k < rows.size(); ++k)
    if (rows[k].rel_err > rows[k - 1].rel_err) ++violations;
  return violations <= allowed_violations;
}

SweepTable gamma_sweep(const SignalSpec& signal, const std::vector<double>& eps_list, double c,
                       const SolverParams& base, std::size_t workers) {
  if (!(c >= 1.0)) throw std::invalid_argument("gamma_sweep: c must be >= 1");
  SweepTable table;
  table.rows.resize(eps_list.size());
  run_bounded(eps_list.size(), workers, [&](std::size_t k) {
    const double eps = eps_list[k];
    if (!(eps > 0.0)) throw std::invalid_argument("gamma_sweep: eps must be positive");
    const auto n = static_cast<std::size_t>(std::max(2.0, std::round(c / eps)));
    const Signal1D g = signal.make(n);
    SolverParams p = base;
    p.model.epsilon = eps;
    const Solve1DResult r = solve_1d(g, p);
    SweepRow row;
    row.eps = eps;
    row.h = g.h;
    row.energy = r.energy;
    row.reference = signal.reference(p.model.alpha, p.model.gamma);
    row.rel_err = row.reference != 0.0 ? std::abs(row.energy - row.reference) / row.reference : std::abs(row.energy);
    table.rows[k] = row;
  });
  return table;
}

SolverParams gamma_lab_defaults() {
  SolverParams p;
  p.model.alpha = 1e-4;
  p.model.beta = 1e3;
  p.model.gamma = 1e-2;
  p.model.model = Model::BV;
  return p;
}

}  // namespace bvms
