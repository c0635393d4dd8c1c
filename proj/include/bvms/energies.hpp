#pragma once

/// \file energies.hpp
/// \brief Discrete phase-field energies (BV and H1 models), the one-dimensional
/// sharp-interface reference energy, and a numeric checker for the
/// (W_eps, phi_eps, psi_eps) instantiation behind the BV phase field.

#include "bvms/field.hpp"

#include <limits>
#include <string>
#include <vector>

namespace bvms {

/// Returned by the energies when the phase field leaves [0, 1] (indicator term).
inline constexpr double kInfiniteEnergy = std::numeric_limits<double>::infinity();

enum class Model { BV, H1 };

std::string to_string(Model m);
Model parse_model(const std::string& name);  ///< "bv" | "h1" (case-insensitive)

struct ModelParams {
  double alpha = 1.75e-4;  ///< smoothing weight
  double beta = 1.0;       ///< fidelity weight
  double gamma = 3e-5;     ///< contour weight
  double epsilon = 1e-3;   ///< phase-field width
  double eta = 0.0;        ///< extra weight in (v^2 + eta)|grad u|^2
  double h = 1.0;          ///< pixel size
  Model model = Model::BV;

  /// Throws std::invalid_argument naming the first violated bound.
  void validate() const;
};

/// (alpha/2)||v|grad_h u|||^2 + (beta/2)||u-g||^2 + (gamma/2eps)<1,1-v> + (gamma/2)|| |grad_h v| ||_1.
/// The h^2 volume factor is omitted. Returns kInfiniteEnergy if some v_ij is outside [0,1].
double energy_bv(const ScalarField& u, const ScalarField& v, const ModelParams& p, const ScalarField& g);

/// Same first two terms, then (gamma/4eps)||1-v||^2 + gamma*eps|| |grad_h v| ||^2.
double energy_at(const ScalarField& u, const ScalarField& v, const ModelParams& p, const ScalarField& g);

/// Dispatches on p.model.
double energy(const ScalarField& u, const ScalarField& v, const ModelParams& p, const ScalarField& g);

/// Piecewise description of a 1D signal on [0, 1]: samples of the smooth part on a
/// uniform grid of spacing h, plus the number of jumps.
struct PiecewiseSignal {
  std::vector<double> samples;
  double h = 1.0;
  int jumps = 0;
};

/// (alpha/2) sum |u'|^2 h + gamma * #jumps, with u' taken by forward differences
/// of the smooth samples (differences across a jump must be excluded by the caller).
double limit_energy_1d(const PiecewiseSignal& u, double alpha, double gamma);

// --- (W_eps, phi_eps, psi_eps) instantiation ---------------------------------

/// Closed-form pieces: W_eps(t) = (1-t)^eps, phi_eps(t) = t^(1/eps)/eps, psi_eps(s) = s,
/// f(t) = (alpha/gamma) t^2.
struct AssumptionInstantiation {
  double epsilon;
  double alpha = 1.0;
  double gamma = 1.0;

  double f(double t) const { return alpha / gamma * t * t; }
  double W(double t) const;
  double phi(double t) const;
  double psi(double s) const { return s; }
  double phi_star(double s) const;
};

/// Convex conjugate of phi_eps restricted to [0, 1]:
/// (1-eps)(eps^{2eps} s)^{1/(1-eps)} for s <= eps^-2, s - 1/eps beyond.
/// Requires 0 < eps < 1 and s >= 0.
double phi_star(double s, double epsilon);

struct AssumptionRow {
  double epsilon = 0;
  double a1_integral = 0;       ///< int_0^1 |W_eps - 1| dt by quadrature
  double a1_closed_form = 0;    ///< eps / (1 + eps)
  double a2_phi_at_one = 0;     ///< phi_eps(W_eps(1))
  double a2_min_on_interval = 0;///< min_{t in [0,T]} phi_eps(W_eps(t))
  double a3_max_excess = 0;     ///< max_s phi*_eps(s) - psi_eps(s) on the sample grid
  double a4_value = 0;          ///< eta_eps * phi_eps(W_eps(0)) with eta_eps = eps^2
};

struct AssumptionCheck {
  std::string name;
  bool passed = false;
  double worst_margin = 0;  ///< assumption-specific, see check_assumptions
  std::string detail;
};

struct AssumptionReport {
  std::vector<AssumptionRow> rows;
  std::vector<AssumptionCheck> checks;  ///< A1..A4 in order
  /// For each blow-up level C, the first eps in the sequence with min phi_eps(W_eps) > C (0 if none).
  std::vector<std::pair<double, double>> a2_crossings;
  bool all_passed() const;
};

struct AssumptionOptions {
  int quadrature_nodes = 10000;
  double blowup_T = 0.9;
  std::vector<double> blowup_levels{10.0, 100.0, 1000.0};
  int conjugate_grid_points = 2000;
  double tolerance = 1e-12;
};

/// Numeric certificate that the instantiation satisfies A1..A4 along a strictly
/// decreasing eps sequence in (0, 1).
///
/// A1 passes when every quadrature value matches eps/(1+eps) within 1e-6 and the
/// values decrease along the sequence. A2 passes when phi(W(1)) vanishes and the
/// minimum over [0,T] strictly increases. A3 passes when phi* <= psi on a geometric
/// grid in [0, 10/eps^2] for every eps. A4 passes when eta*phi(W(0)) decreases.
AssumptionReport check_assumptions(const std::vector<double>& eps_sequence,
                                   const AssumptionOptions& opts = {});

}  // namespace bvms
