#pragma once

/// \file gamma_lab.hpp
/// \brief One-dimensional experiments on the sharp-interface limit: run the 2D solver
/// on N x 1 grids of width 1 and compare the volume-scaled minimal energy with the
/// limit energy (alpha/2) int |u'|^2 + gamma * #jumps.

#include "bvms/image.hpp"
#include "bvms/palm.hpp"

#include <iosfwd>
#include <vector>

namespace bvms {

struct Solve1DResult {
  Signal1D u;
  Signal1D v;
  double energy = 0.0;  ///< discrete energy times h (restores the neglected volume factor)
  RunReport report;
};

/// params.model.h is replaced by g.h.
Solve1DResult solve_1d(const Signal1D& g, SolverParams params);

/// Synthetic signal family regenerated at each grid size.
struct SignalSpec {
  enum class Kind { Step, Ramp, Constant };
  Kind kind = Kind::Step;
  double position = 0.5;  ///< Step
  double slope = 1.0;     ///< Ramp
  double value = 0.5;     ///< Constant

  Signal1D make(std::size_t n) const;
  /// Limit energy of the noiseless signal: gamma for a unit step, alpha*slope^2/2 for a ramp.
  double reference(double alpha, double gamma) const;
};

struct SweepRow {
  double eps = 0;
  double h = 0;
  double energy = 0;
  double reference = 0;
  double rel_err = 0;  ///< |energy - reference| / reference, or |energy| when reference == 0
};

struct SweepTable {
  std::vector<SweepRow> rows;

  static constexpr const char* kCsvHeader = "eps,h,energy,reference,rel_err";
  void write_csv(std::ostream& os) const;
  /// True when rel_err decreases along the rows except for at most `allowed_violations` steps.
  bool decreasing_trend(int allowed_violations = 1) const;
};

/// For each eps: h = 1/round(c/eps), run solve_1d with params.model.epsilon = eps.
/// Entries run on up to `workers` threads. Requires c >= 1.
SweepTable gamma_sweep(const SignalSpec& signal, const std::vector<double>& eps_list, double c,
                       const SolverParams& base, std::size_t workers = 1);

/// Defaults for the 1D experiments: beta = 1e3, gamma = 1e-2, alpha = 1e-4, BV model.
SolverParams gamma_lab_defaults();

}  // namespace bvms
