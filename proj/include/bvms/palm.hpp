#pragma once

/// \file palm.hpp
/// \brief Proximal alternating linearized minimisation for the BV and H1 phase-field
/// functionals: an explicit gradient + closed-form prox step in u, then a linearised
/// step in v whose prox is solved by the primal-dual inner solver.

#include "bvms/chambolle_pock.hpp"
#include "bvms/energies.hpp"
#include "bvms/field.hpp"

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace bvms {

/// Raised when an iterate becomes non-finite.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SolverParams {
  ModelParams model;
  double theta = 0.99;
  double tol1 = 1e-3;
  double tol2 = 1e-5;
  int max_outer = 10000;
  int max_inner = 5000;
  int gap_every = 1;
  std::uint64_t seed = 0;  ///< carried for provenance only; solve() is deterministic

  void validate() const;
};

struct IterationRecord {
  int it = 0;
  double energy = 0.0;
  int inner_iters = 0;
  double gap = 0.0;
  double du_inf = 0.0;
  double dv_inf = 0.0;
  double ms = 0.0;
};

enum class RunStatus { Converged, MaxIterations };
std::string to_string(RunStatus s);

struct RunReport {
  double initial_energy = 0.0;  ///< energy of (g, 1) before the first step
  std::vector<IterationRecord> rows;
  RunStatus status = RunStatus::MaxIterations;
  int inner_exhausted = 0;  ///< outer steps whose inner solve hit max_inner

  static constexpr const char* kCsvHeader = "it,energy,inner_iters,gap,du_inf,dv_inf,ms";
  /// One row per outer iteration. Without `with_time` the ms column is written as 0 so
  /// that reruns produce identical files.
  void write_csv(std::ostream& os, bool with_time = false) const;
};

struct StepSizes {
  double t = 0.0;
  double s = 0.0;
  bool s_capped = false;  ///< u was constant, s set to the cap
};

/// t = h^2/(8 alpha); s = theta/(alpha || |grad_h u|^2 ||_inf), capped at
/// theta*(eps/gamma)*1e3 when grad_h u vanishes.
StepSizes step_sizes(const ScalarField& u, const SolverParams& params);

struct SolveResult {
  ScalarField u;
  ScalarField v;
  RunReport report;
};

using IterationObserver = std::function<void(const IterationRecord&)>;

/// Runs from u = g, v = 1, q = 0 until max(||v - v0||_inf, ||u - u0||_inf) <= tol1
/// or max_outer iterations. The inner dual variable is carried across outer steps.
SolveResult solve(const ScalarField& g, const SolverParams& params, const IterationObserver& observer = {});

}  // namespace bvms
