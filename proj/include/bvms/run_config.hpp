#pragma once

/// \file run_config.hpp
/// \brief Flat key=value run configuration shared by the config file and CLI flags.
///
/// Keys match the long flag names (`eps-list`, `max-inner`, ...). Solver scalars are
/// optional overrides; each command starts from its own defaults and applies them.

#include "bvms/palm.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace bvms {

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class Command { Denoise, Compare, Sweep, Gamma1D, CheckAssumptions };

std::string to_string(Command c);
Command parse_command(const std::string& name);

struct RunConfig {
  Command command = Command::Denoise;
  std::string input;
  std::string out = "out";
  Model model = Model::BV;
  std::string format = "png";  ///< png | pgm

  std::optional<double> eps;
  std::optional<double> eps_bv;
  std::optional<double> eps_h1;
  std::vector<double> eps_list;
  std::vector<Model> compare_models{Model::BV, Model::H1};

  std::optional<double> alpha, beta, gamma, theta, tol1, tol2;
  std::optional<int> maxit, max_inner;

  double sigma = 0.0;
  std::uint64_t seed = 0;
  double c = 20.0;
  double band = 0.05;
  std::string signal = "step";  ///< gamma1d: step | ramp | constant
  int jobs = 1;
  bool record_time = false;

  /// Sets one key from its textual value. Throws ConfigError for unknown keys or bad values.
  void set(const std::string& key, const std::string& value);

  /// Applies the optional overrides on top of `defaults` and validates the result.
  SolverParams solver_params(const SolverParams& defaults) const;

  /// Checks the cross-field requirements of `command` (e.g. denoise needs eps and input).
  void validate() const;

  /// key=value lines; parse_config_text(to_text()) reproduces *this.
  std::string to_text() const;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

/// Parses key=value lines; blank lines and lines starting with '#' are ignored.
RunConfig parse_config_text(const std::string& text, RunConfig base = {});
RunConfig load_config_file(const std::string& path, RunConfig base = {});

/// Every key accepted by RunConfig::set, in serialisation order.
const std::vector<std::string>& config_keys();

/// Denoising defaults: alpha 1.75e-4, beta 1, gamma 3e-5, theta 0.99,
/// tol1 1e-3, tol2 1e-5, 10000 outer iterations.
SolverParams denoise_defaults();

}  // namespace bvms
