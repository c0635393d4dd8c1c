#pragma once

/// \file commands.hpp
/// \brief Batch drivers behind the command-line tool. Each returns a process exit status.

#include "bvms/image.hpp"
#include "bvms/run_config.hpp"

#include <iosfwd>

namespace bvms {

namespace exit_code {
inline constexpr int kOk = 0;
inline constexpr int kUsage = 2;
inline constexpr int kIo = 3;
inline constexpr int kNumerical = 4;
}  // namespace exit_code

/// `input` is a file path or a phantom descriptor:
///   synth:disk[:N[:radius_frac[:inside[:outside]]]]   (defaults 128, 0.25, 0.8, 0.2)
///   synth:const[:N[:value]]                           (defaults 128, 0.5)
ImageRecord load_input(const std::string& input);

/// Artifacts in cfg.out: g, u, v images, run.csv, metrics.csv.
int cmd_denoise(const RunConfig& cfg, std::ostream& out, std::ostream& log);
/// Artifacts in cfg.out: <label>_u, <label>_v images, <label>_run.csv per model, compare.csv.
int cmd_compare(const RunConfig& cfg, std::ostream& out, std::ostream& log);
/// Artifacts in cfg.out: eps_<k>/ (u, v, run.csv) per eps, sweep.csv.
int cmd_sweep(const RunConfig& cfg, std::ostream& out, std::ostream& log);
/// Artifacts in cfg.out: gamma.csv. An empty eps-list means 4e-2,2e-2,1e-2.
int cmd_gamma1d(const RunConfig& cfg, std::ostream& out, std::ostream& log);
/// Artifacts in cfg.out: assumptions.csv. Exit status 4 when any assumption fails.
/// An empty eps-list means 0.5,0.2,0.1,0.05,0.01.
int cmd_check_assumptions(const RunConfig& cfg, std::ostream& out, std::ostream& log);

/// Validates the config and dispatches on cfg.command.
int run_command(const RunConfig& cfg, std::ostream& out, std::ostream& log);

}  // namespace bvms
