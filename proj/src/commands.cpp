#include "bvms/commands.hpp"

#include "bvms/gamma_lab.hpp"
#include "bvms/work_pool.hpp"

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <mutex>
#include <ostream>
#include <sstream>

namespace bvms {

namespace fs = std::filesystem;

ImageRecord load_input(const std::string& input) {
  if (input.rfind("synth:", 0) != 0) return load_gray(input);
  std::vector<std::string> parts;
  std::stringstream ss(input);
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(item);
  auto arg = [&](std::size_t k, double fallback) {
    if (k >= parts.size() || parts[k].empty()) return fallback;
    try {
      return std::stod(parts[k]);
    } catch (const std::exception&) {
      throw ConfigError("bad synthetic descriptor '" + input + "'");
    }
  };
  const std::string kind = parts.size() > 1 ? parts[1] : "";
  try {
    if (kind == "disk")
      return synth_disk(static_cast<std::size_t>(arg(2, 128)), arg(3, 0.25), arg(4, 0.8), arg(5, 0.2));
    if (kind == "const") return synth_constant(static_cast<std::size_t>(arg(2, 128)), arg(3, 0.5));
  } catch (const std::invalid_argument& e) {
    throw ConfigError("bad synthetic descriptor '" + input + "': " + e.what());
  }
  throw ConfigError("unknown synthetic input '" + input + "' (expected synth:disk or synth:const)");
}

namespace {

template <class Body>
int guarded(std::ostream& log, Body&& body) {
  try {
    return body();
  } catch (const ConfigError& e) {
    log << "error: " << e.what() << '\n';
    return exit_code::kUsage;
  } catch (const ImageError& e) {
    log << "error: " << e.what() << '\n';
    return exit_code::kIo;
  } catch (const fs::filesystem_error& e) {
    log << "error: " << e.what() << '\n';
    return exit_code::kIo;
  } catch (const NumericalError& e) {
    log << "numerical failure: " << e.what() << '\n';
    return exit_code::kNumerical;
  } catch (const std::invalid_argument& e) {
    log << "error: " << e.what() << '\n';
    return exit_code::kUsage;
  } catch (const std::exception& e) {
    log << "error: " << e.what() << '\n';
    return exit_code::kNumerical;
  }
}

std::string ext(const RunConfig& cfg) { return cfg.format == "pgm" ? ".pgm" : ".png"; }

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw ImageError("cannot write " + path.string());
  f << text;
  if (!f) throw ImageError("write failed for " + path.string());
}

void write_run_csv(const fs::path& path, const RunReport& report, bool with_time) {
  std::ostringstream os;
  report.write_csv(os, with_time);
  write_text(path, os.str());
}

// u stays in [0,1] in exact arithmetic; clamp away round-off before quantising.
void save_field(const ScalarField& f, const fs::path& path) { save_gray(clamp(f, 0.0, 1.0), path); }

struct Inputs {
  ImageRecord clean;
  ImageRecord noisy;
};

Inputs prepare_inputs(const RunConfig& cfg) {
  Inputs in;
  in.clean = load_input(cfg.input);
  in.noisy = cfg.sigma > 0.0 ? add_gaussian_noise(in.clean, cfg.sigma, cfg.seed) : in.clean;
  return in;
}

class ProgressLog {
 public:
  explicit ProgressLog(std::ostream& log) : log_(log) {}
  IterationObserver observer(std::string label) {
    return [this, label = std::move(label)](const IterationRecord& r) {
      if (r.it % 50 != 0) return;
      std::lock_guard lock(mutex_);
      log_ << label << " it=" << r.it << " energy=" << r.energy << " inner=" << r.inner_iters << " gap=" << r.gap
           << " du=" << r.du_inf << " dv=" << r.dv_inf << '\n';
    };
  }

 private:
  std::ostream& log_;
  std::mutex mutex_;
};

struct ModelRun {
  SolveResult result;
  Metrics metrics;
};

ModelRun run_model(const RunConfig& cfg, const Inputs& in, Model model, double eps, const IterationObserver& obs) {
  RunConfig local = cfg;
  local.model = model;
  local.eps = eps;
  SolverParams p = local.solver_params(denoise_defaults());
  p.model.h = in.noisy.h;
  ModelRun run;
  run.result = solve(in.noisy.field, p, obs);
  run.metrics = metrics(run.result.u, run.result.v, in.clean.field, in.noisy.field, cfg.band);
  return run;
}

RunConfig with_default_eps(const RunConfig& cfg, std::vector<double> fallback) {
  RunConfig c = cfg;
  if (c.eps_list.empty()) c.eps_list = std::move(fallback);
  return c;
}

std::string eps_label(double eps) {
  std::ostringstream os;
  os << eps;
  return os.str();
}

}  // namespace

int cmd_denoise(const RunConfig& cfg, std::ostream& out, std::ostream& log) {
  return guarded(log, [&] {
    cfg.validate();
    const Inputs in = prepare_inputs(cfg);
    ProgressLog progress(log);
    const ModelRun run = run_model(cfg, in, cfg.model, *cfg.eps, progress.observer(to_string(cfg.model)));

    const fs::path dir(cfg.out);
    fs::create_directories(dir);
    save_field(in.noisy.field, dir / ("g" + ext(cfg)));
    save_field(run.result.u, dir / ("u" + ext(cfg)));
    save_field(run.result.v, dir / ("v" + ext(cfg)));
    write_run_csv(dir / "run.csv", run.result.report, cfg.record_time);
    write_text(dir / "metrics.csv", std::string(Metrics::kCsvHeader) + "\n" + run.metrics.csv_row() + "\n");

    const RunReport& rep = run.result.report;
    out << "status=" << to_string(rep.status) << " iterations=" << rep.rows.size()
        << " inner_exhausted=" << rep.inner_exhausted << '\n'
        << Metrics::kCsvHeader << '\n'
        << run.metrics.csv_row() << '\n';
    return exit_code::kOk;
  });
}

int cmd_compare(const RunConfig& cfg, std::ostream& out, std::ostream& log) {
  return guarded(log, [&] {
    cfg.validate();
    const Inputs in = prepare_inputs(cfg);
    const fs::path dir(cfg.out);
    fs::create_directories(dir);
    ProgressLog progress(log);

    const auto& models = cfg.compare_models;
    const bool same = models[0] == models[1];
    std::ostringstream table;
    table << "model,eps," << Metrics::kCsvHeader << '\n';
    for (std::size_t k = 0; k < models.size(); ++k) {
      const Model m = models[k];
      const double eps = m == Model::BV ? *cfg.eps_bv : *cfg.eps_h1;
      const std::string label = to_string(m) + (same ? "_" + std::to_string(k + 1) : "");
      const ModelRun run = run_model(cfg, in, m, eps, progress.observer(label));
      save_field(run.result.u, dir / (label + "_u" + ext(cfg)));
      save_field(run.result.v, dir / (label + "_v" + ext(cfg)));
      write_run_csv(dir / (label + "_run.csv"), run.result.report, cfg.record_time);
      table << std::setprecision(17) << to_string(m) << ',' << eps << ',' << run.metrics.csv_row() << '\n';
    }
    write_text(dir / "compare.csv", table.str());
    out << table.str();
    return exit_code::kOk;
  });
}

int cmd_sweep(const RunConfig& cfg, std::ostream& out, std::ostream& log) {
  return guarded(log, [&] {
    cfg.validate();
    const Inputs in = prepare_inputs(cfg);
    const fs::path dir(cfg.out);
    fs::create_directories(dir);
    ProgressLog progress(log);

    std::vector<std::string> rows(cfg.eps_list.size());
    run_bounded(cfg.eps_list.size(), static_cast<std::size_t>(cfg.jobs), [&](std::size_t k) {
      const double eps = cfg.eps_list[k];
      const std::string label = "eps_" + eps_label(eps);
      const ModelRun run = run_model(cfg, in, cfg.model, eps, progress.observer(label));
      const fs::path sub = dir / label;
      fs::create_directories(sub);
      save_field(run.result.u, sub / ("u" + ext(cfg)));
      save_field(run.result.v, sub / ("v" + ext(cfg)));
      write_run_csv(sub / "run.csv", run.result.report, cfg.record_time);
      const RunReport& rep = run.result.report;
      std::ostringstream row;
      row << std::setprecision(17) << eps << ',' << rep.rows.size() << ',' << to_string(rep.status) << ','
          << (rep.rows.empty() ? rep.initial_energy : rep.rows.back().energy) << ',' << run.metrics.csv_row();
      rows[k] = row.str();
    });

    std::ostringstream table;
    table << "eps,iterations,status,energy," << Metrics::kCsvHeader << '\n';
    for (const auto& r : rows) table << r << '\n';
    write_text(dir / "sweep.csv", table.str());
    out << table.str();
    return exit_code::kOk;
  });
}

int cmd_gamma1d(const RunConfig& given, std::ostream& out, std::ostream& log) {
  return guarded(log, [&] {
    const RunConfig cfg = with_default_eps(given, {4e-2, 2e-2, 1e-2});
    cfg.validate();
    SolverParams base = gamma_lab_defaults();
    RunConfig local = cfg;
    local.eps = cfg.eps_list.front();  // placeholder so validation sees a positive epsilon
    base = local.solver_params(base);

    SignalSpec signal;
    if (cfg.signal == "ramp") signal.kind = SignalSpec::Kind::Ramp;
    else if (cfg.signal == "constant") signal.kind = SignalSpec::Kind::Constant;

    const SweepTable table = gamma_sweep(signal, cfg.eps_list, cfg.c, base, static_cast<std::size_t>(cfg.jobs));
    const fs::path dir(cfg.out);
    fs::create_directories(dir);
    std::ostringstream os;
    table.write_csv(os);
    write_text(dir / "gamma.csv", os.str());
    out << os.str();
    log << "relative error trend " << (table.decreasing_trend() ? "decreasing" : "not decreasing") << '\n';
    return exit_code::kOk;
  });
}

int cmd_check_assumptions(const RunConfig& given, std::ostream& out, std::ostream& log) {
  return guarded(log, [&] {
    const RunConfig cfg = with_default_eps(given, {0.5, 0.2, 0.1, 0.05, 0.01});
    cfg.validate();
    AssumptionReport rep;
    try {
      rep = check_assumptions(cfg.eps_list);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
    const fs::path dir(cfg.out);
    fs::create_directories(dir);
    std::ostringstream csv;
    csv << "eps,a1_integral,a1_closed_form,a2_phi_at_one,a2_min_on_interval,a3_max_excess,a4_value\n"
        << std::setprecision(17);
    for (const auto& r : rep.rows)
      csv << r.epsilon << ',' << r.a1_integral << ',' << r.a1_closed_form << ',' << r.a2_phi_at_one << ','
          << r.a2_min_on_interval << ',' << r.a3_max_excess << ',' << r.a4_value << '\n';
    write_text(dir / "assumptions.csv", csv.str());
    for (const auto& c : rep.checks)
      out << c.name << ' ' << (c.passed ? "PASS" : "FAIL") << " worst=" << c.worst_margin << " (" << c.detail
          << ")\n";
    return rep.all_passed() ? exit_code::kOk : exit_code::kNumerical;
  });
}

int run_command(const RunConfig& cfg, std::ostream& out, std::ostream& log) {
  switch (cfg.command) {
    case Command::Denoise: return cmd_denoise(cfg, out, log);
    case Command::Compare: return cmd_compare(cfg, out, log);
    case Command::Sweep: return cmd_sweep(cfg, out, log);
    case Command::Gamma1D: return cmd_gamma1d(cfg, out, log);
    case Command::CheckAssumptions: return cmd_check_assumptions(cfg, out, log);
  }
  return exit_code::kUsage;
}

}  // namespace bvms
