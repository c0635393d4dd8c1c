#include "bvms/run_config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace bvms {

std::string to_string(Command c) {
  switch (c) {
    case Command::Denoise: return "denoise";
    case Command::Compare: return "compare";
    case Command::Sweep: return "sweep";
    case Command::Gamma1D: return "gamma1d";
    case Command::CheckAssumptions: return "check-assumptions";
  }
  return "?";
}

Command parse_command(const std::string& name) {
  for (Command c : {Command::Denoise, Command::Compare, Command::Sweep, Command::Gamma1D, Command::CheckAssumptions})
    if (to_string(c) == name) return c;
  throw ConfigError("unknown command '" + name + "'");
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& value) {
  const std::string v = trim(value);
  double x = 0.0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
  if (ec != std::errc() || ptr != v.data() + v.size() || v.empty())
    throw ConfigError("option '" + key + "': expected a number, got '" + value + "'");
  return x;
}

long long to_integer(const std::string& key, const std::string& value) {
  const std::string v = trim(value);
  long long x = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
  if (ec != std::errc() || ptr != v.data() + v.size() || v.empty())
    throw ConfigError("option '" + key + "': expected an integer, got '" + value + "'");
  return x;
}

bool to_bool(const std::string& key, const std::string& value) {
  const std::string v = trim(value);
  if (v == "1" || v == "true" || v == "yes" || v == "on") return true;
  if (v == "0" || v == "false" || v == "no" || v == "off") return false;
  throw ConfigError("option '" + key + "': expected true/false, got '" + value + "'");
}

std::vector<std::string> split_commas(const std::string& value) {
  std::vector<std::string> parts;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) parts.push_back(item);
  }
  return parts;
}

std::string format_double(double x) {
  std::ostringstream os;
  os << std::setprecision(17) << x;
  return os.str();
}

template <class T, class F>
std::string join(const std::vector<T>& xs, F&& fmt) {
  std::string out;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    if (k) out += ',';
    out += fmt(xs[k]);
  }
  return out;
}

Model to_model(const std::string& key, const std::string& value) {
  try {
    return parse_model(trim(value));
  } catch (const std::invalid_argument& e) {
    throw ConfigError("option '" + key + "': " + e.what());
  }
}

}  // namespace

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys{
      "command", "input", "out", "model", "format", "eps", "eps-bv", "eps-h1", "eps-list", "models",
      "alpha", "beta", "gamma", "theta", "tol1", "tol2", "maxit", "max-inner",
      "sigma", "seed", "c", "band", "signal", "jobs", "record-time"};
  return keys;
}

void RunConfig::set(const std::string& key, const std::string& raw) {
  const std::string value = trim(raw);
  if (key == "command") command = parse_command(value);
  else if (key == "input") input = value;
  else if (key == "out") out = value;
  else if (key == "model") model = to_model(key, value);
  else if (key == "format") {
    if (value != "png" && value != "pgm") throw ConfigError("option 'format': expected png or pgm");
    format = value;
  }
  else if (key == "eps") eps = to_double(key, value);
  else if (key == "eps-bv") eps_bv = to_double(key, value);
  else if (key == "eps-h1") eps_h1 = to_double(key, value);
  else if (key == "eps-list") {
    eps_list.clear();
    for (const auto& part : split_commas(value)) eps_list.push_back(to_double(key, part));
  }
  else if (key == "models") {
    compare_models.clear();
    for (const auto& part : split_commas(value)) compare_models.push_back(to_model(key, part));
    if (compare_models.size() != 2) throw ConfigError("option 'models': expected two models, e.g. bv,h1");
  }
  else if (key == "alpha") alpha = to_double(key, value);
  else if (key == "beta") beta = to_double(key, value);
  else if (key == "gamma") gamma = to_double(key, value);
  else if (key == "theta") theta = to_double(key, value);
  else if (key == "tol1") tol1 = to_double(key, value);
  else if (key == "tol2") tol2 = to_double(key, value);
  else if (key == "maxit") maxit = static_cast<int>(to_integer(key, value));
  else if (key == "max-inner") max_inner = static_cast<int>(to_integer(key, value));
  else if (key == "sigma") {
    sigma = to_double(key, value);
    if (!(sigma >= 0.0)) throw ConfigError("option 'sigma' must be >= 0");
  }
  else if (key == "seed") {
    const long long s = to_integer(key, value);
    if (s < 0) throw ConfigError("option 'seed' must be >= 0");
    seed = static_cast<std::uint64_t>(s);
  }
  else if (key == "c") c = to_double(key, value);
  else if (key == "band") band = to_double(key, value);
  else if (key == "signal") {
    if (value != "step" && value != "ramp" && value != "constant")
      throw ConfigError("option 'signal': expected step, ramp or constant");
    signal = value;
  }
  else if (key == "jobs") {
    jobs = static_cast<int>(to_integer(key, value));
    if (jobs < 1) throw ConfigError("option 'jobs' must be >= 1");
  }
  else if (key == "record-time") record_time = to_bool(key, value);
  else throw ConfigError("unknown option '" + key + "'");
}

SolverParams RunConfig::solver_params(const SolverParams& defaults) const {
  SolverParams p = defaults;
  if (alpha) p.model.alpha = *alpha;
  if (beta) p.model.beta = *beta;
  if (gamma) p.model.gamma = *gamma;
  if (theta) p.theta = *theta;
  if (tol1) p.tol1 = *tol1;
  if (tol2) p.tol2 = *tol2;
  if (maxit) p.max_outer = *maxit;
  if (max_inner) p.max_inner = *max_inner;
  if (eps) p.model.epsilon = *eps;
  p.model.model = model;
  p.seed = seed;
  try {
    p.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return p;
}

void RunConfig::validate() const {
  auto need_input = [&] {
    if (input.empty()) throw ConfigError(to_string(command) + ": --input is required");
  };
  auto positive_list = [&] {
    if (eps_list.empty()) throw ConfigError(to_string(command) + ": --eps-list is required");
    for (double e : eps_list)
      if (!(e > 0.0)) throw ConfigError("eps-list entries must be positive");
  };
  if (out.empty()) throw ConfigError("--out must not be empty");
  switch (command) {
    case Command::Denoise:
      need_input();
      if (!eps) throw ConfigError("denoise: --eps is required");
      break;
    case Command::Compare: {
      need_input();
      for (Model m : compare_models) {
        if (m == Model::BV && !eps_bv) throw ConfigError("compare: --eps-bv is required");
        if (m == Model::H1 && !eps_h1) throw ConfigError("compare: --eps-h1 is required");
      }
      break;
    }
    case Command::Sweep:
      need_input();
      positive_list();
      break;
    case Command::Gamma1D:
      positive_list();
      if (!(c >= 1.0)) throw ConfigError("gamma1d: --c must be >= 1");
      break;
    case Command::CheckAssumptions:
      positive_list();
      break;
  }
  if (!(band > 0.0 && band < 0.5)) throw ConfigError("--band must lie in (0, 0.5)");
}

std::string RunConfig::to_text() const {
  std::ostringstream os;
  auto opt = [&](const char* key, const auto& value) {
    if (value) os << key << '=' << format_double(static_cast<double>(*value)) << '\n';
  };
  os << "command=" << to_string(command) << '\n';
  if (!input.empty()) os << "input=" << input << '\n';
  os << "out=" << out << '\n';
  os << "model=" << to_string(model) << '\n';
  os << "format=" << format << '\n';
  opt("eps", eps);
  opt("eps-bv", eps_bv);
  opt("eps-h1", eps_h1);
  if (!eps_list.empty()) os << "eps-list=" << join(eps_list, format_double) << '\n';
  os << "models=" << join(compare_models, [](Model m) { return to_string(m); }) << '\n';
  opt("alpha", alpha);
  opt("beta", beta);
  opt("gamma", gamma);
  opt("theta", theta);
  opt("tol1", tol1);
  opt("tol2", tol2);
  if (maxit) os << "maxit=" << *maxit << '\n';
  if (max_inner) os << "max-inner=" << *max_inner << '\n';
  os << "sigma=" << format_double(sigma) << '\n';
  os << "seed=" << seed << '\n';
  os << "c=" << format_double(c) << '\n';
  os << "band=" << format_double(band) << '\n';
  os << "signal=" << signal << '\n';
  os << "jobs=" << jobs << '\n';
  os << "record-time=" << (record_time ? "true" : "false") << '\n';
  return os.str();
}

RunConfig parse_config_text(const std::string& text, RunConfig base) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(lineno) + ": expected key=value");
    base.set(trim(t.substr(0, eq)), t.substr(eq + 1));
  }
  return base;
}

RunConfig load_config_file(const std::string& path, RunConfig base) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str(), std::move(base));
}

SolverParams denoise_defaults() {
  SolverParams p;
  p.model.alpha = 1.75e-4;
  p.model.beta = 1.0;
  p.model.gamma = 3e-5;
  p.theta = 0.99;
  p.tol1 = 1e-3;
  p.tol2 = 1e-5;
  p.max_outer = 10000;
  p.max_inner = 5000;
  return p;
}

}  // namespace bvms
