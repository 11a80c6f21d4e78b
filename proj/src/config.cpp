#include "bubblelab/config.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

#include "bubblelab/basis.hpp"
#include "bubblelab/io.hpp"

namespace bubble {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
  double x = 0.0;
  const auto r = std::from_chars(v.data(), v.data() + v.size(), x);
  if (r.ec != std::errc() || r.ptr != v.data() + v.size())
    throw ConfigError("'" + key + "': not a number: '" + v + "'");
  return x;
}

long to_long(const std::string& key, const std::string& v) {
  long x = 0;
  const auto r = std::from_chars(v.data(), v.data() + v.size(), x);
  if (r.ec != std::errc() || r.ptr != v.data() + v.size())
    throw ConfigError("'" + key + "': not an integer: '" + v + "'");
  return x;
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ConfigError("'" + key + "': not a boolean: '" + v + "'");
}

}  // namespace

const char* solver_name(SolverKind s) {
  switch (s) {
    case SolverKind::Galerkin: return "galerkin";
    case SolverKind::Fd: return "fd";
    case SolverKind::Both: return "both";
  }
  return "?";
}

void apply_setting(RunConfig& c, const std::string& key, const std::string& v) {
  ModelParams& p = c.params;
  auto num = [&](double& dst) { dst = to_double(key, v); };
  if (key == "params.gamma") num(p.gamma);
  else if (key == "params.c_v") num(p.c_v);
  else if (key == "params.kappa") num(p.kappa_g);
  else if (key == "params.R_g") num(p.R_g);
  else if (key == "params.T_inf") num(p.T_inf);
  else if (key == "params.rho_l") num(p.rho_l);
  else if (key == "params.mu_l") num(p.mu_l);
  else if (key == "params.sigma") num(p.sigma);
  else if (key == "params.p_inf") num(p.p_inf_star);
  else if (key == "forcing.kind") {
    if (v == "constant") p.forcing.kind = ForcingKind::Constant;
    else if (v == "decaying") p.forcing.kind = ForcingKind::DecayingPerturbation;
    else throw ConfigError("forcing.kind must be 'constant' or 'decaying'");
  } else if (key == "forcing.amplitude") num(p.forcing.amplitude);
  else if (key == "forcing.rate") num(p.forcing.rate);
  else if (key == "mass") num(c.mass);
  else if (key == "initial.dR") num(c.initial.dR);
  else if (key == "initial.R0_dot") num(c.initial.R0_dot);
  else if (key == "initial.rho0") num(c.initial.rho0);
  else if (key == "initial.mode") c.initial.mode = static_cast<int>(to_long(key, v));
  else if (key == "initial.amplitude") num(c.initial.amplitude);
  else if (key == "solver") {
    if (v == "galerkin") c.solver = SolverKind::Galerkin;
    else if (v == "fd") c.solver = SolverKind::Fd;
    else if (v == "both") c.solver = SolverKind::Both;
    else throw ConfigError("solver must be galerkin, fd or both");
  } else if (key == "J") c.J = static_cast<int>(to_long(key, v));
  else if (key == "N") c.N = static_cast<int>(to_long(key, v));
  else if (key == "T") num(c.T);
  else if (key == "tol") num(c.tol);
  else if (key == "dt_out") num(c.dt_out);
  else if (key == "galerkin.moving_frame") c.moving_frame = to_bool(key, v);
  else if (key == "seed") c.seed = static_cast<std::uint64_t>(to_long(key, v));
  else if (key == "output.csv") c.output_csv = v;
  else if (key == "output.json") c.output_json = v;
  else throw ConfigError("unknown key '" + key + "'");
}

void RunConfig::validate() const {
  params.validate();
  if (!(mass > 0.0) || !std::isfinite(mass)) throw ConfigError("mass must be > 0");
  if (J < 1 || J > 4096) throw ConfigError("J must be in [1, 4096]");
  if (N < 8 || N > 1 << 20) throw ConfigError("N must be in [8, 2^20]");
  if (!(T > 0.0)) throw ConfigError("T must be > 0");
  if (!(tol > 0.0) || tol >= 1.0) throw ConfigError("tol must be in (0, 1)");
  if (!(dt_out > 0.0)) throw ConfigError("dt_out must be > 0");
  if (initial.mode < 0) throw ConfigError("initial.mode must be >= 0");
  if (initial.rho0 < 0.0) throw ConfigError("initial.rho0 must be >= 0");
}

RunConfig parse_config(const std::string& text) {
  RunConfig c;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(lineno) + ": expected 'key = value'");
    apply_setting(c, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return c;
}

RunConfig load_config(const std::filesystem::path& path) {
  return parse_config(io::read_file(path));
}

std::function<double(double)> initial_density(const RunConfig& cfg, double rho_ref, double R0) {
  const double base = cfg.initial.rho0 > 0.0 ? cfg.initial.rho0 : rho_ref;
  const int mode = cfg.initial.mode;
  const double amp = cfg.initial.amplitude;
  if (mode == 0 || amp == 0.0) return [base](double) { return base; };
  return [base, mode, amp, R0](double r) { return base + amp * phi(mode, r / R0); };
}

}  // namespace bubble
