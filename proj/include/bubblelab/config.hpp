#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <string>

#include "bubblelab/model.hpp"

namespace bubble {

enum class SolverKind { Galerkin, Fd, Both };

// Initial data: uniform density rho0 (0 selects the reference rho*) plus an
// optional bump `amplitude * phi_mode(r / R0)` that vanishes at the wall.
struct InitialData {
  double dR = 0.01;  // R0 = R* + dR
  double R0_dot = 0.0;
  double rho0 = 0.0;
  int mode = 0;
  double amplitude = 0.0;
};

struct RunConfig {
  ModelParams params = canonical_params();
  double mass = canonical_mass();
  InitialData initial;
  SolverKind solver = SolverKind::Galerkin;
  int J = 16;
  int N = 256;
  double T = 30.0;
  double tol = 1e-8;
  double dt_out = 0.1;
  bool moving_frame = true;
  std::uint64_t seed = 20240611;
  std::string output_csv = "trajectory.csv";
  std::string output_json = "summary.json";

  // Throws ConfigError.
  void validate() const;
};

// `key = value` lines; '#' starts a comment. Unknown keys are errors.
RunConfig parse_config(const std::string& text);
// Throws IoError naming the path when the file cannot be read.
RunConfig load_config(const std::filesystem::path& path);

// Applies one key; shared by the file parser and command-line overrides.
void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value);

// Density profile rho0(r) for the configured initial data.
std::function<double(double)> initial_density(const RunConfig& cfg, double rho_ref, double R0);

const char* solver_name(SolverKind s);

}  // namespace bubble
