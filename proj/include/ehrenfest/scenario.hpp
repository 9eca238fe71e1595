#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "ehrenfest/classical.hpp"
#include "ehrenfest/potential.hpp"
#include "ehrenfest/quantum.hpp"

namespace ehrenfest {

struct QuantumSettings {
  bool enabled = true;
  Grid grid;
  double dt = 1e-4;
  /// Largest |psi|^2 tolerated at the grid edges before the run aborts.
  double edge_tolerance = 1e-10;
  /// Largest |norm - 1| tolerated over the run.
  double norm_tolerance = 1e-6;

  bool operator==(const QuantumSettings&) const = default;
};

struct Scenario {
  std::string name;
  Potential potential;
  PhasePoint initial;
  SystemParams params{1.0, 1.0, 1.0};
  double t_final = 1.0;
  /// Classical integration step and output sampling interval.
  double dt = 1e-3;
  /// Largest |det m - 1| tolerated over the run.
  double det_tolerance = 1e-6;
  QuantumSettings quantum;

  bool operator==(const Scenario&) const = default;
};

/// Parses the sectioned key = value format:
///
///   [scenario]   name, potential (polynomial | step), coefficients,
///                height, wall, q0, p0, mass, hbar, b, t_final
///   [numerics]   dt, det_tolerance
///   [quantum]    enabled, x_min, x_max, n_points, dt, edge_tolerance,
///                norm_tolerance
///
/// '#' starts a comment. Missing optional keys take the defaults in the
/// structs above (mass = 1). A step scenario without t_final runs to 1.3
/// times the collision time. Throws ConfigError naming the offending field.
Scenario parse_scenario(std::string_view text);

/// parse_scenario on a file's contents. Throws ConfigError if it cannot be
/// read.
Scenario load_scenario(const std::filesystem::path& path);

/// Inverse of parse_scenario: every field is written with enough digits to
/// reproduce the same Scenario.
std::string format_scenario(const Scenario& scenario);

/// Throws ConfigError describing the first violated constraint.
void validate(const Scenario& scenario);

/// Built-in scenarios: free, linear, harmonic, cubic, figure1-hbar005,
/// figure1-hbar01. Throws ConfigError for an unknown name.
Scenario preset(std::string_view name);
std::vector<std::string> preset_names();

}  // namespace ehrenfest
