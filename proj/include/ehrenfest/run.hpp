#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "ehrenfest/errors.hpp"
#include "ehrenfest/scenario.hpp"

namespace ehrenfest {

/// Aligned time series of the three path families. The quantum columns are
/// empty when the oracle was disabled.
struct PathRecord {
  std::vector<double> t;
  std::vector<double> q_c, p_c;
  std::vector<double> m_qq, m_qp, m_pq, m_pp, det_m;
  std::vector<double> sigma;
  std::vector<double> a_sc, q_sc, p_sc;
  std::vector<double> q_qm, p_qm, norm_qm;

  std::size_t size() const { return t.size(); }
  bool has_quantum() const { return !q_qm.empty(); }

  bool operator==(const PathRecord&) const = default;
};

struct RunDiagnostics {
  double max_det_drift = 0.0;
  /// Relative energy drift of the classical trajectory; 0 for the step,
  /// whose trajectory is exact.
  double max_energy_drift = 0.0;
  double max_norm_drift = 0.0;
  double accel_classical0 = 0.0;
  /// -<V'>/mu on the initial grid state; absent without the oracle.
  std::optional<double> accel_quantum0;
};

struct RunResult {
  PathRecord record;
  RunDiagnostics diagnostics;
};

/// Classical trajectory (RK4, or the closed-form bounce for the step), the
/// width and semiclassical acceleration at every sample, the integrated
/// semiclassical path, and the quantum expectations on the same time grid
/// if enabled. Throws NumericalError when det m or the quantum norm drift
/// past the scenario tolerances, or the packet reaches the grid edge.
RunResult run_scenario(const Scenario& scenario);

/// Thrown by compare when a q-series peaks at either end of the window.
class NoTurningPointError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

struct ComparisonSummary {
  double max_dev_sc_qm = 0.0;
  double max_dev_c_qm = 0.0;
  double turning_time_c = 0.0;
  double turning_time_sc = 0.0;
  double turning_time_qm = 0.0;
  double accel_sc0 = 0.0;
  double accel_quantum0 = 0.0;
  double accel_classical0 = 0.0;
};

struct InitialAccelerations {
  double classical = 0.0;
  double quantum = 0.0;
};

/// Time of the maximum of q, refined by the vertex of the parabola through
/// the discrete maximum and its neighbours. Throws NoTurningPointError if the
/// maximum is at either end.
double turning_time(std::span<const double> t, std::span<const double> q);

/// Deviation maxima, turning times and initial accelerations. Without
/// `initial`, a_c(0) and a_quant(0) are estimated from p_c and p_qm by
/// second-order one-sided differences. Throws std::invalid_argument if the
/// record has no quantum columns or fewer than three samples.
ComparisonSummary compare(const PathRecord& record, double mass,
                          std::optional<InitialAccelerations> initial = std::nullopt);

}  // namespace ehrenfest
