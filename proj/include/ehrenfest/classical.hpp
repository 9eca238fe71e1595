#pragma once

#include <vector>

#include "ehrenfest/potential.hpp"

namespace ehrenfest {

struct PhasePoint {
  double q = 0.0;
  double p = 0.0;

  bool operator==(const PhasePoint&) const = default;
};

/// Linearized flow map acting on scaled displacements (dq/b, dp/c).
struct TangentMatrix {
  double qq = 1.0;
  double qp = 0.0;
  double pq = 0.0;
  double pp = 1.0;

  double determinant() const { return qq * pp - qp * pq; }
};

struct ClassicalState {
  double t = 0.0;
  PhasePoint phase;
  TangentMatrix tangent;
  double action = 0.0;
};

/// Mass, Planck constant and coherent-state width b. The momentum scale c is
/// always derived as hbar / b, so b * c = hbar holds by construction.
class SystemParams {
 public:
  /// Throws std::invalid_argument unless all three are finite and positive.
  SystemParams(double mass, double hbar, double b);

  double mass() const { return mass_; }
  double hbar() const { return hbar_; }
  double b() const { return b_; }
  double c() const { return hbar_ / b_; }

  bool operator==(const SystemParams&) const = default;

 private:
  double mass_;
  double hbar_;
  double b_;
};

/// One classical RK4 step of the coupled system
///   q' = p/mu,  p' = -V'(q),  m' = A m,  S' = p^2/(2 mu) - V(q)
/// with A = [[0, hbar/(mu b^2)], [-(b/c) V''(q), 0]].
/// Throws NumericalError if the new state is not finite.
ClassicalState rk4_step(const ClassicalState& state, const PolynomialPotential& potential,
                        const SystemParams& params, double dt);

/// States at t = 0, dt, ..., t_final starting from the identity tangent and
/// zero action. t_final must be an integer multiple of dt.
std::vector<ClassicalState> integrate(PhasePoint initial, const PolynomialPotential& potential,
                                      const SystemParams& params, double t_final, double dt);

/// Number of dt steps that make up t_final; throws std::invalid_argument if
/// dt does not divide t_final (relative slack 1e-9).
std::size_t step_count(double t_final, double dt);

/// Throws ConfigError unless the particle starts left of the wall, moves
/// towards it, and has too little energy to cross (p0 < sqrt(2 mu V0)).
void check_step_preconditions(PhasePoint initial, const StepPotential& step,
                              const SystemParams& params);

struct StepTrajectoryPoint {
  PhasePoint phase;
  double m_qq = 1.0;
  double m_qp = 0.0;
};

/// Closed-form bounce off the step: free flight until the collision time
/// t0 = mu (wall - q0) / p0 (inclusive), elastic reflection afterwards.
/// m_qp = hbar t m_qq / (mu b^2) on both branches.
StepTrajectoryPoint step_trajectory(PhasePoint initial, const StepPotential& step,
                                    const SystemParams& params, double t);

/// Full state for the step bounce. The tangent entries not given by the
/// closed form follow from free flight: m_pq = 0, m_pp = m_qq. The particle
/// never enters the barrier, so the action is purely kinetic.
ClassicalState step_state(PhasePoint initial, const StepPotential& step,
                          const SystemParams& params, double t);

double energy(PhasePoint point, const PolynomialPotential& potential, const SystemParams& params);

}  // namespace ehrenfest
