#include "ehrenfest/classical.hpp"

#include <array>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "ehrenfest/errors.hpp"

namespace ehrenfest {

namespace {

// (q, p, m_qq, m_qp, m_pq, m_pp, S)
using Vec7 = std::array<double, 7>;

Vec7 pack(const ClassicalState& s) {
  return {s.phase.q, s.phase.p, s.tangent.qq, s.tangent.qp, s.tangent.pq, s.tangent.pp, s.action};
}

Vec7 rhs(const Vec7& y, const PolynomialPotential& potential, const SystemParams& params) {
  const double mu = params.mass();
  const double q = y[0];
  const double p = y[1];
  const double drift = params.hbar() / (mu * params.b() * params.b());
  const double kick = -(params.b() / params.c()) * potential.derivative(q, 2);
  // m' = A m with A = [[0, drift], [kick, 0]]
  return {p / mu,
          -potential.derivative(q, 1),
          drift * y[4],
          drift * y[5],
          kick * y[2],
          kick * y[3],
          p * p / (2.0 * mu) - potential.value(q)};
}

Vec7 axpy(const Vec7& y, double h, const Vec7& k) {
  Vec7 out;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = y[i] + h * k[i];
  return out;
}

}  // namespace

SystemParams::SystemParams(double mass, double hbar, double b) : mass_(mass), hbar_(hbar), b_(b) {
  const auto ok = [](double v) { return std::isfinite(v) && v > 0.0; };
  if (!ok(mass)) throw std::invalid_argument("mass must be finite and positive");
  if (!ok(hbar)) throw std::invalid_argument("hbar must be finite and positive");
  if (!ok(b)) throw std::invalid_argument("b must be finite and positive");
}

ClassicalState rk4_step(const ClassicalState& state, const PolynomialPotential& potential,
                        const SystemParams& params, double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("rk4_step: dt must be positive");
  const Vec7 y = pack(state);
  const Vec7 k1 = rhs(y, potential, params);
  const Vec7 k2 = rhs(axpy(y, 0.5 * dt, k1), potential, params);
  const Vec7 k3 = rhs(axpy(y, 0.5 * dt, k2), potential, params);
  const Vec7 k4 = rhs(axpy(y, dt, k3), potential, params);
  Vec7 next;
  for (std::size_t i = 0; i < next.size(); ++i) {
    next[i] = y[i] + dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    if (!std::isfinite(next[i])) {
      std::ostringstream msg;
      msg << "classical trajectory diverged near t = " << state.t + dt;
      throw NumericalError(msg.str());
    }
  }
  return {state.t + dt, {next[0], next[1]}, {next[2], next[3], next[4], next[5]}, next[6]};
}

std::size_t step_count(double t_final, double dt) {
  if (!(t_final > 0.0) || !(dt > 0.0)) throw std::invalid_argument("t_final and dt must be positive");
  const double ratio = t_final / dt;
  const double rounded = std::round(ratio);
  if (std::abs(ratio - rounded) > 1e-9 * ratio) throw std::invalid_argument("dt must divide t_final");
  return static_cast<std::size_t>(rounded);
}

std::vector<ClassicalState> integrate(PhasePoint initial, const PolynomialPotential& potential,
                                      const SystemParams& params, double t_final, double dt) {
  const std::size_t steps = step_count(t_final, dt);
  std::vector<ClassicalState> states;
  states.reserve(steps + 1);
  states.push_back(ClassicalState{0.0, initial, TangentMatrix{}, 0.0});
  for (std::size_t k = 1; k <= steps; ++k) {
    ClassicalState next = rk4_step(states.back(), potential, params, dt);
    next.t = static_cast<double>(k) * dt;  // no accumulated round-off in the time axis
    states.push_back(next);
  }
  return states;
}

void check_step_preconditions(PhasePoint initial, const StepPotential& step,
                              const SystemParams& params) {
  if (!(step.height > 0.0)) throw ConfigError("step height must be positive");
  if (!(initial.p > 0.0)) throw ConfigError("p0 must be positive for the step bounce");
  if (!(initial.q < step.wall)) throw ConfigError("q0 must lie left of the wall");
  const double threshold = std::sqrt(2.0 * params.mass() * step.height);
  if (!(initial.p < threshold)) {
    std::ostringstream msg;
    msg << "p0 = " << initial.p << " is not below sqrt(2 mu V0) = " << threshold;
    throw ConfigError(msg.str());
  }
}

StepTrajectoryPoint step_trajectory(PhasePoint initial, const StepPotential& step,
                                    const SystemParams& params, double t) {
  const double mu = params.mass();
  const double t0 = mu * (step.wall - initial.q) / initial.p;
  StepTrajectoryPoint out;
  if (t <= t0) {
    out.phase = {initial.q + initial.p * t / mu, initial.p};
    out.m_qq = 1.0;
  } else {
    out.phase = {step.wall - initial.p * (t - t0) / mu, -initial.p};
    out.m_qq = -1.0;
  }
  out.m_qp = params.hbar() * t * out.m_qq / (mu * params.b() * params.b());
  return out;
}

ClassicalState step_state(PhasePoint initial, const StepPotential& step,
                          const SystemParams& params, double t) {
  const StepTrajectoryPoint point = step_trajectory(initial, step, params, t);
  ClassicalState state;
  state.t = t;
  state.phase = point.phase;
  state.tangent = {point.m_qq, point.m_qp, 0.0, point.m_qq};
  state.action = initial.p * initial.p / (2.0 * params.mass()) * t;
  return state;
}

double energy(PhasePoint point, const PolynomialPotential& potential, const SystemParams& params) {
  return point.p * point.p / (2.0 * params.mass()) + potential.value(point.q);
}

}  // namespace ehrenfest
