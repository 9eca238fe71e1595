#include "ehrenfest/semiclassical.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "ehrenfest/errors.hpp"
#include "ehrenfest/quadrature.hpp"

namespace ehrenfest {

using std::numbers::pi;

double sigma(const SystemParams& params, double m_qq, double m_qp) {
  return params.b() * std::hypot(m_qq, m_qp);
}

WidthState width_state(const ClassicalState& state, const SystemParams& params) {
  return {sigma(params, state.tangent.qq, state.tangent.qp), state.phase.q};
}

double accel_hermite(const PolynomialPotential& potential, double q_c, double sigma, double mass) {
  const auto alpha = potential.coefficients();
  const double y = q_c / sigma;
  const double half = 0.5 * sigma;

  // Walk the R_k recurrence once instead of restarting it for every term.
  double r_prev = 0.0;
  double r = 1.0;  // R_0
  double scale = 1.0;  // (sigma/2)^0
  double sum = 0.0;
  for (std::size_t n = 1; n < alpha.size(); ++n) {
    const std::size_t k = n - 1;
    sum += static_cast<double>(n) * alpha[n] * scale * r;
    const double r_next = 2.0 * y * r + 2.0 * static_cast<double>(k) * r_prev;
    r_prev = r;
    r = r_next;
    scale *= half;
  }
  return -sum / mass;
}

double accel_quadrature(const std::function<double(double)>& force, double q_c, double sigma,
                        double mass) {
  if (!(sigma > 0.0)) throw std::invalid_argument("accel_quadrature: sigma must be positive");
  const double norm = 1.0 / (std::sqrt(pi) * sigma);
  auto integrand = [&](double x) {
    const double u = (x - q_c) / sigma;
    return norm * std::exp(-u * u) * force(x);
  };
  return adaptive_simpson(integrand, q_c - 8.0 * sigma, q_c + 8.0 * sigma) / mass;
}

double accel_step(const StepPotential& step, double q_c, double sigma, double mass) {
  const double u = (step.wall - q_c) / sigma;
  return -step.height / (mass * std::sqrt(pi) * sigma) * std::exp(-u * u);
}

double accel_series(const PolynomialPotential& potential, double q_c, double sigma, double mass) {
  return accel_classical(potential, q_c, mass) -
         sigma * sigma / (4.0 * mass) * potential.derivative(q_c, 3);
}

double accel_classical(const PolynomialPotential& potential, double q_c, double mass) {
  return -potential.derivative(q_c, 1) / mass;
}

SemiclassicalPath integrate_path(std::span<const double> accel, double dt, double q0, double p0,
                                 double mass) {
  if (accel.size() < 2) throw std::invalid_argument("integrate_path needs at least two samples");
  SemiclassicalPath path;
  const std::size_t n = accel.size();
  path.times.resize(n);
  path.accel.assign(accel.begin(), accel.end());
  path.momentum.resize(n);
  path.position.resize(n);
  path.momentum[0] = p0;
  path.position[0] = q0;
  for (std::size_t k = 0; k < n; ++k) path.times[k] = static_cast<double>(k) * dt;
  for (std::size_t k = 1; k < n; ++k) {
    path.momentum[k] = path.momentum[k - 1] + 0.5 * dt * mass * (accel[k - 1] + accel[k]);
    path.position[k] =
        path.position[k - 1] + 0.5 * dt / mass * (path.momentum[k - 1] + path.momentum[k]);
  }
  return path;
}

std::complex<double> continued_sqrt(std::complex<double> z,
                                    std::optional<std::complex<double>> previous) {
  std::complex<double> root = std::sqrt(z);
  if (previous && std::abs(std::arg(root / *previous)) > 0.5 * pi) root = -root;
  return root;
}

HellerState heller_state(const ClassicalState& state, PhasePoint initial,
                         const SystemParams& params,
                         std::optional<std::complex<double>> previous_root) {
  const TangentMatrix& m = state.tangent;
  const std::complex<double> denom(m.qq, m.qp);
  if (std::abs(denom) == 0.0) throw NumericalError("thawed Gaussian: m_qq + i m_qp vanishes");

  HellerState out;
  out.zeta = std::complex<double>(m.pp, -m.pq) / denom;
  if (!(out.zeta.real() > 0.0)) {
    std::ostringstream msg;
    msg << "thawed Gaussian is not normalizable at t = " << state.t << " (Re zeta = "
        << out.zeta.real() << ")";
    throw NumericalError(msg.str());
  }
  out.root = continued_sqrt(denom, previous_root);
  out.prefactor = std::pow(pi, -0.25) / std::sqrt(params.b()) / out.root;
  out.center = state.phase.q;
  out.momentum = state.phase.p;
  out.action = state.action;
  out.initial_phase = 0.5 * initial.q * initial.p;
  out.b = params.b();
  out.hbar = params.hbar();
  return out;
}

std::complex<double> HellerState::amplitude(double x) const {
  const double d = x - center;
  const std::complex<double> exponent =
      -zeta * (d * d) / (2.0 * b * b) +
      std::complex<double>(0.0, (action + momentum * d + initial_phase) / hbar);
  return prefactor * std::exp(exponent);
}

double HellerState::density(double x) const { return std::norm(amplitude(x)); }

std::complex<double> heller_wavefunction(double x, const ClassicalState& state, PhasePoint initial,
                                         const SystemParams& params) {
  return heller_state(state, initial, params).amplitude(x);
}

}  // namespace ehrenfest
