#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "ehrenfest/classical.hpp"
#include "ehrenfest/potential.hpp"

namespace ehrenfest {

/// Position width of the thawed Gaussian, b * sqrt(m_qq^2 + m_qp^2). The
/// density is (1 / (sqrt(pi) sigma)) exp(-(x - q_c)^2 / sigma^2).
double sigma(const SystemParams& params, double m_qq, double m_qp);

struct WidthState {
  double sigma = 0.0;
  double q_c = 0.0;
};

WidthState width_state(const ClassicalState& state, const SystemParams& params);

/// -<V'>/mu over the Gaussian density, summed in closed form:
///   -(1/mu) sum_{n>=1} n alpha_n (sigma/2)^{n-1} R_{n-1}(q_c / sigma).
double accel_hermite(const PolynomialPotential& potential, double q_c, double sigma, double mass);

/// The same average by adaptive Simpson over q_c +- 8 sigma. `force` is
/// -dV/dx. Throws QuadratureError if refinement does not converge.
double accel_quadrature(const std::function<double(double)>& force, double q_c, double sigma,
                        double mass);

/// -(V0/mu) times the Gaussian density at the wall.
double accel_step(const StepPotential& step, double q_c, double sigma, double mass);

/// Classical acceleration plus the leading width correction
/// -(sigma^2 / (4 mu)) V'''(q_c). Diagnostic only.
double accel_series(const PolynomialPotential& potential, double q_c, double sigma, double mass);

/// The acceleration that follows from reading d^2<q>/dt^2 off a Gaussian
/// centred on the classical path: it is just the classical one, with no
/// trace of the width. Kept for comparison with the force average.
double accel_classical(const PolynomialPotential& potential, double q_c, double mass);

struct SemiclassicalPath {
  std::vector<double> times;
  std::vector<double> accel;
  std::vector<double> momentum;
  std::vector<double> position;
};

/// p(t) = p0 + mu int a, q(t) = q0 + (1/mu) int p, both by the composite
/// trapezoid rule on the uniform sample grid. Needs at least two samples.
SemiclassicalPath integrate_path(std::span<const double> accel, double dt, double q0, double p0,
                                 double mass);

/// Heller's thawed Gaussian at one instant of the classical trajectory.
struct HellerState {
  std::complex<double> zeta;
  /// Branch-tracked sqrt(m_qq + i m_qp).
  std::complex<double> root;
  std::complex<double> prefactor;
  double center = 0.0;
  double momentum = 0.0;
  double action = 0.0;
  double initial_phase = 0.0;  // q0 p0 / 2
  double b = 0.0;
  double hbar = 0.0;

  std::complex<double> amplitude(double x) const;
  double density(double x) const;
};

/// Builds the thawed Gaussian for `state`. The square root of
/// m_qq + i m_qp starts on the principal branch; pass the previous sample's
/// root to keep it continuous along the trajectory. Throws NumericalError if
/// Re(zeta) <= 0.
HellerState heller_state(const ClassicalState& state, PhasePoint initial,
                         const SystemParams& params,
                         std::optional<std::complex<double>> previous_root = std::nullopt);

std::complex<double> heller_wavefunction(double x, const ClassicalState& state, PhasePoint initial,
                                         const SystemParams& params);

/// Sign choice for sqrt(z) that stays within pi/2 of `previous`.
std::complex<double> continued_sqrt(std::complex<double> z,
                                    std::optional<std::complex<double>> previous);

}  // namespace ehrenfest
