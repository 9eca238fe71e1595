#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <memory>
#include <vector>

#include "ehrenfest/classical.hpp"
#include "ehrenfest/potential.hpp"

namespace ehrenfest {

/// Uniform periodic grid: x_j = x_min + j dx, j = 0 .. n_points - 1, with
/// dx = (x_max - x_min) / n_points. n_points must be a power of two.
struct Grid {
  double x_min = -5.0;
  double x_max = 5.0;
  std::size_t n_points = 2048;

  /// Throws std::invalid_argument on an empty range or a non power of two.
  void validate() const;

  double spacing() const { return (x_max - x_min) / static_cast<double>(n_points); }
  double x(std::size_t j) const { return x_min + static_cast<double>(j) * spacing(); }
  /// Angular wavenumber of DFT bin j in standard ordering (0, +, ..., -).
  double wavenumber(std::size_t j) const;

  bool operator==(const Grid&) const = default;
};

/// Largest phase hbar k^2 dt / (2 mu) the kinetic factor applies on `grid`.
/// Above pi the split-step scheme aliases high-k content in time.
double max_kinetic_phase(const Grid& grid, const SystemParams& params, double dt);

struct WavefunctionGrid {
  Grid grid;
  std::vector<std::complex<double>> amplitudes;

  /// sum |psi_j|^2 dx
  double norm() const;
};

/// Samples the coherent state
///   pi^{-1/4} b^{-1/2} exp(-(x-q0)^2/(2b^2) + (i/hbar) p0 (x - q0/2))
/// and rescales the discrete norm to 1. Throws ConfigError unless
/// [q0 - 8b, q0 + 8b] lies inside the grid.
WavefunctionGrid init_coherent(const Grid& grid, PhasePoint initial, const SystemParams& params);

struct Expectations {
  double position = 0.0;
  double momentum = 0.0;
  /// <dV/dq>. For the step this is V0 |psi(wall)|^2, the distributional
  /// derivative, with |psi|^2 interpolated linearly between grid points.
  double gradient = 0.0;
  double norm = 0.0;
};

struct Uncertainties {
  double position = 0.0;
  double momentum = 0.0;
};

/// Strang split-step Fourier propagator with fixed dt:
///   exp(-i V dt / 2 hbar) . F^-1 exp(-i hbar k^2 dt / 2 mu) F . exp(-i V dt / 2 hbar)
/// Owns its transform workspace; one instance per run.
class SplitStepPropagator {
 public:
  SplitStepPropagator(const Grid& grid, const Potential& potential, const SystemParams& params,
                      double dt);
  ~SplitStepPropagator();
  SplitStepPropagator(SplitStepPropagator&&) noexcept;
  SplitStepPropagator& operator=(SplitStepPropagator&&) noexcept;

  void step(WavefunctionGrid& psi);

  Expectations expectations(const WavefunctionGrid& psi);

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// One Strang step. Builds a fresh propagator, so prefer SplitStepPropagator
/// in loops. Throws DomainExhaustedError if the result violates the edge
/// tolerance.
WavefunctionGrid strang_step(const WavefunctionGrid& psi, const Potential& potential, double dt,
                             const SystemParams& params, double edge_tolerance = 1e-10);

Expectations expectations(const WavefunctionGrid& psi, const Potential& potential,
                          const SystemParams& params);

Uncertainties uncertainties(const WavefunctionGrid& psi, const SystemParams& params);

/// <{p, f(q)}> = <p f + f p> with p applied spectrally.
double anticommutator_expectation(const WavefunctionGrid& psi, const std::function<double(double)>& f,
                                  const SystemParams& params);

/// Largest |psi|^2 at the two outermost grid samples.
double edge_density(const WavefunctionGrid& psi);

struct QuantumSeries {
  std::vector<double> times;
  std::vector<double> position;
  std::vector<double> momentum;
  std::vector<double> gradient;
  std::vector<double> norm;
};

/// Propagates for t_final / dt steps and records expectations every
/// `sample_every` steps, including t = 0 and t_final. Throws
/// DomainExhaustedError as soon as a recorded state has edge density above
/// `edge_tolerance`.
QuantumSeries propagate_record(WavefunctionGrid psi, const Potential& potential,
                               const SystemParams& params, double t_final, double dt,
                               std::size_t sample_every, double edge_tolerance = 1e-10);

/// int x^n (1/(sqrt(pi) sigma)) exp(-(x - center)^2 / sigma^2) dx
///   = (sigma/2)^n R_n(center / sigma).
double gaussian_moment(unsigned n, double center, double sigma);

/// Coherent-state average of the order-th derivative of V, from moments.
double coherent_average(const PolynomialPotential& potential, unsigned order, PhasePoint initial,
                        const SystemParams& params);

/// Second-order short-time expansion of the exact acceleration,
///   -(1/mu) <V'> - (t / 2 mu^2) <{p, V''}>,
/// with the anticommutator reduced to 2 p0 <V''> for the coherent state.
double short_time_accel(const PolynomialPotential& potential, PhasePoint initial,
                        const SystemParams& params, double t);

}  // namespace ehrenfest
