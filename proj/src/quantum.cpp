#include "ehrenfest/quantum.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "ehrenfest/errors.hpp"
#include "fft.hpp"

namespace ehrenfest {

using std::numbers::pi;
using cplx = std::complex<double>;

void Grid::validate() const {
  if (!(std::isfinite(x_min) && std::isfinite(x_max) && x_max > x_min))
    throw std::invalid_argument("grid: x_max must exceed x_min");
  if (n_points < 4 || !std::has_single_bit(n_points))
    throw std::invalid_argument("grid: n_points must be a power of two >= 4");
}

double Grid::wavenumber(std::size_t j) const {
  const double length = x_max - x_min;
  const auto n = static_cast<long long>(n_points);
  auto index = static_cast<long long>(j);
  if (index >= n / 2) index -= n;
  return 2.0 * pi * static_cast<double>(index) / length;
}

double max_kinetic_phase(const Grid& grid, const SystemParams& params, double dt) {
  const double k_max = pi / grid.spacing();
  return params.hbar() * k_max * k_max * dt / (2.0 * params.mass());
}

double WavefunctionGrid::norm() const {
  double sum = 0.0;
  for (const cplx& v : amplitudes) sum += std::norm(v);
  return sum * grid.spacing();
}

WavefunctionGrid init_coherent(const Grid& grid, PhasePoint initial, const SystemParams& params) {
  grid.validate();
  const double b = params.b();
  if (initial.q - 8.0 * b < grid.x_min || initial.q + 8.0 * b > grid.x_max) {
    std::ostringstream msg;
    msg << "coherent state support [" << initial.q - 8.0 * b << ", " << initial.q + 8.0 * b
        << "] does not fit in the grid [" << grid.x_min << ", " << grid.x_max << "]";
    throw ConfigError(msg.str());
  }
  WavefunctionGrid psi{grid, std::vector<cplx>(grid.n_points)};
  const double amplitude = std::pow(pi, -0.25) / std::sqrt(b);
  for (std::size_t j = 0; j < grid.n_points; ++j) {
    const double x = grid.x(j);
    const double d = x - initial.q;
    const double phase = initial.p * (x - 0.5 * initial.q) / params.hbar();
    psi.amplitudes[j] = amplitude * std::exp(-d * d / (2.0 * b * b)) * std::polar(1.0, phase);
  }
  const double scale = 1.0 / std::sqrt(psi.norm());
  for (cplx& v : psi.amplitudes) v *= scale;
  return psi;
}

double edge_density(const WavefunctionGrid& psi) {
  if (psi.amplitudes.empty()) return 0.0;
  return std::max(std::norm(psi.amplitudes.front()), std::norm(psi.amplitudes.back()));
}

namespace {

double density_at(const WavefunctionGrid& psi, double x) {
  const Grid& g = psi.grid;
  const double s = (x - g.x_min) / g.spacing();
  if (s < 0.0 || s > static_cast<double>(g.n_points - 1)) return 0.0;
  const auto j = static_cast<std::size_t>(std::floor(s));
  const double w = s - static_cast<double>(j);
  const double left = std::norm(psi.amplitudes[j]);
  if (w == 0.0 || j + 1 >= g.n_points) return left;
  return (1.0 - w) * left + w * std::norm(psi.amplitudes[j + 1]);
}

double gradient_expectation(const WavefunctionGrid& psi, const Potential& potential) {
  if (const auto* step = std::get_if<StepPotential>(&potential)) {
    // The sampled step jumps between the last node at or below the wall and
    // the next one; its derivative sits midway between them.
    const Grid& g = psi.grid;
    const double jump = g.x_min + (std::floor((step->wall - g.x_min) / g.spacing()) + 0.5) * g.spacing();
    return step->height * density_at(psi, jump) / psi.norm();
  }
  const auto& poly = std::get<PolynomialPotential>(potential);
  const Grid& g = psi.grid;
  double sum = 0.0;
  double norm = 0.0;
  for (std::size_t j = 0; j < g.n_points; ++j) {
    const double rho = std::norm(psi.amplitudes[j]);
    sum += poly.derivative(g.x(j), 1) * rho;
    norm += rho;
  }
  return sum / norm;
}

Expectations expectations_with(detail::Fft& fft, const WavefunctionGrid& psi,
                               const Potential& potential, const SystemParams& params) {
  const Grid& g = psi.grid;
  Expectations out;
  double weight = 0.0;
  double first = 0.0;
  for (std::size_t j = 0; j < g.n_points; ++j) {
    const double rho = std::norm(psi.amplitudes[j]);
    weight += rho;
    first += g.x(j) * rho;
  }
  out.norm = weight * g.spacing();
  out.position = first / weight;

  auto buf = fft.buffer();
  std::copy(psi.amplitudes.begin(), psi.amplitudes.end(), buf.begin());
  fft.forward();
  double spectral_weight = 0.0;
  double spectral_first = 0.0;
  for (std::size_t j = 0; j < g.n_points; ++j) {
    const double w = std::norm(buf[j]);
    spectral_weight += w;
    spectral_first += g.wavenumber(j) * w;
  }
  out.momentum = params.hbar() * spectral_first / spectral_weight;
  out.gradient = gradient_expectation(psi, potential);
  return out;
}

// p psi = -i hbar d/dx psi, evaluated spectrally.
std::vector<cplx> apply_momentum(detail::Fft& fft, const WavefunctionGrid& psi,
                                 const SystemParams& params) {
  auto buf = fft.buffer();
  std::copy(psi.amplitudes.begin(), psi.amplitudes.end(), buf.begin());
  fft.forward();
  for (std::size_t j = 0; j < buf.size(); ++j) buf[j] *= params.hbar() * psi.grid.wavenumber(j);
  fft.inverse();
  return {buf.begin(), buf.end()};
}

// Plain complex product; std::complex's operator* goes through the
// Annex G NaN/inf recovery path, which dominates the propagation loop.
inline cplx mul(cplx a, cplx b) {
  return {a.real() * b.real() - a.imag() * b.imag(), a.real() * b.imag() + a.imag() * b.real()};
}

void check_edges(const WavefunctionGrid& psi, double tolerance, double t) {
  const double edge = edge_density(psi);
  if (!(edge <= tolerance)) {
    std::ostringstream msg;
    msg << "wavepacket reached the grid edge at t = " << t << " (edge density " << edge
        << " > " << tolerance << ")";
    throw DomainExhaustedError(msg.str());
  }
}

}  // namespace

namespace {

const Grid& validated(const Grid& grid) {
  grid.validate();
  return grid;
}

}  // namespace

struct SplitStepPropagator::Impl {
  Impl(const Grid& grid, const Potential& potential, const SystemParams& params, double dt)
      : grid(validated(grid)), potential(potential), params(params), fft(grid.n_points) {
    if (!(dt > 0.0)) throw std::invalid_argument("split-step: dt must be positive");
    half_kick.resize(grid.n_points);
    drift.resize(grid.n_points);
    for (std::size_t j = 0; j < grid.n_points; ++j) {
      const double v = potential_value(potential, grid.x(j));
      half_kick[j] = std::polar(1.0, -v * dt / (2.0 * params.hbar()));
      const double k = grid.wavenumber(j);
      // The 1/n of the inverse transform is folded in here.
      drift[j] = std::polar(1.0 / static_cast<double>(grid.n_points),
                            -params.hbar() * k * k * dt / (2.0 * params.mass()));
    }
  }

  Grid grid;
  Potential potential;
  SystemParams params;
  detail::Fft fft;
  std::vector<cplx> half_kick;
  std::vector<cplx> drift;
};

SplitStepPropagator::SplitStepPropagator(const Grid& grid, const Potential& potential,
                                         const SystemParams& params, double dt)
    : impl_(std::make_unique<Impl>(grid, potential, params, dt)) {}

SplitStepPropagator::~SplitStepPropagator() = default;
SplitStepPropagator::SplitStepPropagator(SplitStepPropagator&&) noexcept = default;
SplitStepPropagator& SplitStepPropagator::operator=(SplitStepPropagator&&) noexcept = default;

void SplitStepPropagator::step(WavefunctionGrid& psi) {
  if (!(psi.grid == impl_->grid)) throw std::invalid_argument("split-step: grid mismatch");
  auto buf = impl_->fft.buffer();
  const std::size_t n = buf.size();
  const cplx* kick = impl_->half_kick.data();
  const cplx* drift = impl_->drift.data();
  for (std::size_t j = 0; j < n; ++j) buf[j] = mul(kick[j], psi.amplitudes[j]);
  impl_->fft.forward();
  for (std::size_t j = 0; j < n; ++j) buf[j] = mul(buf[j], drift[j]);
  impl_->fft.inverse_unscaled();
  for (std::size_t j = 0; j < n; ++j) psi.amplitudes[j] = mul(kick[j], buf[j]);
}

Expectations SplitStepPropagator::expectations(const WavefunctionGrid& psi) {
  return expectations_with(impl_->fft, psi, impl_->potential, impl_->params);
}

WavefunctionGrid strang_step(const WavefunctionGrid& psi, const Potential& potential, double dt,
                             const SystemParams& params, double edge_tolerance) {
  SplitStepPropagator propagator(psi.grid, potential, params, dt);
  WavefunctionGrid next = psi;
  propagator.step(next);
  check_edges(next, edge_tolerance, dt);
  return next;
}

Expectations expectations(const WavefunctionGrid& psi, const Potential& potential,
                          const SystemParams& params) {
  detail::Fft fft(psi.grid.n_points);
  return expectations_with(fft, psi, potential, params);
}

Uncertainties uncertainties(const WavefunctionGrid& psi, const SystemParams& params) {
  const Grid& g = psi.grid;
  double w = 0.0, q1 = 0.0, q2 = 0.0;
  for (std::size_t j = 0; j < g.n_points; ++j) {
    const double rho = std::norm(psi.amplitudes[j]);
    const double x = g.x(j);
    w += rho;
    q1 += x * rho;
    q2 += x * x * rho;
  }
  detail::Fft fft(g.n_points);
  auto buf = fft.buffer();
  std::copy(psi.amplitudes.begin(), psi.amplitudes.end(), buf.begin());
  fft.forward();
  double sw = 0.0, p1 = 0.0, p2 = 0.0;
  for (std::size_t j = 0; j < g.n_points; ++j) {
    const double weight = std::norm(buf[j]);
    const double p = params.hbar() * g.wavenumber(j);
    sw += weight;
    p1 += p * weight;
    p2 += p * p * weight;
  }
  const double mq = q1 / w;
  const double mp = p1 / sw;
  return {std::sqrt(std::max(0.0, q2 / w - mq * mq)), std::sqrt(std::max(0.0, p2 / sw - mp * mp))};
}

double anticommutator_expectation(const WavefunctionGrid& psi, const std::function<double(double)>& f,
                                  const SystemParams& params) {
  detail::Fft fft(psi.grid.n_points);
  const std::vector<cplx> p_psi = apply_momentum(fft, psi, params);
  cplx overlap = 0.0;
  for (std::size_t j = 0; j < psi.amplitudes.size(); ++j)
    overlap += std::conj(p_psi[j]) * f(psi.grid.x(j)) * psi.amplitudes[j];
  // <psi| p f |psi> + <psi| f p |psi> = 2 Re <p psi | f psi>
  return 2.0 * overlap.real() * psi.grid.spacing() / psi.norm();
}

QuantumSeries propagate_record(WavefunctionGrid psi, const Potential& potential,
                               const SystemParams& params, double t_final, double dt,
                               std::size_t sample_every, double edge_tolerance) {
  if (sample_every == 0) throw std::invalid_argument("propagate_record: sample_every must be >= 1");
  const std::size_t steps = step_count(t_final, dt);
  if (steps % sample_every != 0)
    throw std::invalid_argument("propagate_record: sample_every must divide the step count");

  SplitStepPropagator propagator(psi.grid, potential, params, dt);
  QuantumSeries series;
  const std::size_t samples = steps / sample_every + 1;
  series.times.reserve(samples);
  series.position.reserve(samples);
  series.momentum.reserve(samples);
  series.gradient.reserve(samples);
  series.norm.reserve(samples);

  auto record = [&](std::size_t k) {
    const double t = static_cast<double>(k) * dt;
    check_edges(psi, edge_tolerance, t);
    const Expectations e = propagator.expectations(psi);
    series.times.push_back(t);
    series.position.push_back(e.position);
    series.momentum.push_back(e.momentum);
    series.gradient.push_back(e.gradient);
    series.norm.push_back(e.norm);
  };

  record(0);
  for (std::size_t k = 1; k <= steps; ++k) {
    propagator.step(psi);
    if (k % sample_every == 0) record(k);
  }
  return series;
}

double gaussian_moment(unsigned n, double center, double sigma) {
  return std::pow(0.5 * sigma, static_cast<int>(n)) * hermite_real(n, center / sigma);
}

double coherent_average(const PolynomialPotential& potential, unsigned order, PhasePoint initial,
                        const SystemParams& params) {
  // |psi_0|^2 is the Gaussian kernel with sigma = b.
  const auto alpha = potential.coefficients();
  double sum = 0.0;
  for (std::size_t n = order; n < alpha.size(); ++n) {
    double falling = 1.0;
    for (unsigned k = 0; k < order; ++k) falling *= static_cast<double>(n - k);
    sum += alpha[n] * falling *
           gaussian_moment(static_cast<unsigned>(n - order), initial.q, params.b());
  }
  return sum;
}

double short_time_accel(const PolynomialPotential& potential, PhasePoint initial,
                        const SystemParams& params, double t) {
  const double mu = params.mass();
  const double force = coherent_average(potential, 1, initial, params);
  const double anticommutator = 2.0 * initial.p * coherent_average(potential, 2, initial, params);
  return -force / mu - t / (2.0 * mu * mu) * anticommutator;
}

}  // namespace ehrenfest
