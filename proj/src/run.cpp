#include "ehrenfest/run.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ehrenfest/semiclassical.hpp"

namespace ehrenfest {

namespace {

std::vector<ClassicalState> classical_series(const Scenario& s) {
  if (const auto* poly = std::get_if<PolynomialPotential>(&s.potential))
    return integrate(s.initial, *poly, s.params, s.t_final, s.dt);
  const auto& step = std::get<StepPotential>(s.potential);
  const std::size_t steps = step_count(s.t_final, s.dt);
  std::vector<ClassicalState> states;
  states.reserve(steps + 1);
  for (std::size_t k = 0; k <= steps; ++k)
    states.push_back(step_state(s.initial, step, s.params, static_cast<double>(k) * s.dt));
  return states;
}

double semiclassical_accel(const Scenario& s, double q_c, double width) {
  if (const auto* poly = std::get_if<PolynomialPotential>(&s.potential))
    return accel_hermite(*poly, q_c, width, s.params.mass());
  return accel_step(std::get<StepPotential>(s.potential), q_c, width, s.params.mass());
}

}  // namespace

RunResult run_scenario(const Scenario& s) {
  validate(s);
  RunResult result;
  PathRecord& r = result.record;
  RunDiagnostics& diag = result.diagnostics;

  const std::vector<ClassicalState> states = classical_series(s);
  const std::size_t n = states.size();
  const auto* poly = std::get_if<PolynomialPotential>(&s.potential);
  const double e0 = poly ? energy(s.initial, *poly, s.params) : 0.0;

  for (auto* column : {&r.t, &r.q_c, &r.p_c, &r.m_qq, &r.m_qp, &r.m_pq, &r.m_pp, &r.det_m,
                       &r.sigma, &r.a_sc})
    column->reserve(n);
  for (const ClassicalState& st : states) {
    const double det = st.tangent.determinant();
    const double width = sigma(s.params, st.tangent.qq, st.tangent.qp);
    r.t.push_back(st.t);
    r.q_c.push_back(st.phase.q);
    r.p_c.push_back(st.phase.p);
    r.m_qq.push_back(st.tangent.qq);
    r.m_qp.push_back(st.tangent.qp);
    r.m_pq.push_back(st.tangent.pq);
    r.m_pp.push_back(st.tangent.pp);
    r.det_m.push_back(det);
    r.sigma.push_back(width);
    r.a_sc.push_back(semiclassical_accel(s, st.phase.q, width));
    diag.max_det_drift = std::max(diag.max_det_drift, std::abs(det - 1.0));
    if (poly) {
      const double drift = std::abs(energy(st.phase, *poly, s.params) - e0);
      diag.max_energy_drift =
          std::max(diag.max_energy_drift, drift / std::max(std::abs(e0), 1e-300));
    }
  }
  if (diag.max_det_drift > s.det_tolerance) {
    std::ostringstream msg;
    msg << "tangent matrix determinant drifted by " << diag.max_det_drift << " (tolerance "
        << s.det_tolerance << ")";
    throw NumericalError(msg.str());
  }

  const SemiclassicalPath path =
      integrate_path(r.a_sc, s.dt, s.initial.q, s.initial.p, s.params.mass());
  r.q_sc = path.position;
  r.p_sc = path.momentum;

  diag.accel_classical0 = poly ? accel_classical(*poly, s.initial.q, s.params.mass()) : 0.0;

  if (s.quantum.enabled) {
    const WavefunctionGrid psi0 = init_coherent(s.quantum.grid, s.initial, s.params);
    diag.accel_quantum0 = -expectations(psi0, s.potential, s.params).gradient / s.params.mass();
    const std::size_t every = step_count(s.dt, s.quantum.dt);
    QuantumSeries q = propagate_record(psi0, s.potential, s.params, s.t_final, s.quantum.dt, every,
                                       s.quantum.edge_tolerance);
    for (double v : q.norm) diag.max_norm_drift = std::max(diag.max_norm_drift, std::abs(v - 1.0));
    if (diag.max_norm_drift > s.quantum.norm_tolerance) {
      std::ostringstream msg;
      msg << "wavefunction norm drifted by " << diag.max_norm_drift << " (tolerance "
          << s.quantum.norm_tolerance << ")";
      throw NumericalError(msg.str());
    }
    r.q_qm = std::move(q.position);
    r.p_qm = std::move(q.momentum);
    r.norm_qm = std::move(q.norm);
  }
  return result;
}

double turning_time(std::span<const double> t, std::span<const double> q) {
  if (t.size() != q.size() || t.size() < 3) throw std::invalid_argument("turning_time: need >= 3 aligned samples");
  const auto i = static_cast<std::size_t>(std::distance(q.begin(), std::max_element(q.begin(), q.end())));
  if (i == 0 || i + 1 == q.size()) throw NoTurningPointError("q(t) has no interior maximum in the window");
  const double y0 = q[i - 1], y1 = q[i], y2 = q[i + 1];
  const double curvature = y0 - 2.0 * y1 + y2;
  const double h = 0.5 * (t[i + 1] - t[i - 1]);
  if (curvature == 0.0) return t[i];
  return t[i] + 0.5 * (y0 - y2) / curvature * h;
}

ComparisonSummary compare(const PathRecord& r, double mass,
                          std::optional<InitialAccelerations> initial) {
  if (!r.has_quantum()) throw std::invalid_argument("compare: record has no quantum columns");
  if (r.size() < 3) throw std::invalid_argument("compare: need at least three samples");
  ComparisonSummary out;
  for (std::size_t k = 0; k < r.size(); ++k) {
    out.max_dev_sc_qm = std::max(out.max_dev_sc_qm, std::abs(r.q_sc[k] - r.q_qm[k]));
    out.max_dev_c_qm = std::max(out.max_dev_c_qm, std::abs(r.q_c[k] - r.q_qm[k]));
  }
  out.turning_time_c = turning_time(r.t, r.q_c);
  out.turning_time_sc = turning_time(r.t, r.q_sc);
  out.turning_time_qm = turning_time(r.t, r.q_qm);
  out.accel_sc0 = r.a_sc.front();
  if (initial) {
    out.accel_classical0 = initial->classical;
    out.accel_quantum0 = initial->quantum;
  } else {
    const double h = r.t[1] - r.t[0];
    const auto slope = [h](const std::vector<double>& p) {
      return (-3.0 * p[0] + 4.0 * p[1] - p[2]) / (2.0 * h);
    };
    out.accel_classical0 = slope(r.p_c) / mass;
    out.accel_quantum0 = slope(r.p_qm) / mass;
  }
  return out;
}

}  // namespace ehrenfest
