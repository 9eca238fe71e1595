// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "ehrenfest/quantum.hpp"
#include "ehrenfest/run.hpp"
#include "ehrenfest/scenario.hpp"
#include "ehrenfest/semiclassical.hpp"

using namespace ehrenfest;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Criterion {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    pass = pass && ok;
    if (!detail.empty()) detail += "; ";
    detail += what + (ok ? " (met)" : " (NOT met)");
  }
};

std::string fmt(const char* format, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, format, a);
  return buf;
}

std::string fmt(const char* format, double a, double b) {
  char buf[160];
  std::snprintf(buf, sizeof buf, format, a, b);
  return buf;
}

int failures = 0;
std::vector<std::pair<std::string, std::string>> lines;

// Lines are printed as they finish and again, in criterion order, at the end.
void report(const char* id, const char* title, const Criterion& c, double elapsed) {
  char head[512];
  std::snprintf(head, sizeof head, "%s %s %s: ", c.pass ? "PASS" : "FAIL", id, title);
  char tail[64];
  std::snprintf(tail, sizeof tail, " [%.2f s]", elapsed);
  const std::string line = head + c.detail + tail;
  std::printf("%s\n", line.c_str());
  std::fflush(stdout);
  lines.emplace_back(id, line);
  if (!c.pass) ++failures;
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b, std::size_t count) {
  double worst = 0.0;
  for (std::size_t k = 0; k < count; ++k) worst = std::max(worst, std::abs(a[k] - b[k]));
  return worst;
}

double max_det_drift(const PathRecord& r) {
  double worst = 0.0;
  for (double d : r.det_m) worst = std::max(worst, std::abs(d - 1.0));
  return worst;
}

double max_norm_drift(const PathRecord& r) {
  double worst = 0.0;
  for (double n : r.norm_qm) worst = std::max(worst, std::abs(n - 1.0));
  return worst;
}

// Trajectory records gathered by the criteria, checked together in 6.
struct Tracked {
  std::string name;
  PathRecord record;
};
std::vector<Tracked> tracked;

void exactness_triple() {
  for (const char* name : {"free", "linear", "harmonic"}) {
    const auto start = Clock::now();
    const RunResult run = run_scenario(preset(name));
    const double elapsed = seconds_since(start);
    const PathRecord& r = run.record;
    const double dev_c = max_abs_diff(r.q_sc, r.q_c, r.size());
    const double dev_qm = max_abs_diff(r.q_sc, r.q_qm, r.size());
    Criterion c;
    c.require(dev_c <= 1e-6, fmt("max|q_sc-q_c| = %.3g <= 1e-6", dev_c));
    c.require(dev_qm <= 1e-4, fmt("max|q_sc-q_qm| = %.3g <= 1e-4", dev_qm));
    c.require(elapsed < 10.0, fmt("runtime %.2f s < 10 s", elapsed));
    const std::string title = std::string("exactness triple (") + name + ")";
    report("1", title.c_str(), c, elapsed);
    tracked.push_back({name, r});
  }
}

void oracle_equivalence() {
  const auto start = Clock::now();
  std::mt19937 rng(1729);
  std::uniform_int_distribution<unsigned> degree(0, 8);
  std::uniform_real_distribution<double> coeff(-2.0, 2.0);
  std::uniform_real_distribution<double> qs(-2.0, 2.0);
  std::uniform_real_distribution<double> sigmas(0.01, 0.5);
  double worst = 0.0;
  int bad = 0;
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> c(degree(rng) + 1);
    for (double& v : c) v = coeff(rng);
    const PolynomialPotential v(c);
    const double q = qs(rng), s = sigmas(rng);
    const double a = accel_hermite(v, q, s, 1.0);
    const double quad = accel_quadrature([&](double x) { return -v.derivative(x, 1); }, q, s, 1.0);
    const double scaled = std::abs(a - quad) / (1.0 + std::abs(a));
    worst = std::max(worst, scaled);
    if (scaled > 1e-8) ++bad;
  }
  const double elapsed = seconds_since(start);
  Criterion c;
  c.require(bad == 0, fmt("200 cases, worst |dh-dq|/(1+|a|) = %.3g <= 1e-8", worst));
  c.require(elapsed < 5.0, fmt("runtime %.2f s < 5 s", elapsed));
  report("2", "hermite/quadrature oracle equivalence", c, elapsed);
}

void cubic_closed_form() {
  const auto start = Clock::now();
  std::mt19937 rng(314159);
  std::uniform_real_distribution<double> alphas(-2.0, 2.0);
  std::uniform_real_distribution<double> qs(-2.0, 2.0);
  std::uniform_real_distribution<double> sigmas(0.01, 0.5);
  std::uniform_real_distribution<double> masses(0.5, 2.0);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const double alpha = alphas(rng), q = qs(rng), s = sigmas(rng), mu = masses(rng);
    const double a = accel_hermite(PolynomialPotential({0.0, 0.0, 0.0, alpha}), q, s, mu);
    const double closed = -(3.0 * alpha / mu) * (q * q + s * s / 2.0);
    worst = std::max(worst, std::abs(a - closed));
  }
  // Residual acceleration at rest at the origin, read off a full run.
  Scenario rest = preset("cubic");
  rest.initial = {0.0, 0.0};
  rest.quantum.enabled = false;
  const PathRecord r = run_scenario(rest).record;
  const double alpha = 0.5, b = rest.params.b(), mu = rest.params.mass();
  const double expected = -3.0 * alpha * b * b / (2.0 * mu);
  const double residual = std::abs(r.a_sc.front() - expected);
  const double elapsed = seconds_since(start);
  Criterion c;
  c.require(worst <= 1e-12, fmt("100 cases, worst |a-closed| = %.3g <= 1e-12", worst));
  c.require(residual <= 1e-12,
            fmt("a_sc(0) at q0=p0=0 is %.15g, -3ab^2/(2mu) = %.15g", r.a_sc.front(), expected));
  report("3", "cubic closed form", c, elapsed);
  tracked.push_back({"cubic at rest", r});
}

void short_time_agreement() {
  const auto start = Clock::now();
  const Scenario s = preset("cubic");
  const RunResult run = run_scenario(s);
  const PathRecord& r = run.record;
  const auto& v = std::get<PolynomialPotential>(s.potential);

  // Least-squares slope of log|a_sc - short_time| against log t on (0, 0.05].
  std::vector<double> xs, ys;
  double worst_c = 0.0;
  for (std::size_t k = 1; k < r.size() && r.t[k] <= 0.05 + 1e-12; ++k) {
    const double gap = std::abs(r.a_sc[k] - short_time_accel(v, s.initial, s.params, r.t[k]));
    xs.push_back(std::log(r.t[k]));
    ys.push_back(std::log(gap));
    worst_c = std::max(worst_c, gap / (r.t[k] * r.t[k]));
  }
  const double n = static_cast<double>(xs.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    sx += xs[k];
    sy += ys[k];
    sxx += xs[k] * xs[k];
    sxy += xs[k] * ys[k];
  }
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  const double gap0 = std::abs(r.a_sc.front() - short_time_accel(v, s.initial, s.params, 0.0));
  const double quantum0 = *run.diagnostics.accel_quantum0;
  const double start_gap = std::abs(quantum0 - r.a_sc.front());
  const double elapsed = seconds_since(start);
  Criterion c;
  c.require(std::abs(slope - 2.0) <= 0.2, fmt("log-log slope %.4f in 2.0 +- 0.2 (C = %.3g)", slope, worst_c));
  c.require(gap0 <= 1e-12, fmt("gap at t=0 %.3g", gap0));
  c.require(start_gap <= 1e-5, fmt("|a_quant(0)-a_sc(0)| = %.3g <= 1e-5", start_gap));
  report("4", "short-time quantum agreement", c, elapsed);
  tracked.push_back({"cubic", r});
}

void correction_scaling() {
  const auto start = Clock::now();
  const PolynomialPotential quartic({0.0, 0.0, 0.0, 0.0, 1.0});
  auto remainder = [](const PolynomialPotential& v, double s) {
    return std::abs(accel_hermite(v, 1.0, s, 1.0) - accel_series(v, 1.0, s, 1.0));
  };
  const double r1 = remainder(quartic, 0.2), r2 = remainder(quartic, 0.1);
  const double ratio = r2 > 0.0 ? r1 / r2 : std::nan("");
  const double elapsed = seconds_since(start);
  Criterion c;
  c.require(std::abs(ratio - 16.0) <= 0.2 * 16.0,
            fmt("x^4 at q_c=1: remainder %.3g (sigma 0.2) vs %.3g (sigma 0.1)", r1, r2) +
                fmt(", ratio %.4g, needs 16 +- 20%%", ratio));
  report("5", "hbar^1 correction scaling", c, elapsed);
  const PolynomialPotential quintic({0.0, 0.0, 0.0, 0.0, 0.0, 1.0});
  std::printf("     note: the quartic has no sigma^4 term, so its remainder is rounding noise;"
              " x^5 at q_c=1 gives ratio %.4f\n",
              remainder(quintic, 0.2) / remainder(quintic, 0.1));
}

struct Panel {
  PathRecord base;
  PathRecord refined;
  ComparisonSummary summary;
  double band = 0.0;
  double elapsed = 0.0;
};

Panel figure_panel(const char* name) {
  const auto start = Clock::now();
  Panel p;
  const Scenario s = preset(name);
  const RunResult run = run_scenario(s);
  p.base = run.record;
  p.summary = compare(p.base, s.params.mass(),
                      InitialAccelerations{run.diagnostics.accel_classical0, *run.diagnostics.accel_quantum0});

  // Same domain, twice the points, a finer step.
  Scenario fine = s;
  fine.quantum.grid.n_points *= 2;
  fine.quantum.dt = 2e-5;
  p.refined = run_scenario(fine).record;

  double sc_qm = 0.0, resolution = 0.0;
  for (std::size_t k = 0; k < p.base.size() && p.base.t[k] <= 1.0 + 1e-12; ++k) {
    sc_qm = std::max(sc_qm, std::abs(p.base.q_sc[k] - p.base.q_qm[k]));
    resolution = std::max(resolution, std::abs(p.base.q_qm[k] - p.refined.q_qm[k]));
  }
  p.band = sc_qm + resolution;
  p.elapsed = seconds_since(start);
  std::printf("     %s: max_{t<=1}|q_sc-q_qm| = %.4f, grid resolution spread %.2g, full-window max|q_sc-q_qm| = "
              "%.4f, turning times qm %.4f sc %.4f c %.4f [%.1f s]\n",
              name, sc_qm, resolution, p.summary.max_dev_sc_qm, p.summary.turning_time_qm,
              p.summary.turning_time_sc, p.summary.turning_time_c, p.elapsed);
  std::fflush(stdout);
  return p;
}

void figure_reproduction() {
  const auto start = Clock::now();
  const Panel low = figure_panel("figure1-hbar005");
  const Panel high = figure_panel("figure1-hbar01");
  tracked.push_back({"figure1-hbar005", low.base});
  tracked.push_back({"figure1-hbar01", high.base});
  tracked.push_back({"figure1-hbar005 refined", low.refined});
  tracked.push_back({"figure1-hbar01 refined", high.refined});

  auto ordered = [](const ComparisonSummary& s) {
    return s.turning_time_qm <= s.turning_time_sc && s.turning_time_sc <= s.turning_time_c;
  };
  Criterion c;
  c.require(low.band <= 0.05, fmt("(a) hbar=0.05 band %.4f <= 0.05", low.band));
  c.require(ordered(low.summary) && ordered(high.summary),
            std::string("(b) t_qm <= t_sc <= t_c: hbar=0.05 ") + (ordered(low.summary) ? "holds" : "violated") +
                ", hbar=0.1 " +
                (ordered(high.summary) ? "holds" : "violated"));
  c.require(high.summary.max_dev_sc_qm > low.summary.max_dev_sc_qm,
            fmt("(c) max|q_sc-q_qm| hbar=0.1 %.4f > hbar=0.05 %.4f", high.summary.max_dev_sc_qm,
                low.summary.max_dev_sc_qm));
  c.require(low.elapsed < 60.0 && high.elapsed < 60.0,
            fmt("runtime per panel %.1f s, %.1f s < 60 s", low.elapsed, high.elapsed));
  report("7", "figure1 wall-bounce presets", c, seconds_since(start));
}

void ehrenfest_identity() {
  const auto start = Clock::now();
  const Scenario s = preset("cubic");
  const std::size_t every = static_cast<std::size_t>(std::llround(s.dt / s.quantum.dt));
  const auto series = propagate_record(init_coherent(s.quantum.grid, s.initial, s.params), s.potential, s.params,
                                       s.t_final, s.quantum.dt, every, s.quantum.edge_tolerance);
  const double h = s.dt;
  double worst = 0.0;
  for (std::size_t k = 1; k + 1 < series.times.size(); ++k) {
    const double accel = (series.position[k + 1] - 2.0 * series.position[k] + series.position[k - 1]) / (h * h);
    worst = std::max(worst, std::abs(s.params.mass() * accel + series.gradient[k]));
  }
  Criterion c;
  c.require(worst <= 1e-4, fmt("max|mu q'' + <V'>| = %.3g <= 1e-4", worst));
  report("8", "Ehrenfest identity on the oracle", c, seconds_since(start));
}

void invariants() {
  const auto start = Clock::now();
  double det = 0.0, norm = 0.0;
  std::string worst_det, worst_norm;
  for (const auto& [name, r] : tracked) {
    if (const double d = max_det_drift(r); d >= det) {
      det = d;
      worst_det = name;
    }
    if (const double n = max_norm_drift(r); n >= norm) {
      norm = n;
      worst_norm = name;
    }
  }

  // Heller density by trapezoid over +-10 sigma along the polynomial presets.
  double heller = 0.0;
  for (const char* name : {"free", "linear", "harmonic", "cubic"}) {
    const Scenario s = preset(name);
    const auto& v = std::get<PolynomialPotential>(s.potential);
    const auto states = integrate(s.initial, v, s.params, s.t_final, s.dt);
    std::optional<std::complex<double>> root;
    for (std::size_t k = 0; k < states.size(); ++k) {
      const HellerState hs = heller_state(states[k], s.initial, s.params, root);
      root = hs.root;
      if (k % 20 != 0) continue;
      const WidthState w = width_state(states[k], s.params);
      const int n = 4000;
      const double lo = w.q_c - 10.0 * w.sigma, dx = 20.0 * w.sigma / n;
      double sum = 0.5 * (hs.density(lo) + hs.density(lo + n * dx));
      for (int j = 1; j < n; ++j) sum += hs.density(lo + j * dx);
      heller = std::max(heller, std::abs(sum * dx - 1.0));
    }
  }
  Criterion c;
  c.require(det <= 1e-8, fmt("max|det m - 1| = %.3g", det) + " (" + worst_det + ") <= 1e-8");
  c.require(norm <= 1e-8, fmt("max quantum norm drift %.3g", norm) + " (" + worst_norm + ") <= 1e-8");
  c.require(heller <= 1e-8, fmt("max|Heller norm - 1| = %.3g <= 1e-8", heller));
  report("6", "symplectic and normalization invariants", c, seconds_since(start));
}

}  // namespace

int main() {
  const auto start = Clock::now();
  try {
    exactness_triple();
    oracle_equivalence();
    cubic_closed_form();
    short_time_agreement();
    correction_scaling();
    figure_reproduction();
    ehrenfest_identity();
    // Runs last so it sees every trajectory the other criteria produced.
    invariants();
  } catch (const std::exception& e) {
    std::printf("FAIL aborted: %s\n", e.what());
    return 1;
  }
  std::stable_sort(lines.begin(), lines.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::printf("\nsummary\n");
  for (const auto& [id, line] : lines) std::printf("%s\n", line.c_str());
  std::printf("%d criterion line(s) failed [total %.1f s]\n", failures, seconds_since(start));
  return failures == 0 ? 0 : 1;
}
