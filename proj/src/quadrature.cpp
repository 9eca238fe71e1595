#include "ehrenfest/quadrature.hpp"

#include <cmath>
#include <sstream>
#include <vector>

#include "ehrenfest/errors.hpp"

namespace ehrenfest {

namespace {

struct Panel {
  double a, b;
  double fa, fm, fb;
  double whole;
};

double simpson(double a, double b, double fa, double fm, double fb) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double refine(const std::function<double(double)>& f, const Panel& panel, double tol, int depth) {
  const double m = 0.5 * (panel.a + panel.b);
  const double lm = 0.5 * (panel.a + m);
  const double rm = 0.5 * (m + panel.b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = simpson(panel.a, m, panel.fa, flm, panel.fm);
  const double right = simpson(m, panel.b, panel.fm, frm, panel.fb);
  const double delta = left + right - panel.whole;
  if (std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  if (depth <= 0) {
    std::ostringstream msg;
    msg << "adaptive Simpson did not converge on [" << panel.a << ", " << panel.b << "]";
    throw QuadratureError(msg.str());
  }
  return refine(f, {panel.a, m, panel.fa, flm, panel.fm, left}, 0.5 * tol, depth - 1) +
         refine(f, {m, panel.b, panel.fm, frm, panel.fb, right}, 0.5 * tol, depth - 1);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        const SimpsonOptions& options) {
  const int panels = options.initial_panels > 0 ? options.initial_panels : 1;
  const double h = (b - a) / panels;

  std::vector<Panel> work;
  work.reserve(static_cast<std::size_t>(panels));
  double scale = 0.0;
  double fa = f(a);
  for (int i = 0; i < panels; ++i) {
    const double lo = a + i * h;
    const double hi = (i + 1 == panels) ? b : a + (i + 1) * h;
    const double fm = f(0.5 * (lo + hi));
    const double fb = f(hi);
    work.push_back({lo, hi, fa, fm, fb, simpson(lo, hi, fa, fm, fb)});
    scale += simpson(lo, hi, std::abs(fa), std::abs(fm), std::abs(fb));
    fa = fb;
  }

  double total = 0.0;
  const double tol = options.rel_tol * scale / panels;
  for (const Panel& panel : work) total += refine(f, panel, tol, options.max_depth);
  return total;
}

}  // namespace ehrenfest
