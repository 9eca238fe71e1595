#pragma once

#include <functional>

namespace ehrenfest {

struct SimpsonOptions {
  double rel_tol = 1e-10;
  int max_depth = 40;
  /// Uniform panels the interval is split into before adaptive refinement,
  /// so that narrow peaks are not missed by the first coarse estimate.
  int initial_panels = 16;
};

/// Adaptive Simpson quadrature with Richardson correction. The tolerance is
/// relative to the integral of |f| estimated on the initial panels, so
/// integrands with vanishing net integral still terminate. Throws
/// QuadratureError when a panel fails to converge within max_depth halvings.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        const SimpsonOptions& options = {});

}  // namespace ehrenfest
