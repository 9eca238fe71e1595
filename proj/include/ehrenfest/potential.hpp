#pragma once

#include <cstddef>
#include <span>
#include <variant>
#include <vector>

namespace ehrenfest {

/// V(x) = sum_n alpha_n x^n. Degree is the index of the last stored
/// coefficient; trailing zeros are kept as given. Evaluation is reliable in
/// double precision up to degree ~30.
class PolynomialPotential {
 public:
  /// V = 0.
  PolynomialPotential() = default;
  explicit PolynomialPotential(std::vector<double> coefficients);

  std::size_t degree() const { return coefficients_.size() - 1; }
  std::span<const double> coefficients() const { return coefficients_; }

  double value(double x) const;

  /// Exact order-th derivative. Orders above the degree give 0.
  double derivative(double x, unsigned order) const;

  bool operator==(const PolynomialPotential&) const = default;

 private:
  std::vector<double> coefficients_{0.0};
};

/// V(x) = 0 for x <= wall, height for x > wall.
///
/// There is deliberately no derivative here: the force of a step is a delta
/// function, and every consumer handles it in closed form.
struct StepPotential {
  double height = 0.0;
  double wall = 0.0;

  double value(double x) const { return x <= wall ? 0.0 : height; }

  bool operator==(const StepPotential&) const = default;
};

using Potential = std::variant<PolynomialPotential, StepPotential>;

double potential_value(const Potential& potential, double x);

/// R_n(y) = i^{-n} H_n(iy), the real-valued companion of the physicists'
/// Hermite polynomial: R_0 = 1, R_1 = 2y, R_{n+1} = 2y R_n + 2n R_{n-1}.
double hermite_real(unsigned n, double y);

}  // namespace ehrenfest
