#include "ehrenfest/potential.hpp"

#include <utility>

namespace ehrenfest {

PolynomialPotential::PolynomialPotential(std::vector<double> coefficients)
    : coefficients_(std::move(coefficients)) {
  if (coefficients_.empty()) coefficients_.push_back(0.0);
}

double PolynomialPotential::value(double x) const {
  double acc = 0.0;
  for (auto it = coefficients_.rbegin(); it != coefficients_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

double PolynomialPotential::derivative(double x, unsigned order) const {
  if (order > degree()) return 0.0;
  // Horner over the coefficients of the order-th derivative:
  // alpha_n * n! / (n - order)! multiplies x^(n - order).
  double acc = 0.0;
  for (std::size_t n = degree(); n + 1 > order; --n) {
    double falling = 1.0;
    for (unsigned k = 0; k < order; ++k) falling *= static_cast<double>(n - k);
    acc = acc * x + coefficients_[n] * falling;
    if (n == order) break;
  }
  return acc;
}

double potential_value(const Potential& potential, double x) {
  return std::visit([x](const auto& v) { return v.value(x); }, potential);
}

double hermite_real(unsigned n, double y) {
  if (n == 0) return 1.0;
  double previous = 1.0;
  double current = 2.0 * y;
  for (unsigned k = 1; k < n; ++k) {
    const double next = 2.0 * y * current + 2.0 * static_cast<double>(k) * previous;
    previous = current;
    current = next;
  }
  return current;
}

}  // namespace ehrenfest
