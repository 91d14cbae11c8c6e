#pragma once

#include <vector>

namespace kreingraph {

/// Gauss-Legendre rule on [-1, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

GaussRule gauss_legendre(int order);
/// Cached 10-point rule used for all edge integrals.
const GaussRule& gauss_legendre10();

/// Integrates f over [a, b] with the 10-point rule mapped to the interval.
template <typename F>
double integrate_gl10(F&& f, double a, double b) {
  const auto& rule = gauss_legendre10();
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) sum += rule.weights[i] * f(mid + half * rule.nodes[i]);
  return half * sum;
}

}  // namespace kreingraph
