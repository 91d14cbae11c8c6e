#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "kreingraph/conditions.hpp"
#include "kreingraph/edge_solutions.hpp"
#include "kreingraph/graph.hpp"

namespace kreingraph {

/// Right-hand side given edgewise as a polynomial in the edge coordinate.
struct EdgewiseFunction {
  std::vector<Polynomial> edges;

  static EdgewiseFunction constant(const MetricGraph& graph, double value);
};

/// u_e(x) = u_p(x) + a_e c_e(x) + b_e s_e(x) on every edge.
class EdgewiseSolution {
 public:
  EdgewiseSolution(std::vector<ParticularSolution> particular, Eigen::VectorXd coefficients);

  double value(std::size_t edge, double x) const;
  double derivative(std::size_t edge, double x) const;
  /// (a_e, b_e) pairs, 2E entries.
  const Eigen::VectorXd& coefficients() const { return coefficients_; }
  std::size_t edge_count() const { return particular_.size(); }
  const ParticularSolution& particular(std::size_t edge) const { return particular_[edge]; }
  /// Adds a_e c_e + b_e s_e for the given 2E coefficients.
  void add_homogeneous(const Eigen::VectorXd& coefficients);

 private:
  Eigen::Vector2d state(std::size_t edge, double x) const;

  std::vector<ParticularSolution> particular_;
  Eigen::VectorXd coefficients_;
};

/// Quadrature nodes and weights covering every edge of a graph at lambda.
struct GraphQuadrature {
  std::vector<std::size_t> edge;
  std::vector<double> x;
  std::vector<double> weight;
};
GraphQuadrature graph_quadrature(const MetricGraph& graph, double lambda);

/// (H - lambda)^{-1} f. Throws LAMBDA_IN_SPECTRUM when the secular matrix is
/// numerically singular at lambda.
EdgewiseSolution apply_resolvent(const MetricGraph& graph, const ConditionSpec& conditions, double lambda,
                                 const EdgewiseFunction& f);

/// Krein resolvent as R_D(lambda) f + gamma(lambda) (M(0) - M(lambda))^{-1} gamma(lambda)^* f.
EdgewiseSolution krein_resolvent_via_formula(const MetricGraph& graph, double lambda, const EdgewiseFunction& f);

/// The vertex vector gamma(lambda)^* f: minus the toward-vertex derivative sums of R_D(lambda) f.
Eigen::VectorXd gamma_adjoint(const MetricGraph& graph, double lambda, const EdgewiseFunction& f);

double l2_distance(const MetricGraph& graph, const EdgewiseSolution& u, const EdgewiseSolution& v);
double l2_norm(const MetricGraph& graph, const EdgewiseSolution& u);

/// Random cubic polynomial on every edge, coefficients uniform in [-1, 1].
EdgewiseFunction random_probe(const MetricGraph& graph, std::uint64_t& state);

/// Numerical rank of the Gram matrix of (R_A - R_B) f_p over n_probes random probes.
int resolvent_difference_rank(const MetricGraph& graph, const ConditionSpec& a, const ConditionSpec& b, double lambda,
                              int n_probes, std::uint64_t seed = 0);

}  // namespace kreingraph
