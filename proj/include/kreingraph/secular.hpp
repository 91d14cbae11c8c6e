#pragma once

#include <Eigen/Dense>

#include "kreingraph/conditions.hpp"
#include "kreingraph/graph.hpp"

namespace kreingraph {

/// A ConditionSpec resolved on a graph: either Dirichlet at every vertex or
/// continuity plus d_nu f = matrix * f (V x V, graph vertex order).
struct VertexCoupling {
  bool dirichlet = false;
  Eigen::MatrixXd matrix;
};

/// Computes the coupling once; krein kinds evaluate the Dirichlet-to-Neumann
/// matrix at lambda = 0 here.
VertexCoupling resolve_coupling(const MetricGraph& graph, const ConditionSpec& conditions);

/// Raw 2E x 2E secular matrix at one lambda. Unknowns are (a_e, b_e) per edge
/// with f_e = a_e c_e + b_e s_e, ordered a_0, b_0, a_1, b_1, ...
struct SecularMatrix {
  double lambda = 0.0;
  Eigen::MatrixXd entries;
};

/// Secular system of one operator. Each vertex contributes deg(v) rows:
/// deg(v) - 1 continuity rows plus one coupling row, or deg(v) value rows for
/// Dirichlet. Rows act on end data (value, toward-vertex derivative) of the 2E
/// edge ends; end k = 2 e + (finish ? 1 : 0) owns columns 2k and 2k + 1.
class SecularSystem {
 public:
  SecularSystem(MetricGraph graph, const ConditionSpec& conditions);

  const MetricGraph& graph() const { return graph_; }
  const ConditionSpec& conditions() const { return conditions_; }
  const VertexCoupling& coupling() const { return coupling_; }
  /// 2E x 4E, independent of lambda.
  const Eigen::MatrixXd& condition_rows() const { return rows_; }

  /// 4E x 2E map from (a_e, b_e) to end data at lambda.
  Eigen::MatrixXd end_map(double lambda) const;
  SecularMatrix matrix(double lambda) const;
  /// Columns b_e scaled by max(1, sqrt|lambda|), then each row divided by the
  /// largest pre-cancellation magnitude of its entries.
  Eigen::MatrixXd normalized(double lambda) const;
  /// Singular values of normalized(lambda), descending.
  Eigen::VectorXd singular_values(double lambda) const;
  /// Number of singular values below rel_tol * max(largest, 1).
  int kernel_dimension(double lambda, double rel_tol = 1e-8) const;
  double smallest_singular_value(double lambda) const;
  /// Determinant of normalized(lambda); changes sign across roots of odd multiplicity.
  double determinant(double lambda) const;
  /// Coefficients x = (a_0, b_0, ...) with condition_rows() (end_map x + offset) = 0,
  /// where offset holds end data of a particular solution (4E entries).
  Eigen::VectorXd solve(double lambda, const Eigen::VectorXd& offset) const;

 private:
  Eigen::MatrixXd scaled(double lambda, Eigen::VectorXd& row_scale) const;

  MetricGraph graph_;
  ConditionSpec conditions_;
  VertexCoupling coupling_;
  Eigen::MatrixXd rows_;
};

SecularMatrix secular_matrix(const MetricGraph& graph, const ConditionSpec& conditions, double lambda);

}  // namespace kreingraph
