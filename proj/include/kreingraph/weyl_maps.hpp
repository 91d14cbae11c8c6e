#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "kreingraph/graph.hpp"

namespace kreingraph {

/// Vertex Weyl matrix M(lambda) = -Lambda_q(lambda); rows and columns follow
/// the graph's vertex order.
struct WeylMatrix {
  double lambda = 0.0;
  Eigen::MatrixXd entries;
  std::vector<std::string> vertex_order;
};

/// Weighted discrete Laplacian: off-diagonal -sum 1/l(e) over edges joining
/// the pair, diagonal sum 1/l(e) over incident non-loop edges.
Eigen::MatrixXd discrete_laplacian(const MetricGraph& graph);

/// Throws DIRICHLET_POLE (listing the offending edges) when lambda is a
/// Dirichlet eigenvalue of some edge.
WeylMatrix weyl_matrix(const MetricGraph& graph, double lambda);

/// Dirichlet-to-Neumann matrix Lambda_q = -M(0).
Eigen::MatrixXd dtn_zero(const MetricGraph& graph);

/// Schur complement D - B^T L^{-1} B of `dtn` onto the index set `boundary`.
/// Throws SINGULAR_INTERIOR_BLOCK when the interior block is numerically singular.
Eigen::MatrixXd schur_boundary(const Eigen::MatrixXd& dtn, const std::vector<std::size_t>& boundary);
Eigen::MatrixXd schur_boundary(const MetricGraph& graph, const Eigen::MatrixXd& dtn,
                               const std::vector<std::string>& boundary);

/// Smallest Dirichlet eigenvalue over all edges (bottom of sigma(-Delta_D)).
double min_dirichlet_eigenvalue(const MetricGraph& graph);

}  // namespace kreingraph
