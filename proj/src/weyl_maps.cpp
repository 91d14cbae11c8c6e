#include "kreingraph/weyl_maps.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "kreingraph/edge_solutions.hpp"
#include "kreingraph/error.hpp"

namespace kreingraph {

Eigen::MatrixXd discrete_laplacian(const MetricGraph& graph) {
  const auto n = static_cast<Eigen::Index>(graph.vertex_count());
  Eigen::MatrixXd laplacian = Eigen::MatrixXd::Zero(n, n);
  for (const auto& e : graph.edges()) {
    if (e.is_loop()) continue;
    const auto i = static_cast<Eigen::Index>(graph.vertex_index(e.u));
    const auto j = static_cast<Eigen::Index>(graph.vertex_index(e.v));
    const double w = 1.0 / e.length;
    laplacian(i, i) += w;
    laplacian(j, j) += w;
    laplacian(i, j) -= w;
    laplacian(j, i) -= w;
  }
  return laplacian;
}

WeylMatrix weyl_matrix(const MetricGraph& graph, double lambda) {
  const auto n = static_cast<Eigen::Index>(graph.vertex_count());
  WeylMatrix m{lambda, Eigen::MatrixXd::Zero(n, n), graph.vertices()};
  std::vector<std::string> poles;
  for (const auto& e : graph.edges()) {
    const EdgeBasis basis = transfer_matrix(e, lambda);
    if (at_dirichlet_pole(e, basis)) {
      poles.push_back(e.id);
      continue;
    }
    Eigen::Matrix2d block;
    block << basis.c_end, -1.0, -1.0, basis.ds_end;
    block /= basis.s_end;
    const Eigen::Index idx[2] = {static_cast<Eigen::Index>(graph.vertex_index(e.u)),
                                 static_cast<Eigen::Index>(graph.vertex_index(e.v))};
    // A loop lands all four entries on the same diagonal slot.
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) m.entries(idx[a], idx[b]) -= block(a, b);
  }
  if (!poles.empty()) {
    std::string list;
    for (const auto& id : poles) list += (list.empty() ? "" : ",") + id;
    throw Error("DIRICHLET_POLE", "lambda = " + std::to_string(lambda) + " is a Dirichlet eigenvalue of edges " + list);
  }
  return m;
}

Eigen::MatrixXd dtn_zero(const MetricGraph& graph) { return -weyl_matrix(graph, 0.0).entries; }

Eigen::MatrixXd schur_boundary(const Eigen::MatrixXd& dtn, const std::vector<std::size_t>& boundary) {
  if (boundary.empty()) throw Error("BAD_CONDITIONS", "boundary set must be nonempty");
  const auto n = static_cast<std::size_t>(dtn.rows());
  std::vector<bool> on_boundary(n, false);
  for (auto i : boundary) on_boundary.at(i) = true;
  std::vector<Eigen::Index> interior;
  for (std::size_t i = 0; i < n; ++i)
    if (!on_boundary[i]) interior.push_back(static_cast<Eigen::Index>(i));

  const auto b = static_cast<Eigen::Index>(boundary.size());
  const auto m = static_cast<Eigen::Index>(interior.size());
  Eigen::MatrixXd d(b, b), coupling(m, b), inner(m, m);
  for (Eigen::Index r = 0; r < b; ++r)
    for (Eigen::Index c = 0; c < b; ++c)
      d(r, c) = dtn(static_cast<Eigen::Index>(boundary[r]), static_cast<Eigen::Index>(boundary[c]));
  if (m == 0) return d;
  for (Eigen::Index r = 0; r < m; ++r) {
    for (Eigen::Index c = 0; c < b; ++c) coupling(r, c) = dtn(interior[r], static_cast<Eigen::Index>(boundary[c]));
    for (Eigen::Index c = 0; c < m; ++c) inner(r, c) = dtn(interior[r], interior[c]);
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(inner);
  const auto& sv = svd.singularValues();
  if (sv(m - 1) <= 0.0 || sv(0) / sv(m - 1) > 1e12)
    throw Error("SINGULAR_INTERIOR_BLOCK", "interior block of the Dirichlet-to-Neumann matrix is singular");
  Eigen::MatrixXd schur = d - coupling.transpose() * inner.ldlt().solve(coupling);
  return 0.5 * (schur + schur.transpose());
}

Eigen::MatrixXd schur_boundary(const MetricGraph& graph, const Eigen::MatrixXd& dtn,
                               const std::vector<std::string>& boundary) {
  std::vector<std::size_t> indices;
  for (const auto& id : boundary) indices.push_back(graph.vertex_index(id));
  return schur_boundary(dtn, indices);
}

double min_dirichlet_eigenvalue(const MetricGraph& graph) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& e : graph.edges()) {
    // Bracket the first zero of the count, then bisect.
    const double q_max = e.potential.max_value();
    double hi = std::pow(std::numbers::pi / e.length, 2) + q_max;
    while (dirichlet_count(e, hi) < 1) hi *= 2.0;
    double lo = 0.0;
    for (int i = 0; i < 200 && hi - lo > 1e-14 * hi; ++i) {
      const double mid = 0.5 * (lo + hi);
      (dirichlet_count(e, mid) >= 1 ? hi : lo) = mid;
    }
    best = std::min(best, 0.5 * (lo + hi));
  }
  return best;
}

}  // namespace kreingraph
