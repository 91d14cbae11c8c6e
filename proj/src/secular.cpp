#include "kreingraph/secular.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>

#include "kreingraph/edge_solutions.hpp"
#include "kreingraph/weyl_maps.hpp"

namespace kreingraph {

namespace {

Eigen::Index end_slot(EdgeEnd end) {
  return static_cast<Eigen::Index>(2 * end.edge + (end.end == End::finish ? 1 : 0));
}
Eigen::Index value_column(EdgeEnd end) { return 2 * end_slot(end); }
Eigen::Index dnu_column(EdgeEnd end) { return 2 * end_slot(end) + 1; }

}  // namespace

VertexCoupling resolve_coupling(const MetricGraph& graph, const ConditionSpec& conditions) {
  validate_conditions(graph, conditions);
  using Kind = ConditionSpec::Kind;
  const auto n = static_cast<Eigen::Index>(graph.vertex_count());
  VertexCoupling result;
  switch (conditions.kind) {
    case Kind::dirichlet:
      result.dirichlet = true;
      break;
    case Kind::standard:
      result.matrix = Eigen::MatrixXd::Zero(n, n);
      break;
    case Kind::delta:
      result.matrix = Eigen::MatrixXd::Zero(n, n);
      for (const auto& [vertex, strength] : conditions.delta_strengths) {
        const auto i = static_cast<Eigen::Index>(graph.vertex_index(vertex));
        result.matrix(i, i) = -strength;
      }
      break;
    case Kind::krein:
      result.matrix = dtn_zero(graph);
      break;
    case Kind::krein_subset: {
      const Eigen::MatrixXd reduced = schur_boundary(graph, dtn_zero(graph), conditions.boundary);
      result.matrix = Eigen::MatrixXd::Zero(n, n);
      for (std::size_t r = 0; r < conditions.boundary.size(); ++r)
        for (std::size_t c = 0; c < conditions.boundary.size(); ++c)
          result.matrix(static_cast<Eigen::Index>(graph.vertex_index(conditions.boundary[r])),
                        static_cast<Eigen::Index>(graph.vertex_index(conditions.boundary[c]))) =
              reduced(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
      break;
    }
    case Kind::custom:
      result.matrix = 0.5 * (conditions.coupling + conditions.coupling.transpose());
      break;
  }
  return result;
}

SecularSystem::SecularSystem(MetricGraph graph, const ConditionSpec& conditions)
    : graph_(std::move(graph)), conditions_(conditions), coupling_(resolve_coupling(graph_, conditions)) {
  const auto ends = static_cast<Eigen::Index>(2 * graph_.edge_count());
  rows_ = Eigen::MatrixXd::Zero(ends, 2 * ends);
  Eigen::Index row = 0;
  for (std::size_t v = 0; v < graph_.vertex_count(); ++v) {
    const auto& incident = graph_.incident(v);
    if (coupling_.dirichlet) {
      for (const auto& end : incident) rows_(row++, value_column(end)) = 1.0;
      continue;
    }
    for (std::size_t t = 1; t < incident.size(); ++t) {
      rows_(row, value_column(incident[t])) = 1.0;
      rows_(row, value_column(incident[0])) -= 1.0;
      ++row;
    }
    for (const auto& end : incident) rows_(row, dnu_column(end)) += 1.0;
    for (std::size_t w = 0; w < graph_.vertex_count(); ++w) {
      const double c = coupling_.matrix(static_cast<Eigen::Index>(v), static_cast<Eigen::Index>(w));
      if (c != 0.0) rows_(row, value_column(graph_.incident(w).front())) -= c;
    }
    ++row;
  }
}

Eigen::MatrixXd SecularSystem::end_map(double lambda) const {
  const auto edges = static_cast<Eigen::Index>(graph_.edge_count());
  Eigen::MatrixXd map = Eigen::MatrixXd::Zero(4 * edges, 2 * edges);
  for (Eigen::Index e = 0; e < edges; ++e) {
    const EdgeBasis b = transfer_matrix(graph_.edges()[static_cast<std::size_t>(e)], lambda);
    const Eigen::Index a_col = 2 * e;
    const Eigen::Index b_col = 2 * e + 1;
    // start end: f(0) = a, toward-vertex derivative -f'(0) = -b
    map(4 * e, a_col) = 1.0;
    map(4 * e + 1, b_col) = -1.0;
    // finish end: f(l) = a c + b s, toward-vertex derivative f'(l) = a c' + b s'
    map(4 * e + 2, a_col) = b.c_end;
    map(4 * e + 2, b_col) = b.s_end;
    map(4 * e + 3, a_col) = b.dc_end;
    map(4 * e + 3, b_col) = b.ds_end;
  }
  return map;
}

SecularMatrix SecularSystem::matrix(double lambda) const { return {lambda, rows_ * end_map(lambda)}; }

Eigen::MatrixXd SecularSystem::normalized(double lambda) const {
  Eigen::VectorXd row_scale;
  return scaled(lambda, row_scale);
}

Eigen::MatrixXd SecularSystem::scaled(double lambda, Eigen::VectorXd& row_scale) const {
  Eigen::MatrixXd map = end_map(lambda);
  const double column_scale = std::max(1.0, std::sqrt(std::abs(lambda)));
  for (Eigen::Index c = 1; c < map.cols(); c += 2) map.col(c) *= column_scale;
  Eigen::MatrixXd m = rows_ * map;
  const Eigen::MatrixXd magnitude = rows_.cwiseAbs() * map.cwiseAbs();
  row_scale = Eigen::VectorXd::Ones(m.rows());
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    const double scale = magnitude.row(r).maxCoeff();
    if (scale > 0.0) row_scale(r) = 1.0 / scale;
  }
  return row_scale.asDiagonal() * m;
}

Eigen::VectorXd SecularSystem::solve(double lambda, const Eigen::VectorXd& offset) const {
  Eigen::VectorXd row_scale;
  const Eigen::MatrixXd m = scaled(lambda, row_scale);
  const Eigen::VectorXd rhs = -(row_scale.asDiagonal() * (rows_ * offset));
  Eigen::VectorXd x = m.fullPivLu().solve(rhs);
  const double column_scale = std::max(1.0, std::sqrt(std::abs(lambda)));
  for (Eigen::Index c = 1; c < x.size(); c += 2) x(c) *= column_scale;
  return x;
}

Eigen::VectorXd SecularSystem::singular_values(double lambda) const {
  Eigen::MatrixXd m = normalized(lambda);
  const auto n = static_cast<lapack_int>(m.rows());
  Eigen::VectorXd sv(m.rows());
  Eigen::VectorXd work(std::max<Eigen::Index>(m.rows(), 2));
  const lapack_int info =
      LAPACKE_dgesvd(LAPACK_COL_MAJOR, 'N', 'N', n, n, m.data(), n, sv.data(), nullptr, 1, nullptr, 1, work.data());
  if (info != 0) return Eigen::JacobiSVD<Eigen::MatrixXd>(normalized(lambda)).singularValues();
  return sv;
}

double SecularSystem::determinant(double lambda) const { return normalized(lambda).partialPivLu().determinant(); }

double SecularSystem::smallest_singular_value(double lambda) const {
  const Eigen::VectorXd sv = singular_values(lambda);
  return sv(sv.size() - 1);
}

int SecularSystem::kernel_dimension(double lambda, double rel_tol) const {
  const Eigen::VectorXd sv = singular_values(lambda);
  const double threshold = rel_tol * std::max(sv(0), 1.0);
  int count = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) < threshold) ++count;
  return count;
}

SecularMatrix secular_matrix(const MetricGraph& graph, const ConditionSpec& conditions, double lambda) {
  return SecularSystem(graph, conditions).matrix(lambda);
}

}  // namespace kreingraph
