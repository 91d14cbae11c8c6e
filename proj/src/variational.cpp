#include "kreingraph/variational.hpp"

#include <cmath>
#include <numbers>

#include "kreingraph/conditions.hpp"
#include "kreingraph/error.hpp"
#include "kreingraph/spectrum.hpp"

namespace kreingraph {

namespace {

using std::numbers::pi;

/// int_a^b sin(alpha x) sin(beta x) dx.
double sine_product(double alpha, double beta, double a, double b) {
  const double d = alpha - beta;
  const double s = alpha + beta;
  const double first = d == 0.0 ? b - a : (std::sin(d * b) - std::sin(d * a)) / d;
  return 0.5 * (first - (std::sin(s * b) - std::sin(s * a)) / s);
}

}  // namespace

BucklingPencil assemble_buckling_pencil(const MetricGraph& graph, int modes) {
  if (modes < 2) throw Error("BAD_ARGUMENT", "at least two modes per edge are required");
  const auto m_count = static_cast<Eigen::Index>(modes);
  const auto n = static_cast<Eigen::Index>(graph.edge_count()) * m_count;
  BucklingPencil pencil;
  pencil.modes = modes;
  pencil.A = Eigen::MatrixXd::Zero(n, n);
  pencil.Bm = Eigen::MatrixXd::Zero(n, n);
  pencil.C = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(graph.vertex_count()), n);
  for (std::size_t e = 0; e < graph.edge_count(); ++e) {
    const Edge& edge = graph.edges()[e];
    const double l = edge.length;
    const Eigen::Index offset = static_cast<Eigen::Index>(e) * m_count;
    const auto pieces = edge.effective_pieces();
    const auto start = static_cast<Eigen::Index>(graph.vertex_index(edge.u));
    const auto finish = static_cast<Eigen::Index>(graph.vertex_index(edge.v));
    for (Eigen::Index i = 0; i < m_count; ++i) {
      const double ki = static_cast<double>(i + 1) * pi / l;
      pencil.C(start, offset + i) -= ki;
      pencil.C(finish, offset + i) += ki * ((i + 1) % 2 == 0 ? 1.0 : -1.0);
      for (Eigen::Index j = 0; j < m_count; ++j) {
        const double kj = static_cast<double>(j + 1) * pi / l;
        double qi = 0.0;
        double q2i = 0.0;
        double x = 0.0;
        for (const auto& piece : pieces) {
          if (piece.value != 0.0) {
            const double integral = sine_product(ki, kj, x, x + piece.length);
            qi += piece.value * integral;
            q2i += piece.value * piece.value * integral;
          }
          x += piece.length;
        }
        double a = (ki * ki + kj * kj) * qi + q2i;
        double b = qi;
        if (i == j) {
          a += ki * ki * ki * ki * l / 2.0;
          b += ki * ki * l / 2.0;
        }
        pencil.A(offset + i, offset + j) = a;
        pencil.Bm(offset + i, offset + j) = b;
      }
    }
  }
  return pencil;
}

Eigen::MatrixXd constraint_null_space(const Eigen::MatrixXd& C) {
  const Eigen::MatrixXd ct = C.transpose();
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(ct);
  qr.setThreshold(1e-12);
  const Eigen::Index rank = qr.rank();
  const Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(ct.rows(), ct.rows());
  return q.rightCols(ct.rows() - rank);
}

std::vector<double> rayleigh_ritz(const MetricGraph& graph, int modes, int j_max) {
  const BucklingPencil pencil = assemble_buckling_pencil(graph, modes);
  const Eigen::MatrixXd z = constraint_null_space(pencil.C);
  if (z.cols() < j_max)
    throw Error("INSUFFICIENT_SUBSPACE",
                "constrained subspace has dimension " + std::to_string(z.cols()) + " < " + std::to_string(j_max));
  Eigen::MatrixXd a = z.transpose() * pencil.A * z;
  Eigen::MatrixXd b = z.transpose() * pencil.Bm * z;
  a = 0.5 * (a + a.transpose()).eval();
  b = 0.5 * (b + b.transpose()).eval();
  const Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> solver(a, b, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw Error("NUMERICAL_FAILURE", "generalized eigensolver failed");
  std::vector<double> out;
  for (int j = 0; j < j_max; ++j) out.push_back(solver.eigenvalues()(j));
  return out;
}

std::optional<double> eulerian_upper_bound(const MetricGraph& graph) {
  if (!graph.potential_free()) throw Error("POTENTIAL_NOT_ZERO", "the Eulerian bound requires q == 0");
  for (std::size_t v = 0; v < graph.vertex_count(); ++v)
    if (graph.degree(v) % 2 != 0) return std::nullopt;
  std::vector<int> n(graph.edge_count(), 1);
  if (graph.edge_count() % 2 != 0) {
    std::size_t longest = 0;
    for (std::size_t e = 1; e < graph.edge_count(); ++e)
      if (graph.edges()[e].length > graph.edges()[longest].length) longest = e;
    n[longest] = 2;
  }
  double sum = 0.0;
  for (std::size_t e = 0; e < graph.edge_count(); ++e) sum += n[e] * n[e] / graph.edges()[e].length;
  return pi * pi / total_length(graph) * sum;
}

double delta_loop_ground_state(double length, double strength) {
  if (strength == 0.0) return 0.0;
  const MetricGraph loop({"o"}, {Edge{"loop", "o", "o", length, {}}});
  const Spectrum s = eigenvalues_count(loop, ConditionSpec::delta({{"o", strength}}), 1);
  return s.pairs.front().lambda;
}

IsoperimetricReport isoperimetric_check(const MetricGraph& graph, double tolerance) {
  IsoperimetricReport r;
  const int v = static_cast<int>(graph.vertex_count());
  const Spectrum s = eigenvalues_count(graph, ConditionSpec::krein(), v + 1);
  const std::vector<double> positive = s.positive();
  if (positive.empty()) throw Error("SCAN_INCOMPLETE", "no positive eigenvalue found");
  r.lambda1_plus = positive.front();
  r.potential_free = graph.potential_free();
  const double l = total_length(graph);
  if (r.potential_free) {
    r.bound = 4.0 * pi * pi / (l * l);
    r.margin = r.lambda1_plus - r.bound;
    r.holds = r.margin >= -tolerance;
    r.equality = std::abs(r.margin) < 1e-6;
  } else {
    r.bound = delta_loop_ground_state(l, integrate_potential(graph));
    r.margin = r.lambda1_plus - r.bound;
    r.holds = r.margin > 0.0;
  }
  r.relative_margin = r.margin / r.bound;
  return r;
}

}  // namespace kreingraph
