#include "kreingraph/resolvent.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "kreingraph/error.hpp"
#include "kreingraph/quadrature.hpp"
#include "kreingraph/secular.hpp"
#include "kreingraph/weyl_maps.hpp"

namespace kreingraph {

namespace {

constexpr double kSpectrumTolerance = 1e-8;

std::vector<ParticularSolution> particular_solutions(const MetricGraph& graph, double lambda,
                                                     const EdgewiseFunction& f) {
  if (f.edges.size() != graph.edge_count())
    throw Error("BAD_ARGUMENT", "right-hand side needs one polynomial per edge");
  std::vector<ParticularSolution> out;
  out.reserve(graph.edge_count());
  for (std::size_t e = 0; e < graph.edge_count(); ++e) out.emplace_back(graph.edges()[e], lambda, f.edges[e]);
  return out;
}

void require_resolvent_set(const SecularSystem& system, double lambda) {
  const Eigen::VectorXd sv = system.singular_values(lambda);
  if (sv(sv.size() - 1) < kSpectrumTolerance * std::max(sv(0), 1.0))
    throw Error("LAMBDA_IN_SPECTRUM", "lambda = " + std::to_string(lambda) + " is an eigenvalue of the " +
                                          to_string(system.conditions().kind) + " operator");
}

}  // namespace

EdgewiseFunction EdgewiseFunction::constant(const MetricGraph& graph, double value) {
  return {std::vector<Polynomial>(graph.edge_count(), Polynomial{value})};
}

EdgewiseSolution::EdgewiseSolution(std::vector<ParticularSolution> particular, Eigen::VectorXd coefficients)
    : particular_(std::move(particular)), coefficients_(std::move(coefficients)) {}

Eigen::Vector2d EdgewiseSolution::state(std::size_t edge, double x) const {
  const ParticularSolution& p = particular_[edge];
  const auto e = static_cast<Eigen::Index>(edge);
  return p.at(x) + p.basis_at(x) * coefficients_.segment<2>(2 * e);
}

double EdgewiseSolution::value(std::size_t edge, double x) const { return state(edge, x)(0); }
double EdgewiseSolution::derivative(std::size_t edge, double x) const { return state(edge, x)(1); }

void EdgewiseSolution::add_homogeneous(const Eigen::VectorXd& coefficients) { coefficients_ += coefficients; }

GraphQuadrature graph_quadrature(const MetricGraph& graph, double lambda) {
  GraphQuadrature q;
  const GaussRule& rule = gauss_legendre10();
  for (std::size_t e = 0; e < graph.edge_count(); ++e) {
    const ParticularSolution probe(graph.edges()[e], lambda, Polynomial{});
    const std::vector<double> points = probe.breakpoints();
    for (std::size_t p = 0; p + 1 < points.size(); ++p) {
      // two sub-panels per panel keep products of solutions well resolved
      for (int half = 0; half < 2; ++half) {
        const double a = points[p] + 0.5 * half * (points[p + 1] - points[p]);
        const double h = 0.5 * (points[p + 1] - points[p]);
        for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
          q.edge.push_back(e);
          q.x.push_back(a + 0.5 * h * (1.0 + rule.nodes[i]));
          q.weight.push_back(0.5 * h * rule.weights[i]);
        }
      }
    }
  }
  return q;
}

EdgewiseSolution apply_resolvent(const MetricGraph& graph, const ConditionSpec& conditions, double lambda,
                                 const EdgewiseFunction& f) {
  const SecularSystem system(graph, conditions);
  require_resolvent_set(system, lambda);
  std::vector<ParticularSolution> particular = particular_solutions(graph, lambda, f);
  const auto edges = static_cast<Eigen::Index>(graph.edge_count());
  Eigen::VectorXd offset = Eigen::VectorXd::Zero(4 * edges);
  for (Eigen::Index e = 0; e < edges; ++e) {
    const ParticularSolution& p = particular[static_cast<std::size_t>(e)];
    const Eigen::Vector2d end = p.at(p.length());
    offset(4 * e + 2) = end(0);
    offset(4 * e + 3) = end(1);
  }
  Eigen::VectorXd coefficients = system.solve(lambda, offset);
  return EdgewiseSolution(std::move(particular), std::move(coefficients));
}

Eigen::VectorXd gamma_adjoint(const MetricGraph& graph, double lambda, const EdgewiseFunction& f) {
  const EdgewiseSolution w = apply_resolvent(graph, ConditionSpec::dirichlet(), lambda, f);
  Eigen::VectorXd beta = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(graph.vertex_count()));
  for (std::size_t e = 0; e < graph.edge_count(); ++e) {
    const Edge& edge = graph.edges()[e];
    beta(static_cast<Eigen::Index>(graph.vertex_index(edge.u))) += w.derivative(e, 0.0);
    beta(static_cast<Eigen::Index>(graph.vertex_index(edge.v))) -= w.derivative(e, edge.length);
  }
  return beta;
}

EdgewiseSolution krein_resolvent_via_formula(const MetricGraph& graph, double lambda, const EdgewiseFunction& f) {
  require_resolvent_set(SecularSystem(graph, ConditionSpec::krein()), lambda);
  EdgewiseSolution u = apply_resolvent(graph, ConditionSpec::dirichlet(), lambda, f);
  const Eigen::VectorXd beta = gamma_adjoint(graph, lambda, f);
  const Eigen::MatrixXd difference = weyl_matrix(graph, 0.0).entries - weyl_matrix(graph, lambda).entries;
  const Eigen::VectorXd phi = difference.fullPivLu().solve(beta);
  Eigen::VectorXd correction = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(2 * graph.edge_count()));
  for (std::size_t e = 0; e < graph.edge_count(); ++e) {
    const Edge& edge = graph.edges()[e];
    const EdgeBasis basis = transfer_matrix(edge, lambda);
    const double start = phi(static_cast<Eigen::Index>(graph.vertex_index(edge.u)));
    const double finish = phi(static_cast<Eigen::Index>(graph.vertex_index(edge.v)));
    const auto k = static_cast<Eigen::Index>(2 * e);
    correction(k) = start;
    correction(k + 1) = (finish - start * basis.c_end) / basis.s_end;
  }
  u.add_homogeneous(correction);
  return u;
}

double l2_distance(const MetricGraph& graph, const EdgewiseSolution& u, const EdgewiseSolution& v) {
  const GraphQuadrature q = graph_quadrature(graph, u.particular(0).lambda());
  double sum = 0.0;
  for (std::size_t i = 0; i < q.x.size(); ++i) {
    const double d = u.value(q.edge[i], q.x[i]) - v.value(q.edge[i], q.x[i]);
    sum += q.weight[i] * d * d;
  }
  return std::sqrt(sum);
}

double l2_norm(const MetricGraph& graph, const EdgewiseSolution& u) {
  const GraphQuadrature q = graph_quadrature(graph, u.particular(0).lambda());
  double sum = 0.0;
  for (std::size_t i = 0; i < q.x.size(); ++i) {
    const double d = u.value(q.edge[i], q.x[i]);
    sum += q.weight[i] * d * d;
  }
  return std::sqrt(sum);
}

EdgewiseFunction random_probe(const MetricGraph& graph, std::uint64_t& state) {
  std::mt19937_64 rng(state);
  std::uniform_real_distribution<double> coefficient(-1.0, 1.0);
  EdgewiseFunction f;
  for (std::size_t e = 0; e < graph.edge_count(); ++e) {
    Polynomial p(4);
    for (auto& c : p) c = coefficient(rng);
    f.edges.push_back(std::move(p));
  }
  state = rng();
  return f;
}

int resolvent_difference_rank(const MetricGraph& graph, const ConditionSpec& a, const ConditionSpec& b, double lambda,
                              int n_probes, std::uint64_t seed) {
  if (n_probes < 1) throw Error("BAD_ARGUMENT", "n_probes must be positive");
  const GraphQuadrature q = graph_quadrature(graph, lambda);
  Eigen::MatrixXd samples(static_cast<Eigen::Index>(q.x.size()), n_probes);
  double reference = 0.0;
  std::uint64_t state = seed;
  for (int p = 0; p < n_probes; ++p) {
    const EdgewiseFunction f = random_probe(graph, state);
    const EdgewiseSolution ua = apply_resolvent(graph, a, lambda, f);
    const EdgewiseSolution ub = apply_resolvent(graph, b, lambda, f);
    for (std::size_t i = 0; i < q.x.size(); ++i) {
      const double va = ua.value(q.edge[i], q.x[i]);
      samples(static_cast<Eigen::Index>(i), p) = std::sqrt(q.weight[i]) * (va - ub.value(q.edge[i], q.x[i]));
      reference += q.weight[i] * va * va;
    }
  }
  const Eigen::MatrixXd gram = samples.transpose() * samples;
  const Eigen::VectorXd sv = Eigen::JacobiSVD<Eigen::MatrixXd>(gram).singularValues();
  // a difference at rounding level relative to the resolvent itself has rank 0
  if (sv.size() == 0 || sv(0) <= 1e-20 * reference) return 0;
  int rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > 1e-8 * sv(0)) ++rank;
  return rank;
}

}  // namespace kreingraph
