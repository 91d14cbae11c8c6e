#include "kreingraph/edge_solutions.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "kreingraph/error.hpp"
#include "kreingraph/quadrature.hpp"

namespace kreingraph {

namespace {

// cos(w h) and sin(w h)/(w h) as power series in z = w^2 h^2; |z| < 1.
void series_cos_sinc(double z, double& cos_part, double& sinc_part) {
  double term_c = 1.0;
  double term_s = 1.0;
  cos_part = 1.0;
  sinc_part = 1.0;
  for (int n = 1; n < 20; ++n) {
    term_c *= -z / ((2.0 * n - 1.0) * (2.0 * n));
    term_s *= -z / ((2.0 * n) * (2.0 * n + 1.0));
    cos_part += term_c;
    sinc_part += term_s;
  }
}

int sign_of(double x) { return (x > 0.0) - (x < 0.0); }

}  // namespace

Eigen::Matrix2d piece_propagator(double h, double omega_sq) {
  Eigen::Matrix2d block;
  const double z = omega_sq * h * h;
  if (std::abs(z) < 1.0) {
    double cos_part = 0.0;
    double sinc_part = 0.0;
    series_cos_sinc(z, cos_part, sinc_part);
    block << cos_part, h * sinc_part, -omega_sq * h * sinc_part, cos_part;
  } else if (omega_sq > 0.0) {
    const double w = std::sqrt(omega_sq);
    const double c = std::cos(w * h);
    const double s = std::sin(w * h);
    block << c, s / w, -w * s, c;
  } else {
    const double w = std::sqrt(-omega_sq);
    const double c = std::cosh(w * h);
    const double s = std::sinh(w * h);
    block << c, s / w, w * s, c;
  }
  return block;
}

Eigen::Matrix2d fundamental_matrix(const Edge& edge, double lambda, double x) {
  Eigen::Matrix2d phi = Eigen::Matrix2d::Identity();
  double start = 0.0;
  for (const auto& piece : edge.effective_pieces()) {
    if (x <= start) break;
    const double h = std::min(piece.length, x - start);
    phi = piece_propagator(h, lambda - piece.value) * phi;
    start += piece.length;
  }
  return phi;
}

EdgeBasis transfer_matrix(const Edge& edge, double lambda) {
  Eigen::Matrix2d phi = Eigen::Matrix2d::Identity();
  for (const auto& piece : edge.effective_pieces()) phi = piece_propagator(piece.length, lambda - piece.value) * phi;
  return EdgeBasis{lambda, phi(0, 0), phi(0, 1), phi(1, 0), phi(1, 1)};
}

double dirichlet_pole_distance(const Edge& edge, const EdgeBasis& basis) {
  // For q == 0: s_end = sin(k l)/k, so the ratio below is |sin(k l)| up to O(1).
  const double k = std::sqrt(std::abs(basis.lambda - edge.potential.max_value()));
  const double scale =
      std::max({std::abs(basis.c_end), std::abs(basis.ds_end), 1.0}) * edge.length / (1.0 + k * edge.length);
  return std::abs(basis.s_end) / scale;
}

bool at_dirichlet_pole(const Edge& edge, const EdgeBasis& basis) {
  return dirichlet_pole_distance(edge, basis) < 1e-12;
}

Eigen::Matrix2d edge_dtn_block(const Edge& edge, double lambda) {
  const EdgeBasis b = transfer_matrix(edge, lambda);
  if (at_dirichlet_pole(edge, b))
    throw Error("EDGE_DIRICHLET_POLE",
                "lambda = " + std::to_string(lambda) + " is a Dirichlet eigenvalue of edge '" + edge.id + "'");
  Eigen::Matrix2d block;
  block << b.c_end, -1.0, -1.0, b.ds_end;
  return block / b.s_end;
}

int dirichlet_count(const Edge& edge, double lambda) {
  Eigen::Vector2d y(0.0, 1.0);
  int zeros = 0;
  const auto pieces = edge.effective_pieces();
  for (std::size_t p = 0; p < pieces.size(); ++p) {
    const double omega_sq = lambda - pieces[p].value;
    // Sub-steps shorter than half the oscillation period hold at most one zero.
    const int steps =
        omega_sq > 0.0
            ? static_cast<int>(std::floor(std::sqrt(omega_sq) * pieces[p].length / (0.5 * std::numbers::pi))) + 1
            : 1;
    const double h = pieces[p].length / steps;
    const Eigen::Matrix2d step = piece_propagator(h, omega_sq);
    for (int i = 0; i < steps; ++i) {
      const Eigen::Vector2d next = step * y;
      const bool last = (p + 1 == pieces.size()) && (i + 1 == steps);
      if (sign_of(y(0)) != 0 && sign_of(next(0)) != sign_of(y(0))) {
        if (!(last && next(0) == 0.0)) ++zeros;
      }
      y = next;
    }
  }
  return zeros;
}

double evaluate(const Polynomial& p, double x) {
  double acc = 0.0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
  return acc;
}

ParticularSolution::ParticularSolution(const Edge& edge, double lambda, Polynomial rhs)
    : length_(edge.length), lambda_(lambda), rhs_(std::move(rhs)) {
  Eigen::Matrix2d phi = Eigen::Matrix2d::Identity();
  double x0 = 0.0;
  double c_integral = 0.0;
  double s_integral = 0.0;
  for (const auto& piece : edge.effective_pieces()) {
    const double omega_sq = lambda - piece.value;
    const int count = static_cast<int>(std::ceil(piece.length * std::max(1.0, std::sqrt(std::abs(omega_sq)))));
    const double h = piece.length / count;
    for (int i = 0; i < count; ++i) {
      Panel panel{x0 + i * h, h, omega_sq, phi, c_integral, s_integral};
      const Eigen::Vector2d partial = partial_integrals(panel, panel.x0 + h);
      c_integral += partial(0);
      s_integral += partial(1);
      phi = piece_propagator(h, omega_sq) * phi;
      panels_.push_back(panel);
    }
    x0 += piece.length;
  }
}

Eigen::Vector2d ParticularSolution::partial_integrals(const Panel& panel, double x) const {
  if (x <= panel.x0) return Eigen::Vector2d::Zero();
  Eigen::Vector2d sums = Eigen::Vector2d::Zero();
  const auto& rule = gauss_legendre10();
  const double half = 0.5 * (x - panel.x0);
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double t = panel.x0 + half * (1.0 + rule.nodes[i]);
    const Eigen::Matrix2d phi = piece_propagator(t - panel.x0, panel.omega_sq) * panel.phi0;
    const double f = evaluate(rhs_, t);
    sums(0) += rule.weights[i] * phi(0, 0) * f;
    sums(1) += rule.weights[i] * phi(0, 1) * f;
  }
  return half * sums;
}

std::size_t ParticularSolution::panel_of(double x) const {
  const auto it =
      std::upper_bound(panels_.begin(), panels_.end(), x, [](double value, const Panel& p) { return value < p.x0; });
  return it == panels_.begin() ? 0 : static_cast<std::size_t>(it - panels_.begin()) - 1;
}

Eigen::Matrix2d ParticularSolution::basis_at(double x) const {
  const Panel& panel = panels_[panel_of(x)];
  return piece_propagator(x - panel.x0, panel.omega_sq) * panel.phi0;
}

Eigen::Vector2d ParticularSolution::at(double x) const {
  const Panel& panel = panels_[panel_of(x)];
  const Eigen::Matrix2d phi = piece_propagator(x - panel.x0, panel.omega_sq) * panel.phi0;
  const Eigen::Vector2d partial = partial_integrals(panel, x);
  const double c_int = panel.c_integral + partial(0);
  const double s_int = panel.s_integral + partial(1);
  return {phi(0, 0) * s_int - phi(0, 1) * c_int, phi(1, 0) * s_int - phi(1, 1) * c_int};
}

std::vector<double> ParticularSolution::breakpoints() const {
  std::vector<double> points;
  for (const auto& p : panels_) points.push_back(p.x0);
  points.push_back(length_);
  return points;
}

}  // namespace kreingraph
