#pragma once

#include <Eigen/Dense>
#include <vector>

#include "kreingraph/graph.hpp"

namespace kreingraph {

/// Values and derivatives at x = length of the solutions c, s of
/// -u'' + q u = lambda u with c(0) = 1, c'(0) = 0, s(0) = 0, s'(0) = 1.
struct EdgeBasis {
  double lambda = 0.0;
  double c_end = 1.0;
  double s_end = 0.0;
  double dc_end = 0.0;
  double ds_end = 1.0;

  double wronskian() const { return c_end * ds_end - s_end * dc_end; }
};

/// Maps (u, u') at the left end of a constant-potential segment of length h
/// to (u, u') at the right end, where omega_sq = lambda - q. Entire in
/// omega_sq: near omega_sq = 0 the sinc-type entries come from their series.
Eigen::Matrix2d piece_propagator(double h, double omega_sq);

/// Fundamental matrix [[c, s], [c', s']] at position x in [0, length].
Eigen::Matrix2d fundamental_matrix(const Edge& edge, double lambda, double x);

EdgeBasis transfer_matrix(const Edge& edge, double lambda);

/// Maps (f(0), f(length)) of a solution of -f'' + q f = lambda f to the
/// toward-vertex derivatives (-f'(0), f'(length)):
///   (1 / s_end) [[c_end, -1], [-1, ds_end]].
/// Throws EDGE_DIRICHLET_POLE when lambda is a Dirichlet eigenvalue of the edge.
Eigen::Matrix2d edge_dtn_block(const Edge& edge, double lambda);

/// True when s_end is numerically zero, i.e. lambda is (close to) a
/// Dirichlet eigenvalue of the single edge.
bool at_dirichlet_pole(const Edge& edge, const EdgeBasis& basis);
/// |s_end| relative to its natural scale; ~|sin(k l)| for q == 0.
double dirichlet_pole_distance(const Edge& edge, const EdgeBasis& basis);

/// Number of Dirichlet eigenvalues of the edge strictly below lambda, via the
/// number of zeros of s(., lambda) in (0, length).
int dirichlet_count(const Edge& edge, double lambda);

/// Polynomial right-hand side on one edge: coefficients of 1, x, x^2, ...
using Polynomial = std::vector<double>;
double evaluate(const Polynomial& p, double x);

/// Particular solution u_p of -u'' + (q - lambda) u = f with u_p(0) = u_p'(0) = 0,
///   u_p(x) = c(x) S(x) - s(x) C(x),  C(x) = int_0^x c f,  S(x) = int_0^x s f,
/// with the integrals evaluated by 10-point Gauss-Legendre on panels that
/// subdivide every potential piece.
class ParticularSolution {
 public:
  ParticularSolution(const Edge& edge, double lambda, Polynomial rhs);

  /// (u_p(x), u_p'(x)).
  Eigen::Vector2d at(double x) const;
  /// Homogeneous fundamental matrix [[c, s], [c', s']] at x.
  Eigen::Matrix2d basis_at(double x) const;

  double length() const { return length_; }
  double lambda() const { return lambda_; }
  /// Panel boundaries (including 0 and length); every panel is a subset of one piece.
  std::vector<double> breakpoints() const;

 private:
  struct Panel {
    double x0 = 0.0;
    double h = 0.0;
    double omega_sq = 0.0;
    Eigen::Matrix2d phi0;  // fundamental matrix at x0
    double c_integral = 0.0;
    double s_integral = 0.0;
  };

  std::size_t panel_of(double x) const;
  Eigen::Vector2d partial_integrals(const Panel& panel, double x) const;

  double length_;
  double lambda_;
  Polynomial rhs_;
  std::vector<Panel> panels_;
};

}  // namespace kreingraph
