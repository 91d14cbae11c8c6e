#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "kreingraph/graph.hpp"

namespace kreingraph {

/// Buckling pencil of the Krein operator on the per-edge sine basis
/// phi_{e,m}(x) = sin(m pi x / l_e), m = 1..M; basis index e * M + (m - 1).
struct BucklingPencil {
  Eigen::MatrixXd A;   // int (-phi_i'' + q phi_i)(-phi_j'' + q phi_j)
  Eigen::MatrixXd Bm;  // int phi_i' phi_j' + q phi_i phi_j
  Eigen::MatrixXd C;   // V x N, toward-vertex derivative sums
  int modes = 0;
};

/// Throws BAD_ARGUMENT unless modes >= 2.
BucklingPencil assemble_buckling_pencil(const MetricGraph& graph, int modes);

/// Orthonormal basis of ker C.
Eigen::MatrixXd constraint_null_space(const Eigen::MatrixXd& C);

/// Upper bounds u_1 <= ... <= u_{j_max} for the positive Krein eigenvalues.
/// Throws INSUFFICIENT_SUBSPACE when dim ker C < j_max.
std::vector<double> rayleigh_ritz(const MetricGraph& graph, int modes, int j_max);

/// (pi^2 / l) sum n_e^2 / l_e minimised over n_e >= 1 with even sum, when
/// every vertex has even degree; nullopt otherwise. Throws POTENTIAL_NOT_ZERO.
std::optional<double> eulerian_upper_bound(const MetricGraph& graph);

struct IsoperimetricReport {
  bool potential_free = true;
  double lambda1_plus = 0.0;
  /// 4 pi^2 / l^2 for q == 0, otherwise the first eigenvalue of the loop of
  /// length l with a delta vertex of strength int q.
  double bound = 0.0;
  double margin = 0.0;  // lambda1_plus - bound
  double relative_margin = 0.0;
  bool holds = false;
  /// q == 0 only: margin below 1e-6.
  bool equality = false;
};

IsoperimetricReport isoperimetric_check(const MetricGraph& graph, double tolerance = 1e-8);

/// First eigenvalue of the loop of length `length` with a delta vertex of strength `strength`.
double delta_loop_ground_state(double length, double strength);

}  // namespace kreingraph
