#pragma once

#include <Eigen/Dense>
#include <map>
#include <string>
#include <vector>

#include "kreingraph/graph.hpp"

namespace kreingraph {

/// Which vertex conditions define the operator -f'' + q f.
///
/// Every kind except Dirichlet imposes continuity at each vertex together
/// with a coupling d_nu f = C f between the toward-vertex derivative sums and
/// the vertex values:
///   standard     C = 0
///   delta        C = -diag(strengths)
///   krein        C = Lambda_q (Dirichlet-to-Neumann matrix at zero)
///   krein_subset C = Lambda_{q,B} on the boundary block, zero elsewhere
///   custom       C = coupling
struct ConditionSpec {
  enum class Kind { dirichlet, standard, delta, krein, krein_subset, custom };

  Kind kind = Kind::standard;
  std::map<std::string, double> delta_strengths;  // delta only; absent vertices get 0
  std::vector<std::string> boundary;              // krein_subset only
  Eigen::MatrixXd coupling;                       // custom only, in graph vertex order

  static ConditionSpec dirichlet() { return {Kind::dirichlet, {}, {}, {}}; }
  static ConditionSpec standard() { return {Kind::standard, {}, {}, {}}; }
  static ConditionSpec krein() { return {Kind::krein, {}, {}, {}}; }
  static ConditionSpec delta(std::map<std::string, double> strengths) {
    return {Kind::delta, std::move(strengths), {}, {}};
  }
  static ConditionSpec krein_subset(std::vector<std::string> boundary) {
    return {Kind::krein_subset, {}, std::move(boundary), {}};
  }
  static ConditionSpec custom(Eigen::MatrixXd coupling) { return {Kind::custom, {}, {}, std::move(coupling)}; }
};

std::string to_string(ConditionSpec::Kind kind);
/// Parses "dirichlet", "standard", "delta", "krein", "krein-subset"/"krein_subset", "custom".
ConditionSpec::Kind parse_condition_kind(const std::string& name);

/// Throws kreingraph::Error (BAD_CONDITIONS) when the conditions do not fit the graph.
void validate_conditions(const MetricGraph& graph, const ConditionSpec& conditions);

}  // namespace kreingraph
