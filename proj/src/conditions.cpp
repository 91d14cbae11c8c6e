#include "kreingraph/conditions.hpp"

#include <set>

#include "kreingraph/error.hpp"

namespace kreingraph {

std::string to_string(ConditionSpec::Kind kind) {
  switch (kind) {
    case ConditionSpec::Kind::dirichlet:
      return "dirichlet";
    case ConditionSpec::Kind::standard:
      return "standard";
    case ConditionSpec::Kind::delta:
      return "delta";
    case ConditionSpec::Kind::krein:
      return "krein";
    case ConditionSpec::Kind::krein_subset:
      return "krein-subset";
    case ConditionSpec::Kind::custom:
      return "custom";
  }
  return "unknown";
}

ConditionSpec::Kind parse_condition_kind(const std::string& name) {
  if (name == "dirichlet") return ConditionSpec::Kind::dirichlet;
  if (name == "standard") return ConditionSpec::Kind::standard;
  if (name == "delta") return ConditionSpec::Kind::delta;
  if (name == "krein") return ConditionSpec::Kind::krein;
  if (name == "krein-subset" || name == "krein_subset") return ConditionSpec::Kind::krein_subset;
  if (name == "custom") return ConditionSpec::Kind::custom;
  throw Error("BAD_CONDITIONS", "unknown condition kind '" + name + "'");
}

void validate_conditions(const MetricGraph& graph, const ConditionSpec& conditions) {
  using Kind = ConditionSpec::Kind;
  switch (conditions.kind) {
    case Kind::delta:
      for (const auto& [vertex, strength] : conditions.delta_strengths) {
        if (!graph.has_vertex(vertex))
          throw Error("BAD_CONDITIONS", "delta strength for unknown vertex '" + vertex + "'");
        if (!(strength >= 0.0)) throw Error("BAD_CONDITIONS", "delta strength at '" + vertex + "' must be >= 0");
      }
      break;
    case Kind::krein_subset: {
      if (conditions.boundary.empty()) throw Error("BAD_CONDITIONS", "krein-subset needs a nonempty boundary set");
      std::set<std::string> seen;
      for (const auto& v : conditions.boundary) {
        if (!graph.has_vertex(v)) throw Error("BAD_CONDITIONS", "boundary vertex '" + v + "' not in graph");
        if (!seen.insert(v).second) throw Error("BAD_CONDITIONS", "boundary vertex '" + v + "' repeated");
      }
      break;
    }
    case Kind::custom: {
      const auto n = static_cast<Eigen::Index>(graph.vertex_count());
      if (conditions.coupling.rows() != n || conditions.coupling.cols() != n)
        throw Error("BAD_CONDITIONS", "custom coupling must be V x V");
      const double scale = std::max(1.0, conditions.coupling.cwiseAbs().maxCoeff());
      if ((conditions.coupling - conditions.coupling.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
        throw Error("BAD_CONDITIONS", "custom coupling must be symmetric");
      break;
    }
    default:
      break;
  }
}

}  // namespace kreingraph
