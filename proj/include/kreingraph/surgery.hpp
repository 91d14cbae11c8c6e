#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kreingraph/graph.hpp"

namespace kreingraph {

/// New graph plus the bookkeeping that aligns it with its source.
struct SurgeryResult {
  MetricGraph graph;
  std::map<std::string, std::string> vertex_map;             // source vertex -> new vertex
  std::map<std::string, std::vector<std::string>> edge_map;  // source edge -> new edges, in order
  std::map<std::string, std::string> attached_vertex_map;    // attach_graph / insert_edge only
  int inserted_vertices = 0;                                 // degree-2 vertices created
};

/// One end of an edge, named by edge id.
struct EndRef {
  std::string edge;
  End end = End::start;
};

/// A vertex, or a point at `position` along an edge.
struct GluePoint {
  std::string vertex;
  std::string edge;
  double position = 0.0;

  static GluePoint at_vertex(std::string id) { return {std::move(id), {}, 0.0}; }
  static GluePoint on_edge(std::string id, double x) { return {{}, std::move(id), x}; }
  bool is_vertex() const { return !vertex.empty(); }
};

/// Identifies the vertices of `set` (at least two) into the first one.
SurgeryResult glue_vertices(const MetricGraph& graph, const std::vector<std::string>& set);

/// Splits v into one vertex per group of incident ends. Throws DISCONNECTS
/// when the result is not connected.
SurgeryResult cut_vertex(const MetricGraph& graph, const std::string& vertex,
                         const std::vector<std::vector<EndRef>>& partition);

/// Splits an edge at 0 < position < length. Throws BAD_POSITION.
SurgeryResult insert_degree2(const MetricGraph& graph, const std::string& edge, double position);

/// Concatenates the two edges at a degree-2 vertex. Throws NOT_DEGREE_2 or
/// LONE_LOOP_VERTEX.
SurgeryResult remove_degree2(const MetricGraph& graph, const std::string& vertex);

/// Edge length times alpha, potential q(x / alpha) / alpha^2. Throws BAD_ALPHA unless alpha > 1.
SurgeryResult lengthen_edge(const MetricGraph& graph, const std::string& edge, double alpha);

/// Every length times alpha and every potential value times alpha^-2 (alpha > 0).
MetricGraph scale_graph(const MetricGraph& graph, double alpha);

/// Disjoint union with `other`, then each pair (other vertex, graph vertex)
/// glued. Throws BAD_PAIRING.
SurgeryResult attach_graph(const MetricGraph& graph, const MetricGraph& other,
                           const std::vector<std::pair<std::string, std::string>>& pairing);

/// New edge between u and v (a loop when u == v).
SurgeryResult insert_edge(const MetricGraph& graph, const std::string& u, const std::string& v, double length,
                          const PiecewisePotential& potential = {});

/// Inserts a degree-2 vertex at every edge point (in input order) and glues
/// all points together. inserted_vertices reports how many points were not vertices.
SurgeryResult glue_points(const MetricGraph& graph, const std::vector<GluePoint>& points);

/// Same graph with vertex and edge ids renamed by the given maps (identity for
/// ids not listed), and optionally reversed edges.
MetricGraph relabel(const MetricGraph& graph, const std::map<std::string, std::string>& vertices,
                    const std::map<std::string, std::string>& edges, const std::vector<std::string>& reverse = {});

}  // namespace kreingraph
