#include "kreingraph/surgery.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "kreingraph/error.hpp"

namespace kreingraph {

namespace {

std::string fresh_id(const std::string& base, const std::set<std::string>& taken) {
  if (!taken.contains(base)) return base;
  for (int n = 1;; ++n) {
    std::string candidate = base + "_" + std::to_string(n);
    if (!taken.contains(candidate)) return candidate;
  }
}

std::set<std::string> vertex_ids(const MetricGraph& graph) {
  return {graph.vertices().begin(), graph.vertices().end()};
}

std::set<std::string> edge_ids(const MetricGraph& graph) {
  std::set<std::string> out;
  for (const auto& e : graph.edges()) out.insert(e.id);
  return out;
}

SurgeryResult identity_result(const MetricGraph& graph) {
  SurgeryResult r{graph, {}, {}, {}, 0};
  for (const auto& v : graph.vertices()) r.vertex_map[v] = v;
  for (const auto& e : graph.edges()) r.edge_map[e.id] = {e.id};
  return r;
}

/// Pieces of `potential` on [a, b], shifted to start at 0.
PiecewisePotential restrict(const Edge& edge, double a, double b) {
  if (edge.potential.is_zero()) return {};
  PiecewisePotential out;
  double x = 0.0;
  for (const auto& piece : edge.effective_pieces()) {
    const double lo = std::max(x, a);
    const double hi = std::min(x + piece.length, b);
    if (hi > lo) out.pieces.push_back({hi - lo, piece.value});
    x += piece.length;
  }
  return out;
}

PiecewisePotential concatenate(const Edge& first, const Edge& second) {
  if (first.potential.is_zero() && second.potential.is_zero()) return {};
  PiecewisePotential out;
  for (const auto& piece : first.effective_pieces()) out.pieces.push_back(piece);
  for (const auto& piece : second.effective_pieces()) out.pieces.push_back(piece);
  return out;
}

Edge reversed(const Edge& edge) {
  Edge r = edge;
  std::swap(r.u, r.v);
  r.potential = edge.potential.reversed();
  return r;
}

MetricGraph rebuild(std::vector<std::string> vertices, std::vector<Edge> edges, const char* disconnect_code) {
  try {
    return MetricGraph(std::move(vertices), std::move(edges));
  } catch (const Error& e) {
    if (disconnect_code != nullptr && e.code() == "NOT_CONNECTED") throw Error(disconnect_code, e.what());
    throw;
  }
}

}  // namespace

SurgeryResult glue_vertices(const MetricGraph& graph, const std::vector<std::string>& set) {
  if (set.size() < 2) throw Error("BAD_ARGUMENT", "gluing needs at least two vertices");
  std::set<std::string> members;
  for (const auto& v : set) {
    graph.vertex_index(v);
    if (!members.insert(v).second) throw Error("BAD_ARGUMENT", "vertex '" + v + "' listed twice");
  }
  SurgeryResult r = identity_result(graph);
  const std::string& target = set.front();
  std::vector<std::string> vertices;
  for (const auto& v : graph.vertices()) {
    if (members.contains(v)) {
      r.vertex_map[v] = target;
      if (v == target) vertices.push_back(v);
    } else {
      vertices.push_back(v);
    }
  }
  std::vector<Edge> edges = graph.edges();
  for (auto& e : edges) {
    e.u = r.vertex_map[e.u];
    e.v = r.vertex_map[e.v];
  }
  r.graph = rebuild(std::move(vertices), std::move(edges), nullptr);
  return r;
}

SurgeryResult cut_vertex(const MetricGraph& graph, const std::string& vertex,
                         const std::vector<std::vector<EndRef>>& partition) {
  const std::size_t index = graph.vertex_index(vertex);
  if (partition.size() < 2) throw Error("BAD_PARTITION", "a cut needs at least two groups");
  std::vector<EdgeEnd> pending = graph.incident(index);
  std::vector<std::vector<EdgeEnd>> groups;
  for (const auto& group : partition) {
    if (group.empty()) throw Error("BAD_PARTITION", "partition groups must be nonempty");
    std::vector<EdgeEnd> ends;
    for (const auto& ref : group) {
      const EdgeEnd end{graph.edge_index(ref.edge), ref.end};
      const auto it = std::find(pending.begin(), pending.end(), end);
      if (it == pending.end())
        throw Error("BAD_PARTITION", "end of edge '" + ref.edge + "' is not an unassigned end at '" + vertex + "'");
      pending.erase(it);
      ends.push_back(end);
    }
    groups.push_back(std::move(ends));
  }
  if (!pending.empty()) throw Error("BAD_PARTITION", "partition does not cover every end at '" + vertex + "'");

  SurgeryResult r = identity_result(graph);
  std::set<std::string> taken = vertex_ids(graph);
  std::vector<std::string> vertices;
  std::vector<std::string> group_ids;
  for (const auto& v : graph.vertices()) {
    if (v != vertex) {
      vertices.push_back(v);
      continue;
    }
    for (std::size_t g = 0; g < groups.size(); ++g) {
      const std::string id = g == 0 ? vertex : fresh_id(vertex + "_" + std::to_string(g), taken);
      taken.insert(id);
      group_ids.push_back(id);
      vertices.push_back(id);
    }
  }
  std::vector<Edge> edges = graph.edges();
  for (std::size_t g = 0; g < groups.size(); ++g)
    for (const auto& end : groups[g]) {
      Edge& e = edges[end.edge];
      (end.end == End::start ? e.u : e.v) = group_ids[g];
    }
  r.graph = rebuild(std::move(vertices), std::move(edges), "DISCONNECTS");
  return r;
}

SurgeryResult insert_degree2(const MetricGraph& graph, const std::string& edge_id, double position) {
  const std::size_t index = graph.edge_index(edge_id);
  const Edge& edge = graph.edges()[index];
  if (!(position > 0.0) || !(position < edge.length))
    throw Error("BAD_POSITION", "position must lie strictly inside edge '" + edge_id + "'");
  std::set<std::string> taken_vertices = vertex_ids(graph);
  std::set<std::string> taken_edges = edge_ids(graph);
  const std::string middle = fresh_id(edge_id + "_m", taken_vertices);
  const std::string first_id = fresh_id(edge_id + "_1", taken_edges);
  taken_edges.insert(first_id);
  const std::string second_id = fresh_id(edge_id + "_2", taken_edges);

  SurgeryResult r = identity_result(graph);
  r.inserted_vertices = 1;
  std::vector<std::string> vertices = graph.vertices();
  vertices.push_back(middle);
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < graph.edge_count(); ++i) {
    if (i != index) {
      edges.push_back(graph.edges()[i]);
      continue;
    }
    edges.push_back({first_id, edge.u, middle, position, restrict(edge, 0.0, position)});
    edges.push_back({second_id, middle, edge.v, edge.length - position, restrict(edge, position, edge.length)});
  }
  r.edge_map[edge_id] = {first_id, second_id};
  r.graph = rebuild(std::move(vertices), std::move(edges), nullptr);
  return r;
}

SurgeryResult remove_degree2(const MetricGraph& graph, const std::string& vertex) {
  const std::size_t index = graph.vertex_index(vertex);
  if (graph.degree(index) != 2)
    throw Error("NOT_DEGREE_2", "vertex '" + vertex + "' has degree " + std::to_string(graph.degree(index)));
  const EdgeEnd a = graph.incident(index)[0];
  const EdgeEnd b = graph.incident(index)[1];
  if (a.edge == b.edge) throw Error("LONE_LOOP_VERTEX", "vertex '" + vertex + "' is the only vertex of a loop");
  // orient the first edge to end at the vertex and the second to start there
  Edge first = graph.edges()[a.edge];
  if (a.end == End::start) first = reversed(first);
  Edge second = graph.edges()[b.edge];
  if (b.end == End::finish) second = reversed(second);
  const Edge merged{graph.edges()[a.edge].id, first.u, second.v, first.length + second.length,
                    concatenate(first, second)};

  SurgeryResult r = identity_result(graph);
  r.vertex_map.erase(vertex);
  r.edge_map[graph.edges()[b.edge].id] = {merged.id};
  std::vector<std::string> vertices;
  for (const auto& v : graph.vertices())
    if (v != vertex) vertices.push_back(v);
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < graph.edge_count(); ++i) {
    if (i == a.edge)
      edges.push_back(merged);
    else if (i != b.edge)
      edges.push_back(graph.edges()[i]);
  }
  r.graph = rebuild(std::move(vertices), std::move(edges), nullptr);
  return r;
}

namespace {

Edge scaled_edge(const Edge& edge, double alpha) {
  Edge e = edge;
  e.length *= alpha;
  for (auto& piece : e.potential.pieces) {
    piece.length *= alpha;
    piece.value /= alpha * alpha;
  }
  return e;
}

}  // namespace

SurgeryResult lengthen_edge(const MetricGraph& graph, const std::string& edge_id, double alpha) {
  const std::size_t index = graph.edge_index(edge_id);
  if (!(alpha > 1.0) || !std::isfinite(alpha)) throw Error("BAD_ALPHA", "alpha must be a finite number > 1");
  SurgeryResult r = identity_result(graph);
  std::vector<Edge> edges = graph.edges();
  edges[index] = scaled_edge(edges[index], alpha);
  r.graph = rebuild(graph.vertices(), std::move(edges), nullptr);
  return r;
}

MetricGraph scale_graph(const MetricGraph& graph, double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw Error("BAD_ALPHA", "alpha must be a finite positive number");
  std::vector<Edge> edges;
  for (const auto& e : graph.edges()) edges.push_back(scaled_edge(e, alpha));
  return MetricGraph(graph.vertices(), std::move(edges));
}

SurgeryResult attach_graph(const MetricGraph& graph, const MetricGraph& other,
                           const std::vector<std::pair<std::string, std::string>>& pairing) {
  if (pairing.empty()) throw Error("BAD_PAIRING", "pairing must contain at least one vertex pair");
  std::map<std::string, std::string> glue;
  std::set<std::string> targets;
  for (const auto& [from, to] : pairing) {
    if (!other.has_vertex(from)) throw Error("BAD_PAIRING", "attached graph has no vertex '" + from + "'");
    if (!graph.has_vertex(to)) throw Error("BAD_PAIRING", "graph has no vertex '" + to + "'");
    if (glue.contains(from) || targets.contains(to)) throw Error("BAD_PAIRING", "pairing must match distinct vertices");
    glue[from] = to;
    targets.insert(to);
  }
  SurgeryResult r = identity_result(graph);
  std::set<std::string> taken_vertices = vertex_ids(graph);
  std::set<std::string> taken_edges = edge_ids(graph);
  std::vector<std::string> vertices = graph.vertices();
  for (const auto& v : other.vertices()) {
    if (glue.contains(v)) {
      r.attached_vertex_map[v] = glue[v];
      continue;
    }
    const std::string id = fresh_id(v, taken_vertices);
    taken_vertices.insert(id);
    r.attached_vertex_map[v] = id;
    vertices.push_back(id);
  }
  std::vector<Edge> edges = graph.edges();
  for (const auto& e : other.edges()) {
    Edge copy = e;
    copy.id = fresh_id(e.id, taken_edges);
    taken_edges.insert(copy.id);
    copy.u = r.attached_vertex_map[e.u];
    copy.v = r.attached_vertex_map[e.v];
    edges.push_back(std::move(copy));
  }
  r.graph = rebuild(std::move(vertices), std::move(edges), nullptr);
  return r;
}

SurgeryResult insert_edge(const MetricGraph& graph, const std::string& u, const std::string& v, double length,
                          const PiecewisePotential& potential) {
  graph.vertex_index(u);
  graph.vertex_index(v);
  if (u == v) {
    const MetricGraph loop({"p"}, {Edge{"new", "p", "p", length, potential}});
    return attach_graph(graph, loop, {{"p", u}});
  }
  const MetricGraph segment({"p", "r"}, {Edge{"new", "p", "r", length, potential}});
  return attach_graph(graph, segment, {{"p", u}, {"r", v}});
}

SurgeryResult glue_points(const MetricGraph& graph, const std::vector<GluePoint>& points) {
  if (points.size() < 2) throw Error("BAD_ARGUMENT", "gluing needs at least two points");
  struct Segment {
    std::string id;
    double offset = 0.0;
    double length = 0.0;
  };
  std::map<std::string, std::vector<Segment>> segments;
  for (const auto& e : graph.edges()) segments[e.id] = {{e.id, 0.0, e.length}};

  SurgeryResult r = identity_result(graph);
  MetricGraph current = graph;
  std::vector<std::string> glue_set;
  for (const auto& point : points) {
    if (point.is_vertex()) {
      current.vertex_index(point.vertex);
      glue_set.push_back(point.vertex);
      continue;
    }
    const Edge& original = graph.edges()[graph.edge_index(point.edge)];
    if (!(point.position > 0.0) || !(point.position < original.length))
      throw Error("BAD_POSITION", "position must lie strictly inside edge '" + point.edge + "'");
    auto& parts = segments[point.edge];
    auto it = std::find_if(parts.begin(), parts.end(), [&](const Segment& s) {
      return point.position > s.offset && point.position < s.offset + s.length;
    });
    if (it == parts.end()) throw Error("BAD_POSITION", "point on edge '" + point.edge + "' coincides with another");
    const Segment segment = *it;
    const double local = point.position - segment.offset;
    SurgeryResult step = insert_degree2(current, segment.id, local);
    const std::vector<std::string>& halves = step.edge_map[segment.id];
    const std::string middle = step.graph.edges()[step.graph.edge_index(halves[0])].v;
    const Segment left{halves[0], segment.offset, local};
    const Segment right{halves[1], segment.offset + local, segment.length - local};
    it = parts.erase(it);
    it = parts.insert(it, right);
    parts.insert(it, left);
    glue_set.push_back(middle);
    current = step.graph;
    ++r.inserted_vertices;
  }
  SurgeryResult glued = glue_vertices(current, glue_set);
  for (auto& [source, target] : r.vertex_map) target = glued.vertex_map[target];
  for (auto& [source, parts] : segments) {
    std::vector<std::string> ids;
    for (const auto& s : parts) ids.push_back(s.id);
    r.edge_map[source] = ids;
  }
  r.graph = glued.graph;
  return r;
}

MetricGraph relabel(const MetricGraph& graph, const std::map<std::string, std::string>& vertices,
                    const std::map<std::string, std::string>& edges, const std::vector<std::string>& reverse) {
  auto rename = [](const std::map<std::string, std::string>& map, const std::string& id) {
    const auto it = map.find(id);
    return it == map.end() ? id : it->second;
  };
  const std::set<std::string> flip(reverse.begin(), reverse.end());
  std::vector<std::string> new_vertices;
  for (const auto& v : graph.vertices()) new_vertices.push_back(rename(vertices, v));
  std::vector<Edge> new_edges;
  for (const auto& e : graph.edges()) {
    Edge copy = flip.contains(e.id) ? reversed(e) : e;
    copy.id = rename(edges, e.id);
    copy.u = rename(vertices, copy.u);
    copy.v = rename(vertices, copy.v);
    new_edges.push_back(std::move(copy));
  }
  return MetricGraph(std::move(new_vertices), std::move(new_edges));
}

}  // namespace kreingraph
