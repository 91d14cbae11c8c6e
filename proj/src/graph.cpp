#include "kreingraph/graph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_set>

#include "kreingraph/error.hpp"

namespace kreingraph {

namespace {

constexpr double kRelTol = 1e-12;

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

  std::size_t find(std::size_t i) {
    while (parent_[i] != i) {
      parent_[i] = parent_[parent_[i]];
      i = parent_[i];
    }
    return i;
  }

  void unite(std::size_t a, std::size_t b) { parent_[find(a)] = find(b); }

 private:
  std::vector<std::size_t> parent_;
};

}  // namespace

bool PiecewisePotential::is_zero() const {
  return std::all_of(pieces.begin(), pieces.end(), [](const PotentialPiece& p) { return p.value == 0.0; });
}

double PiecewisePotential::integral() const {
  double sum = 0.0;
  for (const auto& p : pieces) sum += p.length * p.value;
  return sum;
}

double PiecewisePotential::max_value() const {
  double m = 0.0;
  for (const auto& p : pieces) m = std::max(m, p.value);
  return m;
}

PiecewisePotential PiecewisePotential::reversed() const { return PiecewisePotential{{pieces.rbegin(), pieces.rend()}}; }

std::vector<PotentialPiece> Edge::effective_pieces() const {
  if (potential.pieces.empty()) return {PotentialPiece{length, 0.0}};
  return potential.pieces;
}

std::vector<ValidationIssue> validate(const std::vector<std::string>& vertices, const std::vector<Edge>& edges) {
  std::vector<ValidationIssue> issues;
  auto report = [&](std::string code, std::string message) { issues.push_back({std::move(code), std::move(message)}); };

  if (vertices.empty()) report("EMPTY_GRAPH", "graph has no vertices");
  if (edges.empty()) report("NO_EDGES", "graph has no edges");

  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    if (!index.emplace(vertices[i], i).second) report("DUPLICATE_VERTEX", "vertex '" + vertices[i] + "' listed twice");
  }

  std::unordered_set<std::string> edge_ids;
  bool endpoints_ok = true;
  for (const auto& e : edges) {
    const std::string where = "edge '" + e.id + "'";
    if (!edge_ids.insert(e.id).second) report("DUPLICATE_EDGE", where + " listed twice");
    for (const auto* endpoint : {&e.u, &e.v}) {
      if (!index.contains(*endpoint)) {
        report("UNKNOWN_VERTEX", where + " references unknown vertex '" + *endpoint + "'");
        endpoints_ok = false;
      }
    }
    if (!std::isfinite(e.length)) {
      report("NONFINITE_LENGTH", where + " has non-finite length");
      continue;
    }
    if (e.length <= 0.0) {
      report("NONPOSITIVE_LENGTH", where + " has length " + std::to_string(e.length));
      continue;
    }
    if (e.potential.pieces.empty()) continue;
    double covered = 0.0;
    for (const auto& p : e.potential.pieces) {
      if (!std::isfinite(p.value) || !std::isfinite(p.length)) {
        report("NONFINITE_POTENTIAL", where + " has a non-finite potential piece");
      } else if (p.value < 0.0) {
        report("NEGATIVE_POTENTIAL", where + " has potential value " + std::to_string(p.value));
      }
      if (!(p.length > 0.0)) report("NONPOSITIVE_PIECE_LENGTH", where + " has a piece of nonpositive length");
      covered += p.length;
    }
    if (std::abs(covered - e.length) > kRelTol * e.length)
      report("POTENTIAL_LENGTH_MISMATCH", where + ": potential pieces do not sum to the edge length");
  }

  if (endpoints_ok && !vertices.empty() && index.size() == vertices.size()) {
    UnionFind components(vertices.size());
    for (const auto& e : edges) components.unite(index.at(e.u), index.at(e.v));
    const std::size_t root = components.find(0);
    for (std::size_t i = 1; i < vertices.size(); ++i) {
      if (components.find(i) != root) {
        report("NOT_CONNECTED", "graph not connected (vertex '" + vertices[i] + "' unreachable)");
        break;
      }
    }
  }
  return issues;
}

MetricGraph::MetricGraph(std::vector<std::string> vertices, std::vector<Edge> edges)
    : vertices_(std::move(vertices)), edges_(std::move(edges)) {
  const auto issues = validate(vertices_, edges_);
  if (!issues.empty()) {
    std::string message = issues.front().message;
    for (std::size_t i = 1; i < issues.size(); ++i) message += "; " + issues[i].message;
    throw Error(issues.front().code, message);
  }
  for (std::size_t i = 0; i < vertices_.size(); ++i) vertex_lookup_.emplace(vertices_[i], i);
  for (std::size_t i = 0; i < edges_.size(); ++i) edge_lookup_.emplace(edges_[i].id, i);
  incident_.resize(vertices_.size());
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    incident_[vertex_lookup_.at(edges_[i].u)].push_back({i, End::start});
    incident_[vertex_lookup_.at(edges_[i].v)].push_back({i, End::finish});
  }
}

bool MetricGraph::has_vertex(const std::string& id) const { return vertex_lookup_.contains(id); }

bool MetricGraph::has_edge(const std::string& id) const { return edge_lookup_.contains(id); }

std::size_t MetricGraph::vertex_index(const std::string& id) const {
  const auto it = vertex_lookup_.find(id);
  if (it == vertex_lookup_.end()) throw Error("UNKNOWN_VERTEX", "no vertex '" + id + "'");
  return it->second;
}

std::size_t MetricGraph::edge_index(const std::string& id) const {
  const auto it = edge_lookup_.find(id);
  if (it == edge_lookup_.end()) throw Error("UNKNOWN_EDGE", "no edge '" + id + "'");
  return it->second;
}

std::size_t MetricGraph::vertex_index_of(EdgeEnd end) const {
  return vertex_lookup_.at(edges_[end.edge].vertex_at(end.end));
}

bool MetricGraph::potential_free() const {
  return std::all_of(edges_.begin(), edges_.end(), [](const Edge& e) { return e.potential.is_zero(); });
}

double total_length(const MetricGraph& graph) {
  double sum = 0.0;
  for (const auto& e : graph.edges()) sum += e.length;
  return sum;
}

double integrate_potential(const MetricGraph& graph) {
  double sum = 0.0;
  for (const auto& e : graph.edges()) sum += e.potential.integral();
  return sum;
}

double max_potential(const MetricGraph& graph) {
  double m = 0.0;
  for (const auto& e : graph.edges()) m = std::max(m, e.potential.max_value());
  return m;
}

}  // namespace kreingraph
