#pragma once

#include <cstddef>
#include <string>
#include <unordered_map>
#include <vector>

namespace kreingraph {

struct PotentialPiece {
  double length = 0.0;
  double value = 0.0;

  friend bool operator==(const PotentialPiece&, const PotentialPiece&) = default;
};

/// Piecewise-constant potential along an edge, ordered from x = 0.
/// An empty piece list means q == 0 on the whole edge.
struct PiecewisePotential {
  std::vector<PotentialPiece> pieces;

  bool is_zero() const;
  double integral() const;
  double max_value() const;
  /// Same potential seen from the other end of the edge.
  PiecewisePotential reversed() const;

  friend bool operator==(const PiecewisePotential&, const PiecewisePotential&) = default;
};

enum class End { start, finish };

struct Edge {
  std::string id;
  std::string u;  // vertex at x = 0
  std::string v;  // vertex at x = length
  double length = 0.0;
  PiecewisePotential potential;

  bool is_loop() const { return u == v; }
  /// Pieces covering [0, length]; a single zero piece when the potential is empty.
  std::vector<PotentialPiece> effective_pieces() const;
  const std::string& vertex_at(End end) const { return end == End::start ? u : v; }

  friend bool operator==(const Edge&, const Edge&) = default;
};

struct EdgeEnd {
  std::size_t edge = 0;
  End end = End::start;

  friend bool operator==(const EdgeEnd&, const EdgeEnd&) = default;
};

struct ValidationIssue {
  std::string code;
  std::string message;
};

/// Returns one issue per violated invariant; empty means valid.
std::vector<ValidationIssue> validate(const std::vector<std::string>& vertices, const std::vector<Edge>& edges);

/// Finite connected metric graph with nonnegative piecewise-constant edge
/// potentials. Loops and parallel edges are allowed. Immutable once built;
/// construction throws kreingraph::Error for the first violated invariant.
class MetricGraph {
 public:
  MetricGraph(std::vector<std::string> vertices, std::vector<Edge> edges);

  const std::vector<std::string>& vertices() const { return vertices_; }
  const std::vector<Edge>& edges() const { return edges_; }
  std::size_t vertex_count() const { return vertices_.size(); }
  std::size_t edge_count() const { return edges_.size(); }

  bool has_vertex(const std::string& id) const;
  bool has_edge(const std::string& id) const;
  std::size_t vertex_index(const std::string& id) const;
  std::size_t edge_index(const std::string& id) const;
  std::size_t vertex_index_of(EdgeEnd end) const;

  /// Edge ends incident to vertex i, ordered by edge index then start/finish.
  const std::vector<EdgeEnd>& incident(std::size_t vertex) const { return incident_[vertex]; }
  std::size_t degree(std::size_t vertex) const { return incident_[vertex].size(); }

  bool potential_free() const;

  friend bool operator==(const MetricGraph& a, const MetricGraph& b) {
    return a.vertices_ == b.vertices_ && a.edges_ == b.edges_;
  }

 private:
  std::vector<std::string> vertices_;
  std::vector<Edge> edges_;
  std::unordered_map<std::string, std::size_t> vertex_lookup_;
  std::unordered_map<std::string, std::size_t> edge_lookup_;
  std::vector<std::vector<EdgeEnd>> incident_;
};

double total_length(const MetricGraph& graph);
double integrate_potential(const MetricGraph& graph);
double max_potential(const MetricGraph& graph);

}  // namespace kreingraph
