#include "kreingraph/random_graphs.hpp"

#include <algorithm>
#include <string>
#include <vector>

namespace kreingraph {

namespace {

int uniform_int(std::mt19937_64& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

double uniform_real(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

}  // namespace

PiecewisePotential random_potential(std::mt19937_64& rng, double length, double max_value) {
  const int count = uniform_int(rng, 1, 3);
  std::vector<double> weights(static_cast<std::size_t>(count));
  double total = 0.0;
  for (auto& w : weights) total += (w = uniform_real(rng, 0.2, 1.0));
  PiecewisePotential p;
  double used = 0.0;
  for (int i = 0; i < count; ++i) {
    const double piece = i + 1 == count ? length - used : length * weights[static_cast<std::size_t>(i)] / total;
    used += piece;
    p.pieces.push_back({piece, uniform_real(rng, 0.0, max_value)});
  }
  p.pieces.front().value = std::max(p.pieces.front().value, 0.1 * max_value);
  return p;
}

MetricGraph random_graph(std::mt19937_64& rng, const RandomGraphOptions& options) {
  const int v = uniform_int(rng, options.min_vertices, options.max_vertices);
  const int min_edges = std::max(v - 1, 1);
  const int e = uniform_int(rng, min_edges, std::max(min_edges, options.max_edges));
  std::vector<std::string> vertices;
  for (int i = 0; i < v; ++i) vertices.push_back("v" + std::to_string(i));
  std::vector<std::pair<int, int>> ends;
  for (int i = 1; i < v; ++i) ends.emplace_back(uniform_int(rng, 0, i - 1), i);
  while (static_cast<int>(ends.size()) < e) ends.emplace_back(uniform_int(rng, 0, v - 1), uniform_int(rng, 0, v - 1));
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < ends.size(); ++i) {
    Edge edge;
    edge.id = "e" + std::to_string(i);
    edge.u = vertices[static_cast<std::size_t>(ends[i].first)];
    edge.v = vertices[static_cast<std::size_t>(ends[i].second)];
    edge.length = uniform_real(rng, options.min_length, options.max_length);
    if (options.with_potential) edge.potential = random_potential(rng, edge.length, options.max_potential);
    edges.push_back(std::move(edge));
  }
  return MetricGraph(std::move(vertices), std::move(edges));
}

}  // namespace kreingraph
