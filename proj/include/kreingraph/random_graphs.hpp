#pragma once

#include <cstdint>
#include <random>

#include "kreingraph/graph.hpp"

namespace kreingraph {

struct RandomGraphOptions {
  int min_vertices = 2;
  int max_vertices = 6;
  int max_edges = 9;
  double min_length = 0.5;
  double max_length = 2.0;
  bool with_potential = false;
  double max_potential = 3.0;
};

/// Connected graph with vertices v0.., edges e0..: a random spanning tree plus
/// extra edges (loops and parallel edges allowed). Lengths are uniform, hence
/// rationally independent with probability one. With a potential, every edge
/// carries one to three pieces and at least one piece is positive.
MetricGraph random_graph(std::mt19937_64& rng, const RandomGraphOptions& options = {});

/// Piecewise potential on [0, length] with 1..3 pieces, values in [0, max_value].
PiecewisePotential random_potential(std::mt19937_64& rng, double length, double max_value);

}  // namespace kreingraph
