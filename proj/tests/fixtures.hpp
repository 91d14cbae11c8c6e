#pragma once

#include <string>
#include <vector>

#include "kreingraph/graph.hpp"

namespace fixture {

using kreingraph::Edge;
using kreingraph::MetricGraph;
using kreingraph::PiecewisePotential;

inline MetricGraph interval(double length = 1.0, PiecewisePotential q = {}) {
  return MetricGraph({"a", "b"}, {Edge{"e", "a", "b", length, std::move(q)}});
}

inline MetricGraph loop(double length = 1.0) { return MetricGraph({"a"}, {Edge{"e", "a", "a", length, {}}}); }

inline MetricGraph two_cycle(double a = 1.0, double b = 1.0) {
  return MetricGraph({"a", "b"}, {Edge{"e", "a", "b", a, {}}, Edge{"f", "b", "a", b, {}}});
}

inline MetricGraph figure8(double a = 1.0, double b = 1.0) {
  return MetricGraph({"a"}, {Edge{"e", "a", "a", a, {}}, Edge{"f", "a", "a", b, {}}});
}

inline MetricGraph path2(double a = 1.0, double b = 1.0) {
  return MetricGraph({"a", "m", "b"}, {Edge{"e", "a", "m", a, {}}, Edge{"f", "m", "b", b, {}}});
}

inline MetricGraph star3(double a = 1.0, double b = 1.0, double c = 1.0) {
  return MetricGraph({"c", "x", "y", "z"},
                     {Edge{"e1", "c", "x", a, {}}, Edge{"e2", "c", "y", b, {}}, Edge{"e3", "c", "z", c, {}}});
}

}  // namespace fixture
