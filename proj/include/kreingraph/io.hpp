#pragma once

#include <string>
#include <string_view>

#include "kreingraph/graph.hpp"

namespace kreingraph {

/// Parses the JSON graph document
///   {"vertices":[...],"edges":[{"id","u","v","length","potential":[{"len","q"},...]},...]}
/// and validates it. Throws Error with code PARSE_ERROR (with line/field context)
/// or the validation code of the first violated invariant.
MetricGraph parse_graph(std::string_view text);
std::string serialize_graph(const MetricGraph& graph);

MetricGraph read_graph_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& contents);

/// Locale-independent formatting with 17 significant digits, shortest form.
std::string format_real(double value);

}  // namespace kreingraph
