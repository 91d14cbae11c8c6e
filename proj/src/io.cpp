#include "kreingraph/io.hpp"

#include <charconv>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "kreingraph/error.hpp"

namespace kreingraph {

namespace {

using nlohmann::json;

const json& require(const json& object, const char* key, const std::string& where) {
  if (!object.is_object() || !object.contains(key)) throw Error("PARSE_ERROR", where + ": missing field '" + key + "'");
  return object.at(key);
}

std::string require_string(const json& object, const char* key, const std::string& where) {
  const auto& value = require(object, key, where);
  if (!value.is_string()) throw Error("PARSE_ERROR", where + "." + key + ": expected string");
  return value.get<std::string>();
}

double require_number(const json& object, const char* key, const std::string& where) {
  const auto& value = require(object, key, where);
  if (!value.is_number()) throw Error("PARSE_ERROR", where + "." + key + ": expected number");
  return value.get<double>();
}

}  // namespace

MetricGraph parse_graph(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error("PARSE_ERROR", e.what());
  }
  if (!doc.is_object()) throw Error("PARSE_ERROR", "document: expected object");

  const auto& vertex_list = require(doc, "vertices", "document");
  if (!vertex_list.is_array()) throw Error("PARSE_ERROR", "vertices: expected array");
  std::vector<std::string> vertices;
  for (std::size_t i = 0; i < vertex_list.size(); ++i) {
    if (!vertex_list[i].is_string()) throw Error("PARSE_ERROR", "vertices[" + std::to_string(i) + "]: expected string");
    vertices.push_back(vertex_list[i].get<std::string>());
  }

  const auto& edge_list = require(doc, "edges", "document");
  if (!edge_list.is_array()) throw Error("PARSE_ERROR", "edges: expected array");
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < edge_list.size(); ++i) {
    const std::string where = "edges[" + std::to_string(i) + "]";
    const auto& item = edge_list[i];
    if (!item.is_object()) throw Error("PARSE_ERROR", where + ": expected object");
    Edge e;
    e.id = require_string(item, "id", where);
    e.u = require_string(item, "u", where);
    e.v = require_string(item, "v", where);
    e.length = require_number(item, "length", where);
    if (item.contains("potential") && !item.at("potential").is_null()) {
      const auto& pieces = item.at("potential");
      if (!pieces.is_array()) throw Error("PARSE_ERROR", where + ".potential: expected array");
      for (std::size_t p = 0; p < pieces.size(); ++p) {
        const std::string piece_where = where + ".potential[" + std::to_string(p) + "]";
        e.potential.pieces.push_back(
            {require_number(pieces[p], "len", piece_where), require_number(pieces[p], "q", piece_where)});
      }
    }
    edges.push_back(std::move(e));
  }
  return MetricGraph(std::move(vertices), std::move(edges));
}

std::string serialize_graph(const MetricGraph& graph) {
  json doc;
  doc["vertices"] = graph.vertices();
  doc["edges"] = json::array();
  for (const auto& e : graph.edges()) {
    json item{{"id", e.id}, {"u", e.u}, {"v", e.v}, {"length", e.length}};
    if (!e.potential.pieces.empty()) {
      item["potential"] = json::array();
      for (const auto& p : e.potential.pieces) item["potential"].push_back({{"len", p.length}, {"q", p.value}});
    }
    doc["edges"].push_back(std::move(item));
  }
  return doc.dump(2) + "\n";
}

MetricGraph read_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("IO_ERROR", "cannot open '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_graph(buffer.str());
}

void write_text_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("IO_ERROR", "cannot write '" + path + "'");
  out << contents;
}

std::string format_real(double value) {
  char buffer[64];
  const auto result = std::to_chars(buffer, buffer + sizeof(buffer), value, std::chars_format::general, 17);
  return std::string(buffer, result.ptr);
}

}  // namespace kreingraph
