// Command-line front end for the kreingraph library.

#include <CLI11.hpp>
#include <cstdint>
#include <iostream>
#include <json.hpp>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "kreingraph/conditions.hpp"
#include "kreingraph/error.hpp"
#include "kreingraph/interlacing.hpp"
#include "kreingraph/io.hpp"
#include "kreingraph/resolvent.hpp"
#include "kreingraph/spectrum.hpp"
#include "kreingraph/suites.hpp"
#include "kreingraph/surgery.hpp"
#include "kreingraph/variational.hpp"

namespace kg = kreingraph;
using nlohmann::json;

namespace {

std::vector<std::string> split(const std::string& text, char separator) {
  std::vector<std::string> parts;
  std::stringstream stream(text);
  std::string part;
  while (std::getline(stream, part, separator))
    if (!part.empty()) parts.push_back(part);
  return parts;
}

double parse_number(const std::string& text, const std::string& what) {
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) throw kg::Error("BAD_ARGUMENT", what + ": '" + text + "' is not a number");
  return value;
}

struct ConditionFlags {
  std::string kind = "krein";
  std::string boundary;
  std::string delta;

  kg::ConditionSpec build() const {
    kg::ConditionSpec spec;
    spec.kind = kg::parse_condition_kind(kind);
    if (spec.kind == kg::ConditionSpec::Kind::custom)
      throw kg::Error("BAD_ARGUMENT", "custom couplings are not available from the command line");
    spec.boundary = split(boundary, ',');
    for (const auto& item : split(delta, ',')) {
      const auto colon = item.rfind(':');
      if (colon == std::string::npos) throw kg::Error("BAD_ARGUMENT", "--delta expects vertex:strength pairs");
      spec.delta_strengths[item.substr(0, colon)] = parse_number(item.substr(colon + 1), "--delta");
    }
    return spec;
  }
};

void add_condition_flags(CLI::App* app, ConditionFlags& flags) {
  app->add_option("--conditions", flags.kind, "dirichlet|standard|krein|krein-subset|delta")
      ->check(CLI::IsMember({"dirichlet", "standard", "krein", "krein-subset", "krein_subset", "delta"}));
  app->add_option("--boundary", flags.boundary, "comma separated boundary vertices (krein-subset)");
  app->add_option("--delta", flags.delta, "comma separated vertex:strength pairs (delta)");
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty())
    std::cout << text;
  else
    kg::write_text_file(path, text);
}

std::string dump(const json& value) { return value.dump(2) + "\n"; }

std::vector<kg::EndRef> parse_group(const std::string& text) {
  std::vector<kg::EndRef> group;
  for (const auto& item : split(text, ',')) {
    const auto colon = item.rfind(':');
    if (colon == std::string::npos) throw kg::Error("BAD_ARGUMENT", "--groups expects edge:start or edge:finish");
    const std::string side = item.substr(colon + 1);
    if (side != "start" && side != "finish") throw kg::Error("BAD_ARGUMENT", "edge end must be start or finish");
    group.push_back({item.substr(0, colon), side == "start" ? kg::End::start : kg::End::finish});
  }
  return group;
}

kg::GluePoint parse_point(const std::string& text) {
  const auto at = text.find('@');
  if (at == std::string::npos) return kg::GluePoint::at_vertex(text);
  return kg::GluePoint::on_edge(text.substr(0, at), parse_number(text.substr(at + 1), "--points"));
}

struct SurgeryFlags {
  std::string op;
  std::string vertices;
  std::string edge;
  double position = 0.0;
  double alpha = 0.0;
  double length = 1.0;
  std::string attach;
  std::string pairing;
  std::string groups;
  std::string points;
};

kg::SurgeryResult run_surgery(const kg::MetricGraph& graph, const SurgeryFlags& f) {
  const std::vector<std::string> vertices = split(f.vertices, ',');
  if (f.op == "glue") return kg::glue_vertices(graph, vertices);
  if (f.op == "cut") {
    if (vertices.size() != 1) throw kg::Error("BAD_ARGUMENT", "cut needs exactly one vertex in --vertices");
    std::vector<std::vector<kg::EndRef>> partition;
    for (const auto& group : split(f.groups, '|')) partition.push_back(parse_group(group));
    return kg::cut_vertex(graph, vertices.front(), partition);
  }
  if (f.op == "insert-degree2") return kg::insert_degree2(graph, f.edge, f.position);
  if (f.op == "remove-degree2") {
    if (vertices.size() != 1) throw kg::Error("BAD_ARGUMENT", "remove-degree2 needs exactly one vertex");
    return kg::remove_degree2(graph, vertices.front());
  }
  if (f.op == "lengthen") return kg::lengthen_edge(graph, f.edge, f.alpha);
  if (f.op == "attach") {
    const kg::MetricGraph other = kg::read_graph_file(f.attach);
    std::vector<std::pair<std::string, std::string>> pairing;
    for (const auto& item : split(f.pairing, ',')) {
      const auto eq = item.find('=');
      if (eq == std::string::npos) throw kg::Error("BAD_PAIRING", "--pairing expects attached=vertex pairs");
      pairing.emplace_back(item.substr(0, eq), item.substr(eq + 1));
    }
    return kg::attach_graph(graph, other, pairing);
  }
  if (f.op == "insert-edge") {
    if (vertices.size() != 2 && vertices.size() != 1)
      throw kg::Error("BAD_ARGUMENT", "insert-edge needs one or two vertices in --vertices");
    return kg::insert_edge(graph, vertices.front(), vertices.back(), f.length);
  }
  std::vector<kg::GluePoint> points;
  for (const auto& item : split(f.points, ',')) points.push_back(parse_point(item));
  return kg::glue_points(graph, points);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectra of Schroedinger operators on metric graphs"};
  app.require_subcommand(1);

  std::string input;
  std::string out;
  ConditionFlags conditions;

  auto* spectrum = app.add_subcommand("spectrum", "eigenvalues up to --lambda-max as CSV");
  double lambda_max = 0.0;
  spectrum->add_option("--input", input, "graph JSON")->required();
  add_condition_flags(spectrum, conditions);
  spectrum->add_option("--lambda-max", lambda_max, "upper end of the spectral window")->required();
  spectrum->add_option("--out", out, "output path (default stdout)");

  auto* count = app.add_subcommand("count", "eigenvalue counting function N(lambda)");
  double lambda = 0.0;
  count->add_option("--input", input, "graph JSON")->required();
  add_condition_flags(count, conditions);
  count->add_option("--lambda", lambda, "spectral parameter")->required();
  count->add_option("--out", out, "output path (default stdout)");

  auto* surgery = app.add_subcommand("surgery", "apply one graph transformation");
  SurgeryFlags sf;
  surgery->add_option("--input", input, "graph JSON")->required();
  surgery->add_option("--op", sf.op, "operation")
      ->required()
      ->check(CLI::IsMember(
          {"glue", "cut", "insert-degree2", "remove-degree2", "lengthen", "attach", "insert-edge", "glue-points"}));
  surgery->add_option("--vertices", sf.vertices, "comma separated vertex ids");
  surgery->add_option("--edge", sf.edge, "edge id");
  surgery->add_option("--position", sf.position, "position along --edge");
  surgery->add_option("--alpha", sf.alpha, "lengthening factor");
  surgery->add_option("--length", sf.length, "length of an inserted edge");
  surgery->add_option("--attach", sf.attach, "graph JSON to attach");
  surgery->add_option("--pairing", sf.pairing, "attached=vertex pairs, comma separated");
  surgery->add_option("--groups", sf.groups, "cut groups edge:start|finish, groups separated by '|'");
  surgery->add_option("--points", sf.points, "vertex or edge@position items, comma separated");
  surgery->add_option("--out", out, "output path (default stdout)");

  auto* verify = app.add_subcommand("verify", "run a seeded verification suite");
  std::string suite;
  kg::SuiteOptions suite_options;
  verify->add_option("--suite", suite, "suite name")->required()->check(CLI::IsMember(kg::suite_names()));
  verify->add_option("--trials", suite_options.trials, "number of random trials");
  verify->add_option("--seed", suite_options.seed, "random seed");
  verify->add_option("--j-max", suite_options.j_max, "largest eigenvalue index checked");
  verify->add_flag("--random-attached-potential", suite_options.random_attached_potential,
                   "random potential on attached or inserted edges");
  verify->add_option("--out", out, "output path (default stdout)");

  auto* rank = app.add_subcommand("resolvent-rank", "rank of a resolvent difference");
  std::string against = "standard";
  double rank_lambda = -1.0;
  int probes = 0;
  std::uint64_t seed = 0;
  rank->add_option("--input", input, "graph JSON")->required();
  add_condition_flags(rank, conditions);
  rank->add_option("--against", against, "second condition kind")
      ->check(CLI::IsMember({"dirichlet", "standard", "krein", "krein-subset", "krein_subset", "delta"}));
  rank->add_option("--lambda", rank_lambda, "spectral parameter (default -1)");
  rank->add_option("--probes", probes, "number of random probes (default 2V + 4)");
  rank->add_option("--seed", seed, "random seed");
  rank->add_option("--out", out, "output path (default stdout)");

  auto* iso = app.add_subcommand("isoperimetric", "lower bound check for the first positive eigenvalue");
  iso->add_option("--input", input, "graph JSON")->required();
  iso->add_option("--out", out, "output path (default stdout)");

  auto* oracle = app.add_subcommand("oracle", "Rayleigh-Ritz upper bounds as CSV");
  int modes = 40;
  int j_max = 5;
  oracle->add_option("--input", input, "graph JSON")->required();
  oracle->add_option("--modes", modes, "sine modes per edge");
  oracle->add_option("--j-max", j_max, "number of bounds");
  oracle->add_option("--out", out, "output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (spectrum->parsed()) {
      const kg::MetricGraph graph = kg::read_graph_file(input);
      emit(kg::spectrum_csv(kg::eigenvalues(graph, conditions.build(), lambda_max)), out);
    } else if (count->parsed()) {
      const kg::MetricGraph graph = kg::read_graph_file(input);
      json report = {{"lambda", lambda}, {"count", kg::counting_function(graph, conditions.build(), lambda)}};
      if (graph.potential_free()) {
        const auto [lower, upper] = kg::weyl_bounds(graph, lambda);
        report["weyl_bounds"] = {lower, upper};
      }
      emit(dump(report), out);
    } else if (surgery->parsed()) {
      const kg::SurgeryResult result = run_surgery(kg::read_graph_file(input), sf);
      emit(kg::serialize_graph(result.graph) + "\n", out);
    } else if (verify->parsed()) {
      suite_options.tolerance = kg::default_tolerance();
      const json report = kg::run_suite(suite, suite_options);
      emit(dump(report), out);
      if (!report["passed"].get<bool>()) {
        std::cerr << "VERIFICATION_FAILED: suite " << suite << " reported violations\n";
        return 1;
      }
    } else if (rank->parsed()) {
      const kg::MetricGraph graph = kg::read_graph_file(input);
      ConditionFlags second = conditions;
      second.kind = against;
      const int n = probes > 0 ? probes : 2 * static_cast<int>(graph.vertex_count()) + 4;
      const int r = kg::resolvent_difference_rank(graph, conditions.build(), second.build(), rank_lambda, n, seed);
      emit(dump({{"lambda", rank_lambda}, {"probes", n}, {"rank", r}}), out);
    } else if (iso->parsed()) {
      const kg::MetricGraph graph = kg::read_graph_file(input);
      const kg::IsoperimetricReport r = kg::isoperimetric_check(graph, kg::default_tolerance());
      emit(dump({{"potential_free", r.potential_free},
                 {"lambda1_plus", r.lambda1_plus},
                 {"bound", r.bound},
                 {"margin", r.margin},
                 {"relative_margin", r.relative_margin},
                 {"holds", r.holds},
                 {"equality", r.equality}}),
           out);
    } else if (oracle->parsed()) {
      const kg::MetricGraph graph = kg::read_graph_file(input);
      std::ostringstream csv;
      csv << "j,upper_bound\n";
      const std::vector<double> bounds = kg::rayleigh_ritz(graph, modes, j_max);
      for (std::size_t j = 0; j < bounds.size(); ++j) csv << j + 1 << ',' << kg::format_real(bounds[j]) << '\n';
      emit(csv.str(), out);
    }
  } catch (const kg::Error& e) {
    std::cerr << e.what() << '\n';
    return 1;
  }
  return 0;
}
