#include "kreingraph/suites.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "kreingraph/error.hpp"
#include "kreingraph/interlacing.hpp"
#include "kreingraph/io.hpp"
#include "kreingraph/random_graphs.hpp"
#include "kreingraph/resolvent.hpp"
#include "kreingraph/spectrum.hpp"
#include "kreingraph/surgery.hpp"
#include "kreingraph/variational.hpp"
#include "kreingraph/weyl_maps.hpp"

namespace kreingraph {

namespace {

using nlohmann::json;

constexpr double kResolventLambda = -1.0;

int uniform_int(std::mt19937_64& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

double uniform_real(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

std::vector<std::string> sample_vertices(std::mt19937_64& rng, const MetricGraph& graph, int count) {
  std::vector<std::string> ids = graph.vertices();
  std::shuffle(ids.begin(), ids.end(), rng);
  ids.resize(static_cast<std::size_t>(count));
  return ids;
}

RandomGraphOptions trial_options(int trial, int min_vertices) {
  RandomGraphOptions o;
  o.min_vertices = min_vertices;
  o.with_potential = trial % 2 == 1;
  return o;
}

json graph_summary(const MetricGraph& graph) {
  return {{"vertices", graph.vertex_count()},
          {"edges", graph.edge_count()},
          {"total_length", total_length(graph)},
          {"potential_free", graph.potential_free()}};
}

json report_json(const InterlacingReport& report) {
  json records = json::array();
  for (const auto& r : report.records)
    records.push_back({{"relation", r.relation},
                       {"j", r.j},
                       {"lhs", r.lhs},
                       {"rhs", r.rhs},
                       {"violation", r.violation},
                       {"ok", r.ok}});
  return {{"theorem", report.theorem},
          {"max_violation", report.max_violation},
          {"passed", report.passed},
          {"records", records}};
}

/// Spectra of both operators with enough eigenvalues for the chains, then the check.
json interlacing_trial(const MetricGraph& before_graph, const ConditionSpec& before_conditions,
                       const MetricGraph& after_graph, const ConditionSpec& after_conditions, Theorem theorem,
                       const InterlacingParams& params, const SuiteOptions& options) {
  const int n = options.j_max + static_cast<int>(before_graph.vertex_count() + after_graph.vertex_count()) +
                2 * (params.k + params.k0) + params.attached_vertices + 2;
  const Spectrum before = eigenvalues_count(before_graph, before_conditions, n);
  const Spectrum after = eigenvalues_count(after_graph, after_conditions, n);
  const InterlacingReport report = verify_interlacing(before, after, theorem, params, options.j_max, options.tolerance);
  json out = report_json(report);
  out["before"] = graph_summary(before_graph);
  out["after"] = graph_summary(after_graph);
  return out;
}

json surgery_trial(const std::string& suite, int trial, std::mt19937_64& rng, const SuiteOptions& options) {
  const ConditionSpec krein = ConditionSpec::krein();
  if (suite == "gluing") {
    const MetricGraph g = random_graph(rng, trial_options(trial, 2));
    const int size = uniform_int(rng, 2, std::min<int>(4, static_cast<int>(g.vertex_count())));
    const std::vector<std::string> set = sample_vertices(rng, g, size);
    InterlacingParams p;
    p.k = size - 1;
    p.vertices = static_cast<int>(g.vertex_count());
    json out = interlacing_trial(g, krein, glue_vertices(g, set).graph, krein, Theorem::gluing, p, options);
    out["glued"] = set;
    return out;
  }
  if (suite == "degree2") {
    const MetricGraph g = random_graph(rng, trial_options(trial, 1));
    MetricGraph current = g;
    const int k0 = uniform_int(rng, 1, 3);
    for (int i = 0; i < k0; ++i) {
      const Edge& e =
          current.edges()[static_cast<std::size_t>(uniform_int(rng, 0, static_cast<int>(current.edge_count()) - 1))];
      current = insert_degree2(current, e.id, e.length * uniform_real(rng, 0.1, 0.9)).graph;
    }
    InterlacingParams p;
    p.k0 = k0;
    return interlacing_trial(g, krein, current, krein, Theorem::degree2, p, options);
  }
  if (suite == "glue-points") {
    const MetricGraph g = random_graph(rng, trial_options(trial, 1));
    const int count = uniform_int(rng, 2, 4);
    std::vector<std::string> free_vertices = g.vertices();
    std::shuffle(free_vertices.begin(), free_vertices.end(), rng);
    std::vector<GluePoint> points;
    json described = json::array();
    for (int i = 0; i < count; ++i) {
      if (!free_vertices.empty() && uniform_int(rng, 0, 1) == 0) {
        points.push_back(GluePoint::at_vertex(free_vertices.back()));
        described.push_back(free_vertices.back());
        free_vertices.pop_back();
      } else {
        const Edge& e = g.edges()[static_cast<std::size_t>(uniform_int(rng, 0, static_cast<int>(g.edge_count()) - 1))];
        const double x = e.length * uniform_real(rng, 0.05, 0.95);
        points.push_back(GluePoint::on_edge(e.id, x));
        described.push_back({{"edge", e.id}, {"position", x}});
      }
    }
    const SurgeryResult glued = glue_points(g, points);
    InterlacingParams p;
    p.k = count - 1;
    p.k0 = glued.inserted_vertices;
    json out = interlacing_trial(g, krein, glued.graph, krein, Theorem::glue_points, p, options);
    out["points"] = described;
    return out;
  }
  if (suite == "lengthen") {
    const MetricGraph g = random_graph(rng, trial_options(trial, 1));
    const Edge& e = g.edges()[static_cast<std::size_t>(uniform_int(rng, 0, static_cast<int>(g.edge_count()) - 1))];
    const double alpha = uniform_real(rng, 1.05, 2.5);
    json out = interlacing_trial(g, krein, lengthen_edge(g, e.id, alpha).graph, krein, Theorem::lengthen, {}, options);
    out["edge"] = e.id;
    out["alpha"] = alpha;
    return out;
  }
  if (suite == "attach") {
    const MetricGraph g = random_graph(rng, trial_options(trial, 1));
    RandomGraphOptions small;
    small.min_vertices = 1;
    small.max_vertices = 3;
    small.max_edges = 3;
    small.with_potential = options.random_attached_potential;
    const MetricGraph other = random_graph(rng, small);
    const int m = uniform_int(rng, 1, static_cast<int>(std::min(other.vertex_count(), g.vertex_count())));
    const std::vector<std::string> from = sample_vertices(rng, other, m);
    const std::vector<std::string> to = sample_vertices(rng, g, m);
    std::vector<std::pair<std::string, std::string>> pairing;
    for (int i = 0; i < m; ++i)
      pairing.emplace_back(from[static_cast<std::size_t>(i)], to[static_cast<std::size_t>(i)]);
    InterlacingParams p;
    p.paired = m;
    p.attached_vertices = static_cast<int>(other.vertex_count());
    json out = interlacing_trial(g, krein, attach_graph(g, other, pairing).graph, krein, Theorem::attach, p, options);
    out["attached"] = graph_summary(other);
    out["paired"] = m;
    return out;
  }
  if (suite == "insert-edge") {
    const MetricGraph g = random_graph(rng, trial_options(trial, 1));
    const std::string u =
        g.vertices()[static_cast<std::size_t>(uniform_int(rng, 0, static_cast<int>(g.vertex_count()) - 1))];
    const std::string v =
        g.vertices()[static_cast<std::size_t>(uniform_int(rng, 0, static_cast<int>(g.vertex_count()) - 1))];
    const double length = uniform_real(rng, 0.5, 2.0);
    PiecewisePotential q;
    if (options.random_attached_potential) q = random_potential(rng, length, 3.0);
    json out =
        interlacing_trial(g, krein, insert_edge(g, u, v, length, q).graph, krein, Theorem::insert_edge, {}, options);
    out["endpoints"] = {u, v};
    return out;
  }
  // boundary
  const MetricGraph g = random_graph(rng, trial_options(trial, 2));
  const int b = uniform_int(rng, 2, static_cast<int>(g.vertex_count()));
  std::vector<std::string> boundary = sample_vertices(rng, g, b);
  const int b_small = uniform_int(rng, 1, b - 1);
  std::vector<std::string> subset(boundary.begin(), boundary.begin() + b_small);
  InterlacingParams p;
  p.k = b - b_small;
  json out = interlacing_trial(g, ConditionSpec::krein_subset(boundary), g, ConditionSpec::krein_subset(subset),
                               Theorem::boundary, p, options);
  out["boundary"] = boundary;
  out["subset"] = subset;
  return out;
}

json counting_trial(int trial, std::mt19937_64& rng) {
  const MetricGraph g = random_graph(rng, trial_options(trial, 1));
  const auto v = static_cast<int>(g.vertex_count());
  const double lambda_max = lambda_max_for_count(g, 20);
  const Spectrum dirichlet = eigenvalues(g, ConditionSpec::dirichlet(), lambda_max);
  const Spectrum krein = eigenvalues(g, ConditionSpec::krein(), lambda_max);
  const bool free = g.potential_free();
  const Spectrum standard = free ? eigenvalues(g, ConditionSpec::standard(), lambda_max) : Spectrum{};
  json samples = json::array();
  bool passed = true;
  for (int i = 0; i < 50; ++i) {
    const double lambda = uniform_real(rng, 0.0, lambda_max);
    const int nd = count_eigenvalues(dirichlet, lambda);
    const int nk = count_eigenvalues(krein, lambda);
    json s = {{"lambda", lambda}, {"dirichlet", nd}, {"krein", nk}};
    bool ok = nd <= nk && nk <= nd + v;
    if (free) {
      const int ns = count_eigenvalues(standard, lambda);
      const auto [lower, upper] = weyl_bounds(g, lambda);
      s["standard"] = ns;
      s["weyl"] = {lower, upper};
      ok = ok && ns <= nk && nk <= ns + v - 1 && lower <= nk && nk <= upper;
    }
    s["ok"] = ok;
    passed = passed && ok;
    samples.push_back(s);
  }
  return {{"graph", graph_summary(g)}, {"passed", passed}, {"samples", samples}};
}

bool equality_shape(const MetricGraph& g) {
  if (g.edge_count() == 1) return true;
  if (g.edge_count() != 2) return false;
  if (g.vertex_count() == 1) return true;
  return g.vertex_count() == 2 && !g.edges()[0].is_loop() && !g.edges()[1].is_loop();
}

json isoperimetric_json(const std::string& name, const MetricGraph& g, const IsoperimetricReport& r) {
  return {{"name", name},     {"graph", graph_summary(g)}, {"lambda1_plus", r.lambda1_plus},
          {"bound", r.bound}, {"margin", r.margin},        {"relative_margin", r.relative_margin},
          {"holds", r.holds}, {"equality", r.equality}};
}

json run_isoperimetric(const SuiteOptions& options, std::mt19937_64& rng) {
  json trials = json::array();
  bool passed = true;
  auto add = [&](json entry, bool ok) {
    entry["passed"] = ok;
    passed = passed && ok;
    trials.push_back(std::move(entry));
  };
  const std::vector<std::pair<std::string, MetricGraph>> named = {
      {"interval", MetricGraph({"a", "b"}, {Edge{"e", "a", "b", 1.0, {}}})},
      {"loop", MetricGraph({"a"}, {Edge{"e", "a", "a", 1.0, {}}})},
      {"equilateral 2-cycle", MetricGraph({"a", "b"}, {Edge{"e", "a", "b", 1.0, {}}, Edge{"f", "b", "a", 1.0, {}}})},
      {"equilateral figure-8", MetricGraph({"a"}, {Edge{"e", "a", "a", 1.0, {}}, Edge{"f", "a", "a", 1.0, {}}})},
      {"equilateral 3-star",
       MetricGraph({"o", "a", "b", "c"},
                   {Edge{"e", "o", "a", 1.0, {}}, Edge{"f", "o", "b", 1.0, {}}, Edge{"g", "o", "c", 1.0, {}}})}};
  for (const auto& [name, g] : named) {
    const IsoperimetricReport r = isoperimetric_check(g, options.tolerance);
    const bool expect_equality = equality_shape(g);
    bool ok = r.holds && r.equality == expect_equality;
    if (name == "equilateral 3-star") ok = ok && r.relative_margin > 1e-3;
    add(isoperimetric_json(name, g, r), ok);
  }
  for (int t = 0; t < options.trials; ++t) {
    RandomGraphOptions o;
    o.min_vertices = 1;
    const MetricGraph g = random_graph(rng, o);
    const IsoperimetricReport r = isoperimetric_check(g, options.tolerance);
    add(isoperimetric_json("random q=0 #" + std::to_string(t), g, r), r.holds && r.equality == equality_shape(g));
  }
  const int potential_trials = std::max(1, (options.trials + 4) / 5);
  for (int t = 0; t < potential_trials; ++t) {
    RandomGraphOptions o;
    o.min_vertices = 1;
    o.with_potential = true;
    const MetricGraph g = random_graph(rng, o);
    const IsoperimetricReport r = isoperimetric_check(g, options.tolerance);
    add(isoperimetric_json("random q>0 #" + std::to_string(t), g, r), r.holds);
  }
  return {{"passed", passed}, {"trials", trials}};
}

json resolvent_trial(std::mt19937_64& rng, const SuiteOptions& options) {
  RandomGraphOptions o;
  o.min_vertices = 1;
  const MetricGraph free_graph = random_graph(rng, o);
  std::vector<Edge> edges = free_graph.edges();
  for (auto& e : edges) e.potential = random_potential(rng, e.length, 3.0);
  const MetricGraph potential_graph(free_graph.vertices(), edges);
  const int v = static_cast<int>(free_graph.vertex_count());
  const int probes = 2 * v + 4;
  const std::uint64_t seed = rng();
  const int kd = resolvent_difference_rank(free_graph, ConditionSpec::krein(), ConditionSpec::dirichlet(),
                                           kResolventLambda, probes, seed);
  const int ks = resolvent_difference_rank(free_graph, ConditionSpec::krein(), ConditionSpec::standard(),
                                           kResolventLambda, probes, seed);
  const int kdq = resolvent_difference_rank(potential_graph, ConditionSpec::krein(), ConditionSpec::dirichlet(),
                                            kResolventLambda, probes, seed);
  const int ksq = resolvent_difference_rank(potential_graph, ConditionSpec::krein(), ConditionSpec::standard(),
                                            kResolventLambda, probes, seed);
  double formula_gap = 0.0;
  std::uint64_t state = seed;
  for (int i = 0; i < 2; ++i) {
    const EdgewiseFunction f = random_probe(potential_graph, state);
    formula_gap =
        std::max(formula_gap, l2_distance(potential_graph,
                                          apply_resolvent(potential_graph, ConditionSpec::krein(), kResolventLambda, f),
                                          krein_resolvent_via_formula(potential_graph, kResolventLambda, f)));
  }
  const bool passed = kd == v && ks == v - 1 && kdq == v && ksq == v && formula_gap <= options.tolerance;
  return {{"graph", graph_summary(free_graph)},
          {"rank_krein_dirichlet", kd},
          {"rank_krein_standard", ks},
          {"rank_krein_dirichlet_potential", kdq},
          {"rank_krein_standard_potential", ksq},
          {"expected", {v, v - 1, v, v}},
          {"formula_gap", formula_gap},
          {"passed", passed}};
}

json perturbation_trial(std::mt19937_64& rng, const SuiteOptions& options) {
  RandomGraphOptions o;
  o.min_vertices = 1;
  o.with_potential = true;
  const MetricGraph g = random_graph(rng, o);
  const ConditionSpec shifted = ConditionSpec::custom(discrete_laplacian(g));
  const int n = options.j_max + 2 * static_cast<int>(g.vertex_count()) + 2;
  const Spectrum krein = eigenvalues_count(g, ConditionSpec::krein(), n);
  const Spectrum custom = eigenvalues_count(g, shifted, n);
  const std::vector<double> k_all = krein.expanded();
  const std::vector<double> k_plus = krein.positive();
  const std::vector<double> c_all = custom.expanded();
  const int d = custom.kernel_dimension();
  json records = json::array();
  double worst = 0.0;
  for (int j = 1; j <= options.j_max; ++j) {
    const auto u = static_cast<std::size_t>(j - 1);
    const double lower = k_all[u] - c_all[u];
    const double upper = c_all[u + static_cast<std::size_t>(d)] - k_plus[u];
    worst = std::max({worst, lower, upper});
    records.push_back({{"j", j},
                       {"krein", k_all[u]},
                       {"shifted", c_all[u]},
                       {"shifted_j_plus_d", c_all[u + static_cast<std::size_t>(d)]},
                       {"krein_plus", k_plus[u]}});
  }
  return {{"graph", graph_summary(g)},
          {"kernel_shifted", d},
          {"max_violation", std::max(worst, 0.0)},
          {"passed", worst <= options.tolerance},
          {"records", records}};
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"gluing",        "degree2",     "glue-points", "lengthen",
                                                 "attach",        "insert-edge", "boundary",    "counting",
                                                 "isoperimetric", "resolvent",   "perturbation"};
  return names;
}

json run_suite(const std::string& name, const SuiteOptions& options) {
  const auto& names = suite_names();
  if (std::find(names.begin(), names.end(), name) == names.end())
    throw Error("BAD_ARGUMENT", "unknown suite '" + name + "'");
  if (options.trials < 1) throw Error("BAD_ARGUMENT", "trials must be positive");
  std::mt19937_64 rng(options.seed);
  json report = {{"suite", name}, {"seed", options.seed}, {"trials", options.trials}, {"tolerance", options.tolerance}};
  if (name == "isoperimetric") {
    json body = run_isoperimetric(options, rng);
    report["passed"] = body["passed"];
    report["records"] = body["trials"];
    return report;
  }
  json records = json::array();
  bool passed = true;
  double worst = 0.0;
  for (int t = 0; t < options.trials; ++t) {
    json trial;
    if (name == "counting")
      trial = counting_trial(t, rng);
    else if (name == "resolvent")
      trial = resolvent_trial(rng, options);
    else if (name == "perturbation")
      trial = perturbation_trial(rng, options);
    else
      trial = surgery_trial(name, t, rng, options);
    trial["trial"] = t;
    passed = passed && trial["passed"].get<bool>();
    if (trial.contains("max_violation")) worst = std::max(worst, trial["max_violation"].get<double>());
    records.push_back(std::move(trial));
  }
  report["passed"] = passed;
  report["max_violation"] = worst;
  report["records"] = records;
  return report;
}

}  // namespace kreingraph
