// Acceptance checks: one PASS/FAIL line per criterion.

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "fixtures.hpp"
#include "kreingraph/error.hpp"
#include "kreingraph/interlacing.hpp"
#include "kreingraph/io.hpp"
#include "kreingraph/random_graphs.hpp"
#include "kreingraph/resolvent.hpp"
#include "kreingraph/spectrum.hpp"
#include "kreingraph/suites.hpp"
#include "kreingraph/surgery.hpp"
#include "kreingraph/variational.hpp"
#include "kreingraph/weyl_maps.hpp"
#include "oracles.hpp"

using namespace kreingraph;
using std::numbers::pi;

namespace {

struct Outcome {
  bool passed = true;
  std::string detail;
};

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

double rel(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

MetricGraph random_free(std::mt19937_64& rng, int min_vertices = 1) {
  RandomGraphOptions o;
  o.min_vertices = min_vertices;
  return random_graph(rng, o);
}

MetricGraph with_random_potential(const MetricGraph& g, std::mt19937_64& rng) {
  std::vector<Edge> edges = g.edges();
  for (auto& e : edges) e.potential = random_potential(rng, e.length, 3.0);
  if (integrate_potential(MetricGraph(g.vertices(), edges)) <= 0.0) edges[0].potential = {{{edges[0].length, 1.0}}};
  return MetricGraph(g.vertices(), edges);
}

Outcome interval_krein() {
  const Spectrum s = eigenvalues(fixture::interval(), ConditionSpec::krein(), 500.0);
  std::vector<double> expected;
  for (int n = 1; 4.0 * n * n * pi * pi <= 500.0; ++n) expected.push_back(4.0 * n * n * pi * pi);
  for (int n = 1;; ++n) {
    const double k = oracle::interval_krein_kappa(n);
    if (k * k > 500.0) break;
    expected.push_back(k * k);
  }
  std::sort(expected.begin(), expected.end());
  Outcome o;
  if (s.pairs.empty() || s.pairs[0].lambda != 0.0 || s.pairs[0].multiplicity != 2) o.passed = false;
  if (s.pairs.size() != expected.size() + 1) {
    o.passed = false;
    o.detail = "found " + std::to_string(s.pairs.size()) + " pairs, expected " + std::to_string(expected.size() + 1);
    return o;
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < expected.size(); ++i) {
    worst = std::max(worst, std::abs(s.pairs[i + 1].lambda - expected[i]) / expected[i]);
    if (s.pairs[i + 1].multiplicity != 1) o.passed = false;
  }
  o.passed = o.passed && worst <= 1e-8;
  o.detail = "(0,2) plus " + std::to_string(expected.size()) + " simple eigenvalues, max rel err " + sci(worst) +
             " vs bisection roots";
  return o;
}

Outcome loop_krein() {
  const Spectrum k = eigenvalues(fixture::loop(), ConditionSpec::krein(), 500.0);
  const Spectrum s = eigenvalues(fixture::loop(), ConditionSpec::standard(), 500.0);
  Outcome o;
  o.passed = k.pairs.size() == s.pairs.size() && k.kernel_dimension() == 1;
  double gap = 0.0, closed = 0.0;
  for (std::size_t i = 0; o.passed && i < k.pairs.size(); ++i) {
    gap = std::max(gap, std::abs(k.pairs[i].lambda - s.pairs[i].lambda));
    o.passed = o.passed && k.pairs[i].multiplicity == s.pairs[i].multiplicity;
    if (i > 0) {
      closed = std::max(closed, rel(k.pairs[i].lambda, 4.0 * i * i * pi * pi));
      o.passed = o.passed && k.pairs[i].multiplicity == 2;
    }
  }
  o.passed = o.passed && gap <= 1e-10 && closed <= 1e-10 && k.pairs.size() == 4;
  o.detail = std::to_string(k.pairs.size()) + " pairs, krein vs standard max gap " + sci(gap) + ", vs (2j pi)^2 " +
             sci(closed);
  return o;
}

Outcome path_krein() {
  const auto pos = eigenvalues(fixture::path2(), ConditionSpec::krein(), 60.0).positive();
  Outcome o;
  if (pos.size() < 2) return {false, "fewer than two positive eigenvalues"};
  const double k1 = std::sqrt(pos[0]), k2 = std::sqrt(pos[1]);
  const double p1 = std::abs(oracle::path_polynomial(k1)), p2 = std::abs(oracle::path_polynomial(k2));
  const double second = rel(pos[1], 4 * pi * pi);
  o.passed = k1 >= 4.43 && k1 <= 4.57 && second <= 1e-8 && p1 < 1e-6 && p2 < 1e-6;
  o.detail = "kappa1 = " + format_real(k1) + ", lambda2 rel err " + sci(second) + ", polynomial residuals " + sci(p1) +
             ", " + sci(p2);
  return o;
}

Outcome kernels() {
  std::mt19937_64 rng(401);
  Outcome o;
  int checked = 0;
  for (int t = 0; t < 20; ++t) {
    const MetricGraph g = random_free(rng);
    std::vector<std::string> b;
    for (const auto& v : g.vertices())
      if (rng() % 2 == 0) b.push_back(v);
    if (b.empty()) b.push_back(g.vertices().back());
    const bool ok = kernel_dimension(g, ConditionSpec::krein()) == static_cast<int>(g.vertex_count()) &&
                    kernel_dimension(g, ConditionSpec::krein_subset(b)) == static_cast<int>(b.size()) &&
                    kernel_dimension(g, ConditionSpec::standard()) == 1 &&
                    kernel_dimension(g, ConditionSpec::dirichlet()) == 0;
    o.passed = o.passed && ok;
    checked += 4;
  }
  o.detail = std::to_string(checked) + " kernel dimensions on 20 graphs";
  return o;
}

Outcome resolvent_ranks() {
  std::mt19937_64 rng(501);
  Outcome o;
  int mismatches = 0;
  for (int t = 0; t < 10; ++t) {
    const MetricGraph g = random_free(rng);
    const MetricGraph gq = with_random_potential(g, rng);
    const int v = static_cast<int>(g.vertex_count());
    const int n = 2 * v + 4;
    const ConditionSpec k = ConditionSpec::krein(), d = ConditionSpec::dirichlet(), s = ConditionSpec::standard();
    mismatches += resolvent_difference_rank(g, k, d, -1.0, n, t) != v;
    mismatches += resolvent_difference_rank(g, k, s, -1.0, n, t) != v - 1;
    mismatches += resolvent_difference_rank(gq, k, d, -1.0, n, t) != v;
    mismatches += resolvent_difference_rank(gq, k, s, -1.0, n, t) != v;
  }
  o.passed = mismatches == 0;
  o.detail = std::to_string(mismatches) + " mismatches in 40 ranks on 10 graphs";
  return o;
}

Outcome krein_formula() {
  std::uint64_t state = 601;
  double worst = 0.0;
  for (const MetricGraph& g : {fixture::interval(), fixture::loop(), fixture::star3()})
    for (int p = 0; p < 5; ++p) {
      const EdgewiseFunction f = random_probe(g, state);
      worst = std::max(worst, l2_distance(g, apply_resolvent(g, ConditionSpec::krein(), -1.0, f),
                                          krein_resolvent_via_formula(g, -1.0, f)));
    }
  return {worst <= 1e-8, "max L2 gap " + sci(worst) + " over 15 solves"};
}

Outcome counting() {
  std::mt19937_64 rng(701);
  std::uniform_real_distribution<double> u(0.0, 400.0);
  int violations = 0, samples = 0;
  for (int t = 0; t < 20; ++t) {
    const MetricGraph g = random_free(rng);
    const int v = static_cast<int>(g.vertex_count());
    const Spectrum k = eigenvalues(g, ConditionSpec::krein(), 400.0);
    const Spectrum d = eigenvalues(g, ConditionSpec::dirichlet(), 400.0);
    const Spectrum s = eigenvalues(g, ConditionSpec::standard(), 400.0);
    for (int p = 0; p < 50; ++p) {
      const double lam = u(rng);
      const int nk = count_eigenvalues(k, lam), nd = count_eigenvalues(d, lam), ns = count_eigenvalues(s, lam);
      const auto [lower, upper] = weyl_bounds(g, lam);
      violations += !(nd <= nk && nk <= nd + v);
      violations += !(ns <= nk && nk <= ns + v - 1);
      violations += !(lower <= nk && nk <= upper);
      ++samples;
    }
  }
  return {violations == 0, std::to_string(violations) + " violations at " + std::to_string(samples) +
                               " samples (Dirichlet, standard and Weyl sandwiches)"};
}

Outcome surgery() {
  Outcome o;
  double worst = 0.0;
  for (const std::string name : {"gluing", "degree2", "glue-points", "lengthen", "attach", "insert-edge", "boundary"}) {
    SuiteOptions options;
    options.trials = 50;
    options.seed = 801;
    options.j_max = 8;
    const auto report = run_suite(name, options);
    o.passed = o.passed && report["passed"].get<bool>();
    worst = std::max(worst, report["max_violation"].get<double>());
  }
  const MetricGraph interval = fixture::interval();
  const Spectrum before = eigenvalues(interval, ConditionSpec::krein(), 1200.0);
  const Spectrum after = eigenvalues(glue_vertices(interval, {"a", "b"}).graph, ConditionSpec::krein(), 1200.0);
  const auto p = before.positive(), q = after.positive();
  double table = 0.0;
  if (p.size() < 8 || q.size() < 8) return {false, "interval or loop spectrum too short"};
  for (int j = 0; j < 4; ++j) {
    const double two = 4.0 * (j + 1) * (j + 1) * pi * pi;
    const double eta = oracle::interval_krein_kappa(j + 1);
    table =
        std::max({table, rel(p[2 * j], two), rel(p[2 * j + 1], eta * eta), rel(q[2 * j], two), rel(q[2 * j + 1], two)});
  }
  InterlacingParams params;
  params.k = 1;
  params.vertices = 2;
  const InterlacingReport r = verify_interlacing(before, after, Theorem::gluing, params, 8, 1e-8);
  o.passed = o.passed && worst <= 1e-8 && table <= 1e-9 && r.passed && before.kernel_dimension() == 2 &&
             after.kernel_dimension() == 1;
  o.detail = "7 suites x 50 trials, max violation " + sci(worst) + "; interval/loop tables rel err " + sci(table);
  return o;
}

Outcome isoperimetric() {
  SuiteOptions options;
  options.trials = 50;
  options.seed = 901;
  const auto report = run_suite("isoperimetric", options);
  int bound_checks = 0, equality = 0, potential = 0;
  double worst_named = 0.0;
  for (const auto& r : report["records"]) {
    const std::string name = r["name"];
    if (name.rfind("random q>0", 0) == 0)
      ++potential;
    else
      ++bound_checks;
    if (r["equality"].get<bool>()) ++equality;
    if (name == "interval" || name == "loop" || name == "equilateral 2-cycle" || name == "equilateral figure-8")
      worst_named = std::max(worst_named, std::abs(r["margin"].get<double>()));
  }
  return {report["passed"].get<bool>(),
          std::to_string(bound_checks) + " q=0 bound checks (" + std::to_string(equality) +
              " equalities, all in the class interval/loop/2-cycle/figure-8), named equality margin " +
              sci(worst_named) + ", " + std::to_string(potential) + " delta-loop dominance checks"};
}

Outcome variational() {
  Outcome o;
  std::mt19937_64 rng(1001);
  int property_failures = 0;
  for (int t = 0; t < 10; ++t) {
    RandomGraphOptions opts;
    opts.max_vertices = 4;
    opts.max_edges = 5;
    opts.with_potential = t % 2 == 1;
    const MetricGraph g = random_graph(rng, opts);
    const int j_max = 4;
    const auto exact =
        eigenvalues_count(g, ConditionSpec::krein(), j_max + static_cast<int>(g.vertex_count())).positive();
    std::vector<double> previous;
    for (int m = 4; m <= 12; ++m) {
      std::vector<double> u;
      try {
        u = rayleigh_ritz(g, m, j_max);
      } catch (const Error&) {
        continue;
      }
      for (int j = 0; j < j_max; ++j) {
        property_failures += u[j] < exact[j] - 1e-9;
        if (!previous.empty()) property_failures += u[j] > previous[j] + 1e-10;
      }
      previous = u;
    }
  }
  double worst = 0.0;
  for (const MetricGraph& g : {fixture::interval(), fixture::loop(), fixture::star3()}) {
    const auto exact = eigenvalues_count(g, ConditionSpec::krein(), 5 + static_cast<int>(g.vertex_count())).positive();
    const auto u = rayleigh_ritz(g, 40, 5);
    for (int j = 0; j < 5; ++j) worst = std::max(worst, (u[j] - exact[j]) / exact[j]);
  }
  const double m3 = rel(rayleigh_ritz(fixture::interval(), 3, 1)[0], 5 * pi * pi);
  o.passed = property_failures == 0 && worst <= 0.01 && m3 <= 1e-10;
  o.detail = std::to_string(property_failures) + " upper-bound/monotonicity failures; u_j(40) max rel excess " +
             sci(worst) + " (limit 0.01); M=3 vs 5 pi^2 rel err " + sci(m3);
  return o;
}

Outcome nevanlinna() {
  std::mt19937_64 rng(1101);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst = 0.0;
  for (int t = 0; t < 20; ++t) {
    RandomGraphOptions opts;
    opts.min_vertices = 1;
    opts.with_potential = t % 2 == 1;
    const MetricGraph g = random_graph(rng, opts);
    const double top = min_dirichlet_eigenvalue(g);
    for (int p = 0; p < 10; ++p) {
      double a = -20.0 + (top + 20.0) * 0.999 * u(rng);
      double b = -20.0 + (top + 20.0) * 0.999 * u(rng);
      if (a > b) std::swap(a, b);
      const Eigen::MatrixXd diff = weyl_matrix(g, b).entries - weyl_matrix(g, a).entries;
      const double low =
          Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(0.5 * (diff + diff.transpose())).eigenvalues().minCoeff();
      worst = std::min(worst, low);
    }
  }
  return {worst >= -1e-9, "smallest increment eigenvalue " + sci(worst) + " over 200 pairs"};
}

Outcome scaling() {
  std::mt19937_64 rng(1201);
  const double alpha = 1.7;
  double worst = 0.0;
  int compared = 0;
  for (int t = 0; t < 10; ++t) {
    RandomGraphOptions opts;
    opts.with_potential = t % 2 == 0;
    const MetricGraph g = random_graph(rng, opts);
    const MetricGraph h = scale_graph(g, alpha);
    for (const ConditionSpec& c : {ConditionSpec::krein(), ConditionSpec::standard(), ConditionSpec::dirichlet()}) {
      const auto x = eigenvalues(g, c, 200.0).expanded();
      const auto y = eigenvalues(h, c, 200.0 / (alpha * alpha)).expanded();
      if (x.size() != y.size()) return {false, "eigenvalue counts differ after scaling"};
      for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] == 0.0) continue;
        worst = std::max(worst, std::abs(y[i] * alpha * alpha - x[i]) / x[i]);
        ++compared;
      }
    }
  }
  return {worst <= 1e-9, std::to_string(compared) + " eigenvalues, max rel err " + sci(worst)};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance checks"};
  int only = 0;
  app.add_option("--only", only, "run a single criterion (1-12)")->check(CLI::Range(1, 12));
  CLI11_PARSE(app, argc, argv);

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"interval Krein spectrum", interval_krein},
      {"loop Krein equals standard", loop_krein},
      {"Krein path of two unit edges", path_krein},
      {"kernel dimensions", kernels},
      {"resolvent difference ranks", resolvent_ranks},
      {"Krein resolvent formula", krein_formula},
      {"counting sandwiches", counting},
      {"surgery interlacing suites", surgery},
      {"isoperimetric bound", isoperimetric},
      {"variational oracle", variational},
      {"Weyl matrix monotonicity", nevanlinna},
      {"scaling invariance", scaling},
  };
  bool all = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    if (only != 0 && static_cast<int>(i) + 1 != only) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("criterion %2zu %s: %s; %s [%.1fs]\n", i + 1, o.passed ? "PASS" : "FAIL", criteria[i].first.c_str(),
                o.detail.c_str(), seconds);
    all = all && o.passed;
  }
  return all ? 0 : 1;
}
