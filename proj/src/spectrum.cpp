#include "kreingraph/spectrum.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <boost/math/tools/toms748_solve.hpp>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <sstream>

#include "kreingraph/edge_solutions.hpp"
#include "kreingraph/error.hpp"
#include "kreingraph/io.hpp"
#include "kreingraph/secular.hpp"
#include "kreingraph/weyl_maps.hpp"

namespace kreingraph {

namespace {

constexpr double kRootTolerance = 1e-8;
constexpr double kGoldenTolerance = 1e-12;
constexpr double kDuplicateGap = 1e-9;
constexpr double kClusterWidth = 1e-10;
constexpr int kMaxHalvings = 4;

struct Root {
  double kappa = 0.0;
  int multiplicity = 0;
};

struct Bracket {
  double a = 0.0;
  double b = 0.0;
  double best = 0.0;
};

/// Golden-section search for the minimum of sigma_min on [a, b] until b - a < tolerance.
Bracket golden_section(const SecularSystem& system, double a, double b, double tolerance) {
  const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
  auto sigma = [&](double k) { return system.smallest_singular_value(k * k); };
  double x1 = b - ratio * (b - a);
  double x2 = a + ratio * (b - a);
  double f1 = sigma(x1);
  double f2 = sigma(x2);
  while (b - a > tolerance) {
    if (f1 < f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - ratio * (b - a);
      f1 = sigma(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + ratio * (b - a);
      f2 = sigma(x2);
    }
  }
  return {a, b, f1 < f2 ? x1 : x2};
}

/// Minimiser of sigma_min on [a, b]. Once the bracket is small, a sign change
/// of the determinant hands over to a bracketing root finder.
double refine_root(const SecularSystem& system, double a, double b) {
  const Bracket coarse = golden_section(system, a, b, 1e-5);
  auto det = [&](double k) { return system.determinant(k * k); };
  const double da = det(coarse.a);
  const double db = det(coarse.b);
  if (da * db < 0.0) {
    std::uintmax_t iterations = 100;
    const auto [lo, hi] = boost::math::tools::toms748_solve(
        det, coarse.a, coarse.b, da, db,
        [](double x, double y) {
          return std::abs(y - x) <= 4.0 * std::numeric_limits<double>::epsilon() * std::abs(y);
        },
        iterations);
    return 0.5 * (lo + hi);
  }
  return golden_section(system, coarse.a, coarse.b, kGoldenTolerance).best;
}

/// Number of singular values below the root threshold at kappa (0 when kappa is no root).
int root_multiplicity(const SecularSystem& system, double kappa) {
  const Eigen::VectorXd sv = system.singular_values(kappa * kappa);
  const double threshold = kRootTolerance * std::max(sv(0), 1.0);
  int multiplicity = 0;
  for (Eigen::Index j = 0; j < sv.size(); ++j)
    if (sv(j) < threshold) ++multiplicity;
  return multiplicity;
}

void add_root(std::vector<Root>& roots, Root root) {
  if (!roots.empty() && std::abs(root.kappa - roots.back().kappa) < kDuplicateGap) {
    roots.back().multiplicity = std::max(roots.back().multiplicity, root.multiplicity);
    return;
  }
  roots.push_back(root);
}

std::vector<Root> scan_roots(const SecularSystem& system, double kappa_end, double step) {
  const auto n = static_cast<int>(std::ceil(kappa_end / step));
  std::vector<double> sigma(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) sigma[static_cast<std::size_t>(i)] = system.smallest_singular_value(i * step * i * step);
  std::vector<Root> roots;
  for (int i = 1; i < n; ++i) {
    const auto u = static_cast<std::size_t>(i);
    if (sigma[u] > sigma[u - 1] || sigma[u] > sigma[u + 1]) continue;
    const double kappa = refine_root(system, (i - 1) * step, (i + 1) * step);
    if (kappa < 1e-7) continue;
    const int multiplicity = root_multiplicity(system, kappa);
    if (multiplicity > 0) add_root(roots, {kappa, multiplicity});
  }
  return roots;
}

double pole_distance(const MetricGraph& graph, double lambda) {
  double distance = 1.0;
  for (const auto& edge : graph.edges())
    distance = std::min(distance, dirichlet_pole_distance(edge, transfer_matrix(edge, lambda)));
  return distance;
}

/// Point of [center - radius, center + radius] farthest from eigenvalues and edge Dirichlet poles.
double safe_kappa(const SecularSystem& system, double center, double radius) {
  double best = center;
  double best_score = -1.0;
  for (int t = -6; t <= 6; ++t) {
    const double kappa = center + radius * t / 6.0;
    const double lambda = kappa * kappa;
    const Eigen::VectorXd sv = system.singular_values(lambda);
    const double score = std::min(sv(sv.size() - 1) / std::max(sv(0), 1.0), pole_distance(system.graph(), lambda));
    if (score > best_score) {
      best_score = score;
      best = kappa;
    }
  }
  return best;
}

int coupling_index(const MetricGraph& graph, const VertexCoupling& coupling, double lambda) {
  int count = 0;
  for (const auto& edge : graph.edges()) count += dirichlet_count(edge, lambda);
  if (coupling.dirichlet) return count;
  const Eigen::MatrixXd dtn = -weyl_matrix(graph, lambda).entries;
  Eigen::MatrixXd form = dtn - coupling.matrix;
  form = 0.5 * (form + form.transpose());
  const Eigen::VectorXd ev = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(form, Eigen::EigenvaluesOnly).eigenvalues();
  const double scale = std::max(1.0, ev.cwiseAbs().maxCoeff());
  for (Eigen::Index i = 0; i < ev.size(); ++i)
    if (ev(i) < -1e-12 * scale) ++count;
  return count;
}

int count_below(const SecularSystem& system, double kappa) {
  return coupling_index(system.graph(), system.coupling(), kappa * kappa);
}

/// Locates the count_b - count_a eigenvalues in [a, b) by bisecting on the exact count.
void resolve_cell(const SecularSystem& system, double a, int count_a, double b, int count_b, std::vector<Root>& out) {
  const int jump = count_b - count_a;
  if (jump <= 0) return;
  const double kappa = refine_root(system, a, b);
  const int multiplicity = root_multiplicity(system, kappa);
  if (multiplicity == jump) {
    out.push_back({kappa, multiplicity});
    return;
  }
  if (b - a < kClusterWidth) {
    out.push_back({kappa, jump});
    return;
  }
  const double mid = safe_kappa(system, 0.5 * (a + b), (b - a) / 8.0);
  const int count_mid = count_below(system, mid);
  resolve_cell(system, a, count_a, mid, count_mid, out);
  resolve_cell(system, mid, count_mid, b, count_b, out);
}

/// Bisects over the grid for cells whose exact count exceeds the roots found
/// there and re-resolves those cells. kappa_c with count_c closes the range.
std::vector<Root> repair_roots(const SecularSystem& system, std::vector<Root> roots, int kernel, double step,
                               double kappa_c, int count_c) {
  const auto n = static_cast<int>(std::floor(kappa_c / step));
  std::vector<double> bounds(static_cast<std::size_t>(n) + 2, -1.0);
  std::vector<int> counts(bounds.size(), -1);
  bounds.back() = kappa_c;
  counts.back() = count_c;
  auto bound = [&](int i) {
    const auto u = static_cast<std::size_t>(i);
    if (bounds[u] < 0.0)
      bounds[u] = i == 0 ? safe_kappa(system, 0.01 * step, 0.005 * step) : safe_kappa(system, i * step, 0.25 * step);
    return bounds[u];
  };
  auto count = [&](int i) {
    const auto u = static_cast<std::size_t>(i);
    if (counts[u] < 0) counts[u] = count_below(system, bound(i));
    return counts[u];
  };
  auto deficit = [&](int i) {
    int found = kernel;
    for (const auto& r : roots)
      if (r.kappa < bound(i)) found += r.multiplicity;
    return count(i) - found;
  };
  const int last = n + 1;
  if (count(0) != kernel) return roots;
  for (int guard = 0; guard < 64 && deficit(last) > 0; ++guard) {
    int lo = 0;
    int hi = last;
    while (hi - lo > 1) {
      const int mid = (lo + hi) / 2;
      (deficit(mid) > 0 ? hi : lo) = mid;
    }
    const double a = bound(lo);
    const double b = bound(hi);
    std::vector<Root> kept;
    for (const auto& r : roots)
      if (r.kappa < a || r.kappa >= b) kept.push_back(r);
    std::vector<Root> cell;
    resolve_cell(system, a, count(lo), b, count(hi), cell);
    kept.insert(kept.end(), cell.begin(), cell.end());
    std::sort(kept.begin(), kept.end(), [](const Root& x, const Root& y) { return x.kappa < y.kappa; });
    roots.clear();
    for (const auto& r : kept) add_root(roots, r);
  }
  return roots;
}

void check_nonnegative(const SecularSystem& system) {
  if (system.conditions().kind != ConditionSpec::Kind::custom) return;
  const int below = coupling_index(system.graph(), system.coupling(), -1e-6);
  if (below > 0)
    throw Error("NEGATIVE_SPECTRUM", "custom coupling yields " + std::to_string(below) + " negative eigenvalue(s)");
}
}  // namespace

std::vector<double> Spectrum::expanded() const {
  std::vector<double> out;
  for (const auto& p : pairs) out.insert(out.end(), static_cast<std::size_t>(p.multiplicity), p.lambda);
  return out;
}

std::vector<double> Spectrum::positive() const {
  std::vector<double> out;
  for (const auto& p : pairs)
    if (p.lambda > 0.0) out.insert(out.end(), static_cast<std::size_t>(p.multiplicity), p.lambda);
  return out;
}

int Spectrum::kernel_dimension() const {
  return !pairs.empty() && pairs.front().lambda == 0.0 ? pairs.front().multiplicity : 0;
}

int Spectrum::total() const {
  int n = 0;
  for (const auto& p : pairs) n += p.multiplicity;
  return n;
}

Spectrum eigenvalues(const MetricGraph& graph, const ConditionSpec& conditions, double lambda_max) {
  if (!(lambda_max > 0.0) || !std::isfinite(lambda_max))
    throw Error("BAD_ARGUMENT", "lambda_max must be positive and finite");
  const SecularSystem system(graph, conditions);
  check_nonnegative(system);
  const int kernel = system.kernel_dimension(0.0);
  const double kappa_max = std::sqrt(lambda_max);
  double step = std::numbers::pi / (8.0 * total_length(graph));
  int expected = 0;
  int found = 0;
  for (int attempt = 0; attempt <= kMaxHalvings; ++attempt, step /= 2.0) {
    const double kappa_end = kappa_max + 2.0 * step;
    std::vector<Root> roots = scan_roots(system, kappa_end, step);
    const double kappa_c = safe_kappa(system, kappa_max + 0.625 * step, 0.375 * step);
    const double lambda_c = kappa_c * kappa_c;
    expected = coupling_index(graph, system.coupling(), lambda_c);
    auto count_found = [&] {
      int n = kernel;
      for (const auto& r : roots)
        if (r.kappa < kappa_c) n += r.multiplicity;
      return n;
    };
    found = count_found();
    if (found != expected) {
      roots = repair_roots(system, std::move(roots), kernel, step, kappa_c, expected);
      found = count_found();
    }
    if (found != expected) continue;
    Spectrum spectrum;
    spectrum.condition = conditions;
    spectrum.certified_up_to = lambda_c;
    if (kernel > 0) spectrum.pairs.push_back({0.0, kernel});
    for (const auto& r : roots)
      if (r.kappa * r.kappa <= lambda_max + 1e-9 * std::max(1.0, lambda_max))
        spectrum.pairs.push_back({r.kappa * r.kappa, r.multiplicity});
    return spectrum;
  }
  throw Error("SCAN_INCOMPLETE", "root scan found " + std::to_string(found) + " eigenvalues where the count is " +
                                     std::to_string(expected));
}

double lambda_max_for_count(const MetricGraph& graph, int n) {
  const double k =
      std::numbers::pi * (n + static_cast<double>(graph.edge_count() + graph.vertex_count())) / total_length(graph);
  return k * k + max_potential(graph);
}

Spectrum eigenvalues_count(const MetricGraph& graph, const ConditionSpec& conditions, int n) {
  return eigenvalues(graph, conditions, lambda_max_for_count(graph, std::max(n, 1)));
}

int kernel_dimension(const MetricGraph& graph, const ConditionSpec& conditions) {
  return SecularSystem(graph, conditions).kernel_dimension(0.0);
}

int count_eigenvalues(const Spectrum& spectrum, double lambda) {
  const double limit = lambda + 1e-9 * std::max(1.0, std::abs(lambda));
  int n = 0;
  for (const auto& p : spectrum.pairs)
    if (p.lambda <= limit) n += p.multiplicity;
  return n;
}

int counting_function(const MetricGraph& graph, const ConditionSpec& conditions, double lambda) {
  if (lambda < 0.0) {
    check_nonnegative(SecularSystem(graph, conditions));
    return 0;
  }
  return count_eigenvalues(eigenvalues(graph, conditions, std::max(lambda, 1.0)), lambda);
}

int index_count(const MetricGraph& graph, const ConditionSpec& conditions, double lambda) {
  return coupling_index(graph, resolve_coupling(graph, conditions), lambda);
}

std::pair<double, double> weyl_bounds(const MetricGraph& graph, double lambda) {
  if (!graph.potential_free()) throw Error("POTENTIAL_NOT_ZERO", "Weyl bounds require q == 0");
  const double x = total_length(graph) * std::sqrt(std::max(lambda, 0.0)) / std::numbers::pi;
  return {x - static_cast<double>(graph.edge_count()), x + static_cast<double>(graph.vertex_count())};
}

std::string spectrum_csv(const Spectrum& spectrum) {
  std::ostringstream out;
  out << "lambda,multiplicity\n";
  for (const auto& p : spectrum.pairs) out << format_real(p.lambda) << ',' << p.multiplicity << '\n';
  return out.str();
}

}  // namespace kreingraph
