#include <Eigen/Eigenvalues>
#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "kreingraph/error.hpp"
#include "kreingraph/random_graphs.hpp"
#include "kreingraph/weyl_maps.hpp"

using namespace kreingraph;
using std::numbers::pi;

namespace {

double min_eigenvalue(const Eigen::MatrixXd& m) {
  return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(0.5 * (m + m.transpose())).eigenvalues().minCoeff();
}

}  // namespace

TEST_CASE("discrete Laplacian examples") {
  const Eigen::MatrixXd i = discrete_laplacian(fixture::interval(2.0));
  CHECK(i(0, 0) == 0.5);
  CHECK(i(0, 1) == -0.5);
  CHECK(i(1, 1) == 0.5);

  const Eigen::MatrixXd l = discrete_laplacian(fixture::loop(1.0));
  CHECK(l.rows() == 1);
  CHECK(l(0, 0) == 0.0);

  const double a = 0.7, b = 1.9;
  const Eigen::MatrixXd c = discrete_laplacian(fixture::two_cycle(a, b));
  CHECK(c(0, 0) == doctest::Approx(1 / a + 1 / b));
  CHECK(c(0, 1) == doctest::Approx(-1 / a - 1 / b));
}

TEST_CASE("Laplacian structure on random graphs") {
  std::mt19937_64 rng(21);
  for (int t = 0; t < 100; ++t) {
    RandomGraphOptions o;
    o.min_vertices = 1;
    const MetricGraph g = random_graph(rng, o);
    const Eigen::MatrixXd L = discrete_laplacian(g);
    CHECK(L.rowwise().sum().cwiseAbs().maxCoeff() < 1e-12);
    CHECK(min_eigenvalue(L) > -1e-12);
    CHECK((dtn_zero(g) - L).cwiseAbs().maxCoeff() < 1e-12);
    const WeylMatrix m = weyl_matrix(g, 0.0);
    CHECK((m.entries + L).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(m.vertex_order == g.vertices());
    int kernel = 0;
    const auto ev = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(L).eigenvalues();
    for (int i = 0; i < ev.size(); ++i) kernel += std::abs(ev(i)) < 1e-10;
    CHECK(kernel == 1);
  }
}

TEST_CASE("Weyl matrix examples") {
  const WeylMatrix m = weyl_matrix(fixture::interval(), pi * pi / 4.0);
  CHECK(std::abs(m.entries(0, 0)) < 1e-12);
  CHECK(m.entries(0, 1) == doctest::Approx(pi / 2.0));

  const double k = 2.3;
  const WeylMatrix l = weyl_matrix(fixture::loop(), k * k);
  CHECK(l.entries(0, 0) == doctest::Approx(2 * k * std::tan(k / 2)).epsilon(1e-12));

  try {
    weyl_matrix(fixture::path2(1.0, 2.0), pi * pi);
    FAIL("pole not detected");
  } catch (const Error& e) {
    CHECK(e.code() == "DIRICHLET_POLE");
  }
}

TEST_CASE("DtN at zero with a potential") {
  const MetricGraph g = fixture::interval(1.0, {{{1.0, 1.0}}});
  const Eigen::MatrixXd d = dtn_zero(g);
  CHECK(d(0, 0) == doctest::Approx(std::cosh(1.0) / std::sinh(1.0)));
  CHECK(d(0, 1) == doctest::Approx(-1.0 / std::sinh(1.0)));

  std::mt19937_64 rng(4);
  for (int t = 0; t < 30; ++t) {
    RandomGraphOptions o;
    o.min_vertices = 1;
    o.with_potential = true;
    const MetricGraph h = random_graph(rng, o);
    const Eigen::MatrixXd lam = dtn_zero(h);
    CHECK((lam - lam.transpose()).cwiseAbs().maxCoeff() < 1e-10);
    CHECK(min_eigenvalue(lam) > 1e-12);
    const Eigen::VectorXd phi = Eigen::VectorXd::Random(lam.rows());
    CHECK(phi.dot(lam * phi) >= 0.0);
  }
}

TEST_CASE("Weyl matrix is increasing below the Dirichlet spectrum") {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int t = 0; t < 20; ++t) {
    RandomGraphOptions o;
    o.min_vertices = 1;
    o.with_potential = t % 2 == 0;
    const MetricGraph g = random_graph(rng, o);
    const double top = min_dirichlet_eigenvalue(g);
    for (int p = 0; p < 10; ++p) {
      double a = -20.0 + (top + 20.0) * u(rng) * 0.999;
      double b = -20.0 + (top + 20.0) * u(rng) * 0.999;
      if (a > b) std::swap(a, b);
      const WeylMatrix ma = weyl_matrix(g, a), mb = weyl_matrix(g, b);
      CHECK((ma.entries - ma.entries.transpose()).cwiseAbs().maxCoeff() < 1e-10);
      CHECK(min_eigenvalue(mb.entries - ma.entries) > -1e-9);
    }
  }
}

TEST_CASE("Schur complement onto a boundary set") {
  const MetricGraph star = fixture::star3();
  const Eigen::MatrixXd s = schur_boundary(star, dtn_zero(star), {"x", "y", "z"});
  Eigen::MatrixXd expected = Eigen::MatrixXd::Identity(3, 3) - Eigen::MatrixXd::Constant(3, 3, 1.0 / 3.0);
  CHECK((s - expected).cwiseAbs().maxCoeff() < 1e-12);

  const Eigen::MatrixXd full = schur_boundary(star, dtn_zero(star), {"c", "x", "y", "z"});
  CHECK((full - dtn_zero(star)).cwiseAbs().maxCoeff() == 0.0);

  std::mt19937_64 rng(13);
  for (int t = 0; t < 30; ++t) {
    const MetricGraph g = random_graph(rng);
    std::vector<std::size_t> boundary;
    for (std::size_t i = 0; i < g.vertex_count(); i += 2) boundary.push_back(i);
    const Eigen::MatrixXd b = schur_boundary(dtn_zero(g), boundary);
    CHECK(b.rowwise().sum().cwiseAbs().maxCoeff() < 1e-10);
    CHECK(min_eigenvalue(b) > -1e-10);
  }
}

TEST_CASE("singular interior block") {
  const MetricGraph g({"a", "b"}, {Edge{"e", "a", "b", 1.0, {}}, Edge{"f", "b", "b", 1.0, {}}});
  const Eigen::MatrixXd zero = Eigen::MatrixXd::Zero(2, 2);
  try {
    schur_boundary(zero, {0});
    FAIL("singular block accepted");
  } catch (const Error& e) {
    CHECK(e.code() == "SINGULAR_INTERIOR_BLOCK");
  }
  CHECK(min_dirichlet_eigenvalue(g) == doctest::Approx(pi * pi));
}
