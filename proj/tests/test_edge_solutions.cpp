#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "kreingraph/edge_solutions.hpp"
#include "kreingraph/error.hpp"
#include "kreingraph/random_graphs.hpp"
#include "oracles.hpp"

using namespace kreingraph;
using std::numbers::pi;

namespace {

Edge plain(double length, PiecewisePotential q = {}) { return Edge{"e", "a", "b", length, std::move(q)}; }

}  // namespace

TEST_CASE("transfer matrix closed forms") {
  const EdgeBasis b = transfer_matrix(plain(pi), 1.0);
  CHECK(b.c_end == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(std::abs(b.s_end) < 1e-12);
  CHECK(std::abs(b.dc_end) < 1e-12);
  CHECK(b.ds_end == doctest::Approx(-1.0).epsilon(1e-12));

  const EdgeBasis z = transfer_matrix(plain(2.3), 0.0);
  CHECK(z.c_end == 1.0);
  CHECK(z.s_end == doctest::Approx(2.3));
  CHECK(z.dc_end == 0.0);
  CHECK(z.ds_end == 1.0);

  const EdgeBasis w = transfer_matrix(plain(1.0, {{{1.0, 4.0}}}), 4.0);
  CHECK(w.c_end == doctest::Approx(1.0));
  CHECK(w.s_end == doctest::Approx(1.0));
  CHECK(std::abs(w.dc_end) < 1e-14);
  CHECK(w.ds_end == doctest::Approx(1.0));

  const double k = 3.7, l = 0.83;
  const EdgeBasis t = transfer_matrix(plain(l), k * k);
  CHECK(std::abs(t.c_end - std::cos(k * l)) < 1e-12);
  CHECK(std::abs(t.s_end - std::sin(k * l) / k) < 1e-12);
}

TEST_CASE("Wronskian is one on random edges") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> length(0.1, 3.0), lambda(-50.0, 400.0);
  double worst = 0.0;
  for (int t = 0; t < 1000; ++t) {
    const double l = length(rng);
    const Edge e = plain(l, random_potential(rng, l, 10.0));
    const double lam = lambda(rng);
    const EdgeBasis b = transfer_matrix(e, lam);
    const double scale = std::max({1.0, std::abs(b.c_end * b.ds_end), std::abs(b.s_end * b.dc_end)});
    worst = std::max(worst, std::abs(b.wronskian() - 1.0) / scale);
    const Eigen::Matrix2d phi = fundamental_matrix(e, lam, 0.0);
    worst = std::max(worst, std::abs(phi.determinant() - 1.0));
  }
  CHECK(worst < 1e-10);
}

TEST_CASE("agreement with an RK4 oracle on random piecewise potentials") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> length(0.3, 2.0), lambda(-10.0, 60.0);
  double worst = 0.0;
  for (int t = 0; t < 40; ++t) {
    const double l = length(rng);
    const Edge e = plain(l, random_potential(rng, l, 5.0));
    const double lam = lambda(rng);
    const EdgeBasis b = transfer_matrix(e, lam);
    const auto y = oracle::rk4_basis(e, lam, 10000);
    worst = std::max({worst, std::abs(b.c_end - y[0]), std::abs(b.s_end - y[1]), std::abs(b.dc_end - y[2]),
                      std::abs(b.ds_end - y[3])});
  }
  CHECK(worst < 1e-6);
}

TEST_CASE("continuity across the zero-frequency branch") {
  const Edge e = plain(1.3, {{{0.4, 2.0}, {0.9, 5.0}}});
  for (double q : {2.0, 5.0}) {
    const EdgeBasis lo = transfer_matrix(e, q - 1e-9);
    const EdgeBasis hi = transfer_matrix(e, q + 1e-9);
    const EdgeBasis mid = transfer_matrix(e, q);
    for (const EdgeBasis* other : {&hi, &mid}) {
      CHECK(std::abs(lo.c_end - other->c_end) < 1e-7);
      CHECK(std::abs(lo.s_end - other->s_end) < 1e-7);
      CHECK(std::abs(lo.dc_end - other->dc_end) < 1e-7);
      CHECK(std::abs(lo.ds_end - other->ds_end) < 1e-7);
    }
  }
  const Eigen::Matrix2d a = piece_propagator(0.7, 1e-14);
  const Eigen::Matrix2d b = piece_propagator(0.7, -1e-14);
  CHECK((a - b).norm() < 1e-13);
  CHECK(a(0, 1) == doctest::Approx(0.7));
}

TEST_CASE("edge DtN block") {
  const Eigen::Matrix2d z = edge_dtn_block(plain(2.0), 0.0);
  CHECK(z(0, 0) == doctest::Approx(0.5));
  CHECK(z(0, 1) == doctest::Approx(-0.5));
  CHECK(z(1, 1) == doctest::Approx(0.5));

  const Eigen::Matrix2d h = edge_dtn_block(plain(1.0), pi * pi / 4.0);
  CHECK(std::abs(h(0, 0)) < 1e-12);
  CHECK(h(0, 1) == doctest::Approx(-pi / 2.0));
  CHECK(h(1, 0) == doctest::Approx(-pi / 2.0));

  try {
    edge_dtn_block(plain(1.0), pi * pi);
    FAIL("pole not detected");
  } catch (const Error& e) {
    CHECK(e.code() == "EDGE_DIRICHLET_POLE");
  }

  const Eigen::Matrix2d c = edge_dtn_block(plain(1.0, {{{1.0, 1.0}}}), 0.0);
  CHECK(c(0, 0) == doctest::Approx(std::cosh(1.0) / std::sinh(1.0)));
  CHECK(c(0, 1) == doctest::Approx(-1.0 / std::sinh(1.0)));
}

TEST_CASE("DtN block is symmetric and maps end values to toward-vertex derivatives") {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> lambda(-5.0, 80.0), value(-1.0, 1.0);
  for (int t = 0; t < 100; ++t) {
    const Edge e = plain(1.1, random_potential(rng, 1.1, 4.0));
    const double lam = lambda(rng);
    const EdgeBasis b = transfer_matrix(e, lam);
    if (dirichlet_pole_distance(e, b) < 1e-6) continue;
    const Eigen::Matrix2d m = edge_dtn_block(e, lam);
    CHECK(std::abs(m(0, 1) - m(1, 0)) < 1e-10 * std::max(1.0, m.norm()));
    const double a0 = value(rng), b0 = value(rng);
    const double f0 = a0, f1 = a0 * b.c_end + b0 * b.s_end;
    const double d0 = -b0, d1 = a0 * b.dc_end + b0 * b.ds_end;
    const Eigen::Vector2d r = m * Eigen::Vector2d(f0, f1);
    CHECK(std::abs(r(0) - d0) < 1e-8 * std::max(1.0, m.norm()));
    CHECK(std::abs(r(1) - d1) < 1e-8 * std::max(1.0, m.norm()));
  }
}

TEST_CASE("edge Dirichlet counting") {
  CHECK(dirichlet_count(plain(1.0), 0.5 * pi * pi) == 0);
  CHECK(dirichlet_count(plain(1.0), 1.01 * pi * pi) == 1);
  CHECK(dirichlet_count(plain(1.0), 9.5 * pi * pi) == 3);
  CHECK(dirichlet_count(plain(1.0, {{{1.0, 3.0}}}), pi * pi + 2.9) == 0);
  CHECK(dirichlet_count(plain(1.0, {{{1.0, 3.0}}}), pi * pi + 3.1) == 1);
}

TEST_CASE("particular solutions") {
  const ParticularSolution zero(plain(1.0), 2.0, {0.0});
  CHECK(zero.at(0.6).norm() == 0.0);

  const ParticularSolution p(plain(1.0), 0.0, {1.0});
  CHECK(p.at(1.0)(0) == doctest::Approx(-0.5));
  CHECK(p.at(1.0)(1) == doctest::Approx(-1.0));

  const ParticularSolution m(plain(1.0), -1.0, {1.0});
  CHECK(m.at(1.0)(0) == doctest::Approx(1.0 - std::cosh(1.0)).epsilon(1e-12));
  CHECK(m.at(0.3)(1) == doctest::Approx(-std::sinh(0.3)).epsilon(1e-12));

  const ParticularSolution cubic(plain(2.0), 0.0, {0.0, 1.0});
  CHECK(cubic.at(1.5)(0) == doctest::Approx(-1.5 * 1.5 * 1.5 / 6.0).epsilon(1e-12));

  const ParticularSolution split(plain(1.0, {{{0.3, 1.0}, {0.7, 2.0}}}), 0.5, {1.0});
  const auto bp = split.breakpoints();
  CHECK(bp.front() == 0.0);
  CHECK(bp.back() == doctest::Approx(1.0));
  bool has_piece_boundary = false;
  for (double x : bp) has_piece_boundary = has_piece_boundary || std::abs(x - 0.3) < 1e-14;
  CHECK(has_piece_boundary);
}

TEST_CASE("particular solution satisfies the equation") {
  const Edge e = plain(1.4, {{{0.5, 2.0}, {0.9, 0.5}}});
  const double lam = 3.0;
  const ParticularSolution p(e, lam, {0.3, -1.0, 0.5, 0.2});
  const double h = 1e-4;
  for (double x : {0.2, 0.45, 0.8, 1.2}) {
    const double q = x < 0.5 ? 2.0 : 0.5;
    const double u = p.at(x)(0);
    const double upp = (p.at(x + h)(1) - p.at(x - h)(1)) / (2 * h);
    const double f = 0.3 - x + 0.5 * x * x + 0.2 * x * x * x;
    CHECK(std::abs(-upp + (q - lam) * u - f) < 1e-6);
  }
}
