#include <cmath>
#include <random>

#include "doctest.h"

#include "bosonmf/hartree.hpp"
#include "oracles.hpp"

using namespace bosonmf;

namespace {

double max_diff(const PhasePoint& a, const std::vector<Complex>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < b.size(); ++i) m = std::max(m, std::abs(a.z[i] - b[i]));
  return m;
}

PhasePoint random_point(int k, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return PhasePoint(bosonmf_test::random_unit(k, rng));
}

}  // namespace

TEST_CASE("tableau coefficients") {
  const auto g = ButcherTableau::gauss2();
  CHECK(g.stages == 2);
  CHECK_FALSE(g.is_explicit());
  CHECK(g.a(0, 0) == doctest::Approx(0.25));
  CHECK(g.a(0, 1) == doctest::Approx(0.25 - std::sqrt(3.0) / 6));
  CHECK(g.a(1, 0) == doctest::Approx(0.25 + std::sqrt(3.0) / 6));
  CHECK(g.b.sum() == doctest::Approx(1.0));
  for (const auto& t : {ButcherTableau::classical_rk4(), ButcherTableau::three_eighths()}) {
    CHECK(t.is_explicit());
    CHECK(t.b.sum() == doctest::Approx(1.0));
    for (int i = 0; i < t.stages; ++i) CHECK(t.a.row(i).sum() == doctest::Approx(t.c(i)));
  }
  CHECK(ButcherTableau::by_name("rk38").name == "rk38");
  CHECK_THROWS(ButcherTableau::by_name("euler"));
}

TEST_CASE("free flow matches the circulant solution") {
  const int k = 5;
  const auto z0 = random_point(k, 1);
  const auto traj = solve_hartree(z0, 1.0, 100, ButcherTableau::gauss2(), PotentialTable::zero(k));
  CHECK(max_diff(traj.points.back(), bosonmf_test::free_hartree_exact(z0.z, 1.0)) < 1e-8);
  CHECK(traj.points.size() == 101);
  CHECK(traj.times.back() == doctest::Approx(1.0));
}

TEST_CASE("norm and energy are conserved by the Gauss method") {
  const int k = 6;
  const auto v = build_potential(k);
  const auto z0 = random_point(k, 2);
  const auto traj = solve_hartree(z0, 1.0, 100, ButcherTableau::gauss2(), v);
  const double e0 = hartree_energy(z0, v);
  for (const auto& p : traj.points) {
    CHECK(std::abs(p.norm() - 1.0) < 1e-10);
    CHECK(std::abs(hartree_energy(p, v) - e0) < 1e-8);
  }
}

TEST_CASE("analytic Jacobian matches central differences") {
  const int k = 5;
  const auto v = build_potential(k);
  const Eigen::VectorXd x = random_point(k, 3).to_real() * 1.3;
  const Eigen::MatrixXd jac = hartree_jacobian(x, v);
  const double h = 1e-6;
  for (int c = 0; c < 2 * k; ++c) {
    Eigen::VectorXd xp = x, xm = x;
    xp(c) += h;
    xm(c) -= h;
    const Eigen::VectorXd fd = (hartree_rhs_real(xp, v) - hartree_rhs_real(xm, v)) / (2 * h);
    CHECK((fd - jac.col(c)).cwiseAbs().maxCoeff() < 1e-7);
  }
}

TEST_CASE("complex and real vector fields agree") {
  const int k = 4;
  const auto v = build_potential(k);
  const auto z = random_point(k, 4);
  const auto f = hartree_rhs(z, v).to_real();
  CHECK((f - hartree_rhs_real(z.to_real(), v)).cwiseAbs().maxCoeff() < 1e-15);
  CHECK((PhasePoint::from_real(z.to_real()).to_real() - z.to_real()).norm() == 0.0);
}

TEST_CASE("flow commutes with a global phase") {
  const int k = 5;
  const auto v = build_potential(k);
  const auto z0 = random_point(k, 5);
  const Complex g = std::polar(1.0, 0.83);
  PhasePoint w0 = z0;
  for (auto& x : w0.z) x *= g;
  const auto a = solve_hartree(z0, 1.0, 50, ButcherTableau::gauss2(), v).points.back();
  const auto b = solve_hartree(w0, 1.0, 50, ButcherTableau::gauss2(), v).points.back();
  std::vector<Complex> rotated(a.z);
  for (auto& x : rotated) x *= g;
  CHECK(max_diff(b, rotated) < 1e-12);
}

TEST_CASE("all tableaus converge with order four") {
  const int k = 5;
  const auto v = build_potential(k);
  auto z0 = random_point(k, 6);
  for (auto& x : z0.z) x *= 2.0;
  const auto ref = solve_hartree(z0, 1.0, 4000, ButcherTableau::gauss2(), v).points.back();
  for (const auto& tab : {ButcherTableau::gauss2(), ButcherTableau::classical_rk4(), ButcherTableau::three_eighths()}) {
    CAPTURE(tab.name);
    const double e10 = max_diff(solve_hartree(z0, 1.0, 10, tab, v).points.back(), ref.z);
    const double e20 = max_diff(solve_hartree(z0, 1.0, 20, tab, v).points.back(), ref.z);
    const double e40 = max_diff(solve_hartree(z0, 1.0, 40, tab, v).points.back(), ref.z);
    CHECK(std::log2(e10 / e20) == doctest::Approx(4.0).epsilon(0.08));
    CHECK(std::log2(e20 / e40) == doctest::Approx(4.0).epsilon(0.08));
  }
}

TEST_CASE("Newton reports its iterations and failures") {
  const int k = 4;
  const auto v = build_potential(k);
  const auto z0 = random_point(k, 7);
  StepStats stats;
  gauss_rk_step(z0, 0.01, ButcherTableau::gauss2(), v, {}, &stats);
  CHECK(stats.newton_iterations >= 1);
  CHECK(stats.residual <= 1e-12);
  NewtonOptions strict;
  strict.max_iterations = 1;
  strict.tolerance = 1e-300;
  CHECK_THROWS_AS(gauss_rk_step(z0, 0.5, ButcherTableau::gauss2(), v, strict), NewtonError);
}
