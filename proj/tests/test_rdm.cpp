#include <cmath>
#include <fstream>
#include <random>

#include "doctest.h"

#include "bosonmf/linalg.hpp"
#include "bosonmf/rdm.hpp"
#include "oracles.hpp"

using namespace bosonmf;

namespace {

Eigen::MatrixXcd outer(const std::vector<Complex>& z) {
  Eigen::VectorXcd v(static_cast<Eigen::Index>(z.size()));
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = z[static_cast<std::size_t>(i)];
  return v * v.adjoint();
}

// One-particle basis is ordered e_K, ..., e_1; reorder site matrices to it.
Eigen::MatrixXcd site_to_rank(const Eigen::MatrixXcd& m) {
  const auto k = m.rows();
  Eigen::MatrixXcd out(k, k);
  for (Eigen::Index r = 0; r < k; ++r)
    for (Eigen::Index c = 0; c < k; ++c) out(r, c) = m(k - 1 - r, k - 1 - c);
  return out;
}

}  // namespace

TEST_CASE("reduced density matrices match the partial-trace oracle") {
  const int k = 3;
  const int n = 4;
  const SectorBasis basis(k, n);
  for (auto kind : {FamilyKind::Hermite, FamilyKind::Twin, FamilyKind::Wq, FamilyKind::PhiN}) {
    const auto psi = build_state(StateFamily::standard(kind, k), basis);
    for (int p = 1; p <= 2; ++p) {
      CAPTURE(to_string(kind));
      CAPTURE(p);
      const auto gamma = reduced_density_matrix(psi, basis, p, 1.0 / n);
      const auto oracle = bosonmf_test::partial_trace_rdm(psi, basis, p);
      CHECK(bosonmf_test::max_abs_diff(gamma.matrix, oracle) < 1e-10);
      CHECK(gamma.hermitian_defect() < 1e-12);
      CHECK(std::abs(gamma.trace() - 1.0) < 1e-12);
      for (double e : gamma.eigenvalues()) CHECK(e > -1e-12);
    }
  }
}

TEST_CASE("random states match the oracle") {
  std::mt19937_64 rng(21);
  for (int k = 2; k <= 4; ++k) {
    for (int n = 1; n <= 4; ++n) {
      const SectorBasis basis(k, n);
      const auto psi = bosonmf_test::random_state(basis, rng);
      for (int p = 1; p <= std::min(n, 3); ++p) {
        const auto gamma = reduced_density_matrix(psi, basis, p, 1.0 / n);
        CHECK(bosonmf_test::max_abs_diff(gamma.matrix, bosonmf_test::partial_trace_rdm(psi, basis, p)) < 1e-10);
      }
    }
  }
}

TEST_CASE("matrix elements agree with the Wick expectation") {
  std::mt19937_64 rng(22);
  const SectorBasis basis(3, 4);
  const auto psi = bosonmf_test::random_state(basis, rng);
  const double eps = 0.25;
  const int p = 2;
  const auto gamma = reduced_density_matrix(psi, basis, p, eps);
  const SectorBasis small(3, p);
  for (Index b = 0; b < small.size(); ++b) {
    for (Index a = 0; a < small.size(); ++a) {
      const auto alpha = small.at(a);
      const auto beta = small.at(b);
      const double scale = std::exp(log_factorial(p) - 0.5 * (alpha.log_factorial() + beta.log_factorial())) /
                           (eps * eps * 4.0 * 3.0);
      const Complex w = wick_expectation(psi, psi, basis, alpha, beta, eps);
      CHECK(std::abs(gamma.matrix(static_cast<Eigen::Index>(b), static_cast<Eigen::Index>(a)) - scale * w) < 1e-12);
    }
  }
}

TEST_CASE("Hermite states give the projector") {
  const auto fam = StateFamily::standard(FamilyKind::Hermite, 5);
  for (int n = 2; n <= 8; n += 3) {
    const SectorBasis basis(5, n);
    const auto psi = build_state(fam, basis);
    for (int p = 1; p <= 2; ++p) {
      const auto gamma = reduced_density_matrix(psi, basis, p, 1.0 / n);
      CHECK(bosonmf_test::max_abs_diff(gamma.matrix, projector_matrix(fam.psi1, p).matrix) < 1e-12);
    }
  }
  const auto g1 = projector_matrix(fam.psi1, 1);
  CHECK(bosonmf_test::max_abs_diff(g1.matrix, site_to_rank(outer(fam.psi1))) < 1e-15);
}

TEST_CASE("twin quadrature reproduces the circle average") {
  const int k = 4;
  const auto fam = StateFamily::standard(FamilyKind::Twin, k);
  const auto sample = wigner_sample(fam, 64);
  const auto gamma = asymptotic_rdm(sample, 1, 0.0, build_potential(k));
  const Eigen::MatrixXcd expected = site_to_rank(0.5 * (outer(fam.psi1) + outer(fam.psi2)));
  CHECK(bosonmf_test::max_abs_diff(gamma.matrix, expected) < 1e-10);
  const auto quantum = reduced_density_matrix(build_state(fam, SectorBasis(k, 6)), SectorBasis(k, 6), 1, 1.0 / 6);
  CHECK(bosonmf_test::max_abs_diff(quantum.matrix, expected) < 1e-12);
}

TEST_CASE("mean-field limit stays a trace-one state along the flow") {
  const int k = 5;
  const auto v = build_potential(k);
  for (auto kind : {FamilyKind::Hermite, FamilyKind::Twin, FamilyKind::Wq, FamilyKind::PhiN}) {
    const auto sample = wigner_sample(StateFamily::standard(kind, k), 16);
    for (int p = 1; p <= 2; ++p) {
      const auto gamma = asymptotic_rdm(sample, p, 0.6, v, HartreeConfig{60, ButcherTableau::gauss2(), {}});
      CHECK(std::abs(gamma.trace() - 1.0) < 1e-10);
      CHECK(gamma.hermitian_defect() < 1e-12);
      for (double e : gamma.eigenvalues()) CHECK(e > -1e-10);
    }
  }
}

TEST_CASE("trace norm of two pure states") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 5; ++trial) {
    const auto z = bosonmf_test::random_unit(4, rng);
    const auto w = bosonmf_test::random_unit(4, rng);
    Complex ov(0.0);
    for (int i = 0; i < 4; ++i) ov += std::conj(z[i]) * w[i];
    const double expected = 2.0 * std::sqrt(1.0 - std::norm(ov));
    const auto d = trace_norm_distance(projector_matrix(z, 1), projector_matrix(w, 1));
    CHECK(d.value == doctest::Approx(expected).epsilon(1e-10));
    CHECK(trace_norm_distance(projector_matrix(z, 2), projector_matrix(z, 2)).value < 1e-12);
  }
}

TEST_CASE("phi_N at time zero is 2/sqrt(N) from its limit") {
  const int k = 5;
  const auto fam = StateFamily::standard(FamilyKind::PhiN, k);
  const auto limit = asymptotic_rdm(wigner_sample(fam), 1, 0.0, build_potential(k));
  for (int n = 2; n <= 10; n += 4) {
    const SectorBasis basis(k, n);
    const auto gamma = reduced_density_matrix(build_state(fam, basis), basis, 1, 1.0 / n);
    CHECK(trace_norm_distance(gamma, limit).value == doctest::Approx(2.0 / std::sqrt(n)).epsilon(1e-10));
  }
}

TEST_CASE("trace norm rejects non-Hermitian input") {
  DensityMatrix a{1, 2, Eigen::MatrixXcd::Zero(2, 2)};
  DensityMatrix b = a;
  b.matrix(0, 1) = 1.0;
  CHECK_THROWS(trace_norm_distance(a, b));
}

TEST_CASE("Jacobi eigenvalues agree with a library solver") {
  std::mt19937_64 rng(24);
  std::normal_distribution<double> g;
  for (int n : {1, 2, 5, 12, 30}) {
    Eigen::MatrixXcd h(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) h(i, j) = Complex(g(rng), g(rng));
    h = (h + h.adjoint()).eval();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
    const auto ours = hermitian_eigenvalues(h);
    REQUIRE(ours.size() == static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) CHECK(ours[i] == doctest::Approx(es.eigenvalues()(i)).epsilon(1e-11));
  }
}

TEST_CASE("site densities read the diagonal") {
  const auto fam = StateFamily::standard(FamilyKind::Hermite, 3);
  const auto dens = site_densities(projector_matrix(fam.psi1, 1));
  CHECK(dens[0] == doctest::Approx(2.0 / 3.0));
  CHECK(dens[1] == doctest::Approx(0.0));
  CHECK(dens[2] == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("density matrix CSV") {
  const auto path = std::filesystem::temp_directory_path() / "bosonmf_test_gamma.csv";
  projector_matrix({Complex(1.0), Complex(0.0), Complex(0.0)}, 1).write_csv(path);
  std::ifstream in(path);
  std::string line;
  std::getline(in, line);
  CHECK(line == "p,K,D_p");
  std::getline(in, line);
  CHECK(line == "1,3,3");
  std::getline(in, line);
  CHECK(line == "row,col,re,im");
  std::filesystem::remove(path);
}
