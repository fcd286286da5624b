#pragma once

// Reduced density matrices of N-body states, their mean-field limits from
// Wigner samples, and trace-norm distances.

#include <filesystem>
#include <vector>

#include <Eigen/Dense>

#include "bosonmf/fock.hpp"
#include "bosonmf/hartree.hpp"
#include "bosonmf/operators.hpp"
#include "bosonmf/states.hpp"

namespace bosonmf {

/// gamma^(p) in the basis of the p-particle sector (lexicographic order);
/// entry (beta, alpha) is row beta, column alpha.
struct DensityMatrix {
  int order = 0;
  int sites = 0;
  Eigen::MatrixXcd matrix;

  Index dimension() const { return static_cast<Index>(matrix.rows()); }
  Complex trace() const { return matrix.trace(); }
  double hermitian_defect() const;  // max |M - M^H|
  std::vector<double> eigenvalues() const;

  /// CSV: "p,K,D_p" header and values, then "row,col,re,im" rows.
  void write_csv(const std::filesystem::path& path) const;
};

/// <Psi, a*(e)^delta a(e)^gamma Phi> for |delta| = |gamma| on the N-sector of basis.
Complex wick_expectation(const FockVector& psi, const FockVector& phi, const SectorBasis& basis,
                         const MultiIndex& delta, const MultiIndex& gamma, double epsilon);

/// gamma^(p)(beta, alpha) = p!/sqrt(alpha! beta!) <Psi, a*^alpha a^beta Psi> / (eps^p N (N-1) ... (N-p+1)).
DensityMatrix reduced_density_matrix(const FockVector& psi, const SectorBasis& basis, int order, double epsilon);

/// Unnormalized |z^{(x)p}><z^{(x)p}|: entry (beta, alpha) = p!/sqrt(alpha! beta!) conj(z)^alpha z^beta.
DensityMatrix projector_matrix(const std::vector<Complex>& z, int order);

struct HartreeConfig {
  int steps = 100;
  ButcherTableau tableau = ButcherTableau::gauss2();
  NewtonOptions newton;
};

/// sum_k w_k |z_k(t)^{(x)p}><z_k(t)^{(x)p}| / sum_k w_k |z_k(0)|^{2p}, with
/// z_k(t) from the Hartree flow.
DensityMatrix asymptotic_rdm(const WignerSample& sample, int order, double t, const PotentialTable& potential,
                             const HartreeConfig& config = {});

/// Same quadrature on already propagated nodes (points_t[k] = z_k(t)).
DensityMatrix mean_field_rdm(const WignerSample& sample, const std::vector<PhasePoint>& points_t, int order);

struct TraceNormResult {
  double value = 0.0;
  std::vector<double> spectrum;  // eigenvalues of the Hermitian difference
  double asymmetry = 0.0;        // max |D - D^H| before symmetrization
};

/// ||A - B||_1 as the sum of absolute eigenvalues of the Hermitian difference.
/// Throws if the difference is non-Hermitian beyond 1e-8.
TraceNormResult trace_norm_distance(const DensityMatrix& a, const DensityMatrix& b);

/// gamma^(1)_kk per site k = 0..K-1.
std::vector<double> site_densities(const DensityMatrix& gamma1);

}  // namespace bosonmf
