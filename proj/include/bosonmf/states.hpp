#pragma once

// Initial N-body states and the gauge-invariant point samples of their
// Wigner measures.

#include <string>
#include <vector>

#include "bosonmf/fock.hpp"
#include "bosonmf/hartree.hpp"
#include "bosonmf/operators.hpp"

namespace bosonmf {

class StateError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class FamilyKind { Hermite, Twin, Wq, PhiN };

std::string to_string(FamilyKind kind);
FamilyKind family_from_string(const std::string& name);

/// A state family with its one-particle data. For Hermite, psi1 is z.
struct StateFamily {
  FamilyKind kind = FamilyKind::Hermite;
  std::vector<Complex> psi1;
  std::vector<Complex> psi2;
  int q = 2;  // Wq only

  static StateFamily hermite(std::vector<Complex> z);
  static StateFamily twin(std::vector<Complex> psi1, std::vector<Complex> psi2);
  static StateFamily wq(std::vector<Complex> psi1, std::vector<Complex> psi2, int q);
  static StateFamily phi_n(int sites);

  /// The reference one-particle data used in the experiments:
  /// Hermite z = ((1+i) e1 + i e3)/sqrt(3); Twin/Wq psi1 = (e1 + i e3)/sqrt(2),
  /// psi2 = e2, q = 2. Requires K >= 3.
  static StateFamily standard(FamilyKind kind, int sites);

  int sites() const;
};

/// z^{(x)N} expanded as sum_alpha sqrt(N!/alpha!) z^alpha e_alpha. Rejects
/// non-unit z unless normalize is set.
FockVector hermite_state(const std::vector<Complex>& z, const SectorBasis& basis, bool normalize = false);

/// a*(psi1)^n1 a*(psi2)^n2 |Omega> / sqrt(eps^N n1! n2!). Warns on stderr,
/// reporting the resulting norm, when psi1 and psi2 are not orthogonal.
FockVector twin_state(const std::vector<Complex>& psi1, const std::vector<Complex>& psi2, int n1, int n2,
                      const SectorBasis& basis);

/// twin_state with (n1, n2) = (N - q, q); requires 0 <= q < N.
FockVector wq_state(const std::vector<Complex>& psi1, const std::vector<Complex>& psi2, int q,
                    const SectorBasis& basis);

/// Hermite state of phi_N = e1/sqrt(N) + sqrt(1 - 1/N) e2.
FockVector phiN_state(const SectorBasis& basis);

/// phi_N itself.
std::vector<Complex> phiN_vector(int sites, int particles);

/// Builds the family member in the basis' sector (Twin uses n1 = n2 = N/2).
FockVector build_state(const StateFamily& family, const SectorBasis& basis);

/// Weighted points z_k, each standing for the gauge-averaged delta at z_k.
struct WignerSample {
  std::vector<PhasePoint> points;
  std::vector<double> weights;
};

/// Hermite -> {z}; Wq -> {psi1}; PhiN -> {e2}; Twin -> m midpoint nodes
/// psi_phi = cos(phi) psi_0 + sin(phi) psi_{pi/2}, phi_k = 2 pi (k - 1/2)/m.
WignerSample wigner_sample(const StateFamily& family, int nodes = 64);

}  // namespace bosonmf
