#include "bosonmf/states.hpp"

#include <cmath>
#include <iostream>
#include <numbers>

namespace bosonmf {

namespace {

constexpr double kUnitTolerance = 1e-12;

double vector_norm(const std::vector<Complex>& v) {
  double s = 0.0;
  for (const auto& c : v) s += std::norm(c);
  return std::sqrt(s);
}

void require_sites(const std::vector<Complex>& v, const SectorBasis& basis, const char* what) {
  if (static_cast<int>(v.size()) != basis.sites())
    throw StateError(std::string(what) + ": one-particle vector has " + std::to_string(v.size()) +
                     " components, sector has K=" + std::to_string(basis.sites()));
}

void require_unit(const std::vector<Complex>& v, const char* what) {
  const double n = vector_norm(v);
  if (std::abs(n - 1.0) > kUnitTolerance)
    throw StateError(std::string(what) + ": one-particle vector must have unit norm (got " + std::to_string(n) + ")");
}

// table[i][n] = v_i^n for n = 0..max_power
std::vector<std::vector<Complex>> power_table(const std::vector<Complex>& v, int max_power) {
  std::vector<std::vector<Complex>> t(v.size(), std::vector<Complex>(static_cast<std::size_t>(max_power) + 1));
  for (std::size_t i = 0; i < v.size(); ++i) {
    t[i][0] = 1.0;
    for (int n = 1; n <= max_power; ++n) t[i][static_cast<std::size_t>(n)] = t[i][static_cast<std::size_t>(n) - 1] * v[i];
  }
  return t;
}

std::vector<Complex> unit(int sites, int i) {
  std::vector<Complex> e(static_cast<std::size_t>(sites));
  e.at(static_cast<std::size_t>(i)) = 1.0;
  return e;
}

}  // namespace

std::string to_string(FamilyKind kind) {
  switch (kind) {
    case FamilyKind::Hermite: return "hermite";
    case FamilyKind::Twin: return "twin";
    case FamilyKind::Wq: return "wq";
    case FamilyKind::PhiN: return "phin";
  }
  return "unknown";
}

FamilyKind family_from_string(const std::string& name) {
  if (name == "hermite") return FamilyKind::Hermite;
  if (name == "twin") return FamilyKind::Twin;
  if (name == "wq") return FamilyKind::Wq;
  if (name == "phin" || name == "phiN") return FamilyKind::PhiN;
  throw StateError("unknown state family '" + name + "' (expected hermite, twin, wq or phin)");
}

StateFamily StateFamily::hermite(std::vector<Complex> z) {
  StateFamily f;
  f.kind = FamilyKind::Hermite;
  f.psi1 = std::move(z);
  return f;
}

StateFamily StateFamily::twin(std::vector<Complex> psi1, std::vector<Complex> psi2) {
  StateFamily f;
  f.kind = FamilyKind::Twin;
  f.psi1 = std::move(psi1);
  f.psi2 = std::move(psi2);
  return f;
}

StateFamily StateFamily::wq(std::vector<Complex> psi1, std::vector<Complex> psi2, int q) {
  StateFamily f;
  f.kind = FamilyKind::Wq;
  f.psi1 = std::move(psi1);
  f.psi2 = std::move(psi2);
  f.q = q;
  return f;
}

StateFamily StateFamily::phi_n(int sites) {
  if (sites < 2) throw StateError("phiN family needs K >= 2");
  StateFamily f;
  f.kind = FamilyKind::PhiN;
  f.psi1 = unit(sites, 0);
  f.psi2 = unit(sites, 1);
  return f;
}

StateFamily StateFamily::standard(FamilyKind kind, int sites) {
  if (kind == FamilyKind::PhiN) return phi_n(sites);
  if (sites < 3) throw StateError("the reference one-particle vectors need K >= 3");
  const std::size_t k = static_cast<std::size_t>(sites);
  if (kind == FamilyKind::Hermite) {
    std::vector<Complex> z(k);
    const double s = 1.0 / std::sqrt(3.0);
    z[0] = Complex(s, s);
    z[2] = Complex(0.0, s);
    return hermite(std::move(z));
  }
  std::vector<Complex> psi1(k);
  psi1[0] = std::numbers::sqrt2 / 2.0;
  psi1[2] = Complex(0.0, std::numbers::sqrt2 / 2.0);
  auto psi2 = unit(sites, 1);
  if (kind == FamilyKind::Twin) return twin(std::move(psi1), std::move(psi2));
  return wq(std::move(psi1), std::move(psi2), 2);
}

int StateFamily::sites() const { return static_cast<int>(psi1.size()); }

FockVector hermite_state(const std::vector<Complex>& z_in, const SectorBasis& basis, bool normalize) {
  require_sites(z_in, basis, "hermite_state");
  std::vector<Complex> z = z_in;
  if (normalize) {
    const double n = vector_norm(z);
    if (n == 0.0) throw StateError("hermite_state: zero vector");
    for (auto& c : z) c /= n;
  } else {
    require_unit(z, "hermite_state");
  }
  const int n = basis.particles();
  const auto pw = power_table(z, n);
  const double lf_n = log_factorial(n);
  const auto& lf = basis.log_factorials();
  auto u = FockVector::zeros(basis);
  for (Index r = 0; r < basis.size(); ++r) {
    auto alpha = basis.row(r);
    Complex mono = 1.0;
    for (std::size_t i = 0; i < alpha.size(); ++i) mono *= pw[i][alpha[i]];
    u.coeffs[r] = std::exp(0.5 * (lf_n - lf[r])) * mono;
  }
  return u;
}

FockVector twin_state(const std::vector<Complex>& psi1, const std::vector<Complex>& psi2, int n1, int n2,
                      const SectorBasis& basis) {
  require_sites(psi1, basis, "twin_state");
  require_sites(psi2, basis, "twin_state");
  if (n1 < 0 || n2 < 0 || n1 + n2 != basis.particles())
    throw StateError("twin_state: need n1, n2 >= 0 with n1 + n2 = N");
  require_unit(psi1, "twin_state");
  require_unit(psi2, "twin_state");

  Complex overlap = 0.0;
  for (std::size_t i = 0; i < psi1.size(); ++i) overlap += std::conj(psi1[i]) * psi2[i];

  // The formula is symmetric under (psi1, n1) <-> (psi2, n2); enumerate the
  // sub-multi-index of smaller length.
  const bool swap = n1 > n2;
  const auto& small_vec = swap ? psi2 : psi1;
  const auto& large_vec = swap ? psi1 : psi2;
  const int small_len = swap ? n2 : n1;
  const auto pw_small = power_table(small_vec, small_len);
  const auto pw_large = power_table(large_vec, basis.particles());
  const double prefactor = 0.5 * (log_factorial(n1) + log_factorial(n2));
  const auto& lf = basis.log_factorials();

  auto u = FockVector::zeros(basis);
  std::vector<int> gamma(static_cast<std::size_t>(basis.sites()));
  for (Index r = 0; r < basis.size(); ++r) {
    auto row = basis.row(r);
    std::copy(row.begin(), row.end(), gamma.begin());
    const double lg = prefactor + 0.5 * lf[r];
    Complex sum = 0.0;
    for_each_bounded(std::span<const int>(gamma), small_len, [&](std::span<const int> alpha) {
      double lw = lg;
      Complex mono = 1.0;
      for (std::size_t i = 0; i < alpha.size(); ++i) {
        const int rest = gamma[i] - alpha[i];
        lw -= log_factorial(alpha[i]) + log_factorial(rest);
        mono *= pw_small[i][static_cast<std::size_t>(alpha[i])] * pw_large[i][static_cast<std::size_t>(rest)];
      }
      sum += std::exp(lw) * mono;
    });
    u.coeffs[r] = sum;
  }

  if (std::abs(overlap) > kUnitTolerance && n1 > 0 && n2 > 0)
    std::cerr << "warning: twin_state with non-orthogonal one-particle vectors (|<psi1,psi2>| = "
              << std::abs(overlap) << "); resulting norm " << u.norm() << '\n';
  return u;
}

FockVector wq_state(const std::vector<Complex>& psi1, const std::vector<Complex>& psi2, int q,
                    const SectorBasis& basis) {
  if (q < 0 || q >= basis.particles()) throw StateError("wq_state: need 0 <= q < N");
  return twin_state(psi1, psi2, basis.particles() - q, q, basis);
}

std::vector<Complex> phiN_vector(int sites, int particles) {
  if (sites < 2) throw StateError("phiN: K must be >= 2");
  if (particles < 1) throw StateError("phiN: N must be >= 1");
  std::vector<Complex> phi(static_cast<std::size_t>(sites));
  const double inv = 1.0 / particles;
  phi[0] = std::sqrt(inv);
  phi[1] = std::sqrt(1.0 - inv);
  return phi;
}

FockVector phiN_state(const SectorBasis& basis) {
  return hermite_state(phiN_vector(basis.sites(), basis.particles()), basis, true);
}

FockVector build_state(const StateFamily& family, const SectorBasis& basis) {
  switch (family.kind) {
    case FamilyKind::Hermite: return hermite_state(family.psi1, basis);
    case FamilyKind::Twin:
      if (basis.particles() % 2 != 0) throw StateError("twin states need an even particle number");
      return twin_state(family.psi1, family.psi2, basis.particles() / 2, basis.particles() / 2, basis);
    case FamilyKind::Wq: return wq_state(family.psi1, family.psi2, family.q, basis);
    case FamilyKind::PhiN: return phiN_state(basis);
  }
  throw StateError("build_state: unknown family");
}

WignerSample wigner_sample(const StateFamily& family, int nodes) {
  WignerSample s;
  switch (family.kind) {
    case FamilyKind::Hermite:
    case FamilyKind::Wq:
      s.points.emplace_back(family.psi1);
      s.weights.push_back(1.0);
      return s;
    case FamilyKind::PhiN:
      s.points.emplace_back(unit(family.sites(), 1));
      s.weights.push_back(1.0);
      return s;
    case FamilyKind::Twin: break;
  }
  if (nodes < 1) throw StateError("wigner_sample: need at least one node");
  const std::size_t k = family.psi1.size();
  const double h = std::numbers::sqrt2 / 2.0;
  std::vector<Complex> psi0(k), psi90(k);
  for (std::size_t i = 0; i < k; ++i) {
    psi0[i] = h * (family.psi1[i] + family.psi2[i]);
    psi90[i] = Complex(0.0, h) * (family.psi1[i] - family.psi2[i]);
  }
  for (int j = 1; j <= nodes; ++j) {
    const double phi = 2.0 * std::numbers::pi * (j - 0.5) / nodes;
    std::vector<Complex> z(k);
    for (std::size_t i = 0; i < k; ++i) z[i] = std::cos(phi) * psi0[i] + std::sin(phi) * psi90[i];
    s.points.emplace_back(std::move(z));
    s.weights.push_back(1.0 / nodes);
  }
  return s;
}

}  // namespace bosonmf
