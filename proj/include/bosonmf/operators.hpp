#pragma once

// Lattice potential, second-quantized kinetic operator dGamma(-Delta_K) and
// the diagonal pair interaction on one N-particle sector.

#include <complex>
#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "bosonmf/fock.hpp"

namespace bosonmf {

using Complex = std::complex<double>;

/// Translation-invariant pair potential V_ij = V(i - j) on Z/KZ.
class PotentialTable {
 public:
  /// V(d) = 1/d for circular distance d > 0, V(0) = 0.
  static PotentialTable inverse_distance(int sites);
  /// Zero potential (free dynamics).
  static PotentialTable zero(int sites);
  /// Arbitrary symmetric table, row-major K x K; diagonal must be zero.
  PotentialTable(int sites, std::vector<double> values);

  int sites() const { return sites_; }
  double operator()(int i, int j) const {
    return values_[static_cast<std::size_t>(i) * static_cast<std::size_t>(sites_) + static_cast<std::size_t>(j)];
  }
  double max_abs() const;
  std::span<const double> values() const { return values_; }

 private:
  int sites_;
  std::vector<double> values_;
};

/// Circular distance min(d mod K, K - d mod K).
int circular_distance(int i, int j, int sites);

inline PotentialTable build_potential(int sites) { return PotentialTable::inverse_distance(sites); }

/// Complex coefficient vector over the basis of one sector.
struct FockVector {
  int sites = 0;
  int particles = 0;
  std::vector<Complex> coeffs;

  FockVector() = default;
  FockVector(int k, int n, std::vector<Complex> c) : sites(k), particles(n), coeffs(std::move(c)) {}
  static FockVector zeros(const SectorBasis& basis);
  static FockVector basis_vector(const SectorBasis& basis, Index rank);

  Index size() const { return coeffs.size(); }
  double norm() const;
  void scale(Complex s);
};

Complex inner(const FockVector& u, const FockVector& v);  // <u, v>, antilinear in u

/// Real symmetric sparse matrix in compressed-row form. Both (r,c) and (c,r)
/// are stored; duplicate triplets are summed at assembly.
class SparseHermitian {
 public:
  struct Triplet {
    std::uint64_t row;
    std::uint64_t col;
    double value;
  };

  SparseHermitian() = default;
  SparseHermitian(Index dim, std::vector<Triplet> triplets);
  /// Takes raw compressed rows; sorts each row by column and merges duplicates.
  static SparseHermitian from_rows(Index dim, std::vector<Index> row_ptr, std::vector<std::uint32_t> cols,
                                   std::vector<double> values);

  Index dim() const { return dim_; }
  Index nnz() const { return values_.size(); }
  std::span<const Index> row_ptr() const { return row_ptr_; }
  std::span<const std::uint32_t> cols() const { return cols_; }
  std::span<const double> values() const { return values_; }

  /// Entry (r, c), zero if not stored.
  double coeff(Index r, Index c) const;
  std::vector<Triplet> triplets() const;

  /// out = M * in. Rows are independent; per-row accumulation order is fixed.
  void multiply(std::span<const Complex> in, std::span<Complex> out) const;

 private:
  Index dim_ = 0;
  std::vector<Index> row_ptr_{0};
  std::vector<std::uint32_t> cols_;
  std::vector<double> values_;
};

/// dGamma(-Delta_K) on the sector, epsilon-scaled. Rejects K = 1.
SparseHermitian build_kinetic(const SectorBasis& basis, double epsilon);

/// Number of hops generated by build_kinetic before duplicate merging:
/// 2K * dim(N-1 sector).
std::uint64_t kinetic_triplet_count(int sites, int particles);

/// Eigenvalues of the pair interaction, one per basis element.
struct DiagonalOperator {
  std::vector<double> values;
  Index dim() const { return values.size(); }
  double max_abs() const;
};

DiagonalOperator build_interaction_diagonal(const SectorBasis& basis, const PotentialTable& potential,
                                            double epsilon);

/// Interaction eigenvalue (eps^2/2) sum_ij V_ij a_i (a_j - delta_ij) for one alpha.
double interaction_value(std::span<const int> alpha, const PotentialTable& potential, double epsilon);

FockVector apply_kinetic(const SparseHermitian& op, const FockVector& u);

// Binary cache of the kinetic triplets: magic "BMFKIN01", K (u32), N (u32),
// epsilon (f64), dim (u64), nnz (u64), then nnz records (row u64, col u64,
// value f64), all little-endian.
void save_kinetic(const std::filesystem::path& path, const SparseHermitian& op, int sites, int particles,
                  double epsilon);
/// Loads a cache written by save_kinetic; throws if the header does not match.
SparseHermitian load_kinetic(const std::filesystem::path& path, int sites, int particles, double epsilon);

/// Loads from the cache when present and valid, otherwise assembles and writes it.
SparseHermitian cached_kinetic(const std::filesystem::path& cache_dir, const SectorBasis& basis,
                               double epsilon);

}  // namespace bosonmf
