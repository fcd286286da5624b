#include "bosonmf/operators.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <string>

#include "binary_io.hpp"

namespace bosonmf {

int circular_distance(int i, int j, int sites) {
  const int d = ((i - j) % sites + sites) % sites;
  return std::min(d, sites - d);
}

PotentialTable PotentialTable::inverse_distance(int sites) {
  if (sites < 1) throw std::invalid_argument("build_potential: K must be >= 1");
  std::vector<double> v(static_cast<std::size_t>(sites) * static_cast<std::size_t>(sites), 0.0);
  for (int i = 0; i < sites; ++i)
    for (int j = 0; j < sites; ++j) {
      const int d = circular_distance(i, j, sites);
      v[static_cast<std::size_t>(i * sites + j)] = d == 0 ? 0.0 : 1.0 / d;
    }
  return PotentialTable(sites, std::move(v));
}

PotentialTable PotentialTable::zero(int sites) {
  return PotentialTable(sites, std::vector<double>(static_cast<std::size_t>(sites) * static_cast<std::size_t>(sites), 0.0));
}

PotentialTable::PotentialTable(int sites, std::vector<double> values) : sites_(sites), values_(std::move(values)) {
  if (sites < 1) throw std::invalid_argument("PotentialTable: K must be >= 1");
  if (values_.size() != static_cast<std::size_t>(sites) * static_cast<std::size_t>(sites))
    throw std::invalid_argument("PotentialTable: expected K*K values");
  for (int i = 0; i < sites; ++i) {
    if ((*this)(i, i) != 0.0) throw std::invalid_argument("PotentialTable: diagonal must vanish");
    for (int j = 0; j < i; ++j)
      if ((*this)(i, j) != (*this)(j, i)) throw std::invalid_argument("PotentialTable: table must be symmetric");
  }
}

double PotentialTable::max_abs() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

FockVector FockVector::zeros(const SectorBasis& basis) {
  return FockVector(basis.sites(), basis.particles(), std::vector<Complex>(basis.size()));
}

FockVector FockVector::basis_vector(const SectorBasis& basis, Index rank) {
  auto u = zeros(basis);
  u.coeffs.at(rank) = 1.0;
  return u;
}

double FockVector::norm() const {
  double s = 0.0;
  for (const auto& c : coeffs) s += std::norm(c);
  return std::sqrt(s);
}

void FockVector::scale(Complex s) {
  for (auto& c : coeffs) c *= s;
}

Complex inner(const FockVector& u, const FockVector& v) {
  if (u.size() != v.size()) throw std::invalid_argument("inner: dimension mismatch");
  Complex s = 0.0;
  for (Index i = 0; i < u.size(); ++i) s += std::conj(u.coeffs[i]) * v.coeffs[i];
  return s;
}

SparseHermitian::SparseHermitian(Index dim, std::vector<Triplet> triplets) : dim_(dim) {
  if (dim > std::numeric_limits<std::uint32_t>::max())
    throw std::length_error("SparseHermitian: dimension exceeds 32-bit column indices");
  std::sort(triplets.begin(), triplets.end(), [](const Triplet& a, const Triplet& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  row_ptr_.assign(dim + 1, 0);
  cols_.reserve(triplets.size());
  values_.reserve(triplets.size());
  std::uint64_t last_row = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t last_col = 0;
  for (const auto& t : triplets) {
    if (t.row >= dim || t.col >= dim) throw std::out_of_range("SparseHermitian: triplet outside matrix");
    if (t.row == last_row && t.col == last_col) {
      values_.back() += t.value;
      continue;
    }
    cols_.push_back(static_cast<std::uint32_t>(t.col));
    values_.push_back(t.value);
    ++row_ptr_[t.row + 1];
    last_row = t.row;
    last_col = t.col;
  }
  for (Index r = 0; r < dim; ++r) row_ptr_[r + 1] += row_ptr_[r];
}

SparseHermitian SparseHermitian::from_rows(Index dim, std::vector<Index> row_ptr, std::vector<std::uint32_t> cols,
                                           std::vector<double> values) {
  if (row_ptr.size() != dim + 1 || cols.size() != row_ptr.back() || values.size() != cols.size())
    throw std::invalid_argument("SparseHermitian::from_rows: inconsistent arrays");
  SparseHermitian m;
  m.dim_ = dim;
  m.row_ptr_.assign(dim + 1, 0);
  std::vector<std::pair<std::uint32_t, double>> scratch;
  Index out = 0;
  for (Index r = 0; r < dim; ++r) {
    scratch.clear();
    for (Index k = row_ptr[r]; k < row_ptr[r + 1]; ++k) {
      if (cols[k] >= dim) throw std::out_of_range("SparseHermitian::from_rows: column outside matrix");
      scratch.emplace_back(cols[k], values[k]);
    }
    std::sort(scratch.begin(), scratch.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    const Index row_start = out;
    for (const auto& [c, v] : scratch) {
      if (out > row_start && cols[out - 1] == c) {
        values[out - 1] += v;
      } else {
        cols[out] = c;
        values[out] = v;
        ++out;
      }
    }
    m.row_ptr_[r + 1] = out;
  }
  cols.resize(out);
  values.resize(out);
  m.cols_ = std::move(cols);
  m.values_ = std::move(values);
  return m;
}

double SparseHermitian::coeff(Index r, Index c) const {
  if (r >= dim_ || c >= dim_) throw std::out_of_range("SparseHermitian::coeff");
  auto first = cols_.begin() + static_cast<std::ptrdiff_t>(row_ptr_[r]);
  auto last = cols_.begin() + static_cast<std::ptrdiff_t>(row_ptr_[r + 1]);
  auto it = std::lower_bound(first, last, static_cast<std::uint32_t>(c));
  if (it == last || *it != c) return 0.0;
  return values_[static_cast<Index>(it - cols_.begin())];
}

std::vector<SparseHermitian::Triplet> SparseHermitian::triplets() const {
  std::vector<Triplet> out;
  out.reserve(nnz());
  for (Index r = 0; r < dim_; ++r)
    for (Index k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) out.push_back({r, cols_[k], values_[k]});
  return out;
}

void SparseHermitian::multiply(std::span<const Complex> in, std::span<Complex> out) const {
  if (in.size() != dim_ || out.size() != dim_) throw std::invalid_argument("SparseHermitian::multiply: dimension mismatch");
  const auto rows = static_cast<std::ptrdiff_t>(dim_);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t r = 0; r < rows; ++r) {
    Complex acc = 0.0;
    for (Index k = row_ptr_[static_cast<Index>(r)]; k < row_ptr_[static_cast<Index>(r) + 1]; ++k)
      acc += values_[k] * in[cols_[k]];
    out[static_cast<Index>(r)] = acc;
  }
}

std::uint64_t kinetic_triplet_count(int sites, int particles) {
  if (particles == 0) return 0;
  return 2 * static_cast<std::uint64_t>(sites) * sector_dimension(sites, particles - 1);
}

SparseHermitian build_kinetic(const SectorBasis& basis, double epsilon) {
  const int sites = basis.sites();
  const int n = basis.particles();
  if (sites < 2) throw std::invalid_argument("build_kinetic: K = 1 has a degenerate Laplacian");
  if (!(epsilon > 0.0)) throw std::invalid_argument("build_kinetic: epsilon must be positive");
  if (basis.size() > std::numeric_limits<std::uint32_t>::max())
    throw std::length_error("build_kinetic: dimension exceeds 32-bit column indices");
  if (n == 0) return SparseHermitian(basis.size(), {});

  // Run over beta' in the (N-1)-sector; each (beta', i) is one hop between
  // beta = beta' + e_i and alpha = beta' + e_{i+1}, stored in both directions.
  const SectorBasis lower(sites, n - 1);
  std::vector<int> occ(static_cast<std::size_t>(sites));
  auto visit_hops = [&](auto&& emit) {
    for (Index r = 0; r < lower.size(); ++r) {
      auto row = lower.row(r);
      for (int i = 0; i < sites; ++i) {
        const int j = (i + 1) % sites;
        std::copy(row.begin(), row.end(), occ.begin());
        ++occ[static_cast<std::size_t>(i)];
        const Index beta = *basis.find(occ);
        --occ[static_cast<std::size_t>(i)];
        ++occ[static_cast<std::size_t>(j)];
        const Index alpha = *basis.find(occ);
        const double value = -epsilon * std::sqrt(static_cast<double>(row[static_cast<std::size_t>(i)] + 1) *
                                                  static_cast<double>(row[static_cast<std::size_t>(j)] + 1));
        emit(alpha, beta, value);
        emit(beta, alpha, value);
      }
    }
  };

  std::vector<Index> row_ptr(basis.size() + 1, 0);
  visit_hops([&](Index r, Index, double) { ++row_ptr[r + 1]; });
  for (Index r = 0; r < basis.size(); ++r) row_ptr[r + 1] += row_ptr[r];
  std::vector<std::uint32_t> cols(row_ptr.back());
  std::vector<double> values(row_ptr.back());
  std::vector<Index> fill(row_ptr.begin(), row_ptr.end() - 1);
  visit_hops([&](Index r, Index c, double v) {
    cols[fill[r]] = static_cast<std::uint32_t>(c);
    values[fill[r]] = v;
    ++fill[r];
  });
  return SparseHermitian::from_rows(basis.size(), std::move(row_ptr), std::move(cols), std::move(values));
}

double interaction_value(std::span<const int> alpha, const PotentialTable& potential, double epsilon) {
  const int sites = potential.sites();
  double s = 0.0;
  for (int i = 0; i < sites; ++i) {
    const double ai = alpha[static_cast<std::size_t>(i)];
    if (ai == 0.0) continue;
    for (int j = 0; j < sites; ++j)
      s += potential(i, j) * ai * (alpha[static_cast<std::size_t>(j)] - (i == j ? 1.0 : 0.0));
  }
  return 0.5 * epsilon * epsilon * s;
}

double DiagonalOperator::max_abs() const {
  double m = 0.0;
  for (double v : values) m = std::max(m, std::abs(v));
  return m;
}

DiagonalOperator build_interaction_diagonal(const SectorBasis& basis, const PotentialTable& potential,
                                            double epsilon) {
  if (potential.sites() != basis.sites())
    throw std::invalid_argument("build_interaction_diagonal: potential and basis differ in K");
  DiagonalOperator op;
  op.values.resize(basis.size());
  std::vector<int> occ(static_cast<std::size_t>(basis.sites()));
  for (Index r = 0; r < basis.size(); ++r) {
    auto row = basis.row(r);
    std::copy(row.begin(), row.end(), occ.begin());
    op.values[r] = interaction_value(occ, potential, epsilon);
  }
  return op;
}

FockVector apply_kinetic(const SparseHermitian& op, const FockVector& u) {
  if (u.size() != op.dim()) throw std::invalid_argument("apply_kinetic: dimension mismatch");
  FockVector out(u.sites, u.particles, std::vector<Complex>(u.size()));
  op.multiply(u.coeffs, out.coeffs);
  return out;
}

namespace {
constexpr char kKineticMagic[8] = {'B', 'M', 'F', 'K', 'I', 'N', '0', '1'};
}

void save_kinetic(const std::filesystem::path& path, const SparseHermitian& op, int sites, int particles,
                  double epsilon) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw std::runtime_error("save_kinetic: cannot open " + path.string());
  os.write(kKineticMagic, sizeof kKineticMagic);
  io::write_le<std::uint32_t>(os, static_cast<std::uint32_t>(sites));
  io::write_le<std::uint32_t>(os, static_cast<std::uint32_t>(particles));
  io::write_le<double>(os, epsilon);
  io::write_le<std::uint64_t>(os, op.dim());
  io::write_le<std::uint64_t>(os, op.nnz());
  for (const auto& t : op.triplets()) {
    io::write_le<std::uint64_t>(os, t.row);
    io::write_le<std::uint64_t>(os, t.col);
    io::write_le<double>(os, t.value);
  }
  if (!os) throw std::runtime_error("save_kinetic: write failed for " + path.string());
}

SparseHermitian load_kinetic(const std::filesystem::path& path, int sites, int particles, double epsilon) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("load_kinetic: cannot open " + path.string());
  char magic[8];
  if (!is.read(magic, sizeof magic) || !std::equal(magic, magic + 8, kKineticMagic))
    throw std::runtime_error("load_kinetic: bad magic in " + path.string());
  const auto k = io::read_le<std::uint32_t>(is);
  const auto n = io::read_le<std::uint32_t>(is);
  const auto eps = io::read_le<double>(is);
  const auto dim = io::read_le<std::uint64_t>(is);
  const auto nnz = io::read_le<std::uint64_t>(is);
  if (static_cast<int>(k) != sites || static_cast<int>(n) != particles || eps != epsilon)
    throw std::runtime_error("load_kinetic: header does not match requested (K, N, epsilon)");
  if (dim != sector_dimension(sites, particles)) throw std::runtime_error("load_kinetic: dimension mismatch");
  std::vector<SparseHermitian::Triplet> triplets(nnz);
  for (auto& t : triplets) {
    t.row = io::read_le<std::uint64_t>(is);
    t.col = io::read_le<std::uint64_t>(is);
    t.value = io::read_le<double>(is);
  }
  return SparseHermitian(static_cast<Index>(dim), std::move(triplets));
}

SparseHermitian cached_kinetic(const std::filesystem::path& cache_dir, const SectorBasis& basis,
                               double epsilon) {
  const auto path = cache_dir / ("kinetic_K" + std::to_string(basis.sites()) + "_N" +
                                 std::to_string(basis.particles()) + ".bin");
  if (std::filesystem::exists(path)) {
    try {
      return load_kinetic(path, basis.sites(), basis.particles(), epsilon);
    } catch (const std::exception& e) {
      std::cerr << "warning: ignoring kinetic cache " << path << ": " << e.what() << '\n';
    }
  }
  auto op = build_kinetic(basis, epsilon);
  std::filesystem::create_directories(cache_dir);
  save_kinetic(path, op, basis.sites(), basis.particles(), epsilon);
  return op;
}

}  // namespace bosonmf
