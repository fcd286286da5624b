#include "bosonmf/fock.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace bosonmf {

MultiIndex::MultiIndex(std::vector<int> occupations) : occ_(std::move(occupations)) {}

MultiIndex::MultiIndex(std::initializer_list<int> occupations) : occ_(occupations) {}

int MultiIndex::length() const {
  int n = 0;
  for (int a : occ_) n += a;
  return n;
}

double MultiIndex::log_factorial() const {
  double s = 0.0;
  for (int a : occ_) s += bosonmf::log_factorial(a);
  return s;
}

std::uint64_t MultiIndex::factorial() const {
  std::uint64_t f = 1;
  for (int a : occ_) {
    for (int k = 2; k <= a; ++k) {
      if (__builtin_mul_overflow(f, static_cast<std::uint64_t>(k), &f))
        throw std::overflow_error("multi-index factorial exceeds 64 bits");
    }
  }
  return f;
}

bool MultiIndex::valid() const {
  for (int a : occ_)
    if (a < 0) return false;
  return true;
}

std::string to_string(const MultiIndex& alpha) {
  std::ostringstream os;
  os << '(';
  for (int i = 0; i < alpha.sites(); ++i) os << (i ? "," : "") << alpha[i];
  os << ')';
  return os.str();
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    // r * (n - k + i) / i stays integral at every step.
    r = r * (n - k + i) / i;
    if (r > std::numeric_limits<std::uint64_t>::max())
      throw std::overflow_error("binomial coefficient exceeds 64 bits");
  }
  return static_cast<std::uint64_t>(r);
}

std::uint64_t sector_dimension(int sites, int particles) {
  if (sites < 1) throw std::invalid_argument("sector_dimension: K must be >= 1");
  if (particles < 0) throw std::invalid_argument("sector_dimension: N must be >= 0");
  return binomial(static_cast<std::uint64_t>(particles) + static_cast<std::uint64_t>(sites) - 1,
                  static_cast<std::uint64_t>(sites) - 1);
}

double log_factorial(int n) { return std::lgamma(static_cast<double>(n) + 1.0); }

std::optional<MultiIndex> shift(const MultiIndex& alpha, int from, int to) {
  if (from < 0 || from >= alpha.sites() || to < 0 || to >= alpha.sites())
    throw std::out_of_range("shift: site out of range");
  if (alpha[from] <= 0) return std::nullopt;
  std::vector<int> occ(alpha.occupations().begin(), alpha.occupations().end());
  --occ[static_cast<std::size_t>(from)];
  ++occ[static_cast<std::size_t>(to)];
  return MultiIndex(std::move(occ));
}

SectorBasis::SectorBasis(int sites, int particles) : sites_(sites), particles_(particles) {
  if (sites < 1) throw SectorError("SectorBasis: K must be >= 1");
  if (particles < 0) throw SectorError("SectorBasis: N must be >= 0");
  if (particles > std::numeric_limits<std::uint8_t>::max())
    throw SectorError("SectorBasis: N above 255 is not supported");
  std::uint64_t dim = 0;
  try {
    dim = sector_dimension(sites, particles);
  } catch (const std::overflow_error&) {
    throw SectorError("SectorBasis: sector dimension overflows 64 bits");
  }
  // The packed lookup key needs (N+1)^K to fit in 64 bits.
  std::uint64_t span = 1;
  for (int i = 0; i < sites; ++i) {
    if (__builtin_mul_overflow(span, static_cast<std::uint64_t>(particles) + 1, &span))
      throw SectorError("SectorBasis: (N+1)^K exceeds the 64-bit lookup key");
  }
  if (dim > std::numeric_limits<std::size_t>::max() / static_cast<std::size_t>(sites))
    throw SectorError("SectorBasis: sector does not fit in memory");
  dim_ = static_cast<Index>(dim);
  occ_.reserve(dim_ * static_cast<std::size_t>(sites));
  keys_.reserve(dim_);
  log_fact_.reserve(dim_);

  std::vector<int> bound(static_cast<std::size_t>(sites), particles);
  for_each_bounded(std::span<const int>(bound), particles, [&](std::span<const int> occ) {
    double lf = 0.0;
    for (int a : occ) {
      occ_.push_back(static_cast<std::uint8_t>(a));
      lf += bosonmf::log_factorial(a);
    }
    keys_.push_back(key_of(occ));
    log_fact_.push_back(lf);
  });
}

std::uint64_t SectorBasis::key_of(std::span<const int> occupations) const {
  std::uint64_t key = 0;
  const auto base = static_cast<std::uint64_t>(particles_) + 1;
  for (int a : occupations) key = key * base + static_cast<std::uint64_t>(a);
  return key;
}

MultiIndex SectorBasis::at(Index rank) const {
  if (rank >= dim_) throw std::out_of_range("SectorBasis::at: rank out of range");
  auto r = row(rank);
  return MultiIndex(std::vector<int>(r.begin(), r.end()));
}

std::optional<Index> SectorBasis::find(std::span<const int> occupations) const {
  if (static_cast<int>(occupations.size()) != sites_) return std::nullopt;
  int total = 0;
  for (int a : occupations) {
    if (a < 0 || a > particles_) return std::nullopt;
    total += a;
  }
  if (total != particles_) return std::nullopt;
  const std::uint64_t key = key_of(occupations);
  auto it = std::lower_bound(keys_.begin(), keys_.end(), key);
  if (it == keys_.end() || *it != key) return std::nullopt;
  return static_cast<Index>(it - keys_.begin());
}

Index SectorBasis::rank_of(const MultiIndex& alpha) const {
  auto r = find(alpha.occupations());
  if (!r)
    throw SectorError("rank_of: " + to_string(alpha) + " is not in the sector K=" +
                      std::to_string(sites_) + ", N=" + std::to_string(particles_));
  return *r;
}

}  // namespace bosonmf
