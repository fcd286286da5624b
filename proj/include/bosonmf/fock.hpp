#pragma once

// Occupation-number basis of the N-particle symmetric sector over C^K.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace bosonmf {

using Index = std::size_t;

class SectorError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Occupation numbers (alpha_1, ..., alpha_K) of one basis vector e_alpha.
class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(std::vector<int> occupations);
  MultiIndex(std::initializer_list<int> occupations);

  int sites() const { return static_cast<int>(occ_.size()); }
  int operator[](int i) const { return occ_[static_cast<std::size_t>(i)]; }
  std::span<const int> occupations() const { return occ_; }

  /// |alpha| = sum of occupations.
  int length() const;
  /// log(alpha!) = sum_i log(alpha_i!).
  double log_factorial() const;
  /// alpha! as an exact integer; throws std::overflow_error past 64 bits.
  std::uint64_t factorial() const;

  bool valid() const;  // all occupations >= 0

  friend bool operator==(const MultiIndex&, const MultiIndex&) = default;
  friend auto operator<=>(const MultiIndex&, const MultiIndex&) = default;

 private:
  std::vector<int> occ_;
};

std::string to_string(const MultiIndex& alpha);

/// C(N+K-1, K-1), exact. Throws std::overflow_error when it does not fit 64 bits.
std::uint64_t sector_dimension(int sites, int particles);

/// Exact binomial coefficient with overflow detection.
std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

/// log(n!) via lgamma.
double log_factorial(int n);

/// alpha - e_from + e_to, or nullopt when alpha_from == 0 (sites are 0-based).
std::optional<MultiIndex> shift(const MultiIndex& alpha, int from, int to);

/// All multi-indices of length N over K sites in lexicographic order, with an
/// exact inverse lookup. Immutable after construction.
class SectorBasis {
 public:
  SectorBasis(int sites, int particles);

  int sites() const { return sites_; }
  int particles() const { return particles_; }
  Index size() const { return dim_; }

  MultiIndex at(Index rank) const;
  int occupation(Index rank, int site) const {
    return occ_[rank * static_cast<std::size_t>(sites_) + static_cast<std::size_t>(site)];
  }
  std::span<const std::uint8_t> row(Index rank) const {
    return {occ_.data() + rank * static_cast<std::size_t>(sites_), static_cast<std::size_t>(sites_)};
  }

  /// Position of alpha; throws SectorError if alpha is not in this sector.
  Index rank_of(const MultiIndex& alpha) const;
  /// Same lookup on raw occupations; nullopt when absent.
  std::optional<Index> find(std::span<const int> occupations) const;

  /// log(alpha!) for every basis element, in rank order.
  const std::vector<double>& log_factorials() const { return log_fact_; }

 private:
  std::uint64_t key_of(std::span<const int> occupations) const;

  int sites_;
  int particles_;
  Index dim_;
  std::vector<std::uint8_t> occ_;   // dim_ x sites_
  std::vector<std::uint64_t> keys_; // base-(N+1) packing, strictly increasing
  std::vector<double> log_fact_;
};

/// Calls visit(occupations) for every alpha with |alpha| = total and
/// alpha <= bound componentwise, in lexicographic order.
template <class Visit>
void for_each_bounded(std::span<const int> bound, int total, Visit&& visit);

namespace detail {
template <class Visit>
void bounded_recurse(std::span<const int> bound, int site, int remaining,
                     std::vector<int>& current, std::span<const int> suffix_cap, Visit& visit) {
  const int sites = static_cast<int>(bound.size());
  if (site == sites - 1) {
    if (remaining <= bound[static_cast<std::size_t>(site)]) {
      current[static_cast<std::size_t>(site)] = remaining;
      visit(std::span<const int>(current));
    }
    return;
  }
  // Occupation at `site` ranges so that the tail can still absorb the rest.
  const int tail = suffix_cap[static_cast<std::size_t>(site) + 1];
  const int lo = remaining > tail ? remaining - tail : 0;
  const int hi = std::min(remaining, bound[static_cast<std::size_t>(site)]);
  for (int v = lo; v <= hi; ++v) {
    current[static_cast<std::size_t>(site)] = v;
    bounded_recurse(bound, site + 1, remaining - v, current, suffix_cap, visit);
  }
}
}  // namespace detail

template <class Visit>
void for_each_bounded(std::span<const int> bound, int total, Visit&& visit) {
  const int sites = static_cast<int>(bound.size());
  if (sites == 0) {
    if (total == 0) visit(std::span<const int>());
    return;
  }
  std::vector<int> suffix(static_cast<std::size_t>(sites) + 1, 0);
  for (int i = sites - 1; i >= 0; --i)
    suffix[static_cast<std::size_t>(i)] = suffix[static_cast<std::size_t>(i) + 1] + bound[static_cast<std::size_t>(i)];
  if (total < 0 || total > suffix[0]) return;
  std::vector<int> current(static_cast<std::size_t>(sites), 0);
  detail::bounded_recurse(bound, 0, total, current, std::span<const int>(suffix), visit);
}

}  // namespace bosonmf
