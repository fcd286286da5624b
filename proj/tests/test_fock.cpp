#include <cmath>
#include <set>

#include "doctest.h"

#include "bosonmf/fock.hpp"
#include "dimension_table.hpp"

using namespace bosonmf;

TEST_CASE("sector dimensions reproduce the published table") {
  for (int n = 1; n <= 20; ++n) {
    for (int k = 1; k <= 10; ++k) {
      CHECK(sector_dimension(k, n) == bosonmf_test::kDimensionTable[n - 1][k - 1]);
    }
  }
  CHECK(sector_dimension(10, 20) == 10015005u);
  CHECK(sector_dimension(1, 7) == 1u);
  CHECK(sector_dimension(5, 12) == 1820u);
  CHECK(sector_dimension(4, 0) == 1u);
}

TEST_CASE("dimension argument checks") {
  CHECK_THROWS(sector_dimension(0, 3));
  CHECK_THROWS(sector_dimension(3, -1));
  CHECK_THROWS_AS(sector_dimension(60, 200), std::overflow_error);
  CHECK(binomial(29, 9) == 10015005u);
  CHECK(binomial(5, 7) == 0u);
}

TEST_CASE("multi-index factorials") {
  const MultiIndex alpha{3, 0, 2};
  CHECK(alpha.length() == 5);
  CHECK(alpha.factorial() == 12u);
  CHECK(alpha.log_factorial() == doctest::Approx(std::log(12.0)).epsilon(1e-14));
  CHECK(log_factorial(0) == 0.0);
  CHECK(log_factorial(10) == doctest::Approx(std::log(3628800.0)).epsilon(1e-14));
  CHECK_THROWS_AS(MultiIndex({21}).factorial(), std::overflow_error);
  CHECK(MultiIndex({20}).factorial() == 2432902008176640000ull);
  CHECK_FALSE(MultiIndex({1, -1}).valid());
  CHECK(to_string(alpha) == "(3,0,2)");
}

TEST_CASE("shift moves one particle") {
  const MultiIndex alpha{1, 0, 2};
  CHECK(*shift(alpha, 2, 1) == MultiIndex{1, 1, 1});
  CHECK_FALSE(shift(alpha, 1, 0).has_value());
}

TEST_CASE("two sites two particles in lexicographic order") {
  const SectorBasis b(2, 2);
  REQUIRE(b.size() == 3);
  CHECK(b.at(0) == MultiIndex{0, 2});
  CHECK(b.at(1) == MultiIndex{1, 1});
  CHECK(b.at(2) == MultiIndex{2, 0});
  CHECK(SectorBasis(4, 3).size() == 20);
}

TEST_CASE("enumeration is complete, sorted and inverted by rank_of") {
  for (int k = 1; k <= 6; ++k) {
    for (int n = 0; n <= 6; ++n) {
      const SectorBasis b(k, n);
      REQUIRE(b.size() == sector_dimension(k, n));
      std::set<MultiIndex> seen;
      for (Index r = 0; r < b.size(); ++r) {
        const auto alpha = b.at(r);
        CHECK(alpha.length() == n);
        CHECK(alpha.valid());
        CHECK(b.rank_of(alpha) == r);
        if (r > 0) CHECK(b.at(r - 1) < alpha);
        CHECK(b.log_factorials()[r] == doctest::Approx(alpha.log_factorial()).epsilon(1e-14));
        for (int s = 0; s < k; ++s) CHECK(b.occupation(r, s) == alpha[s]);
        seen.insert(alpha);
      }
      CHECK(seen.size() == b.size());
    }
  }
}

TEST_CASE("rank lookup rejects foreign multi-indices") {
  const SectorBasis b(3, 4);
  CHECK_THROWS_AS(b.rank_of(MultiIndex{1, 1, 1}), SectorError);
  CHECK_THROWS_AS(b.rank_of(MultiIndex{4, 0}), SectorError);
  CHECK_THROWS_AS(b.rank_of(MultiIndex{5, -1, 0}), SectorError);
  const std::vector<int> occ{2, 2, 0};
  CHECK(b.find(occ).has_value());
  const std::vector<int> bad{2, 2, 1};
  CHECK_FALSE(b.find(bad).has_value());
}

TEST_CASE("large sector enumerates to the published size") {
  const SectorBasis b(10, 12);
  CHECK(b.size() == 293930u);
  CHECK(b.rank_of(b.at(b.size() - 1)) == b.size() - 1);
  CHECK(b.at(0) == MultiIndex{0, 0, 0, 0, 0, 0, 0, 0, 0, 12});
}

TEST_CASE("bounded enumeration visits every sub-multi-index once") {
  const std::vector<int> bound{2, 0, 3};
  int count = 0;
  std::vector<std::vector<int>> order;
  for_each_bounded(std::span<const int>(bound), 3, [&](std::span<const int> beta) {
    ++count;
    order.emplace_back(beta.begin(), beta.end());
    CHECK(beta[1] == 0);
    CHECK(beta[0] + beta[2] == 3);
  });
  REQUIRE(count == 3);
  CHECK(order[0] == std::vector<int>{0, 0, 3});
  CHECK(order[1] == std::vector<int>{1, 0, 2});
  CHECK(order[2] == std::vector<int>{2, 0, 1});
  int none = 0;
  for_each_bounded(std::span<const int>(bound), 6, [&](std::span<const int>) { ++none; });
  CHECK(none == 0);
}
