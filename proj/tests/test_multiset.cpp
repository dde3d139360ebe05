#include <doctest.h>

#include <random>

#include "oracle.hpp"
#include "phylodist/error.hpp"
#include "phylodist/multiset.hpp"

using phylo::Code;
using phylo::DistanceMultiset;
using phylo::Error;

TEST_CASE("shift subtracts entrywise") {
  DistanceMultiset a{4, 5, 6, 7};
  CHECK(multiset_shift(a, 2) == DistanceMultiset{2, 3, 4, 5});
  CHECK(multiset_shift(a, 0) == a);
  CHECK(multiset_shift(a, -1) == DistanceMultiset{5, 6, 7, 8});
}

TEST_CASE("shift underflow errors") {
  DistanceMultiset a{2};
  CHECK_THROWS_AS(multiset_shift(a, 3), Error);
  try {
    multiset_shift(a, 3);
  } catch (const Error& e) {
    CHECK(e.code() == Code::NegativeLength);
  }
}

TEST_CASE("sum adds multiplicities") {
  DistanceMultiset a{3, 6, 6};
  CHECK(multiset_sum(a, a) == DistanceMultiset{3, 3, 6, 6, 6, 6});
  CHECK(a.multiplicity(6) == 2);
  CHECK(a.size() == 3);
  CHECK(a.min() == 3);
  CHECK(a.str() == "3,6,6");
}

TEST_CASE("sum is commutative and associative") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    DistanceMultiset a, b, c;
    for (int i = 0; i < 5; ++i) {
      a.add(static_cast<int>(rng() % 10));
      b.add(static_cast<int>(rng() % 10));
      c.add(static_cast<int>(rng() % 10));
    }
    CHECK(multiset_sum(a, b) == multiset_sum(b, a));
    CHECK(multiset_sum(multiset_sum(a, b), c) == multiset_sum(a, multiset_sum(b, c)));
  }
}

TEST_CASE("partition_shifted forced single element") {
  DistanceMultiset m{4, 7};
  CHECK(partition_shifted(m, {2, 5}) == DistanceMultiset{2});
}

TEST_CASE("partition_shifted with duplicate offsets") {
  // {5,5,6,6} with offsets {3,3,4,4} has the unique base {2}, confirmed by
  // brute force over all candidate bases.
  DistanceMultiset m{5, 5, 6, 6};
  CHECK(partition_shifted(m, {3, 3, 4, 4}) == DistanceMultiset{2});
  auto bases = oracle::all_partition_bases({5, 5, 6, 6}, {3, 3, 4, 4});
  REQUIRE(bases.size() == 1);
  CHECK(bases.front() == std::vector<int>{2});
}

TEST_CASE("partition_shifted failures") {
  CHECK_THROWS_AS(partition_shifted(DistanceMultiset{4, 8}, {2, 5}), Error);
  try {
    partition_shifted(DistanceMultiset{4, 8}, {2, 5});
  } catch (const Error& e) {
    CHECK(e.code() == Code::NotPartitionable);
  }
  try {
    partition_shifted(DistanceMultiset{1, 2, 3}, {2, 5});
  } catch (const Error& e) {
    CHECK(e.code() == Code::BadSize);
  }
}

TEST_CASE("partition_shifted round-trips on random bases") {
  std::mt19937 rng(42);
  for (int trial = 0; trial < 300; ++trial) {
    const int parts = 2 + static_cast<int>(rng() % 3);
    std::vector<int> offsets;
    for (int i = 0; i < parts; ++i) offsets.push_back(static_cast<int>(rng() % 6));
    DistanceMultiset base;
    const int base_size = 1 + static_cast<int>(rng() % 5);
    for (int i = 0; i < base_size; ++i) base.add(static_cast<int>(rng() % 12));
    DistanceMultiset m;
    for (int o : offsets) m = multiset_sum(m, multiset_shift(base, -o));
    CHECK(partition_shifted(m, offsets) == base);
  }
}
