#pragma once

#include <cstdint>
#include <initializer_list>
#include <map>
#include <string>
#include <vector>

namespace phylo {

// Finite multiset of path lengths (edge counts), kept as length -> multiplicity.
class DistanceMultiset {
 public:
  DistanceMultiset() = default;
  DistanceMultiset(std::initializer_list<int> lengths);

  void add(int length, std::int64_t count = 1);
  std::int64_t multiplicity(int length) const;
  std::int64_t size() const;  // total count, multiplicities included
  bool empty() const { return entries_.empty(); }
  int min() const;  // throws on empty

  const std::map<int, std::int64_t>& entries() const { return entries_; }

  bool operator==(const DistanceMultiset& other) const { return entries_ == other.entries_; }
  bool operator!=(const DistanceMultiset& other) const { return !(*this == other); }
  bool operator<(const DistanceMultiset& other) const { return entries_ < other.entries_; }

  // Ascending lengths, multiplicity by repetition: "3,6,6".
  std::string str() const;

 private:
  std::map<int, std::int64_t> entries_;
};

// A - n, entrywise; n may be negative (which adds). NegativeLength on underflow.
DistanceMultiset multiset_shift(const DistanceMultiset& a, int n);

// A + B, adding multiplicities.
DistanceMultiset multiset_sum(const DistanceMultiset& a, const DistanceMultiset& b);

// Unique base S with m = sum over offsets o of (S + o), recovered greedily from
// the smallest remaining element. BadSize if |m| is not divisible by the offset
// count, NotPartitionable if some required removal is absent.
DistanceMultiset partition_shifted(const DistanceMultiset& m, std::vector<int> offsets);

}  // namespace phylo
