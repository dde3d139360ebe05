#include "phylodist/multiset.hpp"

#include <algorithm>

#include "phylodist/error.hpp"

namespace phylo {

DistanceMultiset::DistanceMultiset(std::initializer_list<int> lengths) {
  for (int l : lengths) add(l);
}

void DistanceMultiset::add(int length, std::int64_t count) {
  if (count <= 0) throw Error(Code::Internal, "non-positive multiplicity");
  if (length < 0) throw Error(Code::NegativeLength, "negative path length");
  entries_[length] += count;
}

std::int64_t DistanceMultiset::multiplicity(int length) const {
  auto it = entries_.find(length);
  return it == entries_.end() ? 0 : it->second;
}

std::int64_t DistanceMultiset::size() const {
  std::int64_t total = 0;
  for (const auto& [len, cnt] : entries_) total += cnt;
  return total;
}

int DistanceMultiset::min() const {
  if (entries_.empty()) throw Error(Code::Internal, "min of empty multiset");
  return entries_.begin()->first;
}

std::string DistanceMultiset::str() const {
  std::string out;
  for (const auto& [len, cnt] : entries_) {
    for (std::int64_t i = 0; i < cnt; ++i) {
      if (!out.empty()) out += ',';
      out += std::to_string(len);
    }
  }
  return out;
}

DistanceMultiset multiset_shift(const DistanceMultiset& a, int n) {
  DistanceMultiset out;
  for (const auto& [len, cnt] : a.entries()) {
    if (len - n < 0) {
      throw Error(Code::NegativeLength,
                  "shift by " + std::to_string(n) + " underflows entry " + std::to_string(len));
    }
    out.add(len - n, cnt);
  }
  return out;
}

DistanceMultiset multiset_sum(const DistanceMultiset& a, const DistanceMultiset& b) {
  DistanceMultiset out = a;
  for (const auto& [len, cnt] : b.entries()) out.add(len, cnt);
  return out;
}

DistanceMultiset partition_shifted(const DistanceMultiset& m, std::vector<int> offsets) {
  if (offsets.empty()) throw Error(Code::BadSize, "empty offset multiset");
  const auto p = static_cast<std::int64_t>(offsets.size());
  if (m.size() % p != 0) {
    throw Error(Code::BadSize, "multiset size " + std::to_string(m.size()) +
                                   " not divisible by " + std::to_string(p));
  }
  std::sort(offsets.begin(), offsets.end());
  std::map<int, std::int64_t> rem = m.entries();
  auto take = [&rem](int len) -> bool {
    auto it = rem.find(len);
    if (it == rem.end()) return false;
    if (--it->second == 0) rem.erase(it);
    return true;
  };
  DistanceMultiset base;
  while (!rem.empty()) {
    const int smallest = rem.begin()->first;
    const int b = smallest - offsets.front();
    if (b < 0) {
      throw Error(Code::NotPartitionable, "base element would be negative");
    }
    for (int o : offsets) {
      if (!take(b + o)) {
        throw Error(Code::NotPartitionable,
                    "required element " + std::to_string(b + o) + " absent");
      }
    }
    base.add(b);
  }
  return base;
}

}  // namespace phylo
