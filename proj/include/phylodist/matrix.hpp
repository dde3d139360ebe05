#pragma once

#include <optional>
#include <string>
#include <vector>

#include "phylodist/multiset.hpp"
#include "phylodist/network.hpp"

namespace phylo {

namespace detail {
// Shared base: sorted labels + upper-triangular cell storage.
class MatrixBase {
 public:
  explicit MatrixBase(std::vector<std::string> labels);
  int n() const { return static_cast<int>(labels_.size()); }
  const std::vector<std::string>& labels() const { return labels_; }
  int index(const std::string& label) const;  // throws if absent
  bool has_label(const std::string& label) const;
  bool operator==(const MatrixBase& other) const = default;

 protected:
  int cell_index(int i, int j) const;  // i != j
  std::vector<std::string> labels_;
};
}  // namespace detail

class ShortestMatrix : public detail::MatrixBase {
 public:
  explicit ShortestMatrix(std::vector<std::string> labels);
  int at(const std::string& x, const std::string& y) const;  // 0 on the diagonal
  int at(int i, int j) const;
  void set(const std::string& x, const std::string& y, int v);
  void set(int i, int j, int v);
  bool operator==(const ShortestMatrix& other) const = default;

 private:
  std::vector<int> cells_;
};

class MultisetMatrix : public detail::MatrixBase {
 public:
  explicit MultisetMatrix(std::vector<std::string> labels);
  const DistanceMultiset& at(const std::string& x, const std::string& y) const;
  const DistanceMultiset& at(int i, int j) const;
  void set(const std::string& x, const std::string& y, DistanceMultiset v);
  void set(int i, int j, DistanceMultiset v);
  bool operator==(const MultisetMatrix& other) const = default;

 private:
  DistanceMultiset diag_;  // {0}
  std::vector<DistanceMultiset> cells_;
};

// Multiset of lengths of all simple paths between every leaf pair.
MultisetMatrix multiset_matrix(const Network& n);

// BFS shortest path length per pair.
ShortestMatrix shortest_matrix(const Network& n);

// Entrywise minimum of a multiset matrix.
ShortestMatrix mins(const MultisetMatrix& mm);

// All simple-path lengths between two vertices (internal helper, exposed for
// the oracle tests).
DistanceMultiset simple_path_lengths(const Network& n, int from, int to);

// Leaf pairs with d(x,y) = {2} / d_m(x,y) = 2, lexicographic.
std::vector<std::pair<std::string, std::string>> cherries(const MultisetMatrix& mm);
std::vector<std::pair<std::string, std::string>> cherries(const ShortestMatrix& sm);

struct Chain {
  std::vector<std::string> leaves;
  int length() const { return static_cast<int>(leaves.size()); }
  const std::string& front() const { return leaves.front(); }
  const std::string& back() const { return leaves.back(); }
  bool operator==(const Chain& other) const = default;
};

// Maximal chains under the consecutive-distance-3 relation, each oriented with
// the lexicographically smaller endpoint first, sorted by first leaf. Isolated
// leaves count as length-1 chains. InconsistentChains if the relation is not a
// disjoint union of simple paths.
std::vector<Chain> chains(const ShortestMatrix& sm);

// When the distance-3 relation forms one cycle through every leaf, the cyclic
// order (lexicographically normalized); otherwise nullopt.
std::optional<std::vector<std::string>> cyclic_chain_order(const ShortestMatrix& sm);

enum class Adjacency { none, once, twice };

// Endpoint distance-4 tests between two chains.
Adjacency adjacency(const ShortestMatrix& sm, const Chain& c1, const Chain& c2);

// Number of length-4 paths between chain ends, read off the multisets: the sum
// of the multiplicity of 4 over the distinct endpoint cells. Distinguishes
// single-leaf chains adjacent once from adjacent twice, which the shortest
// matrix alone cannot.
int adjacency_multiplicity(const MultisetMatrix& mm, const Chain& c1, const Chain& c2);

}  // namespace phylo
