#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace phylo {

struct RawGraph {
  std::vector<std::string> leaves;  // declared leaf labels
  std::vector<std::pair<std::string, std::string>> edges;
};

// Unweighted unrooted binary phylogenetic network: simple connected graph whose
// degree-1 vertices are exactly the labelled leaves, every other vertex has
// degree 3. |X| = 1 is the singleton graph. Immutable after construction; edit
// operations return new values.
class Network {
 public:
  static Network validate(const RawGraph& g);
  static Network singleton(const std::string& label);
  // Checks all invariants; vertex names in errors are v<i>.
  static Network from_adjacency(std::vector<std::vector<int>> adj,
                                std::vector<std::string> vertex_label);

  int vertex_count() const { return static_cast<int>(adj_.size()); }
  int edge_count() const { return edge_count_; }
  int leaf_count() const { return static_cast<int>(labels_.size()); }
  int degree(int v) const { return static_cast<int>(adj_[v].size()); }
  bool is_leaf(int v) const { return !vertex_label_[v].empty(); }
  const std::string& label(int v) const { return vertex_label_[v]; }
  int leaf(const std::string& label) const;  // vertex id, throws if absent
  const std::vector<std::string>& labels() const { return labels_; }  // sorted
  const std::vector<int>& neighbors(int v) const { return adj_[v]; }
  std::vector<std::pair<int, int>> edges() const;  // u < v, sorted
  bool adjacent(int u, int v) const;
  bool is_singleton() const { return adj_.size() == 1; }

 private:
  Network() = default;
  std::vector<std::vector<int>> adj_;
  std::vector<std::string> vertex_label_;  // "" for internal vertices
  std::vector<std::string> labels_;
  std::map<std::string, int> leaf_of_;
  int edge_count_ = 0;
};

// Token over [A-Za-z0-9_], non-empty.
bool valid_label(const std::string& s);
// Labels beginning with "_z" are reserved for reduction bookkeeping.
bool reserved_label(const std::string& s);
// Next unused label from the reserved namespace: _z0, _z1, ...
std::string fresh_reduction_label(const std::vector<std::string>& labels);

// Mutable helper for constructing and editing; build() validates.
class GraphBuilder {
 public:
  GraphBuilder() = default;
  explicit GraphBuilder(const Network& n);  // copy an existing network

  int add_internal();
  int add_leaf(const std::string& label);
  void add_edge(int u, int v);
  void remove_edge(int u, int v);
  // Removes the vertex and its incident edges; ids are compacted on build.
  void remove_vertex(int v);
  // Turn a leaf vertex into an internal one (drops its label).
  void make_internal(int v);
  int subdivide(int u, int v);  // returns the new vertex on edge uv
  // Suppress all degree-2 vertices; throws InvalidTarget if a suppression
  // would create a loop or parallel edge.
  void suppress_degree_two();

  int degree(int v) const;
  bool has_edge(int u, int v) const;
  const std::string& label(int v) const { return label_[v]; }

  Network build() const;
  // Like build(), but also reports where each surviving old vertex went.
  Network build_mapped(std::vector<int>* old_to_new) const;

 private:
  std::vector<std::vector<int>> adj_;
  std::vector<std::string> label_;
  std::vector<bool> dead_;
};

}  // namespace phylo
