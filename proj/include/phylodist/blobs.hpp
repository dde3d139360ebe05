#pragma once

#include <string>
#include <utility>
#include <vector>

#include "phylodist/network.hpp"

namespace phylo {

// Maximal 2-connected subgraph with at least three vertices.
struct Blob {
  std::vector<int> vertices;                         // sorted
  std::vector<std::pair<int, int>> edges;            // u < v, sorted
  int level = 0;                                     // |E| - (|V| - 1)
  std::vector<std::pair<int, int>> incident_cut_edges;  // (blob vertex, outside vertex)
  bool pendant = false;  // exactly one incident non-trivial cut-edge
};

std::vector<Blob> blobs(const Network& n);

// All cut-edges (bridges), u < v, sorted.
std::vector<std::pair<int, int>> bridges(const Network& n);

bool is_cut_edge(const Network& n, int u, int v);

// An edge is trivial when incident to a leaf.
bool is_trivial_cut_edge(const Network& n, int u, int v);

// Leaf labels reachable from u / from v after deleting the cut-edge uv.
std::pair<std::vector<std::string>, std::vector<std::string>> cut_edge_partition(const Network& n,
                                                                                 int u, int v);

// Max blob level, 0 for trees.
int network_level(const Network& n);

}  // namespace phylo
