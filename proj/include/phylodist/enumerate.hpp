#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "phylodist/network.hpp"

namespace phylo {

struct EnumSpec {
  std::vector<std::string> labels;
  int max_edges = 20;
  int max_level = 2;
  std::int64_t store_cap = 500000;  // BudgetExceeded beyond this many networks
};

// Desk-scale cap on max_edges (override with PHYLODIST_ENUM_CAP).
int enumeration_edge_cap();

// Every network on the given labels with at most max_edges edges and level at
// most max_level, exactly once up to label-preserving isomorphism, in
// deterministic (edge count, canonical form) order. Levels 0-2 use recursive
// growth closed under leaf attachment and pendant-blob expansion; level >= 3
// falls back to the exhaustive generator and is capped accordingly.
std::vector<Network> enumerate_networks(const EnumSpec& spec);

// Exhaustive generate-all-graphs-and-filter engine over a fixed vertex budget;
// independent of the growth moves, used as the completeness oracle at small
// sizes. BudgetExceeded when max_edges > 12.
std::vector<Network> naive_enumerate(const EnumSpec& spec);

// Deterministic pseudo-random level-<=2 networks built from random reduction
// inverses: leaf attachments and pendant-blob expansions.
std::vector<Network> random_level2_networks(int count, int max_edges, std::uint64_t seed);

enum class MatrixKind { shortest, multiset };

struct CollisionGroup {
  std::string key;           // serialized matrix shared by the group
  std::vector<int> members;  // indices of pairwise non-isomorphic networks
};

struct CollisionReport {
  MatrixKind kind = MatrixKind::shortest;
  std::vector<CollisionGroup> groups;  // sorted by key
};

// Groups networks by serialized matrix and reports every group with at least
// two non-isomorphic members (one representative index per isomorphism class).
CollisionReport collision_scan(const std::vector<Network>& nets, MatrixKind kind);

}  // namespace phylo
