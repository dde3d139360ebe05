#pragma once

#include "phylodist/network.hpp"

namespace phylo {

// Label-preserving graph isomorphism: leaves are pre-matched by label,
// internal vertices by backtracking with leaf-distance-signature pruning.
bool is_isomorphic(const Network& a, const Network& b);

}  // namespace phylo
