#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "phylodist/matrix.hpp"
#include "phylodist/network.hpp"

namespace phylo {

// Reconstruction of level-1 networks from shortest distances, by cherry
// reduction, single-cycle detection and pendant-chain reduction. The result is
// verified against the input; non-realizable matrices raise
// NotRealizableLevel1 with the failing stage.
Network reconstruct_l1(const ShortestMatrix& sm);

// A maximal chain of length >= 2 whose endpoints are equidistant from every
// outside leaf; throws NoPendantChain when none qualifies.
Chain find_pendant_chain(const ShortestMatrix& sm, const std::vector<Chain>& chains);

// The cyclic leaf order when the whole matrix is one wrapped chain.
std::optional<std::vector<std::string>> detect_single_blob_l1(const ShortestMatrix& sm);

// Reduction bookkeeping (exposed for property tests on trace replay).
struct L1CherryStep {
  std::string x, y, z;
};
struct L1PendantChainStep {
  std::vector<std::string> chain;
  std::string z;
};
struct L1Step {
  std::variant<L1CherryStep, L1PendantChainStep> op;
  ShortestMatrix before;
};
struct L1Trace {
  std::vector<L1Step> steps;
};

// One reduction pass; returns the reduced matrix and appends to the trace.
ShortestMatrix l1_reduce_cherry(const ShortestMatrix& sm, const std::string& x,
                                const std::string& y, const std::string& z);
ShortestMatrix l1_reduce_pendant_chain(const ShortestMatrix& sm, const Chain& chain,
                                       const std::string& z);

}  // namespace phylo
