#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "phylodist/edit.hpp"
#include "phylodist/matrix.hpp"
#include "phylodist/network.hpp"

namespace phylo {

// Witness that leaf x sits outside every blob: the unique split (Y, Z) of the
// remaining leaves with d_m(y,z) = d_m(x,y) + d_m(x,z) - 2 across the split.
struct PartitionWitness {
  std::string x;
  std::vector<std::string> y_side, z_side;  // sorted, Y holds the smallest label
};

// Chain-adjacency graph: red edges from adjacency multiplicity, green edges
// counting specific length-5 endpoint paths between chains adjacent once.
struct CAG {
  std::vector<Chain> chains;
  std::map<std::pair<int, int>, int> red;    // i < j
  std::map<std::pair<int, int>, int> green;  // i < j, only when red == 1
};

// A matched pendant-blob pattern. For L2_k0m0 and L2_k0mn the division of the
// listed chains into roles is provisional until the side-identification step.
struct CagMatch {
  BlobKind kind;
  std::vector<Chain> members;  // in pattern order: {a,c} / {a,b,c} / {a,c,d} / {a,b,c,d}
};

// --- reduction steps (the ReductionTrace) ---
struct L2CherryStep {
  std::string x, y, z;
};
struct L2OffBlobStep {
  std::string x;
  std::vector<std::string> y_side, z_side;
  std::string ref_leaf;  // fixed reference for the reattachment distance test
  int ref_dm = 0;
};
struct L2PendantL1Step {
  std::vector<std::string> chain;
  std::string z;
};
struct L2PendantBlobStep {
  BlobForm form;  // role chains as detected; arrangement resolved at replay
  std::string z;
};
struct L2Step {
  std::variant<L2CherryStep, L2OffBlobStep, L2PendantL1Step, L2PendantBlobStep> op;
  MultisetMatrix before;
};
struct ReductionTrace {
  std::vector<L2Step> steps;
};

// --- detection and reduction primitives ---

std::pair<MultisetMatrix, L2CherryStep> reduce_cherry(const MultisetMatrix& mm,
                                                      const std::string& x, const std::string& y);

std::optional<PartitionWitness> detect_off_blob_leaf(const MultisetMatrix& mm);

std::pair<MultisetMatrix, L2OffBlobStep> remove_off_blob_leaf(const MultisetMatrix& mm,
                                                              const PartitionWitness& w);

// Reattachment at the unique cut-edge inducing (Y,Z) that restores the
// recorded shortest distance; NoValidReattachment otherwise.
Network reattach_off_blob_leaf(const Network& reduced, const L2OffBlobStep& step);

std::optional<std::pair<Chain, int>> detect_pendant_l1_chain(const MultisetMatrix& mm,
                                                             const std::vector<Chain>& chain_list);
std::pair<MultisetMatrix, L2PendantL1Step> reduce_pendant_l1(const MultisetMatrix& mm,
                                                             const Chain& chain);

std::optional<std::pair<Chain, int>> detect_pendant_l2_k000(const MultisetMatrix& mm,
                                                            const std::vector<Chain>& chain_list);
std::pair<MultisetMatrix, L2PendantBlobStep> reduce_pendant_l2_k000(const MultisetMatrix& mm,
                                                                    const Chain& chain);

std::optional<std::pair<Chain, Chain>> detect_pendant_l2_kl00(const MultisetMatrix& mm,
                                                              const std::vector<Chain>& chain_list);
std::pair<MultisetMatrix, L2PendantBlobStep> reduce_pendant_l2_kl00(const MultisetMatrix& mm,
                                                                    const Chain& a, const Chain& b);

CAG build_cag(const MultisetMatrix& mm, const std::vector<Chain>& chain_list);
std::optional<CagMatch> match_cag_patterns(const CAG& cag);

std::pair<MultisetMatrix, L2PendantBlobStep> orient_and_reduce_pendant_l2(const MultisetMatrix& mm,
                                                                          const CagMatch& match);

// --- base cases ---

// Single-blob reconstruction; the optional form returns nullopt when no
// verified single-blob arrangement exists, the plain form throws.
std::optional<Network> try_single_blob(const MultisetMatrix& mm);
Network single_blob_l2(const MultisetMatrix& mm);
Network single_blob_l2(const ShortestMatrix& sm);

// The degree-3 vertex of a three-leaf network's blob-tree, read off the
// pairwise distances mod 3: (2,2,2) plain vertex, (0,0,0) level-1 blob,
// (1,1,1) level-2 blob with the cut-edges on distinct sides, one 0 and two 1s
// a level-2 blob with the 0-pair's cut-edges sharing a side.
enum class BlobTreeCenter {
  internal_vertex,
  level1_blob,
  level2_distinct_sides,
  level2_shared_side,
};

struct CenterClassification {
  BlobTreeCenter kind;
  // For level2_shared_side: the two leaves reached from the shared side.
  std::pair<std::string, std::string> shared_pair;
};

// Classification for |X| = 3; nullopt when the residues fit no centre.
std::optional<CenterClassification> classify_blob_tree_center(const ShortestMatrix& sm);

// Level-2 networks on |X| <= 3 from shortest distances (blob-tree centre
// classified by the distance triple mod 3).
Network reconstruct_l2_small_shortest(const ShortestMatrix& sm);

// --- the full pipeline ---
Network reconstruct_l2(const MultisetMatrix& mm);

// Reduction phase only (exposed for trace-replay property tests): reduces mm
// to a base network plus the trace that rebuilds the input.
std::pair<Network, ReductionTrace> reduce_l2_to_base(const MultisetMatrix& mm);
// Replay one recorded step on the partially rebuilt network (verified against
// step.before).
Network replay_l2_step(const L2Step& step, const Network& reduced);

}  // namespace phylo
