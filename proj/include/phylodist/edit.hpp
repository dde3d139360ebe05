#pragma once

#include <string>
#include <utility>
#include <vector>

#include "phylodist/blobs.hpp"
#include "phylodist/network.hpp"

namespace phylo {

// Pendant blob shapes. Level-2 blobs are theta-shaped: two poles w1, w2 joined
// by three sides. Role layout, with q the attachment of the non-trivial
// cut-edge:
//   side 1: w1 - chain a - w2            (k >= 1)
//   side 2: w1 - chain b - w2            (l >= 1) or the bare edge w1w2 (l = 0)
//   side 3: w1 - chain c - q - chain d - w2   (m, n >= 0)
// Chains are listed w1-to-w2 (so c_m is adjacent to q and d_1 is adjacent
// to q). L1Pendant is the (k+1)-cycle q p_1 ... p_k with chain a on it.
enum class BlobKind {
  L1Pendant,  // a only, k >= 2
  L2_k000,    // a
  L2_kl00,    // a, b
  L2_k0m0,    // a, c
  L2_klm0,    // a, b, c
  L2_k0mn,    // a, c, d
  L2_klmn,    // a, b, c, d
};

const char* blob_kind_name(BlobKind k);

struct BlobForm {
  BlobKind kind;
  std::vector<std::string> a, b, c, d;

  bool operator==(const BlobForm& other) const = default;
  std::vector<std::string> all_leaves() const;  // concatenated a,b,c,d
};

struct LeafDeletion {
  Network net;
  // The edge of `net` produced by suppressing the deleted leaf's neighbour;
  // attach_leaf at this edge inverts the deletion.
  std::pair<int, int> recorded_edge;
};

LeafDeletion delete_leaf(const Network& n, const std::string& leaf);

Network attach_leaf(const Network& n, std::pair<int, int> edge, const std::string& leaf);

struct BlobCollapse {
  Network net;
  BlobForm form;       // enough to invert via expand_leaf_to_blob
  std::string z;       // the replacement leaf
};

// Replaces a pendant blob (and its leaves) by the leaf z hung on the far end
// of the blob's non-trivial cut-edge.
BlobCollapse collapse_pendant_blob(const Network& n, const Blob& blob, const std::string& z);

// Inverse of collapse: replace leaf z by the pendant blob described by form.
// The chain labels in form may reuse z itself (but no other existing label).
Network expand_leaf_to_blob(const Network& n, const std::string& z, const BlobForm& form);

// Single-blob constructors. The cycle hosts one leaf per cycle vertex in the
// given cyclic order; the theta places one ordered chain per side (2 chains
// leave the third side bare).
Network build_cycle_network(const std::vector<std::string>& cyclic_order);
Network build_theta_network(const std::vector<std::vector<std::string>>& side_chains);

}  // namespace phylo
