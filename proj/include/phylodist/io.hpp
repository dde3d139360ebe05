#pragma once

#include <string>

#include "phylodist/matrix.hpp"
#include "phylodist/network.hpp"

namespace phylo {

// Network text format, one network per file:
//   leaves: a,b,c          (comma-separated sorted labels)
//   u v                    (one edge per line, vertex name tokens)
// Degree-1 vertex names must all appear in the leaves line. Input labels in
// the reserved "_z" namespace are rejected.
Network parse_network(const std::string& text);

// Canonical form: internal vertices are renamed v0,v1,... in BFS order from
// the smallest leaf label (neighbours visited leaves-first, then by leaf
// distance signature), edges sorted. Round-trips bit-exactly.
std::string serialize_network(const Network& n);

// Matrix text format, one line per unordered pair, pairs sorted:
//   x y : 3,6,6            (multiset: ascending, multiplicity by repetition)
//   x y : 4                (shortest: a single integer)
// A single-leaf matrix is the degenerate "leaves: a" line.
MultisetMatrix parse_multiset_matrix(const std::string& text);
ShortestMatrix parse_shortest_matrix(const std::string& text);
std::string serialize_matrix(const MultisetMatrix& mm);
std::string serialize_matrix(const ShortestMatrix& sm);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace phylo
