#pragma once

#include <string>
#include <utility>
#include <vector>

#include "phylodist/network.hpp"

namespace phylo {

// Hard-coded reference networks: the worked example (fig1), the
// shortest-distance collision pair (fig2), the multiset collision pair of
// level-3 networks (fig3), the four pendant-blob shapes behind the CAG
// patterns embedded in a minimal two-blob host (cag_a..cag_d), and the two
// adjacent-twice traps (fig6_left, fig6_right).
Network fixture(const std::string& name);

// fig2_pair / fig3_pair.
std::pair<Network, Network> fixture_pair(const std::string& name);

// Each cag fixture with one extra non-trivial cut-edge splitting its pendant
// blob (the pattern must then no longer match).
Network perturbed_cag_fixture(const std::string& name);

// All single-network fixture names, in CLI order.
std::vector<std::string> fixture_names();

}  // namespace phylo
