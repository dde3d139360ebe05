#include "phylodist/recon_l1.hpp"

#include <algorithm>
#include <set>

#include "phylodist/edit.hpp"
#include "phylodist/error.hpp"

namespace phylo {

namespace {

ShortestMatrix restricted_with(const ShortestMatrix& sm, const std::set<std::string>& drop,
                               const std::string& added) {
  std::vector<std::string> labels;
  for (const auto& lab : sm.labels())
    if (!drop.count(lab)) labels.push_back(lab);
  labels.push_back(added);
  std::sort(labels.begin(), labels.end());
  return ShortestMatrix(labels);
}

}  // namespace

std::optional<std::vector<std::string>> detect_single_blob_l1(const ShortestMatrix& sm) {
  // The wrap test presumes cherries were already reduced; a cherry makes the
  // distance-3 relation cyclic on tree matrices too (e.g. quartet trees).
  if (!cherries(sm).empty()) return std::nullopt;
  return cyclic_chain_order(sm);
}

Chain find_pendant_chain(const ShortestMatrix& sm, const std::vector<Chain>& chain_list) {
  for (const auto& c : chain_list) {
    if (c.length() < 2) continue;
    std::set<std::string> in_chain(c.leaves.begin(), c.leaves.end());
    bool ok = true;
    for (const auto& x : sm.labels()) {
      if (in_chain.count(x)) continue;
      if (sm.at(c.front(), x) != sm.at(c.back(), x)) {
        ok = false;
        break;
      }
    }
    if (ok) return c;
  }
  throw Error(Code::NoPendantChain, "no chain passes the pendant-blob equality test",
              Stage::pendant_l1);
}

ShortestMatrix l1_reduce_cherry(const ShortestMatrix& sm, const std::string& x,
                                const std::string& y, const std::string& z) {
  if (sm.at(x, y) != 2) throw Error(Code::NotACherry, "pair is not a cherry", Stage::cherry);
  ShortestMatrix out = restricted_with(sm, {x, y}, z);
  for (const auto& a : out.labels()) {
    for (const auto& b : out.labels()) {
      if (a >= b) continue;
      if (a == z || b == z) {
        const auto& other = (a == z) ? b : a;
        out.set(a, b, sm.at(x, other) - 1);
      } else {
        out.set(a, b, sm.at(a, b));
      }
    }
  }
  return out;
}

ShortestMatrix l1_reduce_pendant_chain(const ShortestMatrix& sm, const Chain& chain,
                                       const std::string& z) {
  std::set<std::string> drop(chain.leaves.begin(), chain.leaves.end());
  ShortestMatrix out = restricted_with(sm, drop, z);
  for (const auto& a : out.labels()) {
    for (const auto& b : out.labels()) {
      if (a >= b) continue;
      if (a == z || b == z) {
        const auto& other = (a == z) ? b : a;
        const int d = sm.at(chain.front(), other) - 2;
        if (d <= 0)
          throw Error(Code::NotRealizableLevel1, "pendant chain reduction underflow",
                      Stage::pendant_l1, Cell{chain.front(), other});
        out.set(a, b, d);
      } else {
        out.set(a, b, sm.at(a, b));
      }
    }
  }
  return out;
}

namespace {

// Expand one reduction step on the partially rebuilt network and verify the
// result against the matrix recorded before that reduction.
Network l1_expand(const L1Step& step, const Network& reduced) {
  Network out = reduced;
  if (const auto* ch = std::get_if<L1CherryStep>(&step.op)) {
    GraphBuilder g(out);
    const int zv = out.leaf(ch->z);
    g.make_internal(zv);
    const int xv = g.add_leaf(ch->x);
    const int yv = g.add_leaf(ch->y);
    if (out.is_singleton()) {
      // A lone leaf expands to the two-leaf edge's cherry parent; handled as
      // the plain two-leaf network.
      throw Error(Code::NotRealizableLevel1, "cherry expansion on a singleton", Stage::cherry);
    }
    g.add_edge(zv, xv);
    g.add_edge(zv, yv);
    out = g.build();
  } else {
    const auto& pc = std::get<L1PendantChainStep>(step.op);
    BlobForm form;
    form.kind = BlobKind::L1Pendant;
    form.a = pc.chain;
    out = expand_leaf_to_blob(out, pc.z, form);
  }
  if (shortest_matrix(out) != step.before) {
    throw Error(Code::NotRealizableLevel1, "expansion does not realize the recorded distances",
                Stage::verify);
  }
  return out;
}

}  // namespace

Network reconstruct_l1(const ShortestMatrix& sm0) {
  L1Trace trace;
  ShortestMatrix sm = sm0;

  Network base = Network::singleton("_z0");  // replaced below
  while (true) {
    const int n = sm.n();
    if (n == 1) {
      base = Network::singleton(sm.labels().front());
      break;
    }
    if (n == 2) {
      if (sm.at(0, 1) != 1)
        throw Error(Code::NotRealizableLevel1,
                    "two leaves at distance " + std::to_string(sm.at(0, 1)), Stage::small_base,
                    Cell{sm.labels()[0], sm.labels()[1]});
      GraphBuilder g;
      const int a = g.add_leaf(sm.labels()[0]);
      const int b = g.add_leaf(sm.labels()[1]);
      g.add_edge(a, b);
      base = g.build();
      break;
    }
    const auto cherry_pairs = cherries(sm);
    if (!cherry_pairs.empty()) {
      const auto& [x, y] = cherry_pairs.front();
      const std::string z = fresh_reduction_label(sm.labels());
      ShortestMatrix next = l1_reduce_cherry(sm, x, y, z);
      trace.steps.push_back({L1CherryStep{x, y, z}, sm});
      sm = std::move(next);
      continue;
    }
    if (auto order = detect_single_blob_l1(sm)) {
      base = build_cycle_network(*order);
      if (shortest_matrix(base) != sm)
        throw Error(Code::NotRealizableLevel1, "single-cycle candidate does not realize input",
                    Stage::single_blob);
      break;
    }
    std::vector<Chain> chain_list;
    try {
      chain_list = chains(sm);
    } catch (const Error& e) {
      throw Error(Code::NotRealizableLevel1, e.what(), Stage::single_blob);
    }
    Chain chain;
    try {
      chain = find_pendant_chain(sm, chain_list);
    } catch (const Error& e) {
      throw Error(Code::NotRealizableLevel1, e.what(), Stage::pendant_l1);
    }
    const std::string z = fresh_reduction_label(sm.labels());
    ShortestMatrix next = l1_reduce_pendant_chain(sm, chain, z);
    trace.steps.push_back({L1PendantChainStep{chain.leaves, z}, sm});
    sm = std::move(next);
  }

  Network net = base;
  for (auto it = trace.steps.rbegin(); it != trace.steps.rend(); ++it) net = l1_expand(*it, net);
  if (shortest_matrix(net) != sm0)
    throw Error(Code::NotRealizableLevel1, "reconstruction does not realize the input matrix",
                Stage::verify);
  return net;
}

}  // namespace phylo
