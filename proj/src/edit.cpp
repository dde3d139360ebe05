#include "phylodist/edit.hpp"

#include <algorithm>
#include <set>

#include "phylodist/error.hpp"

namespace phylo {

const char* blob_kind_name(BlobKind k) {
  switch (k) {
    case BlobKind::L1Pendant: return "l1-pendant";
    case BlobKind::L2_k000: return "l2-k000";
    case BlobKind::L2_kl00: return "l2-kl00";
    case BlobKind::L2_k0m0: return "l2-k0m0";
    case BlobKind::L2_klm0: return "l2-klm0";
    case BlobKind::L2_k0mn: return "l2-k0mn";
    case BlobKind::L2_klmn: return "l2-klmn";
  }
  return "?";
}

std::vector<std::string> BlobForm::all_leaves() const {
  std::vector<std::string> out = a;
  out.insert(out.end(), b.begin(), b.end());
  out.insert(out.end(), c.begin(), c.end());
  out.insert(out.end(), d.begin(), d.end());
  return out;
}

namespace {

void check_form(const BlobForm& f) {
  auto bad = [&](const char* why) {
    throw Error(Code::InvalidTarget, std::string("bad blob form: ") + why);
  };
  if (f.kind == BlobKind::L1Pendant) {
    if (f.a.size() < 2 || !f.b.empty() || !f.c.empty() || !f.d.empty())
      bad("level-1 pendant blob needs a single chain of length >= 2");
    return;
  }
  if (f.a.empty()) bad("role a must be non-empty");
  const bool hb = !f.b.empty(), hc = !f.c.empty(), hd = !f.d.empty();
  switch (f.kind) {
    case BlobKind::L2_k000: if (hb || hc || hd) bad("k000 takes only a"); break;
    case BlobKind::L2_kl00: if (!hb || hc || hd) bad("kl00 takes a,b"); break;
    case BlobKind::L2_k0m0: if (hb || !hc || hd) bad("k0m0 takes a,c"); break;
    case BlobKind::L2_klm0: if (!hb || !hc || hd) bad("klm0 takes a,b,c"); break;
    case BlobKind::L2_k0mn: if (hb || !hc || !hd) bad("k0mn takes a,c,d"); break;
    case BlobKind::L2_klmn: if (!hb || !hc || !hd) bad("klmn takes a,b,c,d"); break;
    default: bad("unknown kind");
  }
}

}  // namespace

LeafDeletion delete_leaf(const Network& n, const std::string& leaf) {
  if (n.is_singleton()) throw Error(Code::InvalidTarget, "cannot delete the only vertex");
  const int v = n.leaf(leaf);
  if (!n.is_leaf(v)) throw Error(Code::InvalidTarget, leaf + " is not a leaf");
  GraphBuilder g(n);
  const int p = n.neighbors(v).front();
  g.remove_vertex(v);
  if (n.leaf_count() == 2) {
    // Two-leaf edge collapses to the singleton on the remaining label.
    std::vector<int> remap;
    Network out = g.build_mapped(&remap);
    return {out, {-1, -1}};
  }
  // p had degree 3; record the suppressed edge.
  const auto nbs = n.neighbors(p);
  std::vector<int> others;
  for (int w : nbs)
    if (w != v) others.push_back(w);
  g.suppress_degree_two();
  std::vector<int> remap;
  Network out = g.build_mapped(&remap);
  return {out, {std::min(remap[others[0]], remap[others[1]]),
                std::max(remap[others[0]], remap[others[1]])}};
}

Network attach_leaf(const Network& n, std::pair<int, int> edge, const std::string& leaf) {
  if (!valid_label(leaf)) throw Error(Code::BadLabel, "bad label " + leaf);
  for (const auto& lab : n.labels())
    if (lab == leaf) throw Error(Code::DuplicateLabel, "label already present: " + leaf);
  if (n.is_singleton()) {
    GraphBuilder g(n);
    const int x = g.add_leaf(leaf);
    g.add_edge(0, x);
    return g.build();
  }
  if (!n.adjacent(edge.first, edge.second))
    throw Error(Code::InvalidTarget, "attachment edge does not exist");
  GraphBuilder g(n);
  const int p = g.subdivide(edge.first, edge.second);
  const int x = g.add_leaf(leaf);
  g.add_edge(p, x);
  return g.build();
}

BlobCollapse collapse_pendant_blob(const Network& n, const Blob& blob, const std::string& z) {
  if (!valid_label(z)) throw Error(Code::BadLabel, "bad label " + z);
  // The single non-trivial incident cut-edge.
  std::pair<int, int> cut{-1, -1};
  int nontrivial = 0;
  for (auto [u, w] : blob.incident_cut_edges) {
    if (!n.is_leaf(u) && !n.is_leaf(w)) {
      cut = {u, w};
      ++nontrivial;
    }
  }
  if (nontrivial != 1)
    throw Error(Code::InvalidTarget, "blob is not pendant (non-trivial cut-edges: " +
                                         std::to_string(nontrivial) + ")");
  const int q = cut.first;   // on the blob
  const int vout = cut.second;

  std::set<int> bverts(blob.vertices.begin(), blob.vertices.end());
  std::set<std::pair<int, int>> bedges(blob.edges.begin(), blob.edges.end());
  auto in_blob_edge = [&](int u, int w) {
    return bedges.count({std::min(u, w), std::max(u, w)}) > 0;
  };
  auto leaf_at = [&](int u) -> std::string {
    for (int w : n.neighbors(u))
      if (n.is_leaf(w)) return n.label(w);
    throw Error(Code::InvalidTarget, "blob side vertex without leaf");
  };

  BlobForm form;
  if (blob.level == 1) {
    // Cycle: walk from q around.
    std::vector<int> cyc_nbs;
    for (int w : n.neighbors(q))
      if (bverts.count(w) && in_blob_edge(q, w)) cyc_nbs.push_back(w);
    if (cyc_nbs.size() != 2) throw Error(Code::InvalidTarget, "degenerate level-1 blob");
    std::vector<std::string> chain;
    int prev = q, cur = cyc_nbs.front();
    while (cur != q) {
      chain.push_back(leaf_at(cur));
      int next = -1;
      for (int w : n.neighbors(cur))
        if (w != prev && bverts.count(w) && in_blob_edge(cur, w)) next = w;
      prev = cur;
      cur = next;
    }
    if (chain.size() >= 2 && chain.back() < chain.front())
      std::reverse(chain.begin(), chain.end());
    form.kind = BlobKind::L1Pendant;
    form.a = chain;
  } else if (blob.level == 2) {
    // Theta: two poles of blob-degree 3, three pole-to-pole sides.
    std::vector<int> poles;
    for (int u : blob.vertices) {
      int d = 0;
      for (int w : n.neighbors(u))
        if (in_blob_edge(u, w)) ++d;
      if (d == 3) poles.push_back(u);
    }
    if (poles.size() != 2) throw Error(Code::InvalidTarget, "level-2 blob is not theta-shaped");
    auto walk_sides = [&](int w1, int w2) {
      std::vector<std::vector<int>> sides;  // interior vertices w1 -> w2
      for (int start : n.neighbors(w1)) {
        if (!bverts.count(start) || !in_blob_edge(w1, start)) continue;
        std::vector<int> side;
        int prev = w1, cur = start;
        while (cur != w2) {
          side.push_back(cur);
          int next = -1;
          for (int w : n.neighbors(cur))
            if (w != prev && bverts.count(w) && in_blob_edge(cur, w)) next = w;
          prev = cur;
          cur = next;
        }
        sides.push_back(std::move(side));
      }
      return sides;
    };
    // Build candidate forms for both pole orientations, keep the smaller.
    std::vector<BlobForm> cands;
    for (int flip = 0; flip < 2; ++flip) {
      const int w1 = poles[flip], w2 = poles[1 - flip];
      auto sides = walk_sides(w1, w2);
      if (sides.size() != 3) throw Error(Code::InvalidTarget, "theta side walk failed");
      int qside = -1;
      for (int s = 0; s < 3; ++s)
        for (int u : sides[s])
          if (u == q) qside = s;
      if (qside == -1) throw Error(Code::InvalidTarget, "cut attachment on a pole");
      BlobForm f;
      f.kind = BlobKind::L2_klmn;  // fixed below
      std::vector<std::vector<std::string>> rest;
      for (int s = 0; s < 3; ++s) {
        if (s == qside) continue;
        std::vector<std::string> chain;
        for (int u : sides[s]) chain.push_back(leaf_at(u));
        rest.push_back(std::move(chain));
      }
      // Empty non-cut side carries no chain; a is the non-empty one.
      std::sort(rest.begin(), rest.end(), [](const auto& x, const auto& y) {
        if (x.empty() != y.empty()) return !x.empty();
        return x < y;
      });
      f.a = rest[0];
      f.b = rest[1];
      bool before = true;
      for (int u : sides[qside]) {
        if (u == q) {
          before = false;
          continue;
        }
        (before ? f.c : f.d).push_back(leaf_at(u));
      }
      if (f.c.empty() && !f.d.empty()) continue;  // mirror orientation covers it
      if (f.a.empty()) throw Error(Code::InvalidTarget, "blob has two bare sides");
      const bool hb = !f.b.empty(), hc = !f.c.empty(), hd = !f.d.empty();
      f.kind = hd ? (hb ? BlobKind::L2_klmn : BlobKind::L2_k0mn)
                  : hc ? (hb ? BlobKind::L2_klm0 : BlobKind::L2_k0m0)
                       : (hb ? BlobKind::L2_kl00 : BlobKind::L2_k000);
      cands.push_back(std::move(f));
    }
    if (cands.empty()) throw Error(Code::InvalidTarget, "no orientation for blob collapse");
    std::sort(cands.begin(), cands.end(), [](const BlobForm& x, const BlobForm& y) {
      return std::tie(x.a, x.b, x.c, x.d) < std::tie(y.a, y.b, y.c, y.d);
    });
    form = cands.front();
  } else {
    throw Error(Code::InvalidTarget, "blob level exceeds 2");
  }

  GraphBuilder g(n);
  for (auto [u, w] : blob.incident_cut_edges) {
    if (n.is_leaf(w)) g.remove_vertex(w);
  }
  for (int u : blob.vertices) g.remove_vertex(u);
  const int zleaf = g.add_leaf(z);
  g.add_edge(vout, zleaf);
  std::vector<int> remap;
  Network out = g.build_mapped(&remap);
  return {out, form, z};
}

Network expand_leaf_to_blob(const Network& n, const std::string& z, const BlobForm& form) {
  check_form(form);
  const int zv = n.leaf(z);
  if (n.is_singleton()) throw Error(Code::InvalidTarget, "cannot expand a singleton");
  std::set<std::string> existing(n.labels().begin(), n.labels().end());
  existing.erase(z);  // z itself may be reused inside the blob
  std::set<std::string> fresh;
  for (const auto& lab : form.all_leaves()) {
    if (existing.count(lab)) throw Error(Code::DuplicateLabel, "label already present: " + lab);
    if (!fresh.insert(lab).second) throw Error(Code::DuplicateLabel, "repeated chain label " + lab);
  }

  GraphBuilder g(n);
  const int vout = n.neighbors(zv).front();
  g.remove_vertex(zv);
  const int q = g.add_internal();
  g.add_edge(vout, q);

  auto chain_path = [&g](int from, const std::vector<std::string>& chain, int to) {
    int cur = from;
    for (const auto& lab : chain) {
      const int p = g.add_internal();
      const int leaf = g.add_leaf(lab);
      g.add_edge(cur, p);
      g.add_edge(p, leaf);
      cur = p;
    }
    g.add_edge(cur, to);
  };

  if (form.kind == BlobKind::L1Pendant) {
    chain_path(q, form.a, q);  // the (k+1)-cycle through q
  } else {
    const int w1 = g.add_internal();
    const int w2 = g.add_internal();
    chain_path(w1, form.a, w2);
    if (form.b.empty()) {
      g.add_edge(w1, w2);
    } else {
      chain_path(w1, form.b, w2);
    }
    chain_path(w1, form.c, q);  // side 3 first half (possibly the bare edge w1-q)
    chain_path(q, form.d, w2);  // side 3 second half
  }
  return g.build();
}

Network build_cycle_network(const std::vector<std::string>& cyclic_order) {
  const int k = static_cast<int>(cyclic_order.size());
  if (k < 3) throw Error(Code::InvalidTarget, "cycle network needs at least three leaves");
  GraphBuilder g;
  std::vector<int> ring(k);
  for (int i = 0; i < k; ++i) ring[i] = g.add_internal();
  for (int i = 0; i < k; ++i) g.add_edge(ring[i], ring[(i + 1) % k]);
  for (int i = 0; i < k; ++i) g.add_edge(ring[i], g.add_leaf(cyclic_order[i]));
  return g.build();
}

Network build_theta_network(const std::vector<std::vector<std::string>>& side_chains) {
  if (side_chains.size() < 2 || side_chains.size() > 3)
    throw Error(Code::InvalidTarget, "theta network takes 2 or 3 chains");
  for (const auto& c : side_chains)
    if (c.empty()) throw Error(Code::InvalidTarget, "theta side chains must be non-empty");
  GraphBuilder g;
  const int w1 = g.add_internal();
  const int w2 = g.add_internal();
  for (const auto& chain : side_chains) {
    int cur = w1;
    for (const auto& lab : chain) {
      const int p = g.add_internal();
      g.add_edge(cur, p);
      g.add_edge(p, g.add_leaf(lab));
      cur = p;
    }
    g.add_edge(cur, w2);
  }
  if (side_chains.size() == 2) g.add_edge(w1, w2);
  return g.build();
}

}  // namespace phylo
