#include "phylodist/iso.hpp"

#include <algorithm>
#include <map>
#include <vector>

namespace phylo {

namespace {

// For every vertex, distances to each leaf in sorted-label order.
std::vector<std::vector<int>> leaf_distance_signatures(const Network& n) {
  const int nv = n.vertex_count();
  std::vector<std::vector<int>> sig(nv, std::vector<int>(n.labels().size(), -1));
  int li = 0;
  for (const auto& lab : n.labels()) {
    std::vector<int> dist(nv, -1);
    std::vector<int> queue{n.leaf(lab)};
    dist[queue[0]] = 0;
    for (size_t qi = 0; qi < queue.size(); ++qi) {
      const int u = queue[qi];
      for (int v : n.neighbors(u)) {
        if (dist[v] == -1) {
          dist[v] = dist[u] + 1;
          queue.push_back(v);
        }
      }
    }
    for (int v = 0; v < nv; ++v) sig[v][li] = dist[v];
    ++li;
  }
  return sig;
}

struct Matcher {
  const Network& a;
  const Network& b;
  std::vector<int> map_ab;  // a-vertex -> b-vertex or -1
  std::vector<char> used_b;
  std::vector<std::vector<int>> candidates;  // per a-vertex
  std::vector<int> order;                    // a-vertices in matching order

  bool extend(size_t idx) {
    if (idx == order.size()) return true;
    const int av = order[idx];
    for (int bv : candidates[av]) {
      if (used_b[bv]) continue;
      bool ok = true;
      for (int anb : a.neighbors(av)) {
        const int mapped = map_ab[anb];
        if (mapped != -1 && !b.adjacent(bv, mapped)) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      map_ab[av] = bv;
      used_b[bv] = 1;
      if (extend(idx + 1)) return true;
      map_ab[av] = -1;
      used_b[bv] = 0;
    }
    return false;
  }
};

}  // namespace

bool is_isomorphic(const Network& a, const Network& b) {
  if (a.labels() != b.labels()) return false;
  if (a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count()) return false;
  if (a.is_singleton()) return true;

  const auto sig_a = leaf_distance_signatures(a);
  const auto sig_b = leaf_distance_signatures(b);

  // Signature multisets must agree.
  {
    auto sa = sig_a;
    auto sb = sig_b;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    if (sa != sb) return false;
  }

  std::map<std::vector<int>, std::vector<int>> by_sig_b;
  for (int v = 0; v < b.vertex_count(); ++v)
    if (!b.is_leaf(v)) by_sig_b[sig_b[v]].push_back(v);

  Matcher m{a, b, std::vector<int>(a.vertex_count(), -1),
            std::vector<char>(b.vertex_count(), 0),
            std::vector<std::vector<int>>(a.vertex_count()), {}};

  // Leaves are forced by label.
  for (const auto& lab : a.labels()) {
    const int av = a.leaf(lab);
    const int bv = b.leaf(lab);
    if (sig_a[av] != sig_b[bv]) return false;
    m.map_ab[av] = bv;
    m.used_b[bv] = 1;
  }

  // Internal vertices in BFS order from the smallest leaf keeps mapped
  // neighbours available early for pruning.
  std::vector<char> seen(a.vertex_count(), 0);
  std::vector<int> queue{a.leaf(a.labels().front())};
  seen[queue[0]] = 1;
  for (size_t qi = 0; qi < queue.size(); ++qi) {
    const int u = queue[qi];
    if (!a.is_leaf(u)) m.order.push_back(u);
    for (int v : a.neighbors(u)) {
      if (!seen[v]) {
        seen[v] = 1;
        queue.push_back(v);
      }
    }
  }
  for (int av : m.order) {
    auto it = by_sig_b.find(sig_a[av]);
    if (it == by_sig_b.end()) return false;
    m.candidates[av] = it->second;
  }
  return m.extend(0);
}

}  // namespace phylo
