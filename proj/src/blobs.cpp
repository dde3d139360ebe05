#include "phylodist/blobs.hpp"

#include <algorithm>
#include <set>

#include "phylodist/error.hpp"

namespace phylo {

namespace {

struct BicompState {
  std::vector<int> disc, low;
  std::vector<std::pair<int, int>> edge_stack;
  std::vector<std::vector<std::pair<int, int>>> components;
  int timer = 0;
};

// Iterative Hopcroft-Tarjan; emits each biconnected component's edge list.
void biconnected_components(const Network& n, BicompState& st) {
  const int nv = n.vertex_count();
  st.disc.assign(nv, -1);
  st.low.assign(nv, 0);
  struct Frame {
    int v;
    int parent;
    size_t next_child;
  };
  for (int root = 0; root < nv; ++root) {
    if (st.disc[root] != -1) continue;
    std::vector<Frame> stack{{root, -1, 0}};
    st.disc[root] = st.low[root] = st.timer++;
    while (!stack.empty()) {
      Frame& f = stack.back();
      const auto& nbs = n.neighbors(f.v);
      if (f.next_child < nbs.size()) {
        const int w = nbs[f.next_child++];
        if (w == f.parent) continue;  // single parent edge; parallel edges are invalid
        if (st.disc[w] == -1) {
          st.edge_stack.emplace_back(f.v, w);
          st.disc[w] = st.low[w] = st.timer++;
          stack.push_back({w, f.v, 0});
        } else if (st.disc[w] < st.disc[f.v]) {
          st.edge_stack.emplace_back(f.v, w);
          st.low[f.v] = std::min(st.low[f.v], st.disc[w]);
        }
      } else {
        stack.pop_back();
        if (stack.empty()) continue;
        Frame& p = stack.back();
        st.low[p.v] = std::min(st.low[p.v], st.low[f.v]);
        if (st.low[f.v] >= st.disc[p.v]) {
          std::vector<std::pair<int, int>> comp;
          while (true) {
            auto e = st.edge_stack.back();
            st.edge_stack.pop_back();
            comp.push_back(e);
            if ((e.first == p.v && e.second == f.v)) break;
          }
          st.components.push_back(std::move(comp));
        }
      }
    }
  }
}

}  // namespace

std::vector<Blob> blobs(const Network& n) {
  std::vector<Blob> out;
  if (n.is_singleton()) return out;
  BicompState st;
  biconnected_components(n, st);

  for (auto& comp : st.components) {
    if (comp.size() < 2) continue;  // a single-edge component is a bridge
    Blob b;
    std::set<int> verts;
    for (auto& [u, v] : comp) {
      verts.insert(u);
      verts.insert(v);
      b.edges.emplace_back(std::min(u, v), std::max(u, v));
    }
    b.vertices.assign(verts.begin(), verts.end());
    std::sort(b.edges.begin(), b.edges.end());
    b.level = static_cast<int>(b.edges.size()) - (static_cast<int>(b.vertices.size()) - 1);

    std::set<std::pair<int, int>> in_blob(b.edges.begin(), b.edges.end());
    int nontrivial = 0;
    for (int u : b.vertices) {
      for (int w : n.neighbors(u)) {
        auto key = std::make_pair(std::min(u, w), std::max(u, w));
        if (in_blob.count(key)) continue;
        b.incident_cut_edges.emplace_back(u, w);
        if (!n.is_leaf(u) && !n.is_leaf(w)) ++nontrivial;
      }
    }
    std::sort(b.incident_cut_edges.begin(), b.incident_cut_edges.end());
    b.pendant = (nontrivial == 1);
    out.push_back(std::move(b));
  }
  // Deterministic order: by smallest vertex.
  std::sort(out.begin(), out.end(),
            [](const Blob& a, const Blob& b) { return a.vertices < b.vertices; });
  return out;
}

std::vector<std::pair<int, int>> bridges(const Network& n) {
  std::vector<std::pair<int, int>> out;
  if (n.is_singleton()) return out;
  BicompState st;
  biconnected_components(n, st);
  for (auto& comp : st.components) {
    if (comp.size() == 1) {
      auto [u, v] = comp.front();
      out.emplace_back(std::min(u, v), std::max(u, v));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool is_cut_edge(const Network& n, int u, int v) {
  if (!n.adjacent(u, v)) return false;
  auto br = bridges(n);
  return std::binary_search(br.begin(), br.end(),
                            std::make_pair(std::min(u, v), std::max(u, v)));
}

bool is_trivial_cut_edge(const Network& n, int u, int v) {
  return n.is_leaf(u) || n.is_leaf(v);
}

std::pair<std::vector<std::string>, std::vector<std::string>> cut_edge_partition(const Network& n,
                                                                                 int u, int v) {
  if (!is_cut_edge(n, u, v))
    throw Error(Code::NotACutEdge, "edge is not a cut-edge", Stage::validate);
  std::vector<char> vis(n.vertex_count(), 0);
  std::vector<int> stack{u};
  vis[u] = 1;
  while (!stack.empty()) {
    int w = stack.back();
    stack.pop_back();
    for (int x : n.neighbors(w)) {
      if ((w == u && x == v) || (w == v && x == u)) continue;
      if (!vis[x]) {
        vis[x] = 1;
        stack.push_back(x);
      }
    }
  }
  std::vector<std::string> yside, zside;
  for (const auto& lab : n.labels()) {
    (vis[n.leaf(lab)] ? yside : zside).push_back(lab);
  }
  return {yside, zside};
}

int network_level(const Network& n) {
  int level = 0;
  for (const auto& b : blobs(n)) level = std::max(level, b.level);
  return level;
}

}  // namespace phylo
