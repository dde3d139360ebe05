#include "phylodist/network.hpp"

#include <algorithm>
#include <set>

#include "phylodist/error.hpp"

namespace phylo {

bool valid_label(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s) {
    const bool ok = (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') ||
                    (c >= '0' && c <= '9') || c == '_';
    if (!ok) return false;
  }
  return true;
}

bool reserved_label(const std::string& s) { return s.rfind("_z", 0) == 0; }

std::string fresh_reduction_label(const std::vector<std::string>& labels) {
  int next = 0;
  for (const auto& lab : labels) {
    if (lab.rfind("_z", 0) != 0) continue;
    int value = 0;
    bool numeric = lab.size() > 2;
    for (size_t i = 2; i < lab.size(); ++i) {
      if (lab[i] < '0' || lab[i] > '9') {
        numeric = false;
        break;
      }
      value = value * 10 + (lab[i] - '0');
    }
    if (numeric) next = std::max(next, value + 1);
  }
  return "_z" + std::to_string(next);
}

int Network::leaf(const std::string& label) const {
  auto it = leaf_of_.find(label);
  if (it == leaf_of_.end()) throw Error(Code::Internal, "unknown leaf label " + label);
  return it->second;
}

std::vector<std::pair<int, int>> Network::edges() const {
  std::vector<std::pair<int, int>> out;
  out.reserve(edge_count_);
  for (int u = 0; u < vertex_count(); ++u) {
    for (int v : adj_[u]) {
      if (u < v) out.emplace_back(u, v);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool Network::adjacent(int u, int v) const {
  const auto& nb = adj_[u];
  return std::find(nb.begin(), nb.end(), v) != nb.end();
}

Network Network::singleton(const std::string& label) {
  if (!valid_label(label)) throw Error(Code::BadLabel, "bad label " + label, Stage::validate);
  Network n;
  n.adj_.resize(1);
  n.vertex_label_.push_back(label);
  n.labels_.push_back(label);
  n.leaf_of_[label] = 0;
  n.edge_count_ = 0;
  return n;
}

Network Network::from_adjacency(std::vector<std::vector<int>> adj,
                                std::vector<std::string> vertex_label) {
  const int nv = static_cast<int>(adj.size());
  if (nv == 0) throw Error(Code::BadSize, "empty graph", Stage::validate);
  if (static_cast<int>(vertex_label.size()) != nv)
    throw Error(Code::Internal, "label vector size mismatch");

  Network n;
  if (nv == 1) {
    if (!adj[0].empty()) throw Error(Code::NotSimple, "loop on singleton", Stage::validate);
    if (vertex_label[0].empty())
      throw Error(Code::UnlabeledLeaf, "singleton vertex must carry a label", Stage::validate);
    return singleton(vertex_label[0]);
  }

  // Simple graph: no loops, no parallel edges.
  int edge_ends = 0;
  for (int u = 0; u < nv; ++u) {
    std::set<int> seen;
    for (int v : adj[u]) {
      if (v == u) throw Error(Code::NotSimple, "loop at v" + std::to_string(u), Stage::validate);
      if (v < 0 || v >= nv) throw Error(Code::Internal, "vertex id out of range");
      if (!seen.insert(v).second)
        throw Error(Code::NotSimple, "parallel edge at v" + std::to_string(u), Stage::validate);
    }
    edge_ends += static_cast<int>(adj[u].size());
  }
  // Symmetry of the adjacency lists.
  for (int u = 0; u < nv; ++u) {
    for (int v : adj[u]) {
      const auto& back = adj[v];
      if (std::find(back.begin(), back.end(), u) == back.end())
        throw Error(Code::Internal, "asymmetric adjacency");
    }
  }

  // Degrees 1 or 3; degree-1 vertices are exactly the labelled ones.
  for (int u = 0; u < nv; ++u) {
    const int d = static_cast<int>(adj[u].size());
    if (d != 1 && d != 3)
      throw Error(Code::BadDegree, "vertex v" + std::to_string(u) + " has degree " + std::to_string(d),
                  Stage::validate);
    if (d == 1 && vertex_label[u].empty())
      throw Error(Code::UnlabeledLeaf, "degree-1 vertex v" + std::to_string(u) + " unlabeled",
                  Stage::validate);
    if (d == 3 && !vertex_label[u].empty())
      throw Error(Code::BadDegree, "internal vertex v" + std::to_string(u) + " carries label",
                  Stage::validate);
  }

  // Connectivity.
  std::vector<char> vis(nv, 0);
  std::vector<int> stack{0};
  vis[0] = 1;
  int reached = 1;
  while (!stack.empty()) {
    int u = stack.back();
    stack.pop_back();
    for (int v : adj[u]) {
      if (!vis[v]) {
        vis[v] = 1;
        ++reached;
        stack.push_back(v);
      }
    }
  }
  if (reached != nv) throw Error(Code::Disconnected, "graph is disconnected", Stage::validate);

  // Labels distinct and well-formed.
  for (int u = 0; u < nv; ++u) {
    const auto& lab = vertex_label[u];
    if (lab.empty()) continue;
    if (!valid_label(lab)) throw Error(Code::BadLabel, "bad label " + lab, Stage::validate);
    if (n.leaf_of_.count(lab))
      throw Error(Code::DuplicateLabel, "duplicate label " + lab, Stage::validate);
    n.leaf_of_[lab] = u;
    n.labels_.push_back(lab);
  }
  std::sort(n.labels_.begin(), n.labels_.end());
  for (auto& a : adj) std::sort(a.begin(), a.end());
  n.adj_ = std::move(adj);
  n.vertex_label_ = std::move(vertex_label);
  n.edge_count_ = edge_ends / 2;
  return n;
}

Network Network::validate(const RawGraph& g) {
  std::set<std::string> leafset;
  for (const auto& lab : g.leaves) {
    if (!valid_label(lab)) throw Error(Code::BadLabel, "bad label " + lab, Stage::validate);
    if (!leafset.insert(lab).second)
      throw Error(Code::DuplicateLabel, "duplicate label " + lab, Stage::validate);
  }
  if (leafset.empty()) throw Error(Code::BadSize, "empty leaf set", Stage::validate);

  if (g.edges.empty()) {
    if (leafset.size() != 1)
      throw Error(Code::Disconnected, "no edges but several leaves", Stage::validate);
    return singleton(*leafset.begin());
  }

  std::map<std::string, int> id_of;
  std::vector<std::string> names;
  auto intern = [&](const std::string& name) {
    auto it = id_of.find(name);
    if (it != id_of.end()) return it->second;
    const int id = static_cast<int>(names.size());
    id_of[name] = id;
    names.push_back(name);
    return id;
  };
  std::vector<std::pair<int, int>> edges;
  for (const auto& [a, b] : g.edges) {
    if (!valid_label(a) || !valid_label(b))
      throw Error(Code::BadLabel, "bad vertex token " + a + " " + b, Stage::validate);
    edges.emplace_back(intern(a), intern(b));
  }
  const int nv = static_cast<int>(names.size());
  std::vector<std::vector<int>> adj(nv);
  for (auto [u, v] : edges) {
    if (u == v) throw Error(Code::NotSimple, "loop at " + names[u], Stage::validate);
    if (std::find(adj[u].begin(), adj[u].end(), v) != adj[u].end())
      throw Error(Code::NotSimple, "parallel edge " + names[u] + " " + names[v], Stage::validate);
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  std::vector<std::string> vlabel(nv);
  for (int u = 0; u < nv; ++u) {
    const bool declared = leafset.count(names[u]) > 0;
    const int d = static_cast<int>(adj[u].size());
    if (declared) {
      if (d != 1)
        throw Error(Code::BadDegree, "declared leaf " + names[u] + " has degree " + std::to_string(d),
                    Stage::validate);
      vlabel[u] = names[u];
    } else if (d == 1) {
      throw Error(Code::UnlabeledLeaf, "degree-1 vertex " + names[u] + " not in leaves line",
                  Stage::validate);
    } else if (d != 3) {
      throw Error(Code::BadDegree, "vertex " + names[u] + " has degree " + std::to_string(d),
                  Stage::validate);
    }
  }
  for (const auto& lab : leafset) {
    if (!id_of.count(lab))
      throw Error(Code::Disconnected, "declared leaf " + lab + " not present in edges",
                  Stage::validate);
  }
  return from_adjacency(std::move(adj), std::move(vlabel));
}

// ---- GraphBuilder ----

GraphBuilder::GraphBuilder(const Network& n) {
  const int nv = n.vertex_count();
  adj_.resize(nv);
  label_.resize(nv);
  dead_.assign(nv, false);
  for (int u = 0; u < nv; ++u) {
    adj_[u] = n.neighbors(u);
    label_[u] = n.label(u);
  }
}

int GraphBuilder::add_internal() {
  adj_.emplace_back();
  label_.emplace_back();
  dead_.push_back(false);
  return static_cast<int>(adj_.size()) - 1;
}

int GraphBuilder::add_leaf(const std::string& label) {
  const int v = add_internal();
  label_[v] = label;
  return v;
}

void GraphBuilder::add_edge(int u, int v) {
  adj_[u].push_back(v);
  adj_[v].push_back(u);
}

void GraphBuilder::remove_edge(int u, int v) {
  auto drop = [this](int a, int b) {
    auto& nb = adj_[a];
    auto it = std::find(nb.begin(), nb.end(), b);
    if (it == nb.end()) throw Error(Code::Internal, "edge to remove is absent");
    nb.erase(it);
  };
  drop(u, v);
  drop(v, u);
}

void GraphBuilder::remove_vertex(int v) {
  for (int nb : std::vector<int>(adj_[v])) remove_edge(v, nb);
  dead_[v] = true;
}

void GraphBuilder::make_internal(int v) { label_[v].clear(); }

int GraphBuilder::subdivide(int u, int v) {
  remove_edge(u, v);
  const int w = add_internal();
  add_edge(u, w);
  add_edge(w, v);
  return w;
}

int GraphBuilder::degree(int v) const { return static_cast<int>(adj_[v].size()); }

bool GraphBuilder::has_edge(int u, int v) const {
  return std::find(adj_[u].begin(), adj_[u].end(), v) != adj_[u].end();
}

void GraphBuilder::suppress_degree_two() {
  bool changed = true;
  while (changed) {
    changed = false;
    for (int v = 0; v < static_cast<int>(adj_.size()); ++v) {
      if (dead_[v] || adj_[v].size() != 2) continue;
      const int a = adj_[v][0];
      const int b = adj_[v][1];
      if (a == b) throw Error(Code::InvalidTarget, "suppression would create a loop");
      if (has_edge(a, b))
        throw Error(Code::InvalidTarget, "suppression would create a parallel edge");
      remove_vertex(v);
      add_edge(a, b);
      changed = true;
    }
  }
}

Network GraphBuilder::build() const { return build_mapped(nullptr); }

Network GraphBuilder::build_mapped(std::vector<int>* old_to_new) const {
  std::vector<int> remap(adj_.size(), -1);
  std::vector<std::vector<int>> adj;
  std::vector<std::string> labels;
  for (int v = 0; v < static_cast<int>(adj_.size()); ++v) {
    if (dead_[v]) continue;
    remap[v] = static_cast<int>(adj.size());
    adj.emplace_back();
    labels.push_back(label_[v]);
  }
  for (int v = 0; v < static_cast<int>(adj_.size()); ++v) {
    if (dead_[v]) continue;
    for (int nb : adj_[v]) adj[remap[v]].push_back(remap[nb]);
  }
  if (old_to_new) *old_to_new = remap;
  return Network::from_adjacency(std::move(adj), std::move(labels));
}

}  // namespace phylo
