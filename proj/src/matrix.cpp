#include "phylodist/matrix.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "phylodist/error.hpp"

namespace phylo {

namespace detail {

MatrixBase::MatrixBase(std::vector<std::string> labels) : labels_(std::move(labels)) {
  if (labels_.empty()) throw Error(Code::BadSize, "matrix needs at least one label");
  for (const auto& lab : labels_)
    if (!valid_label(lab)) throw Error(Code::BadLabel, "bad label " + lab);
  if (!std::is_sorted(labels_.begin(), labels_.end()) ||
      std::adjacent_find(labels_.begin(), labels_.end()) != labels_.end())
    throw Error(Code::Internal, "matrix labels must be sorted and distinct");
}

int MatrixBase::index(const std::string& label) const {
  auto it = std::lower_bound(labels_.begin(), labels_.end(), label);
  if (it == labels_.end() || *it != label)
    throw Error(Code::Internal, "label not in matrix: " + label);
  return static_cast<int>(it - labels_.begin());
}

bool MatrixBase::has_label(const std::string& label) const {
  return std::binary_search(labels_.begin(), labels_.end(), label);
}

int MatrixBase::cell_index(int i, int j) const {
  if (i == j) throw Error(Code::Internal, "diagonal cell access");
  if (i > j) std::swap(i, j);
  // Upper triangle, row-major.
  return i * (2 * n() - i - 1) / 2 + (j - i - 1);
}

}  // namespace detail

ShortestMatrix::ShortestMatrix(std::vector<std::string> labels)
    : MatrixBase(std::move(labels)), cells_(static_cast<size_t>(n()) * (n() - 1) / 2, 0) {}

int ShortestMatrix::at(const std::string& x, const std::string& y) const {
  return at(index(x), index(y));
}
int ShortestMatrix::at(int i, int j) const { return i == j ? 0 : cells_[cell_index(i, j)]; }
void ShortestMatrix::set(const std::string& x, const std::string& y, int v) {
  set(index(x), index(y), v);
}
void ShortestMatrix::set(int i, int j, int v) {
  if (v < 0) throw Error(Code::NegativeLength, "negative distance");
  cells_[cell_index(i, j)] = v;
}

MultisetMatrix::MultisetMatrix(std::vector<std::string> labels)
    : MatrixBase(std::move(labels)), diag_{0},
      cells_(static_cast<size_t>(n()) * (n() - 1) / 2) {}

const DistanceMultiset& MultisetMatrix::at(const std::string& x, const std::string& y) const {
  return at(index(x), index(y));
}
const DistanceMultiset& MultisetMatrix::at(int i, int j) const {
  return i == j ? diag_ : cells_[cell_index(i, j)];
}
void MultisetMatrix::set(const std::string& x, const std::string& y, DistanceMultiset v) {
  set(index(x), index(y), std::move(v));
}
void MultisetMatrix::set(int i, int j, DistanceMultiset v) {
  cells_[cell_index(i, j)] = std::move(v);
}

DistanceMultiset simple_path_lengths(const Network& n, int from, int to) {
  DistanceMultiset out;
  if (from == to) {
    out.add(0);
    return out;
  }
  std::vector<char> on_path(n.vertex_count(), 0);
  // Depth-first over simple paths; leaves other than the target are dead ends.
  struct Frame {
    int v;
    size_t next;
  };
  std::vector<Frame> stack{{from, 0}};
  on_path[from] = 1;
  int depth = 0;
  while (!stack.empty()) {
    Frame& f = stack.back();
    const auto& nbs = n.neighbors(f.v);
    if (f.next < nbs.size()) {
      const int w = nbs[f.next++];
      if (w == to) {
        out.add(depth + 1);
        continue;
      }
      if (on_path[w] || n.is_leaf(w)) continue;
      on_path[w] = 1;
      ++depth;
      stack.push_back({w, 0});
    } else {
      on_path[f.v] = 0;
      --depth;
      stack.pop_back();
    }
  }
  return out;
}

MultisetMatrix multiset_matrix(const Network& n) {
  MultisetMatrix mm(n.labels());
  const int k = mm.n();
  for (int i = 0; i < k; ++i) {
    for (int j = i + 1; j < k; ++j) {
      mm.set(i, j, simple_path_lengths(n, n.leaf(mm.labels()[i]), n.leaf(mm.labels()[j])));
    }
  }
  return mm;
}

ShortestMatrix shortest_matrix(const Network& n) {
  ShortestMatrix sm(n.labels());
  const int k = sm.n();
  for (int i = 0; i < k; ++i) {
    std::vector<int> dist(n.vertex_count(), -1);
    std::vector<int> queue{n.leaf(sm.labels()[i])};
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
    for (int j = i + 1; j < k; ++j) sm.set(i, j, dist[n.leaf(sm.labels()[j])]);
  }
  return sm;
}

ShortestMatrix mins(const MultisetMatrix& mm) {
  ShortestMatrix sm(mm.labels());
  for (int i = 0; i < mm.n(); ++i)
    for (int j = i + 1; j < mm.n(); ++j) sm.set(i, j, mm.at(i, j).min());
  return sm;
}

std::vector<std::pair<std::string, std::string>> cherries(const MultisetMatrix& mm) {
  std::vector<std::pair<std::string, std::string>> out;
  const DistanceMultiset two{2};
  for (int i = 0; i < mm.n(); ++i)
    for (int j = i + 1; j < mm.n(); ++j)
      if (mm.at(i, j) == two) out.emplace_back(mm.labels()[i], mm.labels()[j]);
  return out;
}

std::vector<std::pair<std::string, std::string>> cherries(const ShortestMatrix& sm) {
  std::vector<std::pair<std::string, std::string>> out;
  for (int i = 0; i < sm.n(); ++i)
    for (int j = i + 1; j < sm.n(); ++j)
      if (sm.at(i, j) == 2) out.emplace_back(sm.labels()[i], sm.labels()[j]);
  return out;
}

namespace {

// Adjacency lists of the distance-3 relation on leaves.
std::vector<std::vector<int>> d3_graph(const ShortestMatrix& sm) {
  std::vector<std::vector<int>> g(sm.n());
  for (int i = 0; i < sm.n(); ++i)
    for (int j = i + 1; j < sm.n(); ++j)
      if (sm.at(i, j) == 3) {
        g[i].push_back(j);
        g[j].push_back(i);
      }
  return g;
}

}  // namespace

std::vector<Chain> chains(const ShortestMatrix& sm) {
  const auto g = d3_graph(sm);
  const int k = sm.n();
  for (int i = 0; i < k; ++i) {
    if (g[i].size() > 2)
      throw Error(Code::InconsistentChains, "leaf " + sm.labels()[i] + " has three chain partners",
                  Stage::validate);
  }
  std::vector<char> used(k, 0);
  std::vector<Chain> out;
  // Walk each path component from an endpoint.
  for (int i = 0; i < k; ++i) {
    if (used[i] || g[i].size() == 2) continue;
    Chain c;
    int prev = -1, cur = i;
    while (cur != -1) {
      used[cur] = 1;
      c.leaves.push_back(sm.labels()[cur]);
      int next = -1;
      for (int w : g[cur])
        if (w != prev) next = w;
      prev = cur;
      cur = next;
    }
    if (c.leaves.back() < c.leaves.front()) std::reverse(c.leaves.begin(), c.leaves.end());
    out.push_back(std::move(c));
  }
  for (int i = 0; i < k; ++i) {
    if (!used[i])
      throw Error(Code::InconsistentChains, "distance-3 relation contains a cycle",
                  Stage::validate);
  }
  std::sort(out.begin(), out.end(),
            [](const Chain& a, const Chain& b) { return a.leaves < b.leaves; });
  return out;
}

std::optional<std::vector<std::string>> cyclic_chain_order(const ShortestMatrix& sm) {
  const int k = sm.n();
  if (k < 3) return std::nullopt;
  const auto g = d3_graph(sm);
  for (int i = 0; i < k; ++i)
    if (g[i].size() != 2) return std::nullopt;
  // Must be a single cycle through all leaves.
  std::vector<std::string> order;
  std::vector<char> used(k, 0);
  int prev = -1, cur = 0;
  while (!used[cur]) {
    used[cur] = 1;
    order.push_back(sm.labels()[cur]);
    int next = -1;
    for (int w : g[cur])
      if (w != prev) next = w;
    prev = cur;
    cur = next;
  }
  if (static_cast<int>(order.size()) != k || cur != 0) return std::nullopt;
  // Normalize: start at the smallest label (index 0 already is), walk towards
  // its smaller neighbour.
  if (order.size() >= 3 && order[1] > order.back())
    std::reverse(order.begin() + 1, order.end());
  return order;
}

Adjacency adjacency(const ShortestMatrix& sm, const Chain& c1, const Chain& c2) {
  const auto d = [&](const std::string& x, const std::string& y) { return sm.at(x, y); };
  const bool straight = d(c1.front(), c2.front()) == 4 && d(c1.back(), c2.back()) == 4;
  const bool crossed = d(c1.front(), c2.back()) == 4 && d(c1.back(), c2.front()) == 4;
  // For a pair of single-leaf chains both tests degenerate to d(a,b) = 4; the
  // shortest matrix cannot tell once from twice there. adjacency_multiplicity
  // resolves it from the multisets.
  if (straight || crossed) return Adjacency::twice;
  for (const auto& x : {c1.front(), c1.back()})
    for (const auto& y : {c2.front(), c2.back()})
      if (d(x, y) == 4) return Adjacency::once;
  return Adjacency::none;
}

int adjacency_multiplicity(const MultisetMatrix& mm, const Chain& c1, const Chain& c2) {
  std::set<std::pair<std::string, std::string>> cells;
  for (const auto& x : {c1.front(), c1.back()})
    for (const auto& y : {c2.front(), c2.back()})
      cells.insert({std::min(x, y), std::max(x, y)});
  std::int64_t total = 0;
  for (const auto& [x, y] : cells) total += mm.at(x, y).multiplicity(4);
  return static_cast<int>(total);
}

}  // namespace phylo
