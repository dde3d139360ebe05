#include "phylodist/enumerate.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <map>
#include <random>
#include <set>

#include "phylodist/blobs.hpp"
#include "phylodist/edit.hpp"
#include "phylodist/error.hpp"
#include "phylodist/io.hpp"
#include "phylodist/iso.hpp"
#include "phylodist/matrix.hpp"

namespace phylo {

int enumeration_edge_cap() {
  if (const char* env = std::getenv("PHYLODIST_ENUM_CAP")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  return 20;
}

namespace {

// Dedup store: cheap invariant bucket (edge count + shortest matrix), exact
// isomorphism fallback inside a bucket.
class NetworkStore {
 public:
  explicit NetworkStore(std::int64_t cap) : cap_(cap) {}

  bool insert(Network net) {
    const std::string key =
        std::to_string(net.edge_count()) + "|" + serialize_matrix(shortest_matrix(net));
    auto& bucket = buckets_[key];
    for (size_t idx : bucket)
      if (is_isomorphic(nets_[idx], net)) return false;
    if (static_cast<std::int64_t>(nets_.size()) >= cap_)
      throw Error(Code::BudgetExceeded, "enumeration store exceeded its cap", Stage::enumeration);
    bucket.push_back(nets_.size());
    nets_.push_back(std::move(net));
    return true;
  }

  const std::vector<Network>& nets() const { return nets_; }
  std::vector<Network> take_sorted() {
    std::vector<std::pair<std::pair<int, std::string>, size_t>> order;
    order.reserve(nets_.size());
    for (size_t i = 0; i < nets_.size(); ++i)
      order.push_back({{nets_[i].edge_count(), serialize_network(nets_[i])}, i});
    std::sort(order.begin(), order.end());
    std::vector<Network> out;
    out.reserve(nets_.size());
    for (const auto& [k, i] : order) out.push_back(std::move(nets_[i]));
    nets_.clear();
    buckets_.clear();
    return out;
  }

 private:
  std::int64_t cap_;
  std::vector<Network> nets_;
  std::map<std::string, std::vector<size_t>> buckets_;
};

// All permutations of `items`, filtered to perm <= reverse(perm).
std::vector<std::vector<std::string>> chain_orders(std::vector<std::string> items) {
  std::sort(items.begin(), items.end());
  std::vector<std::vector<std::string>> out;
  do {
    std::vector<std::string> rev(items.rbegin(), items.rend());
    if (items <= rev) out.push_back(items);
  } while (std::next_permutation(items.begin(), items.end()));
  return out;
}

// Ordered partitions of `items` into `parts` non-empty ordered blocks.
void ordered_partitions(const std::vector<std::string>& items, int parts,
                        std::vector<std::vector<std::vector<std::string>>>& out) {
  std::vector<int> assign(items.size(), 0);
  while (true) {
    std::vector<std::vector<std::string>> blocks(parts);
    for (size_t i = 0; i < items.size(); ++i) blocks[assign[i]].push_back(items[i]);
    bool all_nonempty = true;
    for (const auto& b : blocks) all_nonempty &= !b.empty();
    if (all_nonempty) {
      // Expand each block over its permutations.
      std::vector<std::vector<std::vector<std::string>>> perms(parts);
      for (int p = 0; p < parts; ++p) {
        auto block = blocks[p];
        std::sort(block.begin(), block.end());
        do {
          perms[p].push_back(block);
        } while (std::next_permutation(block.begin(), block.end()));
      }
      std::vector<int> pick(parts, 0);
      while (true) {
        std::vector<std::vector<std::string>> combo(parts);
        for (int p = 0; p < parts; ++p) combo[p] = perms[p][pick[p]];
        out.push_back(std::move(combo));
        int p = parts - 1;
        while (p >= 0 && ++pick[p] == static_cast<int>(perms[p].size())) pick[p--] = 0;
        if (p < 0) break;
      }
    }
    size_t i = 0;
    while (i < items.size() && ++assign[i] == parts) assign[i++] = 0;
    if (i == items.size()) break;
  }
}

// Every pendant-blob form whose chains use exactly the labels S.
std::vector<BlobForm> forms_on(const std::vector<std::string>& s, int max_level) {
  std::vector<BlobForm> out;
  if (max_level >= 1 && s.size() >= 2) {
    for (auto& order : chain_orders(s)) {
      BlobForm f;
      f.kind = BlobKind::L1Pendant;
      f.a = order;
      out.push_back(std::move(f));
    }
  }
  if (max_level < 2) return out;
  for (auto& order : chain_orders(s)) {
    BlobForm f;
    f.kind = BlobKind::L2_k000;
    f.a = order;
    out.push_back(std::move(f));
  }
  struct KindSpec {
    BlobKind kind;
    int parts;
  };
  const KindSpec specs[] = {{BlobKind::L2_kl00, 2}, {BlobKind::L2_k0m0, 2},
                            {BlobKind::L2_klm0, 3}, {BlobKind::L2_k0mn, 3},
                            {BlobKind::L2_klmn, 4}};
  for (const auto& spec : specs) {
    if (static_cast<int>(s.size()) < spec.parts) continue;
    std::vector<std::vector<std::vector<std::string>>> partitions;
    ordered_partitions(s, spec.parts, partitions);
    for (auto& blocks : partitions) {
      BlobForm f;
      f.kind = spec.kind;
      switch (spec.kind) {
        case BlobKind::L2_kl00: f.a = blocks[0]; f.b = blocks[1]; break;
        case BlobKind::L2_k0m0: f.a = blocks[0]; f.c = blocks[1]; break;
        case BlobKind::L2_klm0: f.a = blocks[0]; f.b = blocks[1]; f.c = blocks[2]; break;
        case BlobKind::L2_k0mn: f.a = blocks[0]; f.c = blocks[1]; f.d = blocks[2]; break;
        case BlobKind::L2_klmn:
          f.a = blocks[0];
          f.b = blocks[1];
          f.c = blocks[2];
          f.d = blocks[3];
          break;
        default: break;
      }
      out.push_back(std::move(f));
    }
  }
  return out;
}

int expansion_edge_delta(const BlobForm& f) {
  const int total = static_cast<int>(f.all_leaves().size());
  return f.kind == BlobKind::L1Pendant ? 2 * total + 1 : 2 * total + 4;
}

class Grower {
 public:
  Grower(int max_edges, int max_level, std::int64_t cap)
      : max_edges_(max_edges), max_level_(max_level), cap_(cap) {}

  const std::vector<Network>& all(std::vector<std::string> labels) {
    std::sort(labels.begin(), labels.end());
    auto it = memo_.find(labels);
    if (it != memo_.end()) return it->second;
    auto built = build(labels);
    return memo_.emplace(std::move(labels), std::move(built)).first->second;
  }

 private:
  std::vector<Network> build(const std::vector<std::string>& labels) {
    NetworkStore store(cap_);
    auto consider = [&](const Network& net) {
      if (net.edge_count() > max_edges_) return;
      if (network_level(net) > max_level_) return;
      store.insert(net);
    };

    const int ny = static_cast<int>(labels.size());
    if (ny == 1) {
      consider(Network::singleton(labels[0]));
    }
    if (ny == 2) {
      GraphBuilder g;
      const int a = g.add_leaf(labels[0]);
      const int b = g.add_leaf(labels[1]);
      g.add_edge(a, b);
      consider(g.build());
    }
    // Single-blob seeds.
    if (ny >= 3 && max_level_ >= 1 && 2 * ny <= max_edges_) {
      std::vector<std::string> rest(labels.begin() + 1, labels.end());
      std::sort(rest.begin(), rest.end());
      do {
        if (rest.size() >= 2 && rest.front() > rest.back()) continue;  // reflection dedup
        std::vector<std::string> order{labels[0]};
        order.insert(order.end(), rest.begin(), rest.end());
        consider(build_cycle_network(order));
      } while (std::next_permutation(rest.begin(), rest.end()));
    }
    if (ny >= 2 && max_level_ >= 2 && 2 * ny + 3 <= max_edges_) {
      for (int parts : {2, 3}) {
        if (ny < parts) continue;
        std::vector<std::vector<std::vector<std::string>>> partitions;
        ordered_partitions(labels, parts, partitions);
        for (const auto& blocks : partitions) consider(build_theta_network(blocks));
      }
    }
    // Leaf attachment from every one-smaller label set.
    if (ny >= 2) {
      for (const auto& y : labels) {
        std::vector<std::string> sub;
        for (const auto& lab : labels)
          if (lab != y) sub.push_back(lab);
        for (const Network& host : all(sub)) {
          if (host.edge_count() + 2 > max_edges_ && !host.is_singleton()) continue;
          if (host.is_singleton()) {
            consider(attach_leaf(host, {-1, -1}, y));
            continue;
          }
          for (auto e : host.edges()) consider(attach_leaf(host, e, y));
        }
      }
    }
    // Pendant-blob expansion from smaller label sets (the blob absorbs S).
    for (int mask = 1; mask < (1 << ny); ++mask) {
      const int popcount = __builtin_popcount(mask);
      if (popcount < 2 || popcount > ny - 1) continue;
      std::vector<std::string> s, host_labels;
      for (int i = 0; i < ny; ++i)
        (mask & (1 << i) ? s : host_labels).push_back(labels[i]);
      const std::string placeholder = s.front();  // min of S: labels are sorted
      host_labels.push_back(placeholder);
      std::sort(host_labels.begin(), host_labels.end());
      const auto forms = forms_on(s, max_level_);
      for (const Network& host : all(host_labels)) {
        if (host.is_singleton()) continue;
        for (const auto& form : forms) {
          if (host.edge_count() + expansion_edge_delta(form) > max_edges_) continue;
          consider(expand_leaf_to_blob(host, placeholder, form));
        }
      }
    }
    // Closure: single-leaf (1,0,0,0) expansions stay on the same label set.
    if (max_level_ >= 2) {
      for (size_t i = 0; i < store.nets().size(); ++i) {
        const Network net = store.nets()[i];
        if (net.is_singleton() || net.edge_count() + 6 > max_edges_) continue;
        for (const auto& leaf : net.labels()) {
          BlobForm f;
          f.kind = BlobKind::L2_k000;
          f.a = {leaf};
          consider(expand_leaf_to_blob(net, leaf, f));
        }
      }
    }
    return store.take_sorted();
  }

  int max_edges_;
  int max_level_;
  std::int64_t cap_;
  std::map<std::vector<std::string>, std::vector<Network>> memo_;
};

void check_spec(const EnumSpec& spec) {
  if (spec.labels.empty())
    throw Error(Code::BadSize, "enumeration needs at least one label", Stage::enumeration);
  std::set<std::string> seen;
  for (const auto& lab : spec.labels) {
    if (!valid_label(lab)) throw Error(Code::BadLabel, "bad label " + lab, Stage::enumeration);
    if (!seen.insert(lab).second)
      throw Error(Code::DuplicateLabel, "duplicate label " + lab, Stage::enumeration);
  }
  if (spec.max_edges > enumeration_edge_cap())
    throw Error(Code::BudgetExceeded,
                "max_edges " + std::to_string(spec.max_edges) + " exceeds the desk-scale cap " +
                    std::to_string(enumeration_edge_cap()),
                Stage::enumeration);
  if (spec.max_edges < 0 || spec.max_level < 0)
    throw Error(Code::BadSize, "negative enumeration budget", Stage::enumeration);
}

}  // namespace

std::vector<Network> enumerate_networks(const EnumSpec& spec) {
  check_spec(spec);
  if (spec.max_level >= 3) return naive_enumerate(spec);
  std::vector<std::string> labels = spec.labels;
  std::sort(labels.begin(), labels.end());
  Grower grower(spec.max_edges, spec.max_level, spec.store_cap);
  return grower.all(labels);
}

std::vector<Network> naive_enumerate(const EnumSpec& spec) {
  check_spec(spec);
  if (spec.max_edges > 12)
    throw Error(Code::BudgetExceeded, "exhaustive enumeration is capped at 12 edges",
                Stage::enumeration);
  std::vector<std::string> labels = spec.labels;
  std::sort(labels.begin(), labels.end());
  const int n = static_cast<int>(labels.size());
  NetworkStore store(spec.store_cap);

  if (n == 1) store.insert(Network::singleton(labels[0]));

  for (int internal = 0;; ++internal) {
    if ((3 * internal + n) % 2 != 0) continue;
    const int e = (3 * internal + n) / 2;
    if (e > spec.max_edges) break;
    if (e == 0) continue;
    const int v = n + internal;
    std::vector<std::pair<int, int>> cand;
    for (int a = 0; a < v; ++a)
      for (int b = a + 1; b < v; ++b) cand.emplace_back(a, b);
    std::vector<int> target(v, 3);
    for (int i = 0; i < n; ++i) target[i] = 1;
    std::vector<int> deg(v, 0);
    std::vector<std::pair<int, int>> chosen;

    std::function<void(int)> rec = [&](int from) {
      if (static_cast<int>(chosen.size()) == e) {
        for (int i = 0; i < v; ++i)
          if (deg[i] != target[i]) return;
        std::vector<std::vector<int>> adj(v);
        for (auto [a, b] : chosen) {
          adj[a].push_back(b);
          adj[b].push_back(a);
        }
        std::vector<std::string> vlabel(v);
        for (int i = 0; i < n; ++i) vlabel[i] = labels[i];
        try {
          Network net = Network::from_adjacency(std::move(adj), std::move(vlabel));
          if (network_level(net) <= spec.max_level) store.insert(std::move(net));
        } catch (const Error& err) {
          if (err.code() == Code::BudgetExceeded) throw;
          // disconnected candidates are simply skipped
        }
        return;
      }
      // Smallest vertex that can still gain edges; candidates whose first
      // endpoint passes it are unreachable fixes.
      int min_unsat = v;
      for (int i = 0; i < v; ++i)
        if (deg[i] < target[i]) {
          min_unsat = i;
          break;
        }
      for (int idx = from; idx < static_cast<int>(cand.size()); ++idx) {
        const auto [a, b] = cand[idx];
        if (a > min_unsat) break;
        if (deg[a] >= target[a] || deg[b] >= target[b]) continue;
        // Internal vertices enter in increasing order (symmetry breaking).
        if (b >= n && deg[b] == 0 && b > n && deg[b - 1] == 0) continue;
        deg[a]++;
        deg[b]++;
        chosen.push_back(cand[idx]);
        rec(idx + 1);
        chosen.pop_back();
        deg[a]--;
        deg[b]--;
      }
    };
    rec(0);
  }
  return store.take_sorted();
}

std::vector<Network> random_level2_networks(int count, int max_edges, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Network> out;
  auto rand_int = [&rng](int lo, int hi) {  // inclusive
    return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
  };
  while (static_cast<int>(out.size()) < count) {
    const int n_leaves = rand_int(3, 7);
    std::vector<std::string> labels;
    for (int i = 0; i < n_leaves; ++i) labels.push_back("t" + std::to_string(i));
    GraphBuilder g;
    const int a = g.add_leaf(labels[0]);
    const int b = g.add_leaf(labels[1]);
    g.add_edge(a, b);
    Network net = g.build();
    std::vector<std::string> pool(labels.begin() + 2, labels.end());
    bool dead = false;
    while (!pool.empty() && !dead) {
      const int op = rand_int(0, 2);
      if (op == 0 && net.edge_count() + 2 <= max_edges) {
        // Attach the next pooled leaf at a random edge.
        const auto edges = net.edges();
        net = attach_leaf(net, edges[rand_int(0, static_cast<int>(edges.size()) - 1)],
                          pool.back());
        pool.pop_back();
      } else if (op >= 1) {
        // Expand a random leaf into a random pendant blob, absorbing it plus
        // up to two pooled labels.
        const int extra = std::min<int>(rand_int(0, 2), static_cast<int>(pool.size()));
        const auto& existing = net.labels();
        const std::string z = existing[rand_int(0, static_cast<int>(existing.size()) - 1)];
        std::vector<std::string> borrowed;
        for (int i = 0; i < extra; ++i) {
          borrowed.push_back(pool.back());
          pool.pop_back();
        }
        std::vector<std::string> s{z};
        s.insert(s.end(), borrowed.begin(), borrowed.end());
        std::sort(s.begin(), s.end());
        auto forms = forms_on(s, 2);
        std::vector<BlobForm> feasible;
        for (auto& f : forms)
          if (net.edge_count() + expansion_edge_delta(f) <= max_edges)
            feasible.push_back(std::move(f));
        if (feasible.empty()) {
          // Return the borrowed labels and try a plain attach if possible.
          pool.insert(pool.end(), borrowed.begin(), borrowed.end());
          if (net.edge_count() + 2 > max_edges) dead = true;
          continue;
        }
        net = expand_leaf_to_blob(net, z, feasible[rand_int(0, static_cast<int>(feasible.size()) - 1)]);
      } else {
        dead = true;
      }
    }
    if (dead || !pool.empty()) continue;
    out.push_back(std::move(net));
  }
  return out;
}

CollisionReport collision_scan(const std::vector<Network>& nets, MatrixKind kind) {
  CollisionReport report;
  report.kind = kind;
  std::map<std::string, std::vector<int>> groups;
  for (int i = 0; i < static_cast<int>(nets.size()); ++i) {
    const std::string key = kind == MatrixKind::shortest
                                ? serialize_matrix(shortest_matrix(nets[i]))
                                : serialize_matrix(multiset_matrix(nets[i]));
    groups[key].push_back(i);
  }
  for (auto& [key, members] : groups) {
    if (members.size() < 2) continue;
    std::vector<int> reps;
    for (int idx : members) {
      bool dup = false;
      for (int rep : reps)
        if (is_isomorphic(nets[idx], nets[rep])) {
          dup = true;
          break;
        }
      if (!dup) reps.push_back(idx);
    }
    if (reps.size() >= 2) report.groups.push_back({key, std::move(reps)});
  }
  std::sort(report.groups.begin(), report.groups.end(),
            [](const CollisionGroup& a, const CollisionGroup& b) { return a.key < b.key; });
  return report;
}

}  // namespace phylo
