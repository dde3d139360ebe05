#include "phylodist/recon_l2.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "phylodist/blobs.hpp"
#include "phylodist/error.hpp"
#include "phylodist/iso.hpp"

namespace phylo {

namespace {

// New matrix without `drop`, with fresh leaf z whose row comes from z_row.
MultisetMatrix reduced_matrix(const MultisetMatrix& mm, const std::set<std::string>& drop,
                              const std::string& z,
                              const std::function<DistanceMultiset(const std::string&)>& z_row) {
  std::vector<std::string> labels;
  for (const auto& lab : mm.labels())
    if (!drop.count(lab)) labels.push_back(lab);
  labels.push_back(z);
  std::sort(labels.begin(), labels.end());
  MultisetMatrix out(labels);
  for (const auto& a : labels) {
    for (const auto& b : labels) {
      if (a >= b) continue;
      if (a == z || b == z) {
        out.set(a, b, z_row(a == z ? b : a));
      } else {
        out.set(a, b, mm.at(a, b));
      }
    }
  }
  return out;
}

DistanceMultiset merged_cell(std::initializer_list<int> lengths) {
  DistanceMultiset out;
  for (int l : lengths) out.add(l);
  return out;
}

struct DSU {
  std::vector<int> parent;
  explicit DSU(int n) : parent(n) {
    for (int i = 0; i < n; ++i) parent[i] = i;
  }
  int find(int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

std::pair<MultisetMatrix, L2CherryStep> reduce_cherry(const MultisetMatrix& mm,
                                                      const std::string& x, const std::string& y) {
  if (mm.at(x, y) != DistanceMultiset{2})
    throw Error(Code::NotACherry, "cell is not {2}", Stage::cherry, Cell{x, y});
  const std::string z = fresh_reduction_label(mm.labels());
  MultisetMatrix out = reduced_matrix(
      mm, {x, y}, z, [&](const std::string& other) { return multiset_shift(mm.at(x, other), 1); });
  return {std::move(out), L2CherryStep{x, y, z}};
}

std::optional<PartitionWitness> detect_off_blob_leaf(const MultisetMatrix& mm) {
  if (mm.n() < 3) return std::nullopt;
  const ShortestMatrix sm = mins(mm);
  for (const auto& x : mm.labels()) {
    std::vector<std::string> others;
    for (const auto& lab : mm.labels())
      if (lab != x) others.push_back(lab);
    const int m = static_cast<int>(others.size());
    DSU dsu(m);
    for (int i = 0; i < m; ++i)
      for (int j = i + 1; j < m; ++j)
        if (sm.at(others[i], others[j]) != sm.at(x, others[i]) + sm.at(x, others[j]) - 2)
          dsu.unite(i, j);
    std::map<int, std::vector<std::string>> comps;
    for (int i = 0; i < m; ++i) comps[dsu.find(i)].push_back(others[i]);
    if (comps.size() != 2) continue;  // 1: conflict everywhere; >2: partition not unique
    PartitionWitness w;
    w.x = x;
    auto it = comps.begin();
    w.y_side = it->second;
    ++it;
    w.z_side = it->second;
    if (w.z_side.front() < w.y_side.front()) std::swap(w.y_side, w.z_side);
    return w;
  }
  return std::nullopt;
}

std::pair<MultisetMatrix, L2OffBlobStep> remove_off_blob_leaf(const MultisetMatrix& mm,
                                                              const PartitionWitness& w) {
  std::set<std::string> yside(w.y_side.begin(), w.y_side.end());
  std::vector<std::string> labels;
  for (const auto& lab : mm.labels())
    if (lab != w.x) labels.push_back(lab);
  MultisetMatrix out(labels);
  for (const auto& a : labels) {
    for (const auto& b : labels) {
      if (a >= b) continue;
      const bool cross = yside.count(a) != yside.count(b);
      out.set(a, b, cross ? multiset_shift(mm.at(a, b), 1) : mm.at(a, b));
    }
  }
  L2OffBlobStep step;
  step.x = w.x;
  step.y_side = w.y_side;
  step.z_side = w.z_side;
  step.ref_leaf = labels.front();
  step.ref_dm = mm.at(w.x, step.ref_leaf).min();
  return {std::move(out), std::move(step)};
}

Network reattach_off_blob_leaf(const Network& reduced, const L2OffBlobStep& step) {
  const std::set<std::string> yset(step.y_side.begin(), step.y_side.end());
  const std::set<std::string> zset(step.z_side.begin(), step.z_side.end());
  std::vector<Network> survivors;
  for (auto [u, v] : bridges(reduced)) {
    auto [us, vs] = cut_edge_partition(reduced, u, v);
    const std::set<std::string> uset(us.begin(), us.end());
    const std::set<std::string> vset(vs.begin(), vs.end());
    if (!((uset == yset && vset == zset) || (uset == zset && vset == yset))) continue;
    Network cand = attach_leaf(reduced, {u, v}, step.x);
    const ShortestMatrix sm = shortest_matrix(cand);
    if (sm.at(step.x, step.ref_leaf) == step.ref_dm) survivors.push_back(std::move(cand));
  }
  if (survivors.size() != 1)
    throw Error(Code::NoValidReattachment,
                "cut-edges matching the witness: " + std::to_string(survivors.size()),
                Stage::off_blob);
  return survivors.front();
}

std::optional<std::pair<Chain, int>> detect_pendant_l1_chain(const MultisetMatrix& mm,
                                                             const std::vector<Chain>& chain_list) {
  for (const auto& c : chain_list) {
    const int k = c.length();
    if (k < 2) continue;
    if (mm.at(c.front(), c.back()) == merged_cell({4, k + 1})) return std::make_pair(c, k);
  }
  return std::nullopt;
}

std::pair<MultisetMatrix, L2PendantL1Step> reduce_pendant_l1(const MultisetMatrix& mm,
                                                             const Chain& chain) {
  const int k = chain.length();
  const std::string z = fresh_reduction_label(mm.labels());
  std::set<std::string> drop(chain.leaves.begin(), chain.leaves.end());
  try {
    MultisetMatrix out = reduced_matrix(mm, drop, z, [&](const std::string& x) {
      return partition_shifted(mm.at(x, chain.front()), {2, k + 1});
    });
    return {std::move(out), L2PendantL1Step{chain.leaves, z}};
  } catch (const Error& e) {
    if (e.code() == Code::NotPartitionable || e.code() == Code::BadSize)
      throw Error(e.code(), e.what(), Stage::pendant_l1, Cell{chain.front(), chain.back()});
    throw;
  }
}

std::optional<std::pair<Chain, int>> detect_pendant_l2_k000(const MultisetMatrix& mm,
                                                            const std::vector<Chain>& chain_list) {
  const ShortestMatrix sm = mins(mm);
  for (const auto& c : chain_list) {
    const int k = c.length();
    if (k >= 2) {
      if (mm.at(c.front(), c.back()) == merged_cell({5, 6, k + 1})) return std::make_pair(c, k);
      continue;
    }
    // Single leaf: threshold tests against every outside leaf and pair.
    const std::string& a = c.front();
    bool ok = true;
    std::vector<std::string> outside;
    for (const auto& lab : mm.labels())
      if (lab != a) outside.push_back(lab);
    for (const auto& x : outside) {
      if (sm.at(a, x) < 6) {
        ok = false;
        break;
      }
    }
    for (size_t i = 0; ok && i < outside.size(); ++i)
      for (size_t j = i + 1; ok && j < outside.size(); ++j)
        if (sm.at(a, outside[i]) + sm.at(a, outside[j]) - sm.at(outside[i], outside[j]) < 8)
          ok = false;
    if (ok) return std::make_pair(c, 1);
  }
  return std::nullopt;
}

namespace {

std::pair<MultisetMatrix, L2PendantBlobStep> reduce_with_offsets(
    const MultisetMatrix& mm, const std::string& anchor_leaf, const std::vector<int>& offsets,
    BlobForm form, Stage stage) {
  const std::string z = fresh_reduction_label(mm.labels());
  const auto chain_leaves = form.all_leaves();
  std::set<std::string> drop(chain_leaves.begin(), chain_leaves.end());
  try {
    MultisetMatrix out = reduced_matrix(mm, drop, z, [&](const std::string& x) {
      return partition_shifted(mm.at(x, anchor_leaf), offsets);
    });
    return {std::move(out), L2PendantBlobStep{std::move(form), z}};
  } catch (const Error& e) {
    if (e.code() == Code::NotPartitionable || e.code() == Code::BadSize)
      throw Error(e.code(), e.what(), stage, Cell{anchor_leaf, anchor_leaf});
    throw;
  }
}

}  // namespace

std::pair<MultisetMatrix, L2PendantBlobStep> reduce_pendant_l2_k000(const MultisetMatrix& mm,
                                                                    const Chain& chain) {
  const int k = chain.length();
  BlobForm form;
  form.kind = BlobKind::L2_k000;
  form.a = chain.leaves;
  return reduce_with_offsets(mm, chain.front(), {3, 4, k + 2, k + 3}, std::move(form),
                             Stage::pendant_l2_k000);
}

std::optional<std::pair<Chain, Chain>> detect_pendant_l2_kl00(const MultisetMatrix& mm,
                                                              const std::vector<Chain>& chain_list) {
  const ShortestMatrix sm = mins(mm);
  for (size_t i = 0; i < chain_list.size(); ++i) {
    for (size_t j = i + 1; j < chain_list.size(); ++j) {
      const Chain& a = chain_list[i];
      const Chain& b = chain_list[j];
      if (adjacency_multiplicity(mm, a, b) != 2) continue;
      std::set<std::string> members(a.leaves.begin(), a.leaves.end());
      members.insert(b.leaves.begin(), b.leaves.end());
      std::vector<std::string> outside;
      for (const auto& lab : mm.labels())
        if (!members.count(lab)) outside.push_back(lab);
      if (outside.empty()) continue;  // would be a single blob, handled earlier
      bool ok = true;
      for (const auto& c : members) {
        for (const auto& x : outside) {
          if (sm.at(c, x) < 6) {
            ok = false;
            break;
          }
        }
        if (!ok) break;
        for (size_t yi = 0; ok && yi < outside.size(); ++yi)
          for (size_t zi = yi + 1; ok && zi < outside.size(); ++zi)
            if (sm.at(c, outside[yi]) + sm.at(c, outside[zi]) - sm.at(outside[yi], outside[zi]) < 8)
              ok = false;
        if (!ok) break;
      }
      if (ok) return std::make_pair(a, b);
    }
  }
  return std::nullopt;
}

std::pair<MultisetMatrix, L2PendantBlobStep> reduce_pendant_l2_kl00(const MultisetMatrix& mm,
                                                                    const Chain& a,
                                                                    const Chain& b) {
  const int k = a.length();
  const int l = b.length();
  BlobForm form;
  form.kind = BlobKind::L2_kl00;
  form.a = a.leaves;
  form.b = b.leaves;
  return reduce_with_offsets(mm, a.front(), {3, l + 4, k + 2, k + l + 3}, std::move(form),
                             Stage::pendant_l2_kl00);
}

namespace {

int green_count(int k, int l, const DistanceMultiset& A, const DistanceMultiset& B,
                const DistanceMultiset& C, const DistanceMultiset& D) {
  const auto m5 = [](const DistanceMultiset& M) { return static_cast<int>(M.multiplicity(5)); };
  if (k == 1) {
    if (l == 1) return m5(A);
    if (l == 2) return m5(A) + m5(B) - 1;
    return m5(A) + m5(B);
  }
  if (k == 2) {
    if (l == 1) return m5(A) + m5(C) - 1;
    if (l == 2) return m5(A) + m5(B) + m5(C) + m5(D) - 2;
    return m5(A) + m5(B) + m5(C) + m5(D) - 1;
  }
  if (l == 1) return m5(A) + m5(C);
  if (l == 2) return m5(A) + m5(B) + m5(C) + m5(D) - 1;
  return m5(A) + m5(B) + m5(C) + m5(D);
}

}  // namespace

CAG build_cag(const MultisetMatrix& mm, const std::vector<Chain>& chain_list) {
  CAG cag;
  cag.chains = chain_list;
  const ShortestMatrix sm = mins(mm);
  const int nc = static_cast<int>(chain_list.size());
  for (int i = 0; i < nc; ++i) {
    for (int j = i + 1; j < nc; ++j) {
      const int red = adjacency_multiplicity(mm, chain_list[i], chain_list[j]);
      if (red == 0) continue;
      cag.red[{i, j}] = red;
      if (red != 1) continue;
      // Orient both chains so that the unique distance-4 endpoint pair is
      // (front, front).
      Chain a = chain_list[i];
      Chain b = chain_list[j];
      bool oriented = false;
      for (int flip_a = 0; flip_a < 2 && !oriented; ++flip_a) {
        for (int flip_b = 0; flip_b < 2 && !oriented; ++flip_b) {
          Chain ca = a, cb = b;
          if (flip_a) std::reverse(ca.leaves.begin(), ca.leaves.end());
          if (flip_b) std::reverse(cb.leaves.begin(), cb.leaves.end());
          if (mm.at(ca.front(), cb.front()).multiplicity(4) >= 1) {
            a = ca;
            b = cb;
            oriented = true;
          }
        }
      }
      if (!oriented) continue;  // red edge without a distance-4 cell: garbage input
      const int green =
          green_count(a.length(), b.length(), mm.at(a.front(), b.front()),
                      mm.at(a.front(), b.back()), mm.at(a.back(), b.front()),
                      mm.at(a.back(), b.back()));
      if (green > 0) cag.green[{i, j}] = green;
    }
  }
  return cag;
}

std::optional<CagMatch> match_cag_patterns(const CAG& cag) {
  const int nc = static_cast<int>(cag.chains.size());
  DSU dsu(nc);
  for (const auto& [e, r] : cag.red) dsu.unite(e.first, e.second);
  for (const auto& [e, g] : cag.green) dsu.unite(e.first, e.second);
  std::map<int, std::vector<int>> comps;
  for (int i = 0; i < nc; ++i) comps[dsu.find(i)].push_back(i);

  const auto red_of = [&](int i, int j) {
    auto it = cag.red.find({std::min(i, j), std::max(i, j)});
    return it == cag.red.end() ? 0 : it->second;
  };
  const auto green_of = [&](int i, int j) {
    auto it = cag.green.find({std::min(i, j), std::max(i, j)});
    return it == cag.green.end() ? 0 : it->second;
  };

  for (const auto& [root, members] : comps) {
    if (members.size() == 2) {
      const int i = members[0], j = members[1];
      if (red_of(i, j) == 1 && green_of(i, j) == 2) {
        CagMatch m;
        m.kind = BlobKind::L2_k0m0;
        m.members = {cag.chains[i], cag.chains[j]};
        return m;
      }
    } else if (members.size() == 3) {
      std::vector<std::pair<int, int>> two_red, one_one;
      bool clean = true;
      for (size_t x = 0; x < 3 && clean; ++x) {
        for (size_t y = x + 1; y < 3; ++y) {
          const int r = red_of(members[x], members[y]);
          const int g = green_of(members[x], members[y]);
          if (r == 2 && g == 0) {
            two_red.emplace_back(members[x], members[y]);
          } else if (r == 1 && g == 1) {
            one_one.emplace_back(members[x], members[y]);
          } else {
            clean = false;
            break;
          }
        }
      }
      if (!clean) continue;
      if (two_red.size() == 1 && one_one.size() == 2) {
        CagMatch m;
        m.kind = BlobKind::L2_klm0;
        const int a = two_red.front().first;
        const int b = two_red.front().second;
        int c = -1;
        for (int i : members)
          if (i != a && i != b) c = i;
        m.members = {cag.chains[a], cag.chains[b], cag.chains[c]};
        return m;
      }
      if (two_red.empty() && one_one.size() == 3) {
        CagMatch m;
        m.kind = BlobKind::L2_k0mn;
        m.members = {cag.chains[members[0]], cag.chains[members[1]], cag.chains[members[2]]};
        return m;
      }
    } else if (members.size() == 4) {
      std::vector<std::pair<int, int>> two_red;
      bool clean = true;
      for (size_t x = 0; x < 4 && clean; ++x) {
        for (size_t y = x + 1; y < 4; ++y) {
          const int r = red_of(members[x], members[y]);
          const int g = green_of(members[x], members[y]);
          if (g != 0 || (r != 1 && r != 2)) {
            clean = false;
            break;
          }
          if (r == 2) two_red.emplace_back(members[x], members[y]);
        }
      }
      if (!clean || two_red.size() != 1) continue;
      CagMatch m;
      m.kind = BlobKind::L2_klmn;
      const int a = two_red.front().first;
      const int b = two_red.front().second;
      std::vector<int> rest;
      for (int i : members)
        if (i != a && i != b) rest.push_back(i);
      m.members = {cag.chains[a], cag.chains[b], cag.chains[rest[0]], cag.chains[rest[1]]};
      return m;
    }
  }
  return std::nullopt;
}

namespace {

// Strictly consistent comparison of |d(x, chain leaf)| across all outside
// leaves: returns -1 if chain A has the smaller cardinality everywhere,
// +1 if larger everywhere, 0 on any tie or inconsistency.
int cardinality_order(const MultisetMatrix& mm, const Chain& a, const Chain& b,
                      const std::vector<std::string>& outside) {
  int sign = 0;
  for (const auto& x : outside) {
    const auto sa = mm.at(x, a.front()).size();
    const auto sb = mm.at(x, b.front()).size();
    if (sa == sb) return 0;
    const int s = sa < sb ? -1 : 1;
    if (sign == 0) sign = s;
    if (s != sign) return 0;
  }
  return sign;
}

// Endpoint of the chain closest to the cut-edge: strictly nearer to every
// outside leaf. The chain is returned oriented with that endpoint last.
Chain orient_cm_last(const MultisetMatrix& mm, Chain c, const std::vector<std::string>& outside,
                     Stage stage) {
  if (c.length() == 1) return c;
  const ShortestMatrix sm = mins(mm);
  int sign = 0;
  for (const auto& x : outside) {
    const int df = sm.at(c.front(), x);
    const int db = sm.at(c.back(), x);
    if (df == db) {
      sign = 0;
      break;
    }
    const int s = df < db ? -1 : 1;
    if (sign == 0) sign = s;
    if (s != sign) {
      sign = 0;
      break;
    }
  }
  if (sign == 0)
    throw Error(Code::NotRealizableLevel2, "cut-edge-side chain endpoint is ambiguous", stage,
                Cell{c.front(), c.back()});
  if (sign < 0) std::reverse(c.leaves.begin(), c.leaves.end());  // front was nearer; put it last
  return c;
}

}  // namespace

std::pair<MultisetMatrix, L2PendantBlobStep> orient_and_reduce_pendant_l2(const MultisetMatrix& mm,
                                                                          const CagMatch& match) {
  std::set<std::string> member_leaves;
  for (const auto& c : match.members)
    member_leaves.insert(c.leaves.begin(), c.leaves.end());
  std::vector<std::string> outside;
  for (const auto& lab : mm.labels())
    if (!member_leaves.count(lab)) outside.push_back(lab);
  if (outside.empty())
    throw Error(Code::NotRealizableLevel2, "pendant pattern with no outside leaves", Stage::cag);

  BlobForm form;
  form.kind = match.kind;
  Chain c_chain;  // the role-c chain, oriented with c_m last
  switch (match.kind) {
    case BlobKind::L2_k0m0: {
      const int ord = cardinality_order(mm, match.members[0], match.members[1], outside);
      if (ord == 0)
        throw Error(Code::NotRealizableLevel2, "cannot identify the cut-edge-side chain",
                    Stage::cag);
      const Chain& a = ord < 0 ? match.members[1] : match.members[0];
      const Chain& c = ord < 0 ? match.members[0] : match.members[1];
      form.a = a.leaves;
      c_chain = orient_cm_last(mm, c, outside, Stage::cag);
      form.c = c_chain.leaves;
      break;
    }
    case BlobKind::L2_klm0: {
      form.a = match.members[0].leaves;
      form.b = match.members[1].leaves;
      c_chain = orient_cm_last(mm, match.members[2], outside, Stage::cag);
      form.c = c_chain.leaves;
      break;
    }
    case BlobKind::L2_k0mn: {
      // a has the strictly largest |d(x, .)|; the two cut-side chains tie.
      int a_idx = -1;
      for (int i = 0; i < 3 && a_idx == -1; ++i) {
        bool biggest = true;
        for (int j = 0; j < 3; ++j) {
          if (i == j) continue;
          if (cardinality_order(mm, match.members[i], match.members[j], outside) != 1)
            biggest = false;
        }
        if (biggest) a_idx = i;
      }
      if (a_idx == -1)
        throw Error(Code::NotRealizableLevel2, "cannot identify the chain off the cut-edge side",
                    Stage::cag);
      std::vector<Chain> cd;
      for (int i = 0; i < 3; ++i)
        if (i != a_idx) cd.push_back(match.members[i]);
      form.a = match.members[a_idx].leaves;
      c_chain = orient_cm_last(mm, cd[0], outside, Stage::cag);
      form.c = c_chain.leaves;
      form.d = cd[1].leaves;
      break;
    }
    case BlobKind::L2_klmn: {
      form.a = match.members[0].leaves;
      form.b = match.members[1].leaves;
      c_chain = orient_cm_last(mm, match.members[2], outside, Stage::cag);
      form.c = c_chain.leaves;
      form.d = match.members[3].leaves;
      break;
    }
    default:
      throw Error(Code::Internal, "orient_and_reduce on a non-CAG kind");
  }

  const int k = static_cast<int>(form.a.size());
  const int l = static_cast<int>(form.b.size());
  const int m = static_cast<int>(form.c.size());
  const int n = static_cast<int>(form.d.size());
  std::vector<int> offsets;
  switch (match.kind) {
    case BlobKind::L2_k0m0: offsets = {2, m + 3, k + m + 3}; break;
    case BlobKind::L2_klm0: offsets = {2, l + m + 3, k + m + 3}; break;
    case BlobKind::L2_k0mn: offsets = {2, m + n + 3, k + m + n + 3}; break;
    case BlobKind::L2_klmn: offsets = {2, l + m + n + 3, k + m + n + 3}; break;
    default: break;
  }
  return reduce_with_offsets(mm, c_chain.back(), offsets, std::move(form), Stage::cag);
}

// ---- base cases ----

namespace {

// Appends k two-cut-edge level-2 blobs to `cur`, returning the far attachment.
int attach_blob_arm(GraphBuilder& g, int cur, int k) {
  for (int i = 0; i < k; ++i) {
    const int p = g.add_internal();
    const int w1 = g.add_internal();
    const int w2 = g.add_internal();
    const int q = g.add_internal();
    g.add_edge(cur, p);
    g.add_edge(p, w1);
    g.add_edge(p, w2);
    g.add_edge(w1, w2);
    g.add_edge(w1, q);
    g.add_edge(w2, q);
    cur = q;
  }
  return cur;
}

}  // namespace

std::optional<CenterClassification> classify_blob_tree_center(const ShortestMatrix& sm) {
  if (sm.n() != 3) return std::nullopt;
  const std::string x = sm.labels()[0], y = sm.labels()[1], z = sm.labels()[2];
  const int mxy = sm.at(x, y) % 3, myz = sm.at(y, z) % 3, mxz = sm.at(x, z) % 3;
  if (mxy == 2 && myz == 2 && mxz == 2)
    return CenterClassification{BlobTreeCenter::internal_vertex, {}};
  if (mxy == 0 && myz == 0 && mxz == 0)
    return CenterClassification{BlobTreeCenter::level1_blob, {}};
  if (mxy == 1 && myz == 1 && mxz == 1)
    return CenterClassification{BlobTreeCenter::level2_distinct_sides, {}};
  const int zeros = (mxy == 0) + (myz == 0) + (mxz == 0);
  const int ones = (mxy == 1) + (myz == 1) + (mxz == 1);
  if (zeros == 1 && ones == 2) {
    CenterClassification c{BlobTreeCenter::level2_shared_side, {x, y}};
    if (myz == 0) c.shared_pair = {y, z};
    if (mxz == 0) c.shared_pair = {x, z};
    return c;
  }
  return std::nullopt;
}

Network reconstruct_l2_small_shortest(const ShortestMatrix& sm) {
  const int n = sm.n();
  if (n > 3)
    throw Error(Code::NotRealizable, "small-case reconstruction takes at most 3 leaves",
                Stage::small_base);
  if (n == 1) return Network::singleton(sm.labels().front());
  if (n == 2) {
    const int d = sm.at(0, 1);
    if (d % 3 != 1)
      throw Error(Code::NotRealizable, "two-leaf distance " + std::to_string(d) + " is not 3k+1",
                  Stage::small_base, Cell{sm.labels()[0], sm.labels()[1]});
    const int k = (d - 1) / 3;
    GraphBuilder g;
    const int x = g.add_leaf(sm.labels()[0]);
    const int far = attach_blob_arm(g, x, k);
    g.add_edge(far, g.add_leaf(sm.labels()[1]));
    return g.build();
  }

  const std::string x = sm.labels()[0], y = sm.labels()[1], z = sm.labels()[2];
  const int dxy = sm.at(x, y), dyz = sm.at(y, z), dxz = sm.at(x, z);
  const auto fail = [&](const std::string& why) -> Error {
    return Error(Code::NotRealizable, why, Stage::small_base, Cell{x, y});
  };
  const auto cls = classify_blob_tree_center(sm);
  if (!cls) throw fail("distance residues match no blob-tree centre");

  // Arm blob counts from the pairwise sums s_ij = k_i + k_j.
  const auto solve_arms = [&](int sxy, int syz, int sxz) {
    if (sxy < 0 || syz < 0 || sxz < 0) throw fail("negative blob count");
    const int twice_kx = sxy + sxz - syz;
    const int twice_ky = sxy + syz - sxz;
    const int twice_kz = sxz + syz - sxy;
    if (twice_kx < 0 || twice_ky < 0 || twice_kz < 0 || twice_kx % 2 || twice_ky % 2 ||
        twice_kz % 2)
      throw fail("arm blob counts are not non-negative integers");
    return std::array<int, 3>{twice_kx / 2, twice_ky / 2, twice_kz / 2};
  };
  const auto div3 = [&](int v) {
    if (v % 3 != 0) throw fail("distance residue mismatch");
    return v / 3;
  };

  GraphBuilder g;
  std::array<int, 3> anchors{};  // attachment vertices for the x,y,z arms
  std::array<int, 3> arms{};

  if (cls->kind == BlobTreeCenter::internal_vertex) {
    arms = solve_arms(div3(dxy - 2), div3(dyz - 2), div3(dxz - 2));
    const int c = g.add_internal();
    anchors = {c, c, c};
    // Degree check needs three distinct arm edges, which the builds below add.
  } else if (cls->kind == BlobTreeCenter::level1_blob) {
    arms = solve_arms(div3(dxy - 3), div3(dyz - 3), div3(dxz - 3));
    const int tx = g.add_internal();
    const int ty = g.add_internal();
    const int tz = g.add_internal();
    g.add_edge(tx, ty);
    g.add_edge(ty, tz);
    g.add_edge(tz, tx);
    anchors = {tx, ty, tz};
  } else if (cls->kind == BlobTreeCenter::level2_distinct_sides) {
    arms = solve_arms(div3(dxy - 4), div3(dyz - 4), div3(dxz - 4));
    const int w1 = g.add_internal();
    const int w2 = g.add_internal();
    std::array<int, 3> ps{};
    for (int i = 0; i < 3; ++i) {
      ps[i] = g.add_internal();
      g.add_edge(w1, ps[i]);
      g.add_edge(ps[i], w2);
    }
    anchors = {ps[0], ps[1], ps[2]};
  } else {
    // Level-2 blob centre with the shared-side pair's cut-edges on one side.
    std::array<std::string, 3> lab{x, y, z};
    std::array<int, 3> d{dxy, dyz, dxz};  // (0,1), (1,2), (0,2)
    if (cls->shared_pair == std::pair<std::string, std::string>{y, z}) {
      lab = {y, z, x};
      d = {dyz, dxz, dxy};
    } else if (cls->shared_pair == std::pair<std::string, std::string>{x, z}) {
      lab = {x, z, y};
      d = {dxz, dyz, dxy};
    }
    const auto a3 = solve_arms(div3(d[0] - 3), div3(d[1] - 4), div3(d[2] - 4));
    const int w1 = g.add_internal();
    const int w2 = g.add_internal();
    const int p0 = g.add_internal();
    const int p1 = g.add_internal();
    const int p2 = g.add_internal();
    g.add_edge(w1, p0);
    g.add_edge(p0, p1);
    g.add_edge(p1, w2);
    g.add_edge(w1, p2);
    g.add_edge(p2, w2);
    g.add_edge(w1, w2);
    for (int i = 0; i < 3; ++i) {
      const int far = attach_blob_arm(g, std::array<int, 3>{p0, p1, p2}[i], a3[i]);
      g.add_edge(far, g.add_leaf(lab[i]));
    }
    Network net = g.build();
    if (shortest_matrix(net) != sm) throw fail("rebuilt centre does not realize the distances");
    return net;
  }

  const std::array<std::string, 3> lab{x, y, z};
  for (int i = 0; i < 3; ++i) {
    const int far = attach_blob_arm(g, anchors[i], arms[i]);
    g.add_edge(far, g.add_leaf(lab[i]));
  }
  Network net = g.build();
  if (shortest_matrix(net) != sm) throw fail("rebuilt centre does not realize the distances");
  return net;
}

namespace {

// All orientation variants of a chain list (each chain forward or reversed).
std::vector<std::vector<std::vector<std::string>>> orientation_variants(
    const std::vector<std::vector<std::string>>& chains_in) {
  std::vector<std::vector<std::vector<std::string>>> out;
  const int c = static_cast<int>(chains_in.size());
  for (int mask = 0; mask < (1 << c); ++mask) {
    auto variant = chains_in;
    for (int i = 0; i < c; ++i)
      if (mask & (1 << i)) std::reverse(variant[i].begin(), variant[i].end());
    out.push_back(std::move(variant));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Network unique_survivor(std::vector<Network> survivors, Stage stage, const char* what) {
  std::vector<Network> classes;
  for (auto& s : survivors) {
    bool dup = false;
    for (const auto& c : classes)
      if (is_isomorphic(s, c)) {
        dup = true;
        break;
      }
    if (!dup) classes.push_back(std::move(s));
  }
  if (classes.empty())
    throw Error(Code::NotRealizableLevel2, std::string("no arrangement realizes ") + what, stage);
  if (classes.size() > 1)
    throw Error(Code::AmbiguousArrangement,
                std::string("several non-isomorphic arrangements realize ") + what, stage);
  return classes.front();
}

}  // namespace

std::optional<Network> try_single_blob(const MultisetMatrix& mm) {
  const ShortestMatrix sm = mins(mm);
  if (!cherries(sm).empty()) return std::nullopt;
  if (auto order = cyclic_chain_order(sm)) {
    Network net = build_cycle_network(*order);
    if (multiset_matrix(net) == mm) return net;
    return std::nullopt;
  }
  std::vector<Chain> chain_list;
  try {
    chain_list = chains(sm);
  } catch (const Error&) {
    return std::nullopt;
  }
  if (chain_list.size() < 2 || chain_list.size() > 3) return std::nullopt;
  std::vector<std::vector<std::string>> base;
  for (const auto& c : chain_list) base.push_back(c.leaves);
  std::vector<Network> survivors;
  for (const auto& variant : orientation_variants(base)) {
    Network cand = build_theta_network(variant);
    if (multiset_matrix(cand) == mm) survivors.push_back(std::move(cand));
  }
  if (survivors.empty()) return std::nullopt;
  return unique_survivor(std::move(survivors), Stage::single_blob, "the single-blob matrix");
}

Network single_blob_l2(const MultisetMatrix& mm) {
  if (auto net = try_single_blob(mm)) return *net;
  throw Error(Code::NotRealizableLevel2, "no single-blob network realizes the matrix",
              Stage::single_blob);
}

Network single_blob_l2(const ShortestMatrix& sm) {
  if (auto order = cyclic_chain_order(sm)) {
    Network net = build_cycle_network(*order);
    if (shortest_matrix(net) == sm) return net;
    throw Error(Code::NotRealizableLevel2, "cycle order does not realize the distances",
                Stage::single_blob);
  }
  std::vector<Chain> chain_list = chains(sm);
  if (chain_list.size() < 2 || chain_list.size() > 3)
    throw Error(Code::NotRealizableLevel2, "not a 2- or 3-chain single blob", Stage::single_blob);
  std::vector<std::vector<std::string>> base;
  for (const auto& c : chain_list) base.push_back(c.leaves);
  std::vector<Network> survivors;
  for (const auto& variant : orientation_variants(base)) {
    Network cand = build_theta_network(variant);
    if (shortest_matrix(cand) == sm) survivors.push_back(std::move(cand));
  }
  return unique_survivor(std::move(survivors), Stage::single_blob, "the single-blob distances");
}

// ---- pipeline ----

std::pair<Network, ReductionTrace> reduce_l2_to_base(const MultisetMatrix& mm0) {
  ReductionTrace trace;
  MultisetMatrix mm = mm0;
  while (true) {
    const int n = mm.n();
    if (n <= 3) {
      Network base = [&] {
        try {
          return reconstruct_l2_small_shortest(mins(mm));
        } catch (const Error& e) {
          throw Error(Code::NotRealizableLevel2, e.what(), Stage::small_base, e.cell());
        }
      }();
      if (multiset_matrix(base) != mm)
        throw Error(Code::NotRealizableLevel2, "small base does not realize the multisets",
                    Stage::small_base);
      return {std::move(base), std::move(trace)};
    }
    const auto cherry_pairs = cherries(mm);
    if (!cherry_pairs.empty()) {
      auto [next, step] = reduce_cherry(mm, cherry_pairs.front().first, cherry_pairs.front().second);
      trace.steps.push_back({step, mm});
      mm = std::move(next);
      continue;
    }
    if (auto net = try_single_blob(mm)) return {std::move(*net), std::move(trace)};
    if (auto w = detect_off_blob_leaf(mm)) {
      auto [next, step] = remove_off_blob_leaf(mm, *w);
      trace.steps.push_back({step, mm});
      mm = std::move(next);
      continue;
    }
    std::vector<Chain> chain_list;
    try {
      chain_list = chains(mins(mm));
    } catch (const Error& e) {
      throw Error(Code::NotRealizableLevel2, e.what(), Stage::verify);
    }
    if (auto pc = detect_pendant_l1_chain(mm, chain_list)) {
      auto [next, step] = reduce_pendant_l1(mm, pc->first);
      trace.steps.push_back({step, mm});
      mm = std::move(next);
      continue;
    }
    if (auto pk = detect_pendant_l2_k000(mm, chain_list)) {
      auto [next, step] = reduce_pendant_l2_k000(mm, pk->first);
      trace.steps.push_back({step, mm});
      mm = std::move(next);
      continue;
    }
    if (auto pp = detect_pendant_l2_kl00(mm, chain_list)) {
      auto [next, step] = reduce_pendant_l2_kl00(mm, pp->first, pp->second);
      trace.steps.push_back({step, mm});
      mm = std::move(next);
      continue;
    }
    const CAG cag = build_cag(mm, chain_list);
    if (auto match = match_cag_patterns(cag)) {
      auto [next, step] = orient_and_reduce_pendant_l2(mm, *match);
      trace.steps.push_back({step, mm});
      mm = std::move(next);
      continue;
    }
    throw Error(Code::NotRealizableLevel2, "no reducible structure detected", Stage::cag);
  }
}

Network replay_l2_step(const L2Step& step, const Network& reduced) {
  if (const auto* ch = std::get_if<L2CherryStep>(&step.op)) {
    GraphBuilder g(reduced);
    const int zv = reduced.leaf(ch->z);
    g.make_internal(zv);
    g.add_edge(zv, g.add_leaf(ch->x));
    g.add_edge(zv, g.add_leaf(ch->y));
    Network out = g.build();
    if (multiset_matrix(out) != step.before)
      throw Error(Code::NotRealizableLevel2, "cherry expansion does not realize the multisets",
                  Stage::cherry, Cell{ch->x, ch->y});
    return out;
  }
  if (const auto* ob = std::get_if<L2OffBlobStep>(&step.op)) {
    Network out = reattach_off_blob_leaf(reduced, *ob);
    if (multiset_matrix(out) != step.before)
      throw Error(Code::NoValidReattachment, "reattachment does not realize the multisets",
                  Stage::off_blob);
    return out;
  }
  if (const auto* p1 = std::get_if<L2PendantL1Step>(&step.op)) {
    BlobForm form;
    form.kind = BlobKind::L1Pendant;
    form.a = p1->chain;
    Network out = expand_leaf_to_blob(reduced, p1->z, form);
    if (multiset_matrix(out) != step.before)
      throw Error(Code::NotRealizableLevel2, "pendant cycle does not realize the multisets",
                  Stage::pendant_l1);
    return out;
  }
  const auto& pb = std::get<L2PendantBlobStep>(step.op);
  // Enumerate the bounded arrangement freedom: chain orientations plus the
  // c/d split; keep candidates realizing the recorded matrix.
  std::vector<BlobForm> candidates;
  auto push_roles = [&](const BlobForm& f) {
    std::vector<std::vector<std::string>> nonempty;
    for (const auto* chain : {&f.a, &f.b, &f.c, &f.d})
      if (!chain->empty()) nonempty.push_back(*chain);
    for (const auto& variant : orientation_variants(nonempty)) {
      BlobForm v = f;
      size_t idx = 0;
      for (auto* chain : {&v.a, &v.b, &v.c, &v.d})
        if (!chain->empty()) *chain = variant[idx++];
      candidates.push_back(std::move(v));
    }
  };
  push_roles(pb.form);
  if (!pb.form.c.empty() && !pb.form.d.empty()) {
    BlobForm swapped = pb.form;
    std::swap(swapped.c, swapped.d);
    push_roles(swapped);
  }
  std::sort(candidates.begin(), candidates.end(), [](const BlobForm& x, const BlobForm& y) {
    return std::tie(x.a, x.b, x.c, x.d) < std::tie(y.a, y.b, y.c, y.d);
  });
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
  std::vector<Network> survivors;
  for (const auto& form : candidates) {
    Network cand = expand_leaf_to_blob(reduced, pb.z, form);
    if (multiset_matrix(cand) == step.before) survivors.push_back(std::move(cand));
  }
  return unique_survivor(std::move(survivors), Stage::arrangement, "the pendant blob expansion");
}

Network reconstruct_l2(const MultisetMatrix& mm) {
  auto [net, trace] = reduce_l2_to_base(mm);
  for (auto it = trace.steps.rbegin(); it != trace.steps.rend(); ++it)
    net = replay_l2_step(*it, net);
  if (multiset_matrix(net) != mm)
    throw Error(Code::NotRealizableLevel2, "reconstruction does not realize the input matrix",
                Stage::verify);
  return net;
}

}  // namespace phylo
