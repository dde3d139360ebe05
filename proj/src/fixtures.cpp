#include "phylodist/fixtures.hpp"

#include <map>

#include "phylodist/error.hpp"

namespace phylo {

namespace {

using Edges = std::vector<std::pair<std::string, std::string>>;

Network make(std::vector<std::string> leaves, Edges edges) {
  RawGraph g;
  g.leaves = std::move(leaves);
  g.edges = std::move(edges);
  return Network::validate(g);
}

// Five leaves on one level-2 blob plus a cherry behind the only non-trivial
// cut-edge f = v2v3.
Network fig1() {
  return make({"a", "b", "c", "d", "e"},
              {{"v4", "v1"}, {"v1", "v6"}, {"v6", "v5"}, {"v5", "v2"}, {"v2", "v4"},
               {"v4", "v0"}, {"v0", "v5"}, {"v0", "c"},  {"v1", "a"},  {"v6", "b"},
               {"v2", "v3"}, {"v3", "d"},  {"v3", "e"}});
}

// A level-2 blob (chain a,b) bridged to a triangle (chain c,d).
Network fig2_left() {
  return make({"a", "b", "c", "d"},
              {{"u1", "u2"}, {"u2", "u4"}, {"u4", "u5"}, {"u5", "u3"}, {"u3", "u1"},
               {"u2", "u3"}, {"u1", "v4"}, {"v4", "v2"}, {"v2", "v3"}, {"v3", "v4"},
               {"u4", "a"},  {"u5", "b"},  {"v2", "c"},  {"v3", "d"}});
}

// Same shape with the label pairs swapped across the two blobs.
Network fig2_right() {
  return make({"a", "b", "c", "d"},
              {{"u1", "u2"}, {"u2", "u4"}, {"u4", "u5"}, {"u5", "u3"}, {"u3", "u1"},
               {"u2", "u3"}, {"u1", "v4"}, {"v4", "v2"}, {"v2", "v3"}, {"v3", "v4"},
               {"u4", "c"},  {"u5", "d"},  {"v2", "a"},  {"v3", "b"}});
}

// A level-3 blob bridged to a level-2 blob, two leaves.
Edges fig3_skeleton() {
  return {{"u1", "u2"}, {"u2", "u4"}, {"u4", "u6"}, {"u6", "u5"}, {"u5", "u3"}, {"u3", "u1"},
          {"u2", "u3"}, {"u4", "u5"}, {"v1", "v2"}, {"v2", "v4"}, {"v4", "v3"}, {"v3", "v1"},
          {"v2", "v3"}, {"u1", "v4"}};
}

Network fig3_left() {
  Edges e = fig3_skeleton();
  e.push_back({"u6", "a"});
  e.push_back({"v1", "b"});
  return make({"a", "b"}, e);
}

Network fig3_right() {
  Edges e = fig3_skeleton();
  e.push_back({"u6", "b"});
  e.push_back({"v1", "a"});
  return make({"a", "b"}, e);
}

// Host blob hung on the cut-edge attachment q: a triangle with two leaves.
Edges host_pod(const std::string& at, const std::string& t1, const std::string& t2,
               const std::string& t3, const std::string& l1, const std::string& l2) {
  return {{at, t1}, {t1, t2}, {t2, t3}, {t3, t1}, {t2, l1}, {t3, l2}};
}

Edges append(Edges a, const Edges& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

// Pendant (1,0,1,0): leaf a1 on one side, leaf c1 sharing a side with q.
Network cag_a() {
  Edges e = {{"w1", "pa"}, {"pa", "w2"}, {"w1", "w2"}, {"w1", "pc"}, {"pc", "q"}, {"q", "w2"},
             {"pa", "a1"}, {"pc", "c1"}};
  return make({"a1", "c1", "h1", "h2"}, append(e, host_pod("q", "t1", "t2", "t3", "h1", "h2")));
}

// Pendant (1,1,1,0): leaves a1, b1 on the two plain sides, c1 beside q.
Network cag_b() {
  Edges e = {{"w1", "pa"}, {"pa", "w2"}, {"w1", "pb"}, {"pb", "w2"}, {"w1", "pc"},
             {"pc", "q"},  {"q", "w2"},  {"pa", "a1"}, {"pb", "b1"}, {"pc", "c1"}};
  return make({"a1", "b1", "c1", "h1", "h2"},
              append(e, host_pod("q", "t1", "t2", "t3", "h1", "h2")));
}

// Pendant (1,0,1,1): c1 and d1 flank q on the cut-edge side.
Network cag_c() {
  Edges e = {{"w1", "pa"}, {"pa", "w2"}, {"w1", "w2"}, {"w1", "pc"}, {"pc", "q"},
             {"q", "pd"},  {"pd", "w2"}, {"pa", "a1"}, {"pc", "c1"}, {"pd", "d1"}};
  return make({"a1", "c1", "d1", "h1", "h2"},
              append(e, host_pod("q", "t1", "t2", "t3", "h1", "h2")));
}

// Pendant (1,1,1,1).
Network cag_d() {
  Edges e = {{"w1", "pa"}, {"pa", "w2"}, {"w1", "pb"}, {"pb", "w2"}, {"w1", "pc"},
             {"pc", "q"},  {"q", "pd"},  {"pd", "w2"}, {"pa", "a1"}, {"pb", "b1"},
             {"pc", "c1"}, {"pd", "d1"}};
  return make({"a1", "b1", "c1", "d1", "h1", "h2"},
              append(e, host_pod("q", "t1", "t2", "t3", "h1", "h2")));
}

// Two chains sharing a level-1 cycle with two non-trivial cut-edges: adjacent
// twice, yet not a pendant blob.
Network fig6_left() {
  Edges e = {{"e0", "q1"}, {"q1", "q2"}, {"q2", "w0"}, {"w0", "p1"}, {"p1", "p2"}, {"p2", "e0"},
             {"p1", "a1"}, {"p2", "a2"}, {"q1", "b1"}, {"q2", "b2"}};
  e = append(e, host_pod("w0", "s1", "s2", "s3", "y1", "y2"));
  e = append(e, host_pod("e0", "r1", "r2", "r3", "z1", "z2"));
  return make({"a1", "a2", "b1", "b2", "y1", "y2", "z1", "z2"}, e);
}

// Two chains on a non-pendant level-2 blob whose third side carries two
// non-trivial cut-edges.
Network fig6_right() {
  Edges e = {{"n0", "p1"}, {"p1", "p2"}, {"p2", "s0"}, {"n0", "q1"}, {"q1", "q2"}, {"q2", "s0"},
             {"n0", "r1"}, {"r1", "r2"}, {"r2", "s0"}, {"p1", "a1"}, {"p2", "a2"}, {"q1", "b1"},
             {"q2", "b2"}};
  e = append(e, host_pod("r1", "s1", "s2", "s3", "y1", "y2"));
  e = append(e, host_pod("r2", "g1", "g2", "g3", "z1", "z2"));
  return make({"a1", "a2", "b1", "b2", "y1", "y2", "z1", "z2"}, e);
}

// Perturbations: one blob edge subdivided by sv, which carries a new
// non-trivial cut-edge to a triangle pod with leaves g1, g2. The embedded
// pendant blob stops being pendant and its CAG pattern must not fire.
Network cag_a_perturbed() {
  Edges e = {{"w1", "pa"}, {"pa", "w2"}, {"w1", "sv"}, {"sv", "w2"}, {"w1", "pc"},
             {"pc", "q"},  {"q", "w2"},  {"pa", "a1"}, {"pc", "c1"}};
  e = append(e, host_pod("q", "t1", "t2", "t3", "h1", "h2"));
  e = append(e, host_pod("sv", "u1", "u2", "u3", "g1", "g2"));
  return make({"a1", "c1", "g1", "g2", "h1", "h2"}, e);
}

Network cag_b_perturbed() {
  Edges e = {{"w1", "pa"}, {"pa", "w2"}, {"w1", "pb"}, {"pb", "w2"}, {"w1", "pc"},
             {"pc", "q"},  {"q", "sv"},  {"sv", "w2"}, {"pa", "a1"}, {"pb", "b1"},
             {"pc", "c1"}};
  e = append(e, host_pod("q", "t1", "t2", "t3", "h1", "h2"));
  e = append(e, host_pod("sv", "u1", "u2", "u3", "g1", "g2"));
  return make({"a1", "b1", "c1", "g1", "g2", "h1", "h2"}, e);
}

Network cag_c_perturbed() {
  Edges e = {{"w1", "pa"}, {"pa", "w2"}, {"w1", "sv"}, {"sv", "w2"}, {"w1", "pc"},
             {"pc", "q"},  {"q", "pd"},  {"pd", "w2"}, {"pa", "a1"}, {"pc", "c1"},
             {"pd", "d1"}};
  e = append(e, host_pod("q", "t1", "t2", "t3", "h1", "h2"));
  e = append(e, host_pod("sv", "u1", "u2", "u3", "g1", "g2"));
  return make({"a1", "c1", "d1", "g1", "g2", "h1", "h2"}, e);
}

Network cag_d_perturbed() {
  Edges e = {{"w1", "pa"}, {"pa", "w2"}, {"w1", "pb"}, {"pb", "w2"}, {"w1", "sv"},
             {"sv", "pc"}, {"pc", "q"},  {"q", "pd"},  {"pd", "w2"}, {"pa", "a1"},
             {"pb", "b1"}, {"pc", "c1"}, {"pd", "d1"}};
  e = append(e, host_pod("q", "t1", "t2", "t3", "h1", "h2"));
  e = append(e, host_pod("sv", "u1", "u2", "u3", "g1", "g2"));
  return make({"a1", "b1", "c1", "d1", "g1", "g2", "h1", "h2"}, e);
}

}  // namespace

Network fixture(const std::string& name) {
  static const std::map<std::string, Network (*)()> table = {
      {"fig1", fig1},           {"fig2_left", fig2_left}, {"fig2_right", fig2_right},
      {"fig3_left", fig3_left}, {"fig3_right", fig3_right}, {"cag_a", cag_a},
      {"cag_b", cag_b},         {"cag_c", cag_c},         {"cag_d", cag_d},
      {"fig6_left", fig6_left}, {"fig6_right", fig6_right}};
  auto it = table.find(name);
  if (it == table.end())
    throw Error(Code::UnknownFixture, "unknown fixture " + name, Stage::fixture);
  return it->second();
}

std::pair<Network, Network> fixture_pair(const std::string& name) {
  if (name == "fig2_pair") return {fig2_left(), fig2_right()};
  if (name == "fig3_pair") return {fig3_left(), fig3_right()};
  throw Error(Code::UnknownFixture, "unknown fixture pair " + name, Stage::fixture);
}

Network perturbed_cag_fixture(const std::string& name) {
  if (name == "cag_a") return cag_a_perturbed();
  if (name == "cag_b") return cag_b_perturbed();
  if (name == "cag_c") return cag_c_perturbed();
  if (name == "cag_d") return cag_d_perturbed();
  throw Error(Code::UnknownFixture, "no perturbed variant of " + name, Stage::fixture);
}

std::vector<std::string> fixture_names() {
  return {"fig1",  "fig2_left", "fig2_right", "fig3_left",  "fig3_right", "cag_a",
          "cag_b", "cag_c",     "cag_d",      "fig6_left",  "fig6_right"};
}

}  // namespace phylo
