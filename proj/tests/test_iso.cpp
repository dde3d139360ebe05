#include <doctest.h>

#include "phylodist/fixtures.hpp"
#include "phylodist/iso.hpp"
#include "phylodist/network.hpp"

using namespace phylo;

namespace {

Network net_of(std::vector<std::string> leaves,
               std::vector<std::pair<std::string, std::string>> edges) {
  RawGraph g;
  g.leaves = std::move(leaves);
  g.edges = std::move(edges);
  return Network::validate(g);
}

}  // namespace

TEST_CASE("every fixture is isomorphic to itself") {
  for (const auto& name : fixture_names()) CHECK(is_isomorphic(fixture(name), fixture(name)));
}

TEST_CASE("fig2 pair is not isomorphic") {
  auto [l, r] = fixture_pair("fig2_pair");
  CHECK_FALSE(is_isomorphic(l, r));
}

TEST_CASE("fig3 pair is not isomorphic") {
  auto [l, r] = fixture_pair("fig3_pair");
  CHECK_FALSE(is_isomorphic(l, r));
}

TEST_CASE("internal vertex renaming is an isomorphism") {
  // fig1 with internal tokens permuted.
  Network original = fixture("fig1");
  Network renamed = net_of({"a", "b", "c", "d", "e"},
                           {{"m4", "m1"}, {"m1", "m6"}, {"m6", "m5"}, {"m5", "m2"}, {"m2", "m4"},
                            {"m4", "m0"}, {"m0", "m5"}, {"m0", "c"},  {"m1", "a"},  {"m6", "b"},
                            {"m2", "m3"}, {"m3", "d"},  {"m3", "e"}});
  CHECK(is_isomorphic(original, renamed));
}

TEST_CASE("swapping leaf labels can break isomorphism") {
  Network l = fixture("fig2_left");
  Network r = fixture("fig2_right");
  CHECK_FALSE(is_isomorphic(l, r));
  CHECK(l.labels() == r.labels());
}

TEST_CASE("different label sets are never isomorphic") {
  Network a = net_of({"x", "y"}, {{"x", "y"}});
  Network b = net_of({"x", "z"}, {{"x", "z"}});
  CHECK_FALSE(is_isomorphic(a, b));
}

TEST_CASE("isomorphism behaves as an equivalence on a sampled triple") {
  Network a = fixture("fig1");
  Network b = net_of({"a", "b", "c", "d", "e"},
                     {{"i4", "i1"}, {"i1", "i6"}, {"i6", "i5"}, {"i5", "i2"}, {"i2", "i4"},
                      {"i4", "i0"}, {"i0", "i5"}, {"i0", "c"},  {"i1", "a"},  {"i6", "b"},
                      {"i2", "i3"}, {"i3", "d"},  {"i3", "e"}});
  // A third copy with edges listed in a different order.
  Network c = net_of({"a", "b", "c", "d", "e"},
                     {{"k3", "e"},  {"k3", "d"},  {"k2", "k3"}, {"k6", "b"},  {"k1", "a"},
                      {"k0", "c"},  {"k0", "k5"}, {"k4", "k0"}, {"k2", "k4"}, {"k5", "k2"},
                      {"k6", "k5"}, {"k1", "k6"}, {"k4", "k1"}});
  CHECK(is_isomorphic(a, a));
  CHECK(is_isomorphic(a, b));
  CHECK(is_isomorphic(b, a));
  CHECK(is_isomorphic(b, c));
  CHECK(is_isomorphic(a, c));
}

TEST_CASE("singletons compare by label") {
  CHECK(is_isomorphic(Network::singleton("a"), Network::singleton("a")));
  CHECK_FALSE(is_isomorphic(Network::singleton("a"), Network::singleton("b")));
}
