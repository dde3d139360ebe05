#include <doctest.h>

#include "phylodist/error.hpp"
#include "phylodist/fixtures.hpp"
#include "phylodist/io.hpp"
#include "phylodist/iso.hpp"
#include "phylodist/matrix.hpp"

using namespace phylo;

TEST_CASE("network serialization round-trips bit-exactly on canonical form") {
  for (const auto& name : fixture_names()) {
    Network n = fixture(name);
    const std::string text = serialize_network(n);
    Network parsed = parse_network(text);
    CHECK(is_isomorphic(parsed, n));
    CHECK(serialize_network(parsed) == text);
  }
}

TEST_CASE("singleton network round-trips") {
  const std::string text = serialize_network(Network::singleton("a"));
  CHECK(text == "leaves: a\n");
  Network parsed = parse_network(text);
  CHECK(parsed.is_singleton());
}

TEST_CASE("parse accepts the documented shape") {
  Network n = parse_network("leaves: x,y\nx y\n");
  CHECK(n.edge_count() == 1);
  // whitespace and blank lines tolerated
  Network m = parse_network("leaves: x,y\n\n  x   y  \n");
  CHECK(is_isomorphic(n, m));
}

TEST_CASE("parse rejects malformed input") {
  CHECK_THROWS_AS(parse_network(""), Error);
  CHECK_THROWS_AS(parse_network("x y\n"), Error);              // missing leaves line
  CHECK_THROWS_AS(parse_network("leaves: y,x\nx y\n"), Error); // unsorted leaves
  CHECK_THROWS_AS(parse_network("leaves: x,y\nx y z\n"), Error);
  CHECK_THROWS_AS(parse_network("leaves: x,y\nx\n"), Error);
  // degree-1 vertex not declared
  CHECK_THROWS_AS(parse_network("leaves: x\nx m\nm y\nm z\n"), Error);
}

TEST_CASE("reserved _z labels are rejected at parse time") {
  CHECK_THROWS_AS(parse_network("leaves: _z0,x\n_z0 x\n"), Error);
  CHECK_THROWS_AS(parse_network("leaves: x,y\nx _z1\n_z1 y\n"), Error);
  CHECK_THROWS_AS(parse_multiset_matrix("_z0 a : 2\n"), Error);
}

TEST_CASE("multiset matrix round-trip is bit-exact") {
  const auto mm = multiset_matrix(fixture("fig1"));
  const std::string text = serialize_matrix(mm);
  CHECK(parse_multiset_matrix(text) == mm);
  CHECK(serialize_matrix(parse_multiset_matrix(text)) == text);
}

TEST_CASE("shortest matrix round-trip is bit-exact") {
  const auto sm = shortest_matrix(fixture("fig2_left"));
  const std::string text = serialize_matrix(sm);
  CHECK(parse_shortest_matrix(text) == sm);
  CHECK(serialize_matrix(parse_shortest_matrix(text)) == text);
}

TEST_CASE("matrix parser checks shape") {
  CHECK_THROWS_AS(parse_multiset_matrix(""), Error);
  CHECK_THROWS_AS(parse_multiset_matrix("b a : 2\n"), Error);        // unsorted pair
  CHECK_THROWS_AS(parse_multiset_matrix("a b : 3,2\n"), Error);      // not ascending
  CHECK_THROWS_AS(parse_multiset_matrix("a b : 2\na b : 2\n"), Error);
  CHECK_THROWS_AS(parse_multiset_matrix("a b : 2\na c : 2\n"), Error);  // missing b c
  CHECK_THROWS_AS(parse_shortest_matrix("a b : -1\n"), Error);
  // triangle inequality violation
  CHECK_THROWS_AS(parse_shortest_matrix("a b : 1\na c : 1\nb c : 9\n"), Error);
}

TEST_CASE("matrix text matches the documented format") {
  RawGraph g;
  g.leaves = {"x", "y"};
  g.edges = {{"x", "y"}};
  const Network n = Network::validate(g);
  CHECK(serialize_matrix(multiset_matrix(n)) == "x y : 1\n");
  CHECK(serialize_matrix(shortest_matrix(n)) == "x y : 1\n");
}
