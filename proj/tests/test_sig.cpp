#include <catch2/catch_amalgamated.hpp>

#include "collage/sig.hpp"

using namespace collage;

static BimodularGraph shared_state_like() {
  // get/put for the left and right regions acting on one central object.
  BimodularGraph g;
  g.name = "SharedState";
  g.left_objects = {"S"};
  g.right_objects = {"T"};
  g.center_objects = {"C"};
  g.left_edges = {{"dupS", {"S"}, {"S", "S"}}, {"delS", {"S"}, {}}};
  g.right_edges = {{"dupT", {"T"}, {"T", "T"}}, {"delT", {"T"}, {}}};
  g.central_edges = {{"getL", {"C"}, {"S", "C"}},
                     {"putL", {"S", "C"}, {"C"}},
                     {"getR", {"C"}, {"C", "T"}},
                     {"putR", {"C", "T"}, {"C"}}};
  return g;
}

TEST_CASE("polygraph validation") {
  Polygraph p{"P", {"A", "B"}, {{"f", {"A"}, {"B"}}, {"g", {"A", "A"}, {}}}};
  CHECK(validate(p).empty());

  SECTION("undeclared object") {
    p.edges.push_back({"h", {"Z"}, {"B"}});
    auto diags = validate(p);
    REQUIRE(diags.size() == 1);
    CHECK(diags[0].invariant == "declared objects");
    CHECK(diags[0].item == "h");
  }
  SECTION("duplicate edge name") {
    p.edges.push_back({"f", {"B"}, {"B"}});
    auto diags = validate(p);
    REQUIRE(diags.size() == 1);
    CHECK(diags[0].invariant == "unique names");
  }
  SECTION("empty polygraph is fine") { CHECK(validate(Polygraph{}).empty()); }
}

TEST_CASE("two-graph validation") {
  TwoGraph g;
  g.zero_cells = {"P", "Q"};
  g.one_generators = {{"a", "P", "P"}, {"b", "P", "Q"}, {"c", "Q", "Q"}};
  g.two_generators = {{"f", "P", {"a"}, "P", {"a", "a"}},
                      {"h", "P", {}, "P", {}},
                      {"k", "P", {"a", "b"}, "P", {"b", "c"}}};
  CHECK(validate(g).empty());

  SECTION("non-composable path") {
    g.two_generators.push_back({"bad", "P", {"c"}, "P", {"a"}});
    auto diags = validate(g);
    REQUIRE_FALSE(diags.empty());
    CHECK(diags[0].invariant == "composable path");
  }
  SECTION("mismatched endpoints") {
    g.two_generators.push_back({"bad", "P", {"a"}, "P", {"b"}});
    auto diags = validate(g);
    REQUIRE(diags.size() == 1);
    CHECK(diags[0].invariant == "shared endpoints");
  }
}

TEST_CASE("bimodular graph validation") {
  BimodularGraph g = shared_state_like();
  CHECK(validate(g).empty());

  SECTION("two central objects in a domain") {
    g.central_edges.push_back({"bad", {"C", "C"}, {"C"}});
    auto diags = validate(g);
    REQUIRE(diags.size() == 1);
    CHECK(diags[0].invariant == "central wire multiplicity");
    CHECK(diags[0].item == "bad");
  }
  SECTION("no central object in a codomain") {
    g.central_edges.push_back({"bad", {"C"}, {"S"}});
    auto diags = validate(g);
    REQUIRE(diags.size() == 1);
    CHECK(diags[0].invariant == "central wire multiplicity");
  }
  SECTION("right object left of the central wire") {
    g.central_edges.push_back({"bad", {"T", "C"}, {"C"}});
    auto diags = validate(g);
    REQUIRE(diags.size() == 1);
    CHECK(diags[0].invariant == "central wire shape");
  }
  SECTION("left edge touching a right object") {
    g.left_edges.push_back({"bad", {"S"}, {"T"}});
    auto diags = validate(g);
    REQUIRE(diags.size() == 1);
    CHECK(diags[0].invariant == "declared objects");
  }
  SECTION("object name shared between families") {
    g.right_objects.push_back("S");
    auto diags = validate(g);
    REQUIRE_FALSE(diags.empty());
    CHECK(diags[0].invariant == "unique names");
  }
}

TEST_CASE("functor box signature validation") {
  FunctorBoxSignature s;
  s.plain_objects = {"A", "B"};
  s.box_objects = {"X", "Y"};
  s.plain_edges = {{"f", {"A"}, {"B"}}};
  s.box_edges = {{"g", {"X"}, {"Y"}}};
  s.in_box_edges = {{"u", {"A"}, {"Y"}}};
  s.out_box_edges = {{"v", {"X"}, {"B"}}};
  CHECK(validate(s).empty());

  SECTION("in-box edge with box-object domain") {
    s.in_box_edges.push_back({"bad", {"X"}, {"Y"}});
    auto diags = validate(s);
    REQUIRE(diags.size() == 1);
    CHECK(diags[0].invariant == "edge family boundary");
  }
  SECTION("out-box edge with box-object codomain") {
    s.out_box_edges.push_back({"bad", {"X"}, {"Y"}});
    auto diags = validate(s);
    REQUIRE(diags.size() == 1);
    CHECK(diags[0].invariant == "edge family boundary");
  }
}

TEST_CASE("validation is order-independent") {
  BimodularGraph g = shared_state_like();
  g.central_edges.push_back({"bad", {"C", "C"}, {"S"}});
  auto diags1 = validate(g);
  std::reverse(g.central_edges.begin(), g.central_edges.end());
  std::reverse(g.left_edges.begin(), g.left_edges.end());
  auto diags2 = validate(g);
  CHECK(diags1 == diags2);
}
