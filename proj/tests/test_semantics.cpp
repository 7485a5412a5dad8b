#include <catch2/catch_amalgamated.hpp>

#include "collage/semantics.hpp"

using namespace collage;

static const char* kShared = R"(
bimodular theory SharedState {
  left objects: S;
  right objects: T;
  center objects: C;
  central edge getL : C -> S, C;
  central edge putL : S, C -> C;
  central edge getR : C -> C, T;
  central edge putR : C, T -> C;
  diagram race : getR ; (getL | T) ; (putL | T) ; putR;
  equation read_commute : getL ; (S | getR) = getR ; (getL | T);
}
interpretation Z2All for SharedState {
  model: z2;
  object S = *;  object T = *;  object C = *;
  edge getL = 1;  edge putL = 1;  edge getR = 1;  edge putR = 1;
}
)";

static TwoGraph one_cell_graph() {
  TwoGraph g;
  g.zero_cells = {"Z"};
  g.one_generators = {{"A", "Z", "Z"}};
  g.two_generators = {{"f", "Z", {"A"}, "Z", {"A"}}, {"g", "Z", {"A"}, "Z", {"A"}}};
  return g;
}

static MonoidalInterpretation z2_interp() {
  MonoidalInterpretation i;
  i.model = z2_model();
  i.objects = {{"A", "*"}};
  i.edges = {{"f", "1"}, {"g", "1"}};
  return i;
}

TEST_CASE("eval_monoidal folds layers") {
  TwoGraph g = one_cell_graph();
  MonoidalInterpretation i = z2_interp();
  SlicedDiagram id2 = identity(OneCellPath{"Z", {"A", "A"}});
  CHECK(eval_monoidal(g, id2, i) == "0");

  SlicedDiagram single{OneCellPath{"Z", {"A"}}, {{{}, "f", {}}}};
  CHECK(eval_monoidal(g, single, i) == "1");

  SECTION("exchange invariance: two interleavings evaluate equal") {
    SlicedDiagram fg{OneCellPath{"Z", {"A", "A"}}, {{{}, "f", {"A"}}, {{"A"}, "g", {}}}};
    SlicedDiagram gf{OneCellPath{"Z", {"A", "A"}}, {{{"A"}, "g", {}}, {{}, "f", {"A"}}}};
    CHECK(eval_monoidal(g, fg, i) == eval_monoidal(g, gf, i));
    CHECK(eval_monoidal(g, fg, i) == "0");
    CHECK(eval_monoidal(g, normalize(g, fg), i) == eval_monoidal(g, fg, i));
  }
  SECTION("missing entries are reported") {
    MonoidalInterpretation gap = i;
    gap.edges.erase("g");
    SlicedDiagram dg{OneCellPath{"Z", {"A"}}, {{{}, "g", {}}}};
    CHECK_THROWS_MATCHES(eval_monoidal(g, dg, gap), EvalError,
                         Catch::Matchers::MessageMatches(
                             Catch::Matchers::ContainsSubstring("missing interpretation entry")));
  }
}

TEST_CASE("eval_collage on the shared-state theory") {
  CollageFile f = parse_collage(kShared);
  const TheoryDecl& t = f.theories[0];
  REQUIRE(t.diagnostics.empty());
  CollageInterpretation i = resolve_collage_interpretation(f, *f.interpretation("Z2All"));
  SECTION("central identity wire evaluates to the identity") {
    CHECK(eval_collage(identity(OneCellPath{"M", {"C"}}), t.bimod, i) == "0");
  }
  SECTION("the race composite evaluates (four flips cancel)") {
    CHECK(eval_collage(t.diagrams.at("race"), t.bimod, i) == "0");
  }
  SECTION("both sides of read_commute evaluate equal") {
    const RewriteRule& eq = t.equations[0];
    CHECK(eval_collage(eq.lhs, t.bimod, i) == eval_collage(eq.rhs, t.bimod, i));
  }
  SECTION("left edge whiskered by the central wire acts on the left") {
    CollageFile f2 = parse_collage(R"(
bimodular theory L {
  left objects: S;
  center objects: C;
  left edge mk : -> S;
  diagram inject : mk | C;
}
interpretation I for L { model: z2; object S = *; object C = *; edge mk = 1; }
)");
    const TheoryDecl& t2 = f2.theories[0];
    REQUIRE(t2.diagnostics.empty());
    CollageInterpretation i2 = resolve_collage_interpretation(f2, *f2.interpretation("I"));
    CHECK(eval_collage(t2.diagrams.at("inject"), t2.bimod, i2) == "1");
  }
  SECTION("paths without a central wire are rejected") {
    CHECK_THROWS_AS(eval_collage(identity(OneCellPath{"M", {"S"}}), t.bimod, i),
                    CentralTypingError);
  }
}

TEST_CASE("eval_functor_box") {
  CollageFile f = parse_collage(R"(
functorbox theory FB {
  plain objects: A, B;
  box objects: X;
  plain edge p : A -> A;
  box edge q : X -> X;
  inbox edge u : A -> X;
  outbox edge v : X -> B;
  diagram boxed : u ; v;
  diagram through : u ; (F_up | q | F_dn) ; v;
}
)");
  const TheoryDecl& t = f.theories[0];
  REQUIRE(t.fbox_presentation.has_value());
  FunctorBoxInterpretation i;
  i.F = identity_lax(z2_model());
  i.objects = {{"A", "*"}, {"B", "*"}, {"X", "*"}};
  i.edges = {{"p", "1"}, {"q", "1"}, {"u", "1"}, {"v", "0"}};

  CHECK(eval_functor_box(t.diagrams.at("boxed"), t.fbox, i) == "1");
  CHECK(eval_functor_box(t.diagrams.at("through"), t.fbox, i) == "0");

  SECTION("empty box created by n and closed against another box") {
    // n ; n makes two empty boxes; e merges them; the value is epsilon.
    SlicedDiagram two_n{OneCellPath{"A", {}},
                        {{{}, "n", {}}, {{"F_up", "F_dn"}, "n", {}}}};
    SlicedDiagram merged = two_n;
    merged.layers.push_back({{"F_up"}, "e", {"F_dn"}});
    assert_valid(t.graph, merged);
    SlicedDiagram one_n{OneCellPath{"A", {}}, {{{}, "n", {}}}};
    FinLaxMonoidalFunctor half = chain5_half_lax();
    FunctorBoxInterpretation ci;
    ci.F = half;
    ci.objects = {{"A", "0"}, {"B", "0"}, {"X", "0"}};
    ci.edges = {};
    CHECK(eval_functor_box(merged, t.fbox, ci) == eval_functor_box(one_n, t.fbox, ci));
  }
  SECTION("unmatched walls raise") {
    SlicedDiagram open_box{OneCellPath{"A", {"F_up"}}, {}};
    CHECK_THROWS_MATCHES(eval_functor_box(open_box, t.fbox, i), EvalError,
                         Catch::Matchers::MessageMatches(
                             Catch::Matchers::ContainsSubstring("unmatched")));
  }
}

TEST_CASE("eval_internal chases the composite point") {
  Polygraph p;
  p.name = "P";
  p.objects = {"A", "B"};
  p.edges = {{"f", {"A"}, {"B"}}};
  InternalPresentation ip = syn_internal(p);
  MonoidalInterpretation i;
  i.model = z2_model();
  i.objects = {{"A", "*"}, {"B", "*"}};
  i.edges = {{"f", "1"}};

  SECTION("closed tube around a generator yields its interpretation") {
    SlicedDiagram tube{OneCellPath{"I", {}},
                       {{{}, "cup_A", {}}, {{"L"}, "f", {"R"}}, {{}, "cap_B", {}}}};
    assert_valid(ip.graph, tube);
    InternalPoint pt = eval_internal(ip, p, tube, i);
    REQUIRE(pt.closed.size() == 1);
    CHECK(pt.closed[0] == "1");
  }
  SECTION("empty tube yields the unit point") {
    SlicedDiagram empty{OneCellPath{"I", {}}, {{{}, "n1", {}}, {{}, "e2", {}}}};
    assert_valid(ip.graph, empty);
    InternalPoint pt = eval_internal(ip, p, empty, i);
    REQUIRE(pt.closed.size() == 1);
    CHECK(pt.closed[0] == "0");
  }
  SECTION("splitting and remerging a tube is the identity on the point") {
    SlicedDiagram d{OneCellPath{"I", {}},
                    {{{}, "cup_A", {}},
                     {{"L"}, "f", {"R"}},
                     {{"L"}, "n2", {"B", "R"}},
                     {{"L"}, "e1", {"B", "R"}},
                     {{}, "cap_B", {}}}};
    assert_valid(ip.graph, d);
    InternalPoint pt = eval_internal(ip, p, d, i);
    REQUIRE(pt.closed.size() == 1);
    CHECK(pt.closed[0] == "1");
  }
  SECTION("dropping an empty split-off segment is harmless") {
    SlicedDiagram d{OneCellPath{"I", {}},
                    {{{}, "cup_A", {}},
                     {{"L"}, "n2", {"A", "R"}},
                     {{}, "e2", {"L", "A", "R"}},
                     {{"L"}, "f", {"R"}},
                     {{}, "cap_B", {}}}};
    assert_valid(ip.graph, d);
    InternalPoint pt = eval_internal(ip, p, d, i);
    REQUIRE(pt.closed.size() == 1);
    CHECK(pt.closed[0] == "1");
  }
  SECTION("capping one segment of a split strand is a mismatch") {
    SlicedDiagram d{OneCellPath{"I", {}},
                    {{{}, "cup_A", {}},
                     {{"L", "A"}, "n2", {"R"}},
                     {{}, "cap_A", {"L", "R"}}}};
    assert_valid(ip.graph, d);
    CHECK_THROWS_MATCHES(eval_internal(ip, p, d, i), EvalError,
                         Catch::Matchers::MessageMatches(
                             Catch::Matchers::ContainsSubstring("composition mismatch")));
  }
}

TEST_CASE("comb evaluation agrees both ways") {
  FinMonoidalCategory z2 = z2_model();
  for (const auto& fv : {"0", "1"})
    for (const auto& gv : {"0", "1"})
      for (const auto& hv : {"0", "1"}) {
        CombResult r = comb_eval(z2, "*", "*", "*", "*", "*", fv, gv, hv);
        CHECK(r.direct == r.internal);
      }
  SECTION("with g = 0 the comb adds its two residuals") {
    CombResult r = comb_eval(z2, "*", "*", "*", "*", "*", "1", "0", "1");
    CHECK(r.direct == "0");
    CHECK(r.internal == "0");
  }
  SECTION("chain model combs agree") {
    FinMonoidalCategory ch = chain_model(3);
    // f : 3 -> 1 + 1, g : 1 -> 1, h : 1 + 1 -> 0 (thin category: unique).
    CombResult r = comb_eval(ch, "3", "1", "1", "1", "0", chain_hom_name(3, 2),
                             chain_hom_name(1, 1), chain_hom_name(2, 0));
    CHECK(r.direct == r.internal);
    CHECK(r.direct == chain_hom_name(3, 0));
  }
}

TEST_CASE("soundness of a validated trace") {
  CollageFile f = parse_collage(kShared);
  const TheoryDecl& t = f.theories[0];
  CollageInterpretation i = resolve_collage_interpretation(f, *f.interpretation("Z2All"));
  const RewriteRule& eq = t.equations[0];
  Verdict v = bounded_eq(t.graph, eq.lhs, eq.rhs, t.equations);
  REQUIRE(v.kind == Verdict::Equal);
  auto evalz2 = [&](const SlicedDiagram& d) { return eval_collage(d, t.bimod, i); };
  SoundnessReport rep = soundness_check(
      t.graph, t.equations, v.trace, eq.lhs, eq.rhs,
      {{"z2", evalz2}});
  CHECK(rep.ok);
  REQUIRE(rep.entries.size() == 1);
  CHECK(rep.entries[0].equal);
}
