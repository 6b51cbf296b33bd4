#include <fstream>
#include <sstream>

#include "doctest.h"
#include "oracles.hpp"
#include "parapri/error.hpp"
#include "parapri/theory.hpp"
#include "random_theory.hpp"

using namespace parapri;

namespace {

std::string slurp(const std::string& name) {
  std::ifstream in(std::string(PARAPRI_DATA_DIR) + "/" + name);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("transitive closure") {
  CHECK(transitive_closure({{0, 1}, {1, 2}}) == std::set<Edge>{{0, 1}, {1, 2}, {0, 2}});
  CHECK(transitive_closure({}).empty());
  CHECK_THROWS_AS(transitive_closure({{0, 1}, {1, 0}}), CycleError);
  CHECK_THROWS_AS(transitive_closure({{3, 3}}), CycleError);
}

TEST_CASE("transitive closure agrees with Floyd-Warshall") {
  gen::Rng rng(3);
  for (int k = 0; k < 200; ++k) {
    const auto edges = gen::dag(rng, 6, 0.3);
    CHECK(transitive_closure(edges) == oracle::closure(6, edges));
  }
}

TEST_CASE("priority order validation") {
  CHECK_THROWS_AS(PriorityOrder({"a", "a"}, {}), ValidationError);
  CHECK_THROWS_AS(PriorityOrder({"a", "b"}, {{0, 2}}), ValidationError);
  CHECK_THROWS_AS(PriorityOrder({"a", "b"}, {{0, 1}, {1, 0}}), CycleError);
  const PriorityOrder chain({"e1", "e2", "e3"}, {{0, 1}, {1, 2}});
  CHECK(chain.dominates(0, 2));
  CHECK_FALSE(chain.dominates(2, 0));
  CHECK_FALSE(chain.dominates(1, 1));
  CHECK(chain.index_of("e3") == 2u);
}

TEST_CASE("parse the Tweety file") {
  const Theory t = load_theory(slurp("tweety.theory"));
  CHECK(t.defaults().size() == 2);
  CHECK(t.priority().edges() == std::set<Edge>{{1, 0}});
  CHECK(t.defaults()[0].label == "e1");
  CHECK(t.universe().atoms() == std::vector<std::string>{"ostrich", "bird", "flies"});
  CHECK(t.base().size() == 2);
}

TEST_CASE("parse errors and validation") {
  CHECK_THROWS_AS(load_theory("default a: p\ndefault b: q\nprefer a > b\nprefer b > a\n"), CycleError);
  CHECK(load_theory("default a: p\ndefault b: q\n").priority().empty());
  CHECK_THROWS_AS(load_theory("default a: p\nprefer a > z\n"), ValidationError);
  CHECK_THROWS_AS(load_theory("default a: p\ndefault a: q\n"), ValidationError);
  CHECK_THROWS_AS(load_theory("atoms: p\ndefault a: q\n"), ValidationError);
  CHECK_THROWS_AS(load_theory("fix f: p\nfix f: q\n"), ValidationError);
  try {
    load_theory("default a: p\nbogus line\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
    CHECK(e.offset() == 13);
  }
  try {
    load_theory("base: p\ndefault a: p & (q\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
    CHECK(e.offset() == 25);
  }
}

TEST_CASE("universe defaults to first-mention order") {
  const Theory t = load_theory("fix f: z\ndefault d: y -> x\nbase: w\n");
  CHECK(t.universe().atoms() == std::vector<std::string>{"w", "y", "x", "z"});
  const Theory explicit_atoms = load_theory("atoms: x y w z extra\nbase: w\ndefault d: y -> x\nfix f: z\n");
  CHECK(explicit_atoms.universe().size() == 5);
}

TEST_CASE("print/parse round trip") {
  gen::Rng rng(23);
  for (int k = 0; k < 100; ++k) {
    const Theory t = gen::theory(rng, {4, 5, 3, 2, 0});
    const Theory back = load_theory(print_theory(t));
    CHECK(back.universe() == t.universe());
    CHECK(back.base() == t.base());
    CHECK(back.defaults() == t.defaults());
    CHECK(back.fixtures() == t.fixtures());
    CHECK(back.priority().closure() == t.priority().closure());
  }
}

TEST_CASE("json export") {
  const Theory t = load_theory(slurp("tweety.theory"));
  const auto j = theory_to_json(t);
  CHECK(j["universe"] == nlohmann::json({"ostrich", "bird", "flies"}));
  CHECK(j["defaults"][1]["formula"] == "(ostrich -> ~flies)");
  CHECK(j["edges"] == nlohmann::json::parse(R"([["e2","e1"]])"));
  CHECK(j["fixtures"].empty());
}

TEST_CASE("grounding") {
  SUBCASE("single constant") {
    const Theory t = load_theory("domain: tweety\nschema d[X]: bird(X) -> flies(X)\n");
    REQUIRE(t.defaults().size() == 1);
    CHECK(t.defaults()[0].label == "d[tweety]");
    CHECK(t.defaults()[0].formula.str() == "(bird(tweety) -> flies(tweety))");
  }
  SUBCASE("two constants are parallel") {
    const Theory t = load_theory("domain: a b\nschema d[X]: bird(X) -> flies(X)\n");
    CHECK(t.defaults().size() == 2);
    CHECK(t.priority().empty());
  }
  SUBCASE("lifted edges") {
    const Theory t = load_theory("domain: a b\nschema e1[X]: p(X)\nschema e2[X]: q(X)\nprefer e2 > e1\n");
    REQUIRE(t.defaults().size() == 4);
    std::set<std::pair<std::string, std::string>> named;
    for (auto [h, l] : t.priority().edges()) named.emplace(t.defaults()[h].label, t.defaults()[l].label);
    CHECK(named == std::set<std::pair<std::string, std::string>>{
                       {"e2[a]", "e1[a]"}, {"e2[a]", "e1[b]"}, {"e2[b]", "e1[a]"}, {"e2[b]", "e1[b]"}});
  }
  SUBCASE("arity and count") {
    const Theory t = load_theory("domain: a b c\nschema r[X,Y]: p(X) -> q(X,Y)\nschema s[X]: p(X)\n");
    CHECK(t.defaults().size() == 9 + 3);
    CHECK(t.defaults()[1].label == "r[a,b]");
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(load_theory("schema d[X]: p(X)\n"), ParseError);
    CHECK_THROWS_AS(load_theory("domain:\nschema d[X]: p(X)\n"), ValidationError);
    CHECK_THROWS_AS(load_theory("domain: a\nschema d[X]: p(Y)\n"), ValidationError);
    CHECK_THROWS_AS(load_theory("domain: a\nschema d[x]: p(x)\n"), ValidationError);
  }
}

TEST_CASE("grounding matches hand-written instances under the preferred-model oracle") {
  const Theory grounded = load_theory(
      "domain: a b\nbase: bird(a)\nbase: ostrich(b)\nbase: ostrich(b) -> bird(b)\n"
      "schema d1[X]: bird(X) -> flies(X)\nschema d2[X]: ostrich(X) -> ~flies(X)\nprefer d2 > d1\n");
  const Theory manual = load_theory(
      "base: bird(a)\nbase: ostrich(b)\nbase: ostrich(b) -> bird(b)\n"
      "default x1: bird(a) -> flies(a)\ndefault x2: bird(b) -> flies(b)\n"
      "default y1: ostrich(a) -> ~flies(a)\ndefault y2: ostrich(b) -> ~flies(b)\n"
      "prefer y1 > x1\nprefer y1 > x2\nprefer y2 > x1\nprefer y2 > x2\n");
  const auto atoms = manual.universe().atoms();
  CHECK(oracle::project(oracle::preferred(grounded), atoms) == oracle::preferred(manual));
}

TEST_CASE("fixtures to defaults") {
  const Theory t = load_theory(slurp("fixture.theory"));
  const Theory r = fixtures_to_defaults(t);
  CHECK(r.fixtures().empty());
  REQUIRE(r.defaults().size() == 4);
  CHECK(r.defaults()[2].formula.str() == "bird");
  CHECK(r.defaults()[3].formula.str() == "~bird");
  CHECK(r.priority().edges() == t.priority().edges());
  CHECK(oracle::preferred(r) == oracle::preferred(t));

  const Theory plain = load_theory(slurp("tweety.theory"));
  const Theory same = fixtures_to_defaults(plain);
  CHECK(same.defaults() == plain.defaults());
  CHECK(same.priority().edges() == plain.priority().edges());
}

TEST_CASE("label validation") {
  CHECK_THROWS_AS(Theory(Universe({"p"}), {}, {{"has space", Formula::atom("p")}}, {}, {}), ValidationError);
  CHECK_THROWS_AS(Theory(Universe({"p"}), {}, {{"", Formula::atom("p")}}, {}, {}), ValidationError);
  CHECK_THROWS_AS(Theory(Universe({"p"}), {Formula::atom("q")}, {}, {}, {}), ValidationError);
}
