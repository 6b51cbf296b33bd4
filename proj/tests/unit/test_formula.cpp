#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "parapri/error.hpp"
#include "parapri/formula.hpp"
#include "random_theory.hpp"

using namespace parapri;

namespace {

Interpretation interp(const std::vector<std::string>& atoms, const std::vector<std::string>& true_atoms) {
  return Interpretation::from_true_atoms(Universe(atoms), true_atoms);
}

}  // namespace

TEST_CASE("parse: associativity and precedence") {
  const Formula a = Formula::atom("a"), b = Formula::atom("b"), c = Formula::atom("c");
  CHECK(parse_formula("a -> b -> c") == Formula::implication(a, Formula::implication(b, c)));
  CHECK(parse_formula("~a & b | c") == Formula::disjunction(Formula::conjunction(~a, b), c));
  CHECK(parse_formula("a & b & c") == Formula::conjunction(Formula::conjunction(a, b), c));
  CHECK(parse_formula("a <-> b <-> c") == Formula::equivalence(Formula::equivalence(a, b), c));
  CHECK(parse_formula("a | b -> c <-> a") ==
        Formula::equivalence(Formula::implication(Formula::disjunction(a, b), c), a));
  CHECK(parse_formula("bird -> (flies & ~ostrich)") ==
        Formula::implication(Formula::atom("bird"),
                             Formula::conjunction(Formula::atom("flies"), ~Formula::atom("ostrich"))));
}

TEST_CASE("parse: literals, ground atoms, comments") {
  CHECK(parse_formula("true").op() == Op::kTrue);
  CHECK(parse_formula("false").op() == Op::kFalse);
  CHECK(parse_formula("flies( tweety )").name() == "flies(tweety)");
  CHECK(parse_formula("p(a,b) & q # trailing").str() == "(p(a,b) & q)");
  CHECK(parse_formula("  ~~x ").str() == "~~x");
}

TEST_CASE("parse: errors carry byte offsets") {
  try {
    parse_formula("a & $");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.offset() == 4);
  }
  try {
    parse_formula("(a | b");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.offset() == 6);
  }
  CHECK_THROWS_AS(parse_formula(""), ParseError);
  CHECK_THROWS_AS(parse_formula("a b"), ParseError);
  CHECK_THROWS_AS(parse_formula("a &"), ParseError);
  CHECK_THROWS_AS(parse_formula("p(a,)"), ParseError);
}

TEST_CASE("printer round-trips random formulas") {
  gen::Rng rng(11);
  const auto atoms = gen::atom_names(4);
  for (int k = 0; k < 500; ++k) {
    const Formula f = gen::formula(rng, atoms, 4);
    CHECK(parse_formula(f.str()) == f);
  }
}

TEST_CASE("eval examples") {
  CHECK(eval(parse_formula("a|~a"), interp({"a"}, {})));
  CHECK(eval(parse_formula("a|~a"), interp({"a"}, {"a"})));
  CHECK_FALSE(eval(parse_formula("a&b"), interp({"a", "b"}, {"a"})));
  CHECK_FALSE(eval(parse_formula("ostrich -> ~flies"), interp({"ostrich", "flies", "bird"}, {"ostrich", "flies", "bird"})));
  CHECK_THROWS_AS(eval(parse_formula("zz"), interp({"a"}, {})), ValidationError);
}

TEST_CASE("eval agrees with the truth-table oracle up to depth 4 over 3 atoms") {
  gen::Rng rng(5);
  const auto atoms = gen::atom_names(3);
  const Universe u(atoms);
  for (int k = 0; k < 400; ++k) {
    const Formula f = gen::formula(rng, atoms, 4);
    const CompiledFormula compiled(f, u);
    for (std::uint64_t bits = 0; bits < 8; ++bits) {
      oracle::Assignment a;
      for (std::size_t i = 0; i < 3; ++i) a[atoms[i]] = (bits >> i) & 1u;
      const bool expected = oracle::truth(f, a);
      CHECK(eval(f, Interpretation(u, bits)) == expected);
      CHECK(compiled(bits) == expected);
    }
  }
}

TEST_CASE("is_tautology") {
  const Universe pq({"p", "q"});
  CHECK(is_tautology(parse_formula("a | ~a"), Universe({"a"})));
  CHECK_FALSE(is_tautology(parse_formula("a"), Universe({"a"})));
  CHECK(is_tautology(parse_formula("((p&q)|(~p&~q)) <-> (p<->q)"), pq));
  CHECK(is_tautology(parse_formula("true"), Universe()));
  CHECK_FALSE(is_tautology(parse_formula("false"), Universe()));
}

TEST_CASE("is_tautology respects the atom cap") {
  std::vector<std::string> atoms;
  for (int k = 0; k < 30; ++k) atoms.push_back("x" + std::to_string(k));
  CHECK_THROWS_AS(is_tautology(parse_formula("x0 | ~x0"), Universe(atoms)), CapExceeded);
  Limits small;
  small.tautology_atoms = 1;
  CHECK_THROWS_AS(is_tautology(parse_formula("p | q"), Universe({"p", "q"}), small), CapExceeded);
}

TEST_CASE("entails") {
  const Universe u({"ostrich", "bird", "flies"});
  const std::vector<Formula> mp = {parse_formula("ostrich -> bird"), parse_formula("ostrich")};
  CHECK(entails(mp, parse_formula("bird"), u));
  CHECK_FALSE(entails({}, parse_formula("ostrich"), u));
  const std::vector<Formula> one = {parse_formula("ostrich -> bird")};
  CHECK(entails(one, parse_formula("(bird -> flies) -> (ostrich -> flies)"), u));
  CHECK_FALSE(entails(one, parse_formula("bird -> ostrich"), u));
}

TEST_CASE("entails matches the tautology of the implication") {
  gen::Rng rng(17);
  const auto atoms = gen::atom_names(3);
  const Universe u(atoms);
  for (int k = 0; k < 300; ++k) {
    std::vector<Formula> premises;
    for (int n = 0; n < k % 3; ++n) premises.push_back(gen::formula(rng, atoms, 2));
    const Formula f = gen::formula(rng, atoms, 2);
    CHECK(entails(premises, f, u) == is_tautology(Formula::implication(conjoin(premises), f), u));
    CHECK(entails(premises, f, u) == oracle::tautology(Formula::implication(conjoin(premises), f)));
  }
}

TEST_CASE("universe and interpretation") {
  CHECK_THROWS_AS(Universe({"a", "a"}), ValidationError);
  const Universe u({"bird", "ostrich", "flies"});
  CHECK(u.index_of("flies") == 2u);
  CHECK_FALSE(u.contains("penguin"));
  const auto z = Interpretation::from_true_atoms(u, std::vector<std::string>{"bird", "ostrich"});
  CHECK(z.value("ostrich"));
  CHECK_FALSE(z.value(2));
  CHECK(z.str() == "bird ostrich ~flies");
  CHECK_THROWS_AS(Interpretation::from_true_atoms(u, std::vector<std::string>{"penguin"}), ValidationError);
}

TEST_CASE("conjoin, disjoin, atoms") {
  CHECK(conjoin({}).op() == Op::kTrue);
  CHECK(disjoin({}).op() == Op::kFalse);
  const std::vector<Formula> fs = {Formula::atom("a"), Formula::atom("b"), Formula::atom("c")};
  CHECK(conjoin(fs).str() == "((a & b) & c)");
  CHECK(atoms_of(parse_formula("(b -> a) & ~b & c")) == std::vector<std::string>{"b", "a", "c"});
  const Formula renamed = map_atoms(parse_formula("a & ~b"), [](const std::string& n) { return Formula::atom(n + "1"); });
  CHECK(renamed.str() == "(a1 & ~b1)");
}
