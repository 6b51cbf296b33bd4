#include "doctest.h"
#include "oracles.hpp"
#include "parapri/error.hpp"
#include "parapri/preorder.hpp"
#include "random_theory.hpp"

using namespace parapri;

namespace {

oracle::Assignment assignment_of(const Interpretation& z) {
  oracle::Assignment a;
  for (std::size_t k = 0; k < z.universe().size(); ++k) a[z.universe().atoms()[k]] = z.value(k);
  return a;
}

PreorderSpec high_low(const std::string& hi, const std::string& lo) {
  return {{{"h", parse_formula(hi)}, {"l", parse_formula(lo)}}, PriorityOrder({"h", "l"}, {{0, 1}}), {}};
}

}  // namespace

TEST_CASE("default_leq examples") {
  const Universe u({"a", "b"});
  const PreorderSpec spec = high_low("a", "b");
  const Interpretation tt(u, 0b11), tf(u, 0b01), ft(u, 0b10);
  CHECK(default_leq(spec, tt, tt));
  CHECK_FALSE(default_leq(spec, tt, tf));
  CHECK(default_leq(spec, ft, tf));
  CHECK_THROWS_AS(default_leq(spec, tt, Interpretation(Universe({"a", "c"}), 0)), ValidationError);
}

TEST_CASE("fixture_equiv examples") {
  const Universe u({"p", "q"});
  const Interpretation pt(u, 0b01), qt(u, 0b10);
  CHECK(fixture_equiv({}, pt, qt));
  const std::vector<Formula> p = {parse_formula("p")};
  CHECK_FALSE(fixture_equiv(p, pt, qt));
  const std::vector<Formula> p_or_q = {parse_formula("p | q")};
  CHECK(fixture_equiv(p_or_q, pt, qt));
}

TEST_CASE("strictly_better examples") {
  const Universe u({"a"});
  const Interpretation t(u, 1), f(u, 0);
  const PreorderSpec one = PreorderSpec::parallel({parse_formula("a")});
  CHECK_FALSE(strictly_better(one, t, t));
  CHECK(strictly_better(one, t, f));
  CHECK_FALSE(strictly_better(one, f, t));
  const PreorderSpec fixed = PreorderSpec::parallel({parse_formula("a")}, {parse_formula("a")});
  CHECK_FALSE(strictly_better(fixed, t, f));
}

TEST_CASE("default_leq and the compiled pre-order agree with the literal definition") {
  gen::Rng rng(41);
  for (int n = 0; n < 150; ++n) {
    const Theory t = gen::theory(rng, {4, 5, 0, 1, 0});
    const PreorderSpec spec = PreorderSpec::of(t);
    const oracle::Order o = oracle::order_of(t);
    const CompiledPreorder compiled(spec, t.universe());
    const std::uint64_t count = std::uint64_t{1} << t.universe().size();
    for (std::uint64_t x = 0; x < count; ++x) {
      const Interpretation z(t.universe(), x);
      const auto pz = compiled.profile(x);
      for (std::uint64_t y = 0; y < count; ++y) {
        const Interpretation z2(t.universe(), y);
        const auto pz2 = compiled.profile(y);
        const bool expected = oracle::leq(o, assignment_of(z), assignment_of(z2));
        CHECK(default_leq(spec, z, z2) == expected);
        CHECK(compiled.leq(pz, pz2) == expected);
        CHECK(compiled.fixture_equiv(pz, pz2) == oracle::fix_equal(o, assignment_of(z), assignment_of(z2)));
        CHECK(compiled.strictly_better(pz2, pz) == strictly_better(spec, z2, z));
      }
    }
  }
}

TEST_CASE("default_leq is reflexive and transitive") {
  gen::Rng rng(43);
  for (int n = 0; n < 40; ++n) {
    const Theory t = gen::theory(rng, {4, 4, 0, 0, 0});
    const CompiledPreorder c(PreorderSpec::of(t), t.universe());
    const std::uint64_t count = std::uint64_t{1} << t.universe().size();
    std::vector<CompiledPreorder::Profile> p;
    for (std::uint64_t x = 0; x < count; ++x) p.push_back(c.profile(x));
    for (std::uint64_t x = 0; x < count; ++x) {
      CHECK(c.leq(p[x], p[x]));
      for (std::uint64_t y = 0; y < count; ++y) {
        for (std::uint64_t w = 0; w < count; ++w) {
          if (c.leq(p[x], p[y]) && c.leq(p[y], p[w])) CHECK(c.leq(p[x], p[w]));
        }
      }
    }
  }
}

TEST_CASE("empty priority is pointwise implication") {
  gen::Rng rng(47);
  const auto atoms = gen::atom_names(3);
  const Universe u(atoms);
  for (int n = 0; n < 100; ++n) {
    std::vector<Formula> ds = {gen::formula(rng, atoms, 2), gen::formula(rng, atoms, 2)};
    const PreorderSpec spec = PreorderSpec::parallel(ds);
    for (std::uint64_t x = 0; x < 8; ++x) {
      for (std::uint64_t y = 0; y < 8; ++y) {
        const Interpretation z(u, x), z2(u, y);
        bool pointwise = true;
        for (const auto& d : ds) pointwise = pointwise && (!eval(d, z) || eval(d, z2));
        CHECK(default_leq(spec, z, z2) == pointwise);
      }
    }
  }
}

TEST_CASE("an atom mentioned by no default does not change the comparison") {
  gen::Rng rng(53);
  const auto atoms = gen::atom_names(3);
  auto wide = atoms;
  wide.push_back("fresh");
  const Universe u(atoms), w(wide);
  for (int n = 0; n < 60; ++n) {
    const Theory t = gen::theory(rng, {3, 3, 0, 0, 0}).with_universe(u);
    const PreorderSpec spec = PreorderSpec::of(t);
    for (std::uint64_t x = 0; x < 8; ++x) {
      for (std::uint64_t y = 0; y < 8; ++y) {
        const bool narrow = default_leq(spec, Interpretation(u, x), Interpretation(u, y));
        CHECK(default_leq(spec, Interpretation(w, x | 8), Interpretation(w, y)) == narrow);
        CHECK(default_leq(spec, Interpretation(w, x), Interpretation(w, y | 8)) == narrow);
      }
    }
  }
}

TEST_CASE("priority labels must match the defaults") {
  const PreorderSpec bad{{{"a", parse_formula("p")}}, PriorityOrder({"a", "b"}, {}), {}};
  const Universe u({"p"});
  CHECK_THROWS_AS(default_leq(bad, Interpretation(u, 0), Interpretation(u, 1)), ValidationError);
}
