#include <doctest.h>

#include "posprop/error.hpp"
#include "posprop/transform.hpp"
#include "support.hpp"

using namespace posprop;
using namespace posprop::transform;
using testing::F;
using testing::Fs;
using testing::p;

namespace {

void expect_pair(const tactics::EquivalencePair& e, const Formula& left, const Formula& right) {
  CHECK(tactics::check_equivalence(e));
  CHECK(e.left == left);
  CHECK(e.right == right);
  CHECK(testing::oracle_table(left, 4) == testing::oracle_table(right, 4));
}

void expect_proof(const ProofOrCountermodel& r, const Formula& a, CalculusId calc) {
  REQUIRE(std::holds_alternative<Derivation>(r));
  const auto& d = std::get<Derivation>(r);
  CHECK(check(d).ok());
  CHECK(d.closed());
  CHECK(d.calculus() == calc);
  CHECK(d.conclusion() == a);
}

Formula oracle_tau(const Formula& a) {
  if (a.is_atom()) return a;
  Formula l = oracle_tau(a.left()), r = oracle_tau(a.right());
  if (a.is_disj()) return Formula::impl(Formula::impl(l, r), r);
  return Formula::impl(l, r);
}

}  // namespace

TEST_CASE("gamma: goldens") {
  auto g1 = gamma(F("p1 v (p2 & p3)"));
  CHECK(g1.formula == F("(p1 v p2) & (p1 v p3)"));
  REQUIRE(g1.trace.size() == 1);
  CHECK(g1.trace[0] == GammaStep{GammaRule::DisjunctionLeft, {}});
  CHECK(gamma(F("(p1 & p2) -> p3")).formula == F("p1 -> p2 -> p3"));
  auto g3 = gamma(F("p1 -> p2"));
  CHECK(g3.formula == F("p1 -> p2"));
  CHECK(g3.trace.empty());
  CHECK(gamma(F("(p1 & p2) v p3")).formula == F("(p1 v p3) & (p2 v p3)"));
  CHECK(gamma(F("p1 -> p2 & p3")).formula == F("(p1 -> p2) & (p1 -> p3)"));
  CHECK(std::string(to_string(GammaRule::ImplicationOverConjunction)) == "i");
  CHECK(std::string(to_string(GammaRule::DisjunctionRight)) == "iv");
}

TEST_CASE("gamma: redexes and replay") {
  CHECK(redex_at(F("p1 -> p2 & p3")) == GammaRule::ImplicationOverConjunction);
  CHECK(redex_at(F("p1 & p2 -> p3")) == GammaRule::ConjunctiveAntecedent);
  CHECK(redex_at(F("p1 v p2 & p3")) == GammaRule::DisjunctionLeft);
  CHECK(redex_at(F("p1 & p2 v p3")) == GammaRule::DisjunctionRight);
  CHECK_FALSE(redex_at(F("p1 v p2 & p3"), true).has_value());
  CHECK_FALSE(redex_at(F("p1 & (p2 -> p3)")).has_value());
  CHECK(rewrite_root(GammaRule::ConjunctiveAntecedent, F("p1 & p2 -> p3")) == F("p1 -> p2 -> p3"));
  CHECK_THROWS_AS(rewrite_root(GammaRule::DisjunctionLeft, F("p1 -> p2")), Error);
  Formula a = F("p4 -> (p1 & p2 v p3)");
  auto g = gamma(a);
  CHECK(replay(a, g.trace) == g.formula);
  CHECK_THROWS_AS(replay(a, {GammaStep{GammaRule::DisjunctionLeft, {}}}), Error);
  CHECK_THROWS_AS(replay(a, {GammaStep{GammaRule::DisjunctionLeft, {0, 0}}}), Error);
}

TEST_CASE("property: gamma is redex-free, truth-preserving and replayable") {
  testing::FormulaGen gen(71, Fragment::Positive);
  for (int i = 0; i < 1500; ++i) {
    Formula a = gen.upto(8, 4);
    auto g = gamma(a);
    CHECK(testing::oracle_gamma_normal(g.formula));
    CHECK(gamma_normal(g.formula));
    CHECK(testing::oracle_table(a, 4) == testing::oracle_table(g.formula, 4));
    CHECK(replay(a, g.trace) == g.formula);
    CHECK(gamma(g.formula).trace.empty());
    // & only on the top spine.
    for (const auto& c : conjunction_leaves(g.formula)) CHECK_FALSE(c.has_conj());
    auto ic = gamma(a, true);
    CHECK(testing::oracle_gamma_normal(ic.formula, true));
  }
}

TEST_CASE("gamma_equivalence: goldens") {
  expect_pair(gamma_equivalence(F("p1 -> (p2 & p3)")), F("p1 -> (p2 & p3)"), F("(p1 -> p2) & (p1 -> p3)"));
  auto refl = gamma_equivalence(p(1));
  expect_pair(refl, p(1), p(1));
  expect_pair(gamma_equivalence(F("(p1 & p2) v p3")), F("(p1 & p2) v p3"), F("(p1 v p3) & (p2 v p3)"));
  CHECK(gamma_equivalence(F("p1 -> p2 & p3")).calculus() == CalculusId::P);
}

TEST_CASE("property: gamma_equivalence kernel-checks") {
  testing::FormulaGen gen(72, Fragment::Positive);
  for (int i = 0; i < 300; ++i) {
    Formula a = gen.upto(6, 3);
    expect_pair(gamma_equivalence(a), a, gamma(a).formula);
  }
}

TEST_CASE("decompose: goldens") {
  auto d1 = decompose(F("p1 -> (p2 & p3)"));
  CHECK(d1.conjuncts == Fs({"p1 -> p2", "p1 -> p3"}));
  expect_pair(d1.equivalence, F("p1 -> (p2 & p3)"), F("(p1 -> p2) & (p1 -> p3)"));
  auto d2 = decompose(F("p1 v p2"));
  CHECK(d2.conjuncts == Fs({"p1 v p2"}));
  auto d3 = decompose(F("(p1 & p2) & (p3 & p1)"));
  CHECK(d3.conjuncts == Fs({"p1", "p2", "p3", "p1"}));
  expect_pair(d3.equivalence, F("(p1 & p2) & (p3 & p1)"), F("p1 & p2 & p3 & p1"));

  auto ic = decompose_implicative_conjunctive(F("p1 -> (p2 & (p3 & p1 -> p2))"));
  CHECK(ic.conjuncts == Fs({"p1 -> p2", "p1 -> p3 -> p1 -> p2"}));
  CHECK(ic.equivalence.calculus() == CalculusId::IC);
  CHECK(tactics::check_equivalence(ic.equivalence));
  CHECK_THROWS_AS(decompose_implicative_conjunctive(F("p1 v p2")), Error);

  auto t1 = decompose_to_implicative(F("p1 v (p2 & p3)"));
  CHECK(t1.conjuncts == Fs({"(p1 -> p2) -> p2", "(p1 -> p3) -> p3"}));
  CHECK(tactics::check_equivalence(t1.equivalence));
  CHECK(decompose_to_implicative(F("p1 -> p2")).conjuncts == Fs({"p1 -> p2"}));
  CHECK(decompose_to_implicative(F("p1 & (p2 v p3)")).conjuncts == Fs({"p1", "(p2 -> p3) -> p3"}));
}

TEST_CASE("property: decompositions") {
  testing::FormulaGen gen(73, Fragment::Positive);
  for (int i = 0; i < 200; ++i) {
    Formula a = gen.upto(6, 3);
    auto d = decompose(a);
    for (const auto& c : d.conjuncts) CHECK(in_fragment(c, Fragment::ImplicativeDisjunctive));
    expect_pair(d.equivalence, a, conjunction_chain(d.conjuncts));
    auto t = decompose_to_implicative(a);
    for (const auto& c : t.conjuncts) CHECK(in_fragment(c, Fragment::Implicative));
    expect_pair(t.equivalence, a, conjunction_chain(t.conjuncts));
  }
}

TEST_CASE("tau: goldens") {
  CHECK(tau(F("p1 v p2")) == F("(p1 -> p2) -> p2"));
  CHECK(tau(F("p1 -> p2")) == F("p1 -> p2"));
  CHECK(tau(F("p1 v (p2 v p3)")) == F("(p1 -> ((p2 -> p3) -> p3)) -> ((p2 -> p3) -> p3)"));
  CHECK_THROWS_AS(tau(F("p1 & p2")), Error);
  expect_pair(tau_equivalence(F("p1 v p2")), F("p1 v p2"), F("(p1 -> p2) -> p2"));
  expect_pair(tau_equivalence(p(1)), p(1), p(1));
  auto e = tau_equivalence(F("(p1 v p2) -> p3"));
  expect_pair(e, F("(p1 v p2) -> p3"), F("((p1 -> p2) -> p2) -> p3"));
  CHECK(e.calculus() == CalculusId::ID);
}

TEST_CASE("property: tau is v-free, truth-preserving, and fixes implicative formulas") {
  testing::FormulaGen gen(74, Fragment::ImplicativeDisjunctive);
  testing::FormulaGen imp(75, Fragment::Implicative);
  for (int i = 0; i < 1000; ++i) {
    Formula a = gen.upto(7, 4);
    Formula t = tau(a);
    CHECK_FALSE(testing::oracle_has(t, Connective::Disj));
    CHECK(t == oracle_tau(a));
    CHECK(testing::oracle_table(a, 4) == testing::oracle_table(t, 4));
    CHECK((t == a) == !a.has_disj());
    Formula b = imp.upto(7, 4);
    CHECK(tau(b) == b);
  }
  for (int i = 0; i < 200; ++i) {
    Formula a = gen.upto(5, 3);
    expect_pair(tau_equivalence(a), a, tau(a));
  }
}

TEST_CASE("translate_derivation: goldens") {
  auto d4 = axiom(CalculusId::ID, SchemeId::Ax4, Substitution::of(p(1), p(2)));
  auto t4 = translate_derivation(d4);
  CHECK(check(t4).ok());
  CHECK(t4.calculus() == CalculusId::I);
  CHECK(t4.closed());
  CHECK(t4.conclusion() == F("p1 -> (p1 -> p2) -> p2"));

  auto d1 = axiom(CalculusId::ID, SchemeId::Ax1, Substitution::of(p(1), p(2)));
  auto t1 = translate_derivation(d1);
  REQUIRE(t1.size() == 1);
  CHECK(t1.steps()[0] == d1.steps()[0]);

  // Ax1 instance, Ax4 instance, MP.
  Formula a = F("p1 v p2");
  Derivation two(CalculusId::ID, {},
                 {Step::axiom(SchemeId::Ax1, ax1(a, p(3))), Step::axiom(SchemeId::Ax4, ax4(p(1), p(2))),
                  Step::axiom(SchemeId::Ax1, ax1(ax4(p(1), p(2)), p(3))),
                  Step::modus_ponens(2, 1, Formula::impl(p(3), ax4(p(1), p(2))))});
  REQUIRE(check(two).ok());
  auto tt = translate_derivation(two);
  CHECK(check(tt).ok());
  CHECK(tt.conclusion() == tau(two.conclusion()));

  auto d6 = axiom(CalculusId::ID, SchemeId::Ax6, Substitution::of(p(1), p(2), p(3)));
  auto t6 = translate_derivation(d6);
  CHECK(check(t6).ok());
  CHECK(t6.conclusion() == F("(p1 -> p3) -> (p2 -> p3) -> ((p1 -> p2) -> p2) -> p3"));

  auto open = Derivation(CalculusId::ID, {p(1)}, {Step::hypothesis(p(1))});
  CHECK_THROWS_AS(translate_derivation(open), Error);
  CHECK_THROWS_AS(translate_derivation(axiom(CalculusId::P, SchemeId::Ax7, Substitution::of(p(1), p(2)))), Error);
  CHECK_THROWS_AS(translate_derivation(Derivation(CalculusId::ID, {}, {Step::axiom(SchemeId::Ax1, p(1))})), Error);
}

TEST_CASE("property: translation of synthesized ID proofs") {
  testing::FormulaGen gen(76, Fragment::ImplicativeDisjunctive);
  int done = 0;
  while (done < 60) {
    Formula a = gen.upto(5, 3);
    if (!testing::oracle_tautology(a, 3)) continue;
    auto d = std::get<Derivation>(kalmar::prove(a, CalculusId::ID));
    auto t = translate_derivation(d);
    CHECK(check(t).ok());
    CHECK(t.calculus() == CalculusId::I);
    CHECK(t.closed());
    CHECK(t.conclusion() == tau(a));
    ++done;
  }
}

TEST_CASE("synthesizers: goldens") {
  expect_proof(prove_I(F("((p1 -> p2) -> p1) -> p1")), F("((p1 -> p2) -> p1) -> p1"), CalculusId::I);
  expect_proof(prove_IC(F("(p1 & p2) -> p1")), F("(p1 & p2) -> p1"), CalculusId::IC);
  expect_proof(prove_P_reduction(F("p1 -> p2 -> p1 & p2")), F("p1 -> p2 -> p1 & p2"), CalculusId::P);
  expect_proof(prove_IC(F("(p1 -> p2 & p3) -> (p1 -> p3) & (p1 -> p2)")),
               F("(p1 -> p2 & p3) -> (p1 -> p3) & (p1 -> p2)"), CalculusId::IC);
  expect_proof(prove(F("p1 v p2 -> p2 v p1"), CalculusId::P, Route::Reduction), F("p1 v p2 -> p2 v p1"),
               CalculusId::P);
  expect_proof(prove(F("p1 v (p1 -> p2)"), CalculusId::ID), F("p1 v (p1 -> p2)"), CalculusId::ID);
  auto r = prove_I(F("p1 -> p2"));
  REQUIRE(std::holds_alternative<Assignment>(r));
  CHECK(std::get<Assignment>(r) == Assignment{{1, true}, {2, false}});
  CHECK_THROWS_AS(prove_I(F("p1 v p2")), Error);
  CHECK_THROWS_AS(prove_IC(F("p1 v p2")), Error);
  CHECK_THROWS_AS(prove(F("p1 & p2"), CalculusId::ID), Error);
}

TEST_CASE("property: synthesizers succeed exactly on tautologies of their fragment") {
  struct Case {
    Fragment lang;
    CalculusId calc;
    ProofOrCountermodel (*run)(const Formula&);
  };
  const Case cases[] = {{Fragment::Implicative, CalculusId::I, prove_I},
                        {Fragment::ImplicativeConjunctive, CalculusId::IC, prove_IC},
                        {Fragment::Positive, CalculusId::P, prove_P_reduction}};
  for (const auto& c : cases) {
    testing::FormulaGen gen(77 + static_cast<int>(c.calc), c.lang);
    for (int i = 0; i < 150; ++i) {
      Formula a = gen.upto(5, 3);
      auto r = c.run(a);
      bool taut = testing::oracle_tautology(a, 3);
      REQUIRE(std::holds_alternative<Derivation>(r) == taut);
      if (taut)
        expect_proof(r, a, c.calc);
      else
        CHECK_FALSE(eval(std::get<Assignment>(r), a));
    }
  }
}
