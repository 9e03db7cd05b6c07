#include <doctest.h>

#include "posprop/error.hpp"
#include "posprop/kalmar.hpp"
#include "posprop/tactics.hpp"
#include "support.hpp"

using namespace posprop;
using namespace posprop::kalmar;
using testing::F;
using testing::Fs;
using testing::p;

namespace {

Derivation given(const char* f, CalculusId c = CalculusId::ID) { return assume(c, F(f)); }

void expect(const Derivation& d, std::initializer_list<std::string_view> hyps, const char* conclusion) {
  CHECK(check(d).ok());
  auto want = Fs(hyps);
  std::sort(want.begin(), want.end(), RLess{});
  CHECK(d.hypotheses() == want);
  CHECK(d.conclusion() == F(conclusion));
  CHECK(testing::oracle_entails(d.hypotheses(), d.conclusion(), 4));
}

// Atom-set oracle for Γ and Δ over the bit layout of oracle_eval.
std::pair<std::vector<Formula>, AtomSet> oracle_gamma_delta(const Formula& a, std::uint32_t row) {
  std::set<std::uint32_t> atoms;
  testing::oracle_atoms(a, atoms);
  std::vector<Formula> g;
  std::vector<std::uint32_t> d;
  for (auto i : atoms) {
    if ((row >> (i - 1)) & 1U)
      g.push_back(p(i));
    else
      d.push_back(i);
  }
  return {g, AtomSet(d)};
}

}  // namespace

TEST_CASE("lift: true consequent") {
  Assignment all_t{{1, true}, {2, true}};
  expect(lift_true_consequent(all_t, p(1), p(2), given("p2")), {"p2"}, "p1 -> p2");
  Assignment v{{1, false}, {2, true}};
  expect(lift_true_consequent(v, p(1), p(2), given("p2")), {"p2"}, "p1 v (p1 -> p2)");
  Assignment w{{1, false}, {2, true}, {3, false}};
  expect(lift_true_consequent(w, p(1), F("p2 v p3"), given("p3 v p2 v p3")), {"p3 v p2 v p3"},
         "p1 v p3 v (p1 -> p2 v p3)");
  CHECK_THROWS_AS(lift_true_consequent(Assignment{{1, true}, {2, false}}, p(1), p(2), given("p2 -> p2")), Error);
}

TEST_CASE("lift: false antecedent") {
  Assignment v{{1, false}, {2, false}};
  expect(lift_false_antecedent(v, p(1), p(2), given("p1 -> p1")), {"p1 -> p1"}, "p1 v p2 v (p1 -> p2)");
  Assignment w{{1, false}, {2, true}};
  expect(lift_false_antecedent(w, p(1), p(2), given("p1 -> p1")), {"p1 -> p1"}, "p1 v (p1 -> p2)");
}

TEST_CASE("lift: false implication") {
  Assignment v{{1, true}, {2, false}};
  expect(lift_false_implication(v, p(1), p(2), given("p1"), given("p2 -> p2")), {"p1", "p2 -> p2"},
         "(p1 -> p2) -> p2");
  Assignment w{{1, false}, {2, true}, {3, false}};
  expect(lift_false_implication(w, F("p1 -> p2"), p(3), given("p1 v (p1 -> p2)"), given("p3 -> p3")),
         {"p1 v (p1 -> p2)", "p3 -> p3"}, "((p1 -> p2) -> p3) -> p1 v p3");
}

TEST_CASE("lift: disjunctions") {
  Assignment v{{1, true}, {2, false}};
  auto [ab, ba] = lift_true_disjunct(v, p(1), p(2), given("p1"));
  expect(ab, {"p1"}, "p2 v p1 v p2");
  expect(ba, {"p1"}, "p2 v p2 v p1");
  Assignment ff{{1, false}, {2, false}};
  expect(lift_false_disjunction(ff, p(1), p(2), given("p1 -> p1"), given("p2 -> p2")), {"p1 -> p1", "p2 -> p2"},
         "p1 v p2 -> p1 v p2");
}

TEST_CASE("lift: conjunctions") {
  Assignment tt{{1, true}, {2, true}};
  expect(lift_true_conjunction(tt, p(1), p(2), given("p1", CalculusId::P), given("p2", CalculusId::P)), {"p1", "p2"},
         "p1 & p2");
  Assignment v{{1, true}, {2, true}, {3, false}};
  expect(lift_true_conjunction(v, F("p1 v p3"), p(2), given("p3 v p1 v p3", CalculusId::P), given("p2", CalculusId::P)),
         {"p3 v p1 v p3", "p2"}, "p3 v ((p1 v p3) & p2)");
  Assignment w{{1, false}, {2, true}};
  auto [ab, ba] = lift_false_conjunct(w, p(1), p(2), given("p1 -> p1", CalculusId::P));
  expect(ab, {"p1 -> p1"}, "p1 & p2 -> p1");
  expect(ba, {"p1 -> p1"}, "p2 & p1 -> p1");
}

TEST_CASE("build_line: goldens") {
  auto c1 = build_line(Assignment{{1, true}}, p(1), CalculusId::ID);
  CHECK(c1.polarity == Polarity::Positive);
  REQUIRE(c1.derivation.size() == 1);
  CHECK(c1.derivation.steps()[0] == Step::hypothesis(p(1)));
  auto c2 = build_line(Assignment{{1, false}}, p(1), CalculusId::ID);
  CHECK(c2.polarity == Polarity::Negative);
  expect(c2.derivation, {}, "p1 -> p1");
  auto c3 = build_line(Assignment{{1, true}, {2, false}}, F("p1 -> p2"), CalculusId::ID);
  CHECK(c3.polarity == Polarity::Negative);
  expect(c3.derivation, {"p1"}, "(p1 -> p2) -> p2");
  CHECK(encoded(Assignment{{1, true}, {2, false}}, F("p1 -> p2")) == F("(p1 -> p2) -> p2"));
}

TEST_CASE("build_line: errors") {
  CHECK_THROWS_AS(build_line(Assignment{{1, true}}, F("p1 & p1"), CalculusId::ID), Error);
  CHECK_THROWS_AS(build_line(Assignment{{1, true}}, F("p1 -> p2"), CalculusId::ID), Error);
  CHECK_THROWS_AS(build_line(Assignment{{1, true}}, p(1), CalculusId::I), Error);
}

TEST_CASE("property: build_line certificates") {
  for (auto [lang, calc] : {std::pair{Fragment::ImplicativeDisjunctive, CalculusId::ID},
                            std::pair{Fragment::Positive, CalculusId::P}}) {
    testing::FormulaGen gen(51 + static_cast<int>(calc), lang);
    for (int i = 0; i < 300; ++i) {
      Formula a = gen.upto(6, 3);
      std::uint32_t row = gen.pick(0, 7);
      Assignment v;
      for (std::uint32_t k = 1; k <= 3; ++k) v.set(k, (row >> (k - 1)) & 1U);
      auto cert = build_line(v, a, calc);
      auto [g, d] = oracle_gamma_delta(a, row);
      bool truth = testing::oracle_eval(a, row);
      REQUIRE(check(cert.derivation).ok());
      CHECK(cert.derivation.calculus() == calc);
      CHECK(cert.derivation.hypotheses() == g);
      CHECK(cert.polarity == (truth ? Polarity::Positive : Polarity::Negative));
      CHECK(cert.derivation.conclusion() == (truth ? pos_encode(d, a) : neg_encode(d, a)));
      CHECK(testing::oracle_entails(cert.derivation.hypotheses(), cert.derivation.conclusion(), 3));
    }
  }
}

TEST_CASE("eliminate") {
  auto d = std::get<Derivation>(tactics::lemma(tactics::LemmaId::Identity, Fs({"p1"}), CalculusId::ID));
  Leaves none;
  none.emplace(Partition{}, d);
  CHECK(eliminate(F("p1 -> p1"), AtomSet{}, none, CalculusId::ID) == d);

  Formula a = F("p1 v (p1 -> p2)");
  AtomSet atoms({1, 2});
  Leaves leaves;
  for (std::uint32_t row = 0; row < 4; ++row) {
    AtomSet h, j;
    for (std::uint32_t k = 1; k <= 2; ++k) ((row >> (k - 1)) & 1U ? h : j).insert(k);
    leaves.emplace(Partition{h, j}, build_line(Assignment::from_partition(atoms, h), a, CalculusId::ID).derivation);
  }
  auto out = eliminate(a, atoms, leaves, CalculusId::ID);
  CHECK(check(out).ok());
  CHECK(out.closed());
  CHECK(out.conclusion() == a);

  Leaves missing = leaves;
  missing.erase(missing.begin());
  try {
    eliminate(a, atoms, missing, CalculusId::ID);
    FAIL("expected MissingPartition");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::MissingPartition);
  }
  Leaves wrong = leaves;
  wrong.begin()->second = d;
  try {
    eliminate(a, atoms, wrong, CalculusId::ID);
    FAIL("expected LeafMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::LeafMismatch);
  }
}

TEST_CASE("prove: goldens") {
  for (const char* text : {"((p1 -> p2) -> p1) -> p1", "p1 v (p1 -> p2)"}) {
    auto r = prove(F(text), CalculusId::ID);
    REQUIRE(std::holds_alternative<Derivation>(r));
    const auto& d = std::get<Derivation>(r);
    CHECK(check(d).ok());
    CHECK(d.closed());
    CHECK(d.conclusion() == F(text));
    CHECK(d.calculus() == CalculusId::ID);
  }
  auto r = prove(F("p1 -> p2"), CalculusId::ID);
  REQUIRE(std::holds_alternative<Assignment>(r));
  CHECK(std::get<Assignment>(r) == Assignment{{1, true}, {2, false}});
  auto pc = prove(F("p1 & p2 -> p2 & p1"), CalculusId::P);
  REQUIRE(std::holds_alternative<Derivation>(pc));
  CHECK(check(std::get<Derivation>(pc)).ok());
  CHECK_THROWS_AS(prove(F("p1 & p2 -> p1"), CalculusId::ID), Error);
}

TEST_CASE("derive_from_hypotheses") {
  auto r = derive_from_hypotheses(Fs({"p1 v p2", "p1 -> p2"}), p(2), CalculusId::ID);
  REQUIRE(std::holds_alternative<Derivation>(r));
  expect(std::get<Derivation>(r), {"p1 v p2", "p1 -> p2"}, "p2");
  auto t = derive_from_hypotheses({}, F("p1 -> p1"), CalculusId::ID);
  REQUIRE(std::holds_alternative<Derivation>(t));
  CHECK(std::get<Derivation>(t) == std::get<Derivation>(prove(F("p1 -> p1"), CalculusId::ID)));
  auto c = derive_from_hypotheses(Fs({"p1"}), p(2), CalculusId::ID);
  REQUIRE(std::holds_alternative<Assignment>(c));
  CHECK(std::get<Assignment>(c) == Assignment{{1, true}, {2, false}});
}

TEST_CASE("property: prove succeeds exactly on tautologies") {
  for (auto [lang, calc] : {std::pair{Fragment::ImplicativeDisjunctive, CalculusId::ID},
                            std::pair{Fragment::Positive, CalculusId::P}}) {
    testing::FormulaGen gen(61 + static_cast<int>(calc), lang);
    int proved = 0;
    for (int i = 0; i < 400; ++i) {
      Formula a = gen.upto(6, 3);
      auto r = prove(a, calc);
      bool taut = testing::oracle_tautology(a, 3);
      REQUIRE(std::holds_alternative<Derivation>(r) == taut);
      if (taut) {
        ++proved;
        const auto& d = std::get<Derivation>(r);
        CHECK(check(d).ok());
        CHECK(d.closed());
        CHECK(d.conclusion() == a);
      } else {
        CHECK_FALSE(eval(std::get<Assignment>(r), a));
      }
    }
    CHECK(proved > 20);
  }
}
