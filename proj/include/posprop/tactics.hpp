#pragma once

// Proof-producing tactics: the deduction theorem, substitution of
// equivalents, the named lemma schemata and conjunction assembly.
//
// Two layers. The emitters append lines to a ProofBuilder and return the line
// of the stated formula; the kalmar and transform modules compose them inside
// one builder. The public operations below wrap emitters and return
// kernel-checked Derivations.

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "posprop/builder.hpp"
#include "posprop/kernel.hpp"

namespace posprop::tactics {

using Line = ProofBuilder::Line;

// ---------------------------------------------------------------------------
// Emitters. Formula arguments name metavariables; Line arguments are premises
// already present in (or available to) the builder.

/// A -> A
Line identity(ProofBuilder& b, const Formula& a);
/// From A -> B and B -> C: A -> C.
Line compose(ProofBuilder& b, Line ab, Line bc);
/// A -> (A -> B) -> B
Line assertion(ProofBuilder& b, const Formula& a, const Formula& bf);
/// A -> (B -> A) -> A
Line reabsorb(ProofBuilder& b, const Formula& a, const Formula& bf);
/// (A -> A -> B) -> A -> B
Line contraction(ProofBuilder& b, const Formula& a, const Formula& bf);
/// From (A -> B) -> B and A -> C: (C -> B) -> B.
Line implicative_disjunct_map(ProofBuilder& b, Line ab_b, Line ac);
/// A v (A -> B)
Line excluded_middle(ProofBuilder& b, const Formula& a, const Formula& bf);
/// From A v B, A -> C and B -> D: C v D.
Line disj_map(ProofBuilder& b, Line a_or_b, Line ac, Line bd);
/// From A v B, A -> C and B -> C: C.
Line disj_elim(ProofBuilder& b, Line a_or_b, Line ac, Line bc);
/// From A -> B: B v (A -> C).
Line implication_split(ProofBuilder& b, Line ab, const Formula& c);
/// From A: B v (C -> A).
Line weaken_to_disjunct(ProofBuilder& b, Line a, const Formula& bf, const Formula& c);
/// src -> target, where every disjunct of src (split along v) occurs as a
/// v-subtree of target. Throws Error(Precondition) otherwise.
Line disj_embed(ProofBuilder& b, const Formula& src, const Formula& target);
/// Whether disj_embed(src, target) succeeds.
bool disj_embeddable(const Formula& src, const Formula& target);
/// target from formula(l) by disj_embed; no lines when they are equal.
Line disj_weaken(ProofBuilder& b, Line l, const Formula& target);
/// From A v B and C -> A: (B -> C) -> A.
Line disjunctive_implication(ProofBuilder& b, Line a_or_b, Line ca);
/// From A v B and A -> B: B.
Line disjunction_resolve(ProofBuilder& b, Line a_or_b, Line ab);
/// From (A -> B) -> B: A v B.
Line implicative_disjunction(ProofBuilder& b, Line ab_b);
/// From B -> D, C -> D and (B -> C) -> C: D.
Line implicative_disjunction_elim(ProofBuilder& b, Line bd, Line cd, Line bc_c);
Line conj_intro(ProofBuilder& b, Line a, Line bl);
Line conj_left(ProofBuilder& b, Line ab);
Line conj_right(ProofBuilder& b, Line ab);
/// target from formula(l), where every conjunct of target (split along &)
/// occurs as a &-subtree of formula(l). Throws Error(Precondition) otherwise.
Line conj_rearrange(ProofBuilder& b, Line l, const Formula& target);
/// From A -> B & C: (A -> B) & (A -> C); and back.
Line impl_conj_distribute(ProofBuilder& b, Line l);
Line impl_conj_collect(ProofBuilder& b, Line l);
/// From A & B -> C: A -> B -> C; and back.
Line curry(ProofBuilder& b, Line l);
Line uncurry(ProofBuilder& b, Line l);
/// From C v (A & B): (C v A) & (C v B); and back.
Line disj_conj_distribute_left(ProofBuilder& b, Line l);
Line disj_conj_collect_left(ProofBuilder& b, Line l);
/// From (A & B) v C: (A v C) & (B v C); and back.
Line disj_conj_distribute_right(ProofBuilder& b, Line l);
Line disj_conj_collect_right(ProofBuilder& b, Line l);

/// Maps a line of one formula to a line of another.
using Emitter = std::function<Line(ProofBuilder&, Line)>;
/// From a line of C: C with the occurrence `from` at `path` replaced by `to`.
/// `there` turns a line of `from` into one of `to`; `back` the converse, which
/// is needed below the antecedent of an implication.
Line substitute(ProofBuilder& b, Line l, std::span<const std::uint8_t> path, const Formula& from, const Formula& to,
                const Emitter& there, const Emitter& back);

// ---------------------------------------------------------------------------
// Derivation-level operations.

/// Discharges `a`: hypotheses lose `a`, conclusion becomes a -> conclusion.
/// Throws Error(UncheckedInput) or Error(NotAHypothesis).
Derivation deduction(const Derivation& d, const Formula& a);

/// Same steps relabelled with a larger calculus.
Derivation weaken_calculus(const Derivation& d, CalculusId c);
/// Replaces the hypothesis `premise.conclusion()` of `consumer` by the steps
/// of `premise`; the result's hypotheses are the remaining ones of both.
Derivation cut(const Derivation& premise, const Derivation& consumer);

/// Closed derivations of B1, ..., Bn give B1 & ... & Bn (right-associated).
/// Throws Error(OpenHypotheses) or Error(InsufficientCalculus).
Derivation conjoin(std::span<const Derivation> ds);
/// Closed derivations of each of the n conjuncts of a right-associated
/// n-conjunction. Throws Error(OpenHypotheses) or Error(Precondition).
std::vector<Derivation> split_conjunction(const Derivation& d, std::size_t n);

enum class EquivalenceMode : std::uint8_t {
  Derivability,  // {left} |- right and {right} |- left
  Thesis,        // |- left -> right and |- right -> left
};

/// Mutual derivability of two formulas.
struct EquivalencePair {
  Formula left;
  Formula right;
  Derivation forward;
  Derivation backward;
  EquivalenceMode mode = EquivalenceMode::Derivability;

  CalculusId calculus() const { return forward.calculus(); }
};

/// {a} |- a both ways.
EquivalencePair reflexive(CalculusId c, const Formula& a);
EquivalencePair symmetric(const EquivalencePair& e);
/// left(ab) to right(bc); requires right(ab) == left(bc).
EquivalencePair compose(const EquivalencePair& ab, const EquivalencePair& bc);
EquivalencePair to_thesis(const EquivalencePair& e);
EquivalencePair to_derivability(const EquivalencePair& e);
/// Kernel check of both directions against the stated mode and formulas.
bool check_equivalence(const EquivalencePair& e);
/// |- (left -> right) & (right -> left). Needs & in the calculus.
Derivation biconditional(const EquivalencePair& e);
/// Thesis-form pair from a closed derivation of (A -> B) & (B -> A).
EquivalencePair from_biconditional(const Derivation& d);

/// Pair between c and c with the occurrence at `path` replaced by e.right.
/// Derivability form, in the least calculus covering e and both formulas.
/// Throws Error(InvalidPath) or Error(Precondition) on mismatch.
EquivalencePair substitute_equivalents(const Formula& c, const Path& path, const EquivalencePair& e);

// ---------------------------------------------------------------------------
// Lemma library.

enum class LemmaId : std::uint8_t {
  Identity,                         // |- A -> A
  Transitivity,                     // A -> B, B -> C |- A -> C
  Assertion,                        // |- A -> (A -> B) -> B
  Reabsorb,                         // |- A -> (B -> A) -> A
  Contraction,                      // |- (A -> A -> B) -> A -> B
  ImplicativeDisjunctMap,           // (A -> B) -> B, A -> C |- (C -> B) -> B
  ExcludedMiddle,                   // |- A v (A -> B)
  DisjunctionMap,                   // A v B, A -> C, B -> D |- C v D
  ImplicationSplit,                 // A -> B |- B v (A -> C)
  WeakenToDisjunct,                 // A |- B v (C -> A)
  DisjunctionReassociate,           // (A1 v ... v An) v B  <->  A1 v ... v An v B
  DisjunctInclusion,                // A1 v ... v An |- B1 v ... v Bk
  DisjunctiveImplication,           // A v B, C -> A |- (B -> C) -> A
  DisjunctionResolve,               // A v B, A -> B |- B
  ImplicativeDisjunction,           // (A -> B) -> B |- A v B
  BiconditionalIntro,               // A -> B, B -> A |- (A -> B) & (B -> A)
  ImplicationOverConjunction,       // A -> (B & C)  <->  (A -> B) & (A -> C)
  Currying,                         // (A & B) -> C  <->  A -> B -> C
  ConjunctionReassociate,           // (A1 & ... & An) & B  <->  A1 & ... & An & B
  ConjunctionIntro,                 // B1, ..., Bn |- B1 & ... & Bn
  DisjunctionOverConjunctionLeft,   // C v (A & B)  <->  (C v A) & (C v B)
  DisjunctionOverConjunctionRight,  // (A & B) v C  <->  (A v C) & (B v C)
  ImplicativeDisjunctionElim,       // B -> D, C -> D, (B -> C) -> C |- D
};

inline constexpr std::size_t lemma_count = 23;

const char* to_string(LemmaId id);
std::optional<LemmaId> lemma_from_string(std::string_view s);
/// Exact argument count, or nullopt for the variadic ones.
std::optional<std::size_t> lemma_arity(LemmaId id);
/// Least calculus in which the lemma is stated.
CalculusId lemma_calculus(LemmaId id);
bool lemma_is_equivalence(LemmaId id);

using LemmaResult = std::variant<Derivation, EquivalencePair>;

/// Instantiates a lemma. For DisjunctInclusion the first `split` arguments
/// are the left disjuncts and the rest the right ones; other lemmas ignore
/// `split`. Errors: ArityMismatch, Precondition, InsufficientCalculus,
/// FragmentViolation.
LemmaResult lemma(LemmaId id, std::span<const Formula> args, CalculusId target, std::size_t split = 0);

}  // namespace posprop::tactics
