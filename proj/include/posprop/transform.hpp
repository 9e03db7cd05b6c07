#pragma once

// Rewriting translations and the reduction routes to completeness.
//
// gamma pushes & to the top: C->(D&E), (C&D)->E, C v (D&E) and (C&D) v E are
// rewritten until none is left. tau removes v: B v C becomes (B->C)->C. Each
// comes with a kernel-checked equivalence, and the decompositions built on
// them reduce P and IC to ID and I.

#include <cstdint>
#include <variant>
#include <vector>

#include "posprop/kalmar.hpp"
#include "posprop/kernel.hpp"
#include "posprop/tactics.hpp"

namespace posprop::transform {

enum class GammaRule : std::uint8_t {
  ImplicationOverConjunction,  // (i)   C -> (D & E)  =>  (C -> D) & (C -> E)
  ConjunctiveAntecedent,       // (ii)  (C & D) -> E  =>  C -> D -> E
  DisjunctionLeft,             // (iii) C v (D & E)   =>  (C v D) & (C v E)
  DisjunctionRight,            // (iv)  (C & D) v E   =>  (C v E) & (D v E)
};

const char* to_string(GammaRule r);

struct GammaStep {
  GammaRule rule;
  Path path;

  friend bool operator==(const GammaStep&, const GammaStep&) = default;
};

struct GammaForm {
  Formula formula;
  std::vector<GammaStep> trace;
};

/// The rule whose left side matches `f` at its root, trying (i) to (iv) in
/// order. With `implicative_only` only (i) and (ii) are considered.
std::optional<GammaRule> redex_at(const Formula& f, bool implicative_only = false);
/// Right side of `rule` applied at the root of `f`. Throws Error(Precondition)
/// if it does not match.
Formula rewrite_root(GammaRule rule, const Formula& f);
/// Whether no subformula is a redex.
bool gamma_normal(const Formula& f, bool implicative_only = false);

/// Innermost-leftmost normal form with the trace of rewrites.
GammaForm gamma(const Formula& a, bool implicative_only = false);
/// Replays a trace from `a`. Throws Error(InvalidPath) or Error(Precondition).
Formula replay(const Formula& a, const std::vector<GammaStep>& trace);

/// a <-> gamma(a), by substitution of the lemma pair for each rewrite.
/// Derivability form, in `calc` (which must contain & when a rewrite occurs).
tactics::EquivalencePair gamma_equivalence(const Formula& a, CalculusId calc = CalculusId::P,
                                           bool implicative_only = false);

struct Decomposition {
  std::vector<Formula> conjuncts;
  /// Between the source and conjunction_chain(conjuncts).
  tactics::EquivalencePair equivalence;
};

/// Implicative-disjunctive conjuncts of gamma(a), flattened and
/// right-associated. P-calculus equivalence.
Decomposition decompose(const Formula& a);
/// Implicative conjuncts of an implicative-conjunctive formula, using rules
/// (i) and (ii) only. IC-calculus equivalence. Throws Error(FragmentViolation).
Decomposition decompose_implicative_conjunctive(const Formula& a);
/// decompose, then tau on each conjunct. P-calculus equivalence.
Decomposition decompose_to_implicative(const Formula& a);

/// v-free normal form. Throws Error(FragmentViolation) if & occurs.
Formula tau(const Formula& a);
/// {a} |-id tau(a) and {tau(a)} |-id a. Throws Error(FragmentViolation).
tactics::EquivalencePair tau_equivalence(const Formula& a);

/// Closed checked I-derivation of tau(conclusion) from a closed checked
/// ID-derivation. Throws Error(UncheckedInput), Error(OpenHypotheses) or
/// Error(CalculusMismatch).
Derivation translate_derivation(const Derivation& d);

using kalmar::ProofOrCountermodel;

/// Implicative tautologies in I: the ID engine, then translate_derivation.
ProofOrCountermodel prove_I(const Formula& a);
/// Implicative-conjunctive tautologies in IC, one conjunct at a time.
ProofOrCountermodel prove_IC(const Formula& a);
/// Positive tautologies in P: decompose, prove each conjunct in ID, conjoin
/// and carry back through the decomposition.
ProofOrCountermodel prove_P_reduction(const Formula& a);

enum class Route : std::uint8_t { Direct, Reduction };

/// Dispatch by calculus: I and IC through their reductions, ID through the
/// engine, P by `route`. Throws Error(FragmentViolation).
ProofOrCountermodel prove(const Formula& a, CalculusId calc, Route route = Route::Direct);

}  // namespace posprop::transform
