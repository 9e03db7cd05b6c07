#pragma once

// Kalmár-style completeness: for each assignment, a derivation of the encoded
// formula from the true atoms; then elimination of the atoms one at a time.
// Works in ID and, with the two conjunction lifts, in P.

#include <map>
#include <span>
#include <utility>
#include <variant>
#include <vector>

#include "posprop/builder.hpp"
#include "posprop/kernel.hpp"
#include "posprop/semantics.hpp"

namespace posprop::kalmar {

enum class Polarity : std::uint8_t { Positive, Negative };

/// Positive: Γ[v;A] |- (Δ[v;A])^A. Negative: Γ[v;A] |- (Δ[v;A])^{~A}.
struct LineCertificate {
  Formula formula;
  Assignment assignment;
  Polarity polarity;
  Derivation derivation;
};

/// (Δ[v;a])^a if v makes `a` true, else (Δ[v;a])^{~a}.
Formula encoded(const Assignment& v, const Formula& a);

/// A one-line derivation of `f` from {f}; passes a premise in statement form.
Derivation assume(CalculusId c, const Formula& f);

// Lifts from subformula encodings to the encoding of a compound. Each takes
// derivations of the premise encodings (from any hypotheses) and returns a
// checked derivation of the compound's encoding from the union of their
// hypotheses. Preconditions on truth values throw Error(Precondition).

/// v(b) = T. Premise (Δ[v;b])^b; conclusion (Δ[v;a->b])^{a->b}.
Derivation lift_true_consequent(const Assignment& v, const Formula& a, const Formula& b, const Derivation& db);
/// v(a) = F. Premise (Δ[v;a])^{~a}; conclusion (Δ[v;a->b])^{a->b}.
Derivation lift_false_antecedent(const Assignment& v, const Formula& a, const Formula& b, const Derivation& da);
/// v(b) = F. Premises (Δ[v;a])^a and (Δ[v;b])^{~b}; conclusion (Δ[v;a->b])^{~(a->b)}.
Derivation lift_false_implication(const Assignment& v, const Formula& a, const Formula& b, const Derivation& da,
                                  const Derivation& db);
/// v(a) = T. Premise (Δ[v;a])^a; conclusions for a v b and for b v a.
std::pair<Derivation, Derivation> lift_true_disjunct(const Assignment& v, const Formula& a, const Formula& b,
                                                     const Derivation& da);
/// v(a) = v(b) = F. Premises (Δ[v;a])^{~a} and (Δ[v;b])^{~b}; conclusion (Δ[v;a v b])^{~(a v b)}.
Derivation lift_false_disjunction(const Assignment& v, const Formula& a, const Formula& b, const Derivation& da,
                                  const Derivation& db);
/// v(a) = v(b) = T. Premises (Δ[v;a])^a and (Δ[v;b])^b; conclusion (Δ[v;a & b])^{a & b}.
Derivation lift_true_conjunction(const Assignment& v, const Formula& a, const Formula& b, const Derivation& da,
                                 const Derivation& db);
/// v(a) = F. Premise (Δ[v;a])^{~a}; conclusions for a & b and for b & a.
std::pair<Derivation, Derivation> lift_false_conjunct(const Assignment& v, const Formula& a, const Formula& b,
                                                      const Derivation& da);

/// Certificate for `a` under `v`, in `calc` (ID or P). Throws
/// Error(FragmentViolation), Error(MissingAtom) or Error(Precondition).
LineCertificate build_line(const Assignment& v, const Formula& a, CalculusId calc);

/// Emits the certificate's conclusion into `b`, whose hypotheses must include
/// Γ[v;a]. Returns the line and the truth value of `a`.
std::pair<tactics::ProofBuilder::Line, bool> emit_line(tactics::ProofBuilder& b, const Assignment& v, const Formula& a);

/// Split of an atom set into true atoms H and false atoms J.
struct Partition {
  AtomSet true_atoms;
  AtomSet false_atoms;

  friend bool operator==(const Partition&, const Partition&) = default;
  friend auto operator<=>(const Partition&, const Partition&) = default;
};

using Leaves = std::map<Partition, Derivation>;

/// Closed derivation of `a` from derivations H |- (J)^a for every partition
/// (H, J) of `atoms`. Throws Error(MissingPartition) or Error(LeafMismatch).
Derivation eliminate(const Formula& a, const AtomSet& atoms, const Leaves& leaves, CalculusId calc);

using ProofOrCountermodel = std::variant<Derivation, Assignment>;

/// Closed derivation of a tautology in ID or P; otherwise the first
/// falsifying assignment.
ProofOrCountermodel prove(const Formula& a, CalculusId calc);

/// hyps |- a when a follows tautologically, via the chained implication and
/// MP; otherwise a countermodel.
ProofOrCountermodel derive_from_hypotheses(std::span<const Formula> hyps, const Formula& a, CalculusId calc);

}  // namespace posprop::kalmar
