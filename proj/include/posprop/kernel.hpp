#pragma once

// Trusted core: the four calculi, axiom-scheme recognition, the Derivation
// proof object and its checker. Nothing outside this file can make a
// derivation valid; every other module only proposes step lists.

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "posprop/formula.hpp"

namespace posprop {

enum class CalculusId : std::uint8_t { I, ID, IC, P };

enum class SchemeId : std::uint8_t { Ax1 = 1, Ax2, Ax3, Ax4, Ax5, Ax6, Ax7, Ax8, Ax9 };

const char* to_string(CalculusId c);
const char* to_string(SchemeId s);
std::optional<CalculusId> calculus_from_string(std::string_view s);
std::optional<SchemeId> scheme_from_string(std::string_view s);

Fragment fragment_of(CalculusId c);
bool has_scheme(CalculusId c, SchemeId s);
/// c ⊆ d as calculi (scheme sets and languages).
bool calculus_within(CalculusId c, CalculusId d);
/// Least calculus extending both.
CalculusId calculus_join(CalculusId a, CalculusId b);
/// Least calculus whose language is `f`.
CalculusId calculus_for(Fragment f);

/// Values for the scheme metavariables A, B, C.
struct Substitution {
  std::array<std::optional<Formula>, 3> slots;

  static Substitution of(Formula a) { return {{std::move(a), std::nullopt, std::nullopt}}; }
  static Substitution of(Formula a, Formula b) { return {{std::move(a), std::move(b), std::nullopt}}; }
  static Substitution of(Formula a, Formula b, Formula c) { return {{std::move(a), std::move(b), std::move(c)}}; }

  const std::optional<Formula>& a() const { return slots[0]; }
  const std::optional<Formula>& b() const { return slots[1]; }
  const std::optional<Formula>& c() const { return slots[2]; }

  friend bool operator==(const Substitution&, const Substitution&) = default;
};

/// Number of metavariables (2 or 3) occurring in the scheme.
unsigned scheme_arity(SchemeId s);
/// Structural match; the result binds exactly the scheme's metavariables.
std::optional<Substitution> match_scheme(SchemeId s, const Formula& f);
/// Requires every metavariable of `s` bound.
Formula instantiate(SchemeId s, const Substitution& subst);

// Direct instance builders, named by metavariable order.
Formula ax1(const Formula& a, const Formula& b);                    // A -> B -> A
Formula ax2(const Formula& a, const Formula& b, const Formula& c);  // (A -> B -> C) -> (A -> B) -> A -> C
Formula ax3(const Formula& a, const Formula& b);                    // ((A -> B) -> A) -> A
Formula ax4(const Formula& a, const Formula& b);                    // A -> A v B
Formula ax5(const Formula& a, const Formula& b);                    // A -> B v A
Formula ax6(const Formula& a, const Formula& b, const Formula& c);  // (A -> C) -> (B -> C) -> A v B -> C
Formula ax7(const Formula& a, const Formula& b);                    // A & B -> A
Formula ax8(const Formula& a, const Formula& b);                    // A & B -> B
Formula ax9(const Formula& a, const Formula& b);                    // A -> B -> A & B

enum class Rule : std::uint8_t { Axiom, Hypothesis, ModusPonens };

/// One line of a derivation. MP indices are 0-based and refer to earlier lines;
/// `major` holds the implication, `minor` its antecedent.
struct Step {
  Rule rule = Rule::Hypothesis;
  SchemeId scheme = SchemeId::Ax1;
  std::uint32_t major = 0;
  std::uint32_t minor = 0;
  Formula formula;

  static Step axiom(SchemeId s, Formula f) { return {Rule::Axiom, s, 0, 0, std::move(f)}; }
  static Step hypothesis(Formula f) { return {Rule::Hypothesis, SchemeId::Ax1, 0, 0, std::move(f)}; }
  static Step modus_ponens(std::uint32_t major, std::uint32_t minor, Formula f) {
    return {Rule::ModusPonens, SchemeId::Ax1, major, minor, std::move(f)};
  }

  friend bool operator==(const Step&, const Step&) = default;
};

/// A flat Hilbert-style derivation. A Derivation value is not necessarily
/// valid; `check` decides that.
class Derivation {
 public:
  Derivation(CalculusId calculus, std::vector<Formula> hypotheses, std::vector<Step> steps);

  CalculusId calculus() const noexcept { return calculus_; }
  /// Sorted by R, duplicates removed.
  const std::vector<Formula>& hypotheses() const noexcept { return hypotheses_; }
  const std::vector<Step>& steps() const noexcept { return steps_; }
  std::size_t size() const noexcept { return steps_.size(); }
  bool closed() const noexcept { return hypotheses_.empty(); }
  bool has_hypothesis(const Formula& f) const;
  /// Formula of the last step. Requires a non-empty derivation.
  const Formula& conclusion() const { return steps_.back().formula; }

  friend bool operator==(const Derivation&, const Derivation&) = default;

 private:
  CalculusId calculus_;
  std::vector<Formula> hypotheses_;
  std::vector<Step> steps_;
};

enum class Diagnostic : std::uint8_t {
  EmptyDerivation,
  BadAxiomInstance,
  SchemeNotInCalculus,
  HypothesisNotDeclared,
  MpMismatch,
  ForwardReference,
  FragmentViolation,
};

const char* to_string(Diagnostic d);

struct StepDiagnostic {
  std::size_t step;  // 0-based; hypotheses are reported with step = SIZE_MAX
  Diagnostic kind;
  std::string message;
};

struct CheckReport {
  std::vector<StepDiagnostic> diagnostics;
  bool ok() const noexcept { return diagnostics.empty(); }
  explicit operator bool() const noexcept { return ok(); }
  std::string summary() const;
};

CheckReport check(const Derivation& d);

/// Throws Error(UncheckedInput) carrying the report summary if `d` is invalid.
void require_checked(const Derivation& d, std::string_view context);

/// One-step derivation of an axiom instance.
Derivation axiom(CalculusId c, SchemeId s, const Substitution& subst);

/// Step lists concatenated with MP indices shifted; hypotheses united;
/// conclusion is that of the last argument.
Derivation concat(std::span<const Derivation> parts);
/// concat(major, minor) followed by one MP step.
Derivation modus_ponens(const Derivation& major, const Derivation& minor);

}  // namespace posprop
