#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "posprop/kernel.hpp"

namespace posprop::tactics {

/// A derivation over metavariables, compiled for repeated instantiation.
/// Metavariable i is the atom meta(i); other atoms stay fixed.
class Schema {
 public:
  static constexpr std::uint32_t meta_base = 1u << 30;
  static Formula meta(std::uint32_t i) { return Formula::atom(meta_base + i); }

  explicit Schema(const Derivation& d);

  CalculusId calculus() const noexcept { return calculus_; }

 private:
  friend class ProofBuilder;

  struct Node {
    Connective kind;
    std::uint32_t atom;
    std::uint32_t left;
    std::uint32_t right;
  };
  struct Entry {
    Rule rule;
    SchemeId scheme;
    std::uint32_t node;  // hypotheses and axioms
    std::uint32_t major;
    std::uint32_t minor;
  };

  CalculusId calculus_;
  std::vector<Node> nodes_;  // children before parents
  std::vector<Entry> steps_;
};

/// Accumulates a step list under a fixed hypothesis set.
///
/// Identical formulas are derived once: asking for a line whose formula is
/// already present returns the earlier line. `suppose` opens a nested builder
/// with one extra assumption and discharges it on return, which is the
/// deduction theorem run as a step-list transformer. A nested builder may cite
/// any formula already available to its enclosing builders as a hypothesis.
///
/// The builder never validates its output; finish_checked hands the result to
/// the kernel.
class ProofBuilder {
 public:
  using Line = std::uint32_t;

  ProofBuilder(CalculusId calculus, std::vector<Formula> hypotheses);

  ProofBuilder(const ProofBuilder&) = delete;
  ProofBuilder& operator=(const ProofBuilder&) = delete;

  CalculusId calculus() const noexcept { return calculus_; }
  const Formula& formula(Line l) const { return steps_[l].formula; }
  std::optional<Line> find(const Formula& f) const;
  std::size_t size() const noexcept { return steps_.size(); }

  Line hyp(const Formula& f);
  /// Throws Error(InsufficientCalculus) if the scheme is not in the calculus.
  Line axiom(SchemeId s, Formula instance);
  Line ax1(const Formula& a, const Formula& b) { return axiom(SchemeId::Ax1, posprop::ax1(a, b)); }
  Line ax2(const Formula& a, const Formula& b, const Formula& c) { return axiom(SchemeId::Ax2, posprop::ax2(a, b, c)); }
  Line ax3(const Formula& a, const Formula& b) { return axiom(SchemeId::Ax3, posprop::ax3(a, b)); }
  Line ax4(const Formula& a, const Formula& b) { return axiom(SchemeId::Ax4, posprop::ax4(a, b)); }
  Line ax5(const Formula& a, const Formula& b) { return axiom(SchemeId::Ax5, posprop::ax5(a, b)); }
  Line ax6(const Formula& a, const Formula& b, const Formula& c) { return axiom(SchemeId::Ax6, posprop::ax6(a, b, c)); }
  Line ax7(const Formula& a, const Formula& b) { return axiom(SchemeId::Ax7, posprop::ax7(a, b)); }
  Line ax8(const Formula& a, const Formula& b) { return axiom(SchemeId::Ax8, posprop::ax8(a, b)); }
  Line ax9(const Formula& a, const Formula& b) { return axiom(SchemeId::Ax9, posprop::ax9(a, b)); }
  /// `major` must be an implication whose antecedent is formula(minor).
  Line mp(Line major, Line minor);

  /// Inlines `d`. Its hypotheses are resolved against lines already present,
  /// then against the hypotheses available here.
  Line splice(const Derivation& d);

  /// Appends `s` with meta(i) replaced by args[i]; returns the line of its
  /// conclusion. Hypotheses of `s` become hypothesis lookups here.
  Line instantiate(const Schema& s, std::span<const Formula> args);

  /// Runs `body` in a nested builder that additionally assumes `a`; returns
  /// the line of a -> (body's result).
  template <class Body>
  Line suppose(const Formula& a, Body&& body) {
    ProofBuilder inner(this, a);
    Line result = std::forward<Body>(body)(inner);
    return discharge(inner.steps_, result, a);
  }

  /// Deduction theorem over an explicit step list: appends lines ending in
  /// a -> formula(steps[conclusion]). Hypothesis steps other than `a` must be
  /// available here.
  Line discharge(std::span<const Step> steps, std::size_t conclusion, const Formula& a);

  /// Derivation ending at `conclusion`, with unreachable lines dropped.
  Derivation finish(Line conclusion) const;
  Derivation finish_checked(Line conclusion, std::string_view context) const;

 private:
  static constexpr Line no_line = ~Line{0};

  ProofBuilder(const ProofBuilder* parent, const Formula& assumption);

  bool assumes(const Formula& f) const;
  bool available(const Formula& f) const;
  Line push(Step step);
  void grow_index();
  Line lift(Line l, const Formula& a);

  const ProofBuilder* parent_ = nullptr;
  CalculusId calculus_;
  std::vector<Formula> hypotheses_;
  std::vector<Step> steps_;
  // Open-addressing table of step lines keyed by formula; no_line marks empty.
  std::vector<Line> index_;
};

}  // namespace posprop::tactics
