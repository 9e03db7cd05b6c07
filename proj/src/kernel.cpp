#include "posprop/kernel.hpp"

#include <algorithm>
#include <limits>
#include <unordered_set>

#include "posprop/error.hpp"

namespace posprop {

const char* to_string(CalculusId c) {
  switch (c) {
    case CalculusId::I: return "I";
    case CalculusId::ID: return "ID";
    case CalculusId::IC: return "IC";
    case CalculusId::P: return "P";
  }
  return "?";
}

const char* to_string(SchemeId s) {
  static constexpr const char* kNames[] = {"?", "Ax1", "Ax2", "Ax3", "Ax4", "Ax5", "Ax6", "Ax7", "Ax8", "Ax9"};
  return kNames[static_cast<int>(s)];
}

std::optional<CalculusId> calculus_from_string(std::string_view s) {
  if (s == "I") return CalculusId::I;
  if (s == "ID") return CalculusId::ID;
  if (s == "IC") return CalculusId::IC;
  if (s == "P") return CalculusId::P;
  return std::nullopt;
}

std::optional<SchemeId> scheme_from_string(std::string_view s) {
  if (s.size() != 3 || s[0] != 'A' || s[1] != 'x' || s[2] < '1' || s[2] > '9') return std::nullopt;
  return static_cast<SchemeId>(s[2] - '0');
}

Fragment fragment_of(CalculusId c) {
  switch (c) {
    case CalculusId::I: return Fragment::Implicative;
    case CalculusId::ID: return Fragment::ImplicativeDisjunctive;
    case CalculusId::IC: return Fragment::ImplicativeConjunctive;
    case CalculusId::P: return Fragment::Positive;
  }
  return Fragment::Positive;
}

bool has_scheme(CalculusId c, SchemeId s) {
  const int n = static_cast<int>(s);
  if (n <= 3) return true;
  if (n <= 6) return c == CalculusId::ID || c == CalculusId::P;
  return c == CalculusId::IC || c == CalculusId::P;
}

CalculusId calculus_for(Fragment f) {
  switch (f) {
    case Fragment::Implicative: return CalculusId::I;
    case Fragment::ImplicativeDisjunctive: return CalculusId::ID;
    case Fragment::ImplicativeConjunctive: return CalculusId::IC;
    case Fragment::Positive: return CalculusId::P;
  }
  return CalculusId::P;
}

// Scheme sets and languages grow together, so both orders coincide with the
// fragment order.
bool calculus_within(CalculusId c, CalculusId d) { return fragment_within(fragment_of(c), fragment_of(d)); }

CalculusId calculus_join(CalculusId a, CalculusId b) {
  return calculus_for(fragment_join(fragment_of(a), fragment_of(b)));
}

// ---------------------------------------------------------------- schemes

namespace {

// Scheme patterns written with p1, p2, p3 standing for A, B, C.
const Formula& pattern(SchemeId s) {
  static const std::vector<Formula> patterns = [] {
    std::vector<Formula> out;
    for (const char* text : {
             "p1 -> p2 -> p1",
             "(p1 -> p2 -> p3) -> (p1 -> p2) -> p1 -> p3",
             "((p1 -> p2) -> p1) -> p1",
             "p1 -> p1 v p2",
             "p1 -> p2 v p1",
             "(p1 -> p3) -> (p2 -> p3) -> p1 v p2 -> p3",
             "p1 & p2 -> p1",
             "p1 & p2 -> p2",
             "p1 -> p2 -> p1 & p2",
         })
      out.push_back(parse(text));
    return out;
  }();
  return patterns[static_cast<std::size_t>(s) - 1];
}

bool match_into(const Formula& pat, const Formula& f, Substitution& subst) {
  if (pat.is_atom()) {
    auto& slot = subst.slots[pat.atom_index() - 1];
    if (!slot) {
      slot = f;
      return true;
    }
    return *slot == f;
  }
  if (pat.kind() != f.kind()) return false;
  return match_into(pat.left(), f.left(), subst) && match_into(pat.right(), f.right(), subst);
}

Formula instantiate_pattern(const Formula& pat, const Substitution& subst) {
  switch (pat.kind()) {
    case Connective::Atom: {
      const auto& slot = subst.slots[pat.atom_index() - 1];
      if (!slot) throw Error(ErrorCode::ArityMismatch, "scheme metavariable left unbound");
      return *slot;
    }
    case Connective::Impl:
      return Formula::impl(instantiate_pattern(pat.left(), subst), instantiate_pattern(pat.right(), subst));
    case Connective::Disj:
      return Formula::disj(instantiate_pattern(pat.left(), subst), instantiate_pattern(pat.right(), subst));
    case Connective::Conj:
      return Formula::conj(instantiate_pattern(pat.left(), subst), instantiate_pattern(pat.right(), subst));
  }
  return *subst.slots[0];
}

}  // namespace

unsigned scheme_arity(SchemeId s) { return s == SchemeId::Ax2 || s == SchemeId::Ax6 ? 3 : 2; }

std::optional<Substitution> match_scheme(SchemeId s, const Formula& f) {
  Substitution subst;
  if (!match_into(pattern(s), f, subst)) return std::nullopt;
  return subst;
}

Formula instantiate(SchemeId s, const Substitution& subst) { return instantiate_pattern(pattern(s), subst); }

using F = Formula;
Formula ax1(const F& a, const F& b) { return F::impl(a, F::impl(b, a)); }
Formula ax2(const F& a, const F& b, const F& c) {
  return F::impl(F::impl(a, F::impl(b, c)), F::impl(F::impl(a, b), F::impl(a, c)));
}
Formula ax3(const F& a, const F& b) { return F::impl(F::impl(F::impl(a, b), a), a); }
Formula ax4(const F& a, const F& b) { return F::impl(a, F::disj(a, b)); }
Formula ax5(const F& a, const F& b) { return F::impl(a, F::disj(b, a)); }
Formula ax6(const F& a, const F& b, const F& c) {
  return F::impl(F::impl(a, c), F::impl(F::impl(b, c), F::impl(F::disj(a, b), c)));
}
Formula ax7(const F& a, const F& b) { return F::impl(F::conj(a, b), a); }
Formula ax8(const F& a, const F& b) { return F::impl(F::conj(a, b), b); }
Formula ax9(const F& a, const F& b) { return F::impl(a, F::impl(b, F::conj(a, b))); }

// ---------------------------------------------------------------- derivations

Derivation::Derivation(CalculusId calculus, std::vector<Formula> hypotheses, std::vector<Step> steps)
    : calculus_(calculus), hypotheses_(std::move(hypotheses)), steps_(std::move(steps)) {
  std::sort(hypotheses_.begin(), hypotheses_.end(), RLess{});
  hypotheses_.erase(std::unique(hypotheses_.begin(), hypotheses_.end()), hypotheses_.end());
}

bool Derivation::has_hypothesis(const Formula& f) const {
  return std::binary_search(hypotheses_.begin(), hypotheses_.end(), f, RLess{});
}

const char* to_string(Diagnostic d) {
  switch (d) {
    case Diagnostic::EmptyDerivation: return "empty-derivation";
    case Diagnostic::BadAxiomInstance: return "bad-axiom-instance";
    case Diagnostic::SchemeNotInCalculus: return "scheme-not-in-calculus";
    case Diagnostic::HypothesisNotDeclared: return "hypothesis-not-declared";
    case Diagnostic::MpMismatch: return "mp-mismatch";
    case Diagnostic::ForwardReference: return "forward-reference";
    case Diagnostic::FragmentViolation: return "fragment-violation";
  }
  return "?";
}

std::string CheckReport::summary() const {
  if (ok()) return "ok";
  std::string out;
  for (const auto& d : diagnostics) {
    if (!out.empty()) out += '\n';
    if (d.step == std::numeric_limits<std::size_t>::max())
      out += "hypotheses: ";
    else
      out += "step " + std::to_string(d.step + 1) + ": ";
    out += to_string(d.kind);
    if (!d.message.empty()) out += " (" + d.message + ")";
  }
  return out;
}

CheckReport check(const Derivation& d) {
  CheckReport report;
  auto fail = [&](std::size_t step, Diagnostic kind, std::string message) {
    report.diagnostics.push_back({step, kind, std::move(message)});
  };
  const Fragment lang = fragment_of(d.calculus());
  for (const auto& h : d.hypotheses())
    if (!in_fragment(h, lang))
      fail(std::numeric_limits<std::size_t>::max(), Diagnostic::FragmentViolation, print(h));
  if (d.steps().empty()) {
    fail(0, Diagnostic::EmptyDerivation, "");
    return report;
  }
  const std::unordered_set<Formula> hyps(d.hypotheses().begin(), d.hypotheses().end());
  const auto& steps = d.steps();
  for (std::size_t i = 0; i < steps.size(); ++i) {
    const Step& s = steps[i];
    if (!in_fragment(s.formula, lang)) {
      fail(i, Diagnostic::FragmentViolation, std::string("outside the ") + to_string(lang) + " fragment");
      continue;
    }
    switch (s.rule) {
      case Rule::Axiom:
        if (!has_scheme(d.calculus(), s.scheme))
          fail(i, Diagnostic::SchemeNotInCalculus, std::string(to_string(s.scheme)) + " in " + to_string(d.calculus()));
        else if (!match_scheme(s.scheme, s.formula))
          fail(i, Diagnostic::BadAxiomInstance, std::string("not an instance of ") + to_string(s.scheme));
        break;
      case Rule::Hypothesis:
        if (!hyps.contains(s.formula)) fail(i, Diagnostic::HypothesisNotDeclared, print(s.formula));
        break;
      case Rule::ModusPonens: {
        if (s.major >= i || s.minor >= i) {
          fail(i, Diagnostic::ForwardReference, "mp cites a later or the same step");
          break;
        }
        const Formula& major = steps[s.major].formula;
        if (!major.is_impl() || !(major.left() == steps[s.minor].formula) || !(major.right() == s.formula))
          fail(i, Diagnostic::MpMismatch,
               "step " + std::to_string(s.major + 1) + " is not step " + std::to_string(s.minor + 1) +
                   " -> this formula");
        break;
      }
    }
  }
  return report;
}

void require_checked(const Derivation& d, std::string_view context) {
  auto report = check(d);
  if (!report.ok())
    throw Error(ErrorCode::UncheckedInput, std::string(context) + ": derivation rejected by the kernel: " +
                                               report.summary());
}

Derivation axiom(CalculusId c, SchemeId s, const Substitution& subst) {
  if (!has_scheme(c, s))
    throw Error(ErrorCode::SchemeNotInCalculus,
                std::string(to_string(s)) + " is not a scheme of calculus " + to_string(c));
  Formula f = instantiate(s, subst);
  if (!in_fragment(f, fragment_of(c)))
    throw Error(ErrorCode::FragmentViolation, print(f) + " is outside the language of " + to_string(c));
  return Derivation(c, {}, {Step::axiom(s, std::move(f))});
}

Derivation concat(std::span<const Derivation> parts) {
  if (parts.empty()) throw Error(ErrorCode::Precondition, "concat needs at least one derivation");
  const CalculusId calc = parts.front().calculus();
  std::vector<Formula> hyps;
  std::vector<Step> steps;
  for (const auto& d : parts) {
    if (d.calculus() != calc)
      throw Error(ErrorCode::CalculusMismatch,
                  std::string("cannot splice ") + to_string(d.calculus()) + " into " + to_string(calc));
    const auto offset = static_cast<std::uint32_t>(steps.size());
    hyps.insert(hyps.end(), d.hypotheses().begin(), d.hypotheses().end());
    for (Step s : d.steps()) {
      if (s.rule == Rule::ModusPonens) {
        s.major += offset;
        s.minor += offset;
      }
      steps.push_back(std::move(s));
    }
  }
  return Derivation(calc, std::move(hyps), std::move(steps));
}

Derivation modus_ponens(const Derivation& major, const Derivation& minor) {
  const Derivation parts[] = {major, minor};
  Derivation joined = concat(parts);
  auto steps = joined.steps();
  const auto major_at = static_cast<std::uint32_t>(major.size() - 1);
  const auto minor_at = static_cast<std::uint32_t>(steps.size() - 1);
  const Formula& imp = major.conclusion();
  if (!imp.is_impl() || !(imp.left() == minor.conclusion()))
    throw Error(ErrorCode::Precondition, "modus ponens: " + print(imp) + " does not apply to " +
                                             print(minor.conclusion()));
  steps.push_back(Step::modus_ponens(major_at, minor_at, imp.right()));
  return Derivation(joined.calculus(), joined.hypotheses(), std::move(steps));
}

}  // namespace posprop
