#include "posprop/transform.hpp"

#include <array>
#include <stdexcept>
#include <string>

#include "posprop/error.hpp"
#include "posprop/semantics.hpp"

namespace posprop::transform {

using tactics::EquivalenceMode;
using tactics::EquivalencePair;
using tactics::Line;
using tactics::ProofBuilder;
using F = Formula;

const char* to_string(GammaRule r) {
  switch (r) {
    case GammaRule::ImplicationOverConjunction: return "i";
    case GammaRule::ConjunctiveAntecedent: return "ii";
    case GammaRule::DisjunctionLeft: return "iii";
    case GammaRule::DisjunctionRight: return "iv";
  }
  return "?";
}

std::optional<GammaRule> redex_at(const Formula& f, bool implicative_only) {
  if (f.is_impl()) {
    if (f.right().is_conj()) return GammaRule::ImplicationOverConjunction;
    if (f.left().is_conj()) return GammaRule::ConjunctiveAntecedent;
  } else if (f.is_disj() && !implicative_only) {
    if (f.right().is_conj()) return GammaRule::DisjunctionLeft;
    if (f.left().is_conj()) return GammaRule::DisjunctionRight;
  }
  return std::nullopt;
}

namespace {

bool matches(GammaRule rule, const Formula& f) {
  switch (rule) {
    case GammaRule::ImplicationOverConjunction: return f.is_impl() && f.right().is_conj();
    case GammaRule::ConjunctiveAntecedent: return f.is_impl() && f.left().is_conj();
    case GammaRule::DisjunctionLeft: return f.is_disj() && f.right().is_conj();
    case GammaRule::DisjunctionRight: return f.is_disj() && f.left().is_conj();
  }
  return false;
}

}  // namespace

Formula rewrite_root(GammaRule rule, const Formula& f) {
  if (!matches(rule, f))
    throw Error(ErrorCode::Precondition, print(f) + " is not a redex of rule " + to_string(rule));
  switch (rule) {
    case GammaRule::ImplicationOverConjunction: {
      const F& c = f.left();
      return F::conj(F::impl(c, f.right().left()), F::impl(c, f.right().right()));
    }
    case GammaRule::ConjunctiveAntecedent:
      return F::impl(f.left().left(), F::impl(f.left().right(), f.right()));
    case GammaRule::DisjunctionLeft: {
      const F& c = f.left();
      return F::conj(F::disj(c, f.right().left()), F::disj(c, f.right().right()));
    }
    case GammaRule::DisjunctionRight: {
      const F& e = f.right();
      return F::conj(F::disj(f.left().left(), e), F::disj(f.left().right(), e));
    }
  }
  throw std::logic_error("unknown rule");
}

namespace {

// First redex in postorder: all of its proper subformulas are redex-free and
// every redex-free subtree to its left has been passed.
bool first_redex(const Formula& f, bool implicative_only, Path& path, GammaRule& rule) {
  if (!f.has_conj()) return false;
  if (!f.is_atom()) {
    path.push_back(0);
    if (first_redex(f.left(), implicative_only, path, rule)) return true;
    path.back() = 1;
    if (first_redex(f.right(), implicative_only, path, rule)) return true;
    path.pop_back();
  }
  if (auto r = redex_at(f, implicative_only)) {
    rule = *r;
    return true;
  }
  return false;
}

}  // namespace

bool gamma_normal(const Formula& f, bool implicative_only) {
  Path path;
  GammaRule rule{};
  return !first_redex(f, implicative_only, path, rule);
}

GammaForm gamma(const Formula& a, bool implicative_only) {
  GammaForm out{a, {}};
  Path path;
  GammaRule rule{};
  while (first_redex(out.formula, implicative_only, path, rule)) {
    out.formula = replace_at(out.formula, path, rewrite_root(rule, subformula_at(out.formula, path)));
    out.trace.push_back({rule, path});
    path.clear();
  }
  return out;
}

Formula replay(const Formula& a, const std::vector<GammaStep>& trace) {
  F cur = a;
  for (const auto& s : trace) cur = replace_at(cur, s.path, rewrite_root(s.rule, subformula_at(cur, s.path)));
  return cur;
}

namespace {

tactics::Emitter rule_emitter(GammaRule rule, bool forward) {
  switch (rule) {
    case GammaRule::ImplicationOverConjunction:
      return forward ? tactics::impl_conj_distribute : tactics::impl_conj_collect;
    case GammaRule::ConjunctiveAntecedent:
      return forward ? tactics::curry : tactics::uncurry;
    case GammaRule::DisjunctionLeft:
      return forward ? tactics::disj_conj_distribute_left : tactics::disj_conj_collect_left;
    case GammaRule::DisjunctionRight:
      return forward ? tactics::disj_conj_distribute_right : tactics::disj_conj_collect_right;
  }
  throw std::logic_error("unknown rule");
}

EquivalencePair relabel(const EquivalencePair& e, CalculusId calc) {
  return {e.left, e.right, tactics::weaken_calculus(e.forward, calc), tactics::weaken_calculus(e.backward, calc),
          e.mode};
}

// {from} |- to, both ways, by conj_rearrange.
EquivalencePair flatten_pair(const Formula& from, const Formula& to, CalculusId calc) {
  if (from == to) return tactics::reflexive(calc, from);
  auto run = [calc](const F& x, const F& y) {
    ProofBuilder b(calc, {x});
    return b.finish_checked(tactics::conj_rearrange(b, b.hyp(x), y), "conjunct flattening");
  };
  return {from, to, run(from, to), run(to, from), EquivalenceMode::Derivability};
}

void require_fragment(const Formula& a, Fragment lang, const char* what) {
  if (!in_fragment(a, lang))
    throw Error(ErrorCode::FragmentViolation, std::string(what) + ": " + print(a) + " is not " + to_string(lang));
}

}  // namespace

EquivalencePair gamma_equivalence(const Formula& a, CalculusId calc, bool implicative_only) {
  const GammaForm g = gamma(a, implicative_only);
  if (g.trace.empty()) return tactics::reflexive(calc, a);
  // states[k] is the formula before step k.
  std::vector<F> states{a};
  for (const auto& s : g.trace) states.push_back(replay(states.back(), {s}));
  ProofBuilder fwd(calc, {a});
  Line l = fwd.hyp(a);
  for (std::size_t k = 0; k < g.trace.size(); ++k) {
    const auto& s = g.trace[k];
    const F& at = subformula_at(states[k], s.path);
    l = tactics::substitute(fwd, l, s.path, at, subformula_at(states[k + 1], s.path), rule_emitter(s.rule, true),
                            rule_emitter(s.rule, false));
  }
  Derivation df = fwd.finish_checked(l, "gamma_equivalence");
  ProofBuilder bwd(calc, {g.formula});
  l = bwd.hyp(g.formula);
  for (std::size_t k = g.trace.size(); k-- > 0;) {
    const auto& s = g.trace[k];
    l = tactics::substitute(bwd, l, s.path, subformula_at(states[k + 1], s.path), subformula_at(states[k], s.path),
                            rule_emitter(s.rule, false), rule_emitter(s.rule, true));
  }
  Derivation db = bwd.finish_checked(l, "gamma_equivalence");
  return {a, g.formula, std::move(df), std::move(db), EquivalenceMode::Derivability};
}

namespace {

Decomposition decompose_with(const Formula& a, CalculusId calc, bool implicative_only) {
  EquivalencePair eg = gamma_equivalence(a, calc, implicative_only);
  std::vector<F> conjuncts = conjunction_leaves(eg.right);
  const F chain = conjunction_chain(conjuncts);
  EquivalencePair e = tactics::compose(eg, flatten_pair(eg.right, chain, calc));
  return {std::move(conjuncts), relabel(e, calc)};
}

}  // namespace

Decomposition decompose(const Formula& a) { return decompose_with(a, CalculusId::P, false); }

Decomposition decompose_implicative_conjunctive(const Formula& a) {
  require_fragment(a, Fragment::ImplicativeConjunctive, "decompose_implicative_conjunctive");
  return decompose_with(a, CalculusId::IC, true);
}

Decomposition decompose_to_implicative(const Formula& a) {
  Decomposition d = decompose(a);
  std::vector<F> taus;
  std::vector<EquivalencePair> pairs;
  for (const auto& c : d.conjuncts) {
    pairs.push_back(tau_equivalence(c));
    taus.push_back(pairs.back().right);
  }
  const F from = conjunction_chain(d.conjuncts);
  const F to = conjunction_chain(taus);
  if (from == to) return {std::move(taus), d.equivalence};
  // Conjunct by conjunct: project, translate, reassemble.
  auto run = [&](const F& x, const std::vector<F>& parts, bool forward) {
    ProofBuilder b(CalculusId::P, {x});
    const Line whole = b.hyp(x);
    std::vector<Line> lines;
    for (std::size_t i = 0; i < parts.size(); ++i) {
      if (parts.size() > 1) tactics::conj_rearrange(b, whole, parts[i]);
      lines.push_back(b.splice(tactics::weaken_calculus(forward ? pairs[i].forward : pairs[i].backward, CalculusId::P)));
    }
    Line acc = lines.back();
    for (std::size_t i = lines.size() - 1; i-- > 0;) acc = tactics::conj_intro(b, lines[i], acc);
    return b.finish_checked(acc, "conjunctwise translation");
  };
  EquivalencePair mid{from, to, run(from, d.conjuncts, true), run(to, taus, false), EquivalenceMode::Derivability};
  return {std::move(taus), tactics::compose(d.equivalence, mid)};
}

Formula tau(const Formula& a) {
  require_fragment(a, Fragment::ImplicativeDisjunctive, "tau");
  if (!a.has_disj()) return a;
  switch (a.kind()) {
    case Connective::Atom: return a;
    case Connective::Impl: return F::impl(tau(a.left()), tau(a.right()));
    case Connective::Disj: {
      const F y = tau(a.right());
      return F::impl(F::impl(tau(a.left()), y), y);
    }
    case Connective::Conj: break;
  }
  throw std::logic_error("unreachable");
}

namespace {

// Lines of tau(f) from a line of f (to_tau) or back, inside `b`.
Line tau_forward(ProofBuilder& b, Line l, const Formula& f);
Line tau_backward(ProofBuilder& b, Line l, const Formula& f);

Line tau_forward(ProofBuilder& b, Line l, const Formula& f) {
  if (!f.has_disj()) return l;
  const F& x = f.left();
  const F& y = f.right();
  const F tx = tau(x), ty = tau(y);
  if (f.is_impl()) {
    // x -> y gives tx -> ty.
    return b.suppose(tx, [&](ProofBuilder& i) {
      Line lx = tau_backward(i, i.hyp(tx), x);
      return tau_forward(i, i.mp(i.hyp(f), lx), y);
    });
  }
  // x v y gives tx v ty, then (tx -> ty) -> ty.
  Line mx = b.suppose(x, [&](ProofBuilder& i) { return tau_forward(i, i.hyp(x), x); });
  Line my = b.suppose(y, [&](ProofBuilder& i) { return tau_forward(i, i.hyp(y), y); });
  Line txy = tactics::disj_map(b, l, mx, my);
  const F txty = F::impl(tx, ty);
  return b.suppose(txty, [&](ProofBuilder& i) { return tactics::disjunction_resolve(i, i.hyp(b.formula(txy)), i.hyp(txty)); });
}

Line tau_backward(ProofBuilder& b, Line l, const Formula& f) {
  if (!f.has_disj()) return l;
  const F& x = f.left();
  const F& y = f.right();
  const F tx = tau(x), ty = tau(y);
  if (f.is_impl()) {
    // tx -> ty gives x -> y.
    const F tf = b.formula(l);
    return b.suppose(x, [&](ProofBuilder& i) {
      Line ltx = tau_forward(i, i.hyp(x), x);
      return tau_backward(i, i.mp(i.hyp(tf), ltx), y);
    });
  }
  // (tx -> ty) -> ty gives tx v ty, then x v y.
  Line txy = tactics::implicative_disjunction(b, l);
  Line mx = b.suppose(tx, [&](ProofBuilder& i) { return tau_backward(i, i.hyp(tx), x); });
  Line my = b.suppose(ty, [&](ProofBuilder& i) { return tau_backward(i, i.hyp(ty), y); });
  return tactics::disj_map(b, txy, mx, my);
}

}  // namespace

EquivalencePair tau_equivalence(const Formula& a) {
  const F t = tau(a);
  if (t == a) return tactics::reflexive(CalculusId::ID, a);
  ProofBuilder fwd(CalculusId::ID, {a});
  Derivation df = fwd.finish_checked(tau_forward(fwd, fwd.hyp(a), a), "tau_equivalence");
  ProofBuilder bwd(CalculusId::ID, {t});
  Derivation db = bwd.finish_checked(tau_backward(bwd, bwd.hyp(t), a), "tau_equivalence");
  return {a, t, std::move(df), std::move(db), EquivalenceMode::Derivability};
}

namespace {

// |- (A -> C) -> (B -> C) -> ((A -> B) -> B) -> C over metavariables A, B, C.
tactics::Schema translated_ax6() {
  const F a = tactics::Schema::meta(0), bf = tactics::Schema::meta(1), c = tactics::Schema::meta(2);
  const F ac = F::impl(a, c), bc = F::impl(bf, c), abb = F::impl(F::impl(a, bf), bf);
  ProofBuilder b(CalculusId::I, {});
  Line l = b.suppose(ac, [&](ProofBuilder& i) {
    return i.suppose(bc, [&](ProofBuilder& j) {
      return j.suppose(abb, [&](ProofBuilder& k) {
        return tactics::implicative_disjunction_elim(k, k.hyp(ac), k.hyp(bc), k.hyp(abb));
      });
    });
  });
  return tactics::Schema(b.finish_checked(l, "translated Ax6"));
}

}  // namespace

Derivation translate_derivation(const Derivation& d) {
  require_checked(d, "translate_derivation");
  if (!d.closed()) throw Error(ErrorCode::OpenHypotheses, "translate_derivation expects a closed derivation");
  if (!calculus_within(d.calculus(), CalculusId::ID))
    throw Error(ErrorCode::CalculusMismatch,
                std::string("translate_derivation expects an ID derivation, got ") + to_string(d.calculus()));
  ProofBuilder b(CalculusId::I, {});
  std::vector<Line> map;
  map.reserve(d.size());
  for (const auto& s : d.steps()) {
    const F& f = s.formula;
    switch (s.rule) {
      case Rule::Hypothesis:
        throw std::logic_error("hypothesis in a closed derivation");
      case Rule::ModusPonens:
        map.push_back(b.mp(map.at(s.major), map.at(s.minor)));
        break;
      case Rule::Axiom:
        switch (s.scheme) {
          case SchemeId::Ax1:
          case SchemeId::Ax2:
          case SchemeId::Ax3:
            map.push_back(b.axiom(s.scheme, tau(f)));
            break;
          case SchemeId::Ax4:  // A -> A v B
            map.push_back(tactics::assertion(b, tau(f.left()), tau(f.right().right())));
            break;
          case SchemeId::Ax5:  // A -> B v A
            map.push_back(tactics::reabsorb(b, tau(f.left()), tau(f.right().left())));
            break;
          case SchemeId::Ax6: {  // (A -> C) -> (B -> C) -> A v B -> C
            static const tactics::Schema ax6 = translated_ax6();
            const F ta = tau(f.left().left()), tc = tau(f.left().right()), tb = tau(f.right().left().left());
            map.push_back(b.instantiate(ax6, std::array{ta, tb, tc}));
            break;
          }
          default:
            throw std::logic_error("scheme outside ID in a checked ID derivation");
        }
        break;
    }
  }
  return b.finish_checked(map.back(), "translate_derivation");
}

namespace {

// Countermodel over atoms_of(a), or nullopt for a tautology.
std::optional<Assignment> refute(const Formula& a) {
  Verdict v = is_tautology(a);
  if (v) return std::nullopt;
  return *v.countermodel;
}

Derivation conjoin_and_return(const Decomposition& dec, std::vector<Derivation> parts, CalculusId calc,
                              std::string_view what) {
  for (auto& p : parts) p = tactics::weaken_calculus(p, calc);
  Derivation whole = tactics::conjoin(parts);
  Derivation out = tactics::weaken_calculus(tactics::cut(whole, dec.equivalence.backward), calc);
  require_checked(out, what);
  return out;
}

}  // namespace

ProofOrCountermodel prove_I(const Formula& a) {
  require_fragment(a, Fragment::Implicative, "prove_I");
  if (auto cm = refute(a)) return *cm;
  auto r = kalmar::prove(a, CalculusId::ID);
  return translate_derivation(std::get<Derivation>(r));
}

ProofOrCountermodel prove_IC(const Formula& a) {
  require_fragment(a, Fragment::ImplicativeConjunctive, "prove_IC");
  if (auto cm = refute(a)) return *cm;
  const Decomposition dec = decompose_implicative_conjunctive(a);
  std::vector<Derivation> parts;
  for (const auto& c : dec.conjuncts) parts.push_back(std::get<Derivation>(prove_I(c)));
  return conjoin_and_return(dec, std::move(parts), CalculusId::IC, "prove_IC");
}

ProofOrCountermodel prove_P_reduction(const Formula& a) {
  require_fragment(a, Fragment::Positive, "prove_P_reduction");
  if (auto cm = refute(a)) return *cm;
  const Decomposition dec = decompose(a);
  std::vector<Derivation> parts;
  for (const auto& c : dec.conjuncts) parts.push_back(std::get<Derivation>(kalmar::prove(c, CalculusId::ID)));
  return conjoin_and_return(dec, std::move(parts), CalculusId::P, "prove_P_reduction");
}

ProofOrCountermodel prove(const Formula& a, CalculusId calc, Route route) {
  switch (calc) {
    case CalculusId::I: return prove_I(a);
    case CalculusId::IC: return prove_IC(a);
    case CalculusId::ID: return kalmar::prove(a, CalculusId::ID);
    case CalculusId::P:
      return route == Route::Direct ? kalmar::prove(a, CalculusId::P) : prove_P_reduction(a);
  }
  throw std::logic_error("unknown calculus");
}

}  // namespace posprop::transform
