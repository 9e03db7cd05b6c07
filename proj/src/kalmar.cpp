#include "posprop/kalmar.hpp"

#include <string>

#include "posprop/error.hpp"
#include "posprop/tactics.hpp"

namespace posprop::kalmar {

using tactics::Line;
using tactics::ProofBuilder;

namespace {

Formula chain_of(const AtomSet& k) {
  auto fs = k.formulas();
  return disjunction_chain(fs);
}

// Disjunction of K's atoms followed by `tail`, split as (B1 v ... v Bn) v tail.
Formula grouped(const AtomSet& k, const Formula& tail) { return Formula::disj(chain_of(k), tail); }

Line true_consequent(ProofBuilder& b, const Assignment& v, const Formula& a, const Formula& c, Line lc) {
  const Formula ac = Formula::impl(a, c);
  const AtomSet dc = delta_set(v, c);
  const AtomSet dac = delta_set(v, ac);
  if (dac.empty()) return b.mp(b.ax1(c, a), lc);
  const Formula target = pos_encode(dac, ac);
  if (dc.empty()) {
    Line l = tactics::weaken_to_disjunct(b, lc, chain_of(dac), a);
    return tactics::disj_weaken(b, l, target);
  }
  Line split = tactics::disj_weaken(b, lc, grouped(dc, c));
  Line inclusion = tactics::disj_embed(b, chain_of(dc), chain_of(dac));
  Line l = tactics::disj_map(b, split, inclusion, b.ax1(c, a));
  return tactics::disj_weaken(b, l, target);
}

Line false_antecedent(ProofBuilder& b, const Assignment& v, const Formula& a, const Formula& c, Line la) {
  const Formula ac = Formula::impl(a, c);
  const AtomSet da = delta_set(v, a);
  const AtomSet dac = delta_set(v, ac);
  Line inclusion = tactics::disj_embed(b, chain_of(da), chain_of(dac));
  Line l = tactics::compose(b, la, inclusion);
  l = tactics::implication_split(b, l, c);
  return tactics::disj_weaken(b, l, pos_encode(dac, ac));
}

Line false_implication(ProofBuilder& b, const Assignment& v, const Formula& a, const Formula& c, Line la, Line lc) {
  const AtomSet dc = delta_set(v, c);
  const AtomSet dac = delta_set(v, Formula::impl(a, c));
  Line first = tactics::disj_weaken(b, la, grouped(dac, a));
  Line second = tactics::compose(b, lc, tactics::disj_embed(b, chain_of(dc), chain_of(dac)));
  return tactics::disjunctive_implication(b, first, second);
}

Line false_disjunction(ProofBuilder& b, const Assignment& v, const Formula& a, const Formula& c, Line la, Line lc) {
  const Formula cs = chain_of(delta_set(v, Formula::disj(a, c)));
  Line x = tactics::compose(b, la, tactics::disj_embed(b, chain_of(delta_set(v, a)), cs));
  Line y = tactics::compose(b, lc, tactics::disj_embed(b, chain_of(delta_set(v, c)), cs));
  Line l = b.ax6(a, c, cs);
  return b.mp(b.mp(l, x), y);
}

Line true_conjunction(ProofBuilder& b, const Assignment& v, const Formula& a, const Formula& c, Line la, Line lc) {
  const Formula ac = Formula::conj(a, c);
  const AtomSet dac = delta_set(v, ac);
  if (dac.empty()) return tactics::conj_intro(b, la, lc);
  Line x = tactics::disj_weaken(b, la, grouped(dac, a));
  Line y = tactics::disj_weaken(b, lc, grouped(dac, c));
  Line l = tactics::disj_conj_collect_left(b, tactics::conj_intro(b, x, y));
  return tactics::disj_weaken(b, l, pos_encode(dac, ac));
}

// Both orders: a & c and c & a.
std::pair<Line, Line> false_conjunct(ProofBuilder& b, const Assignment& v, const Formula& a, const Formula& c,
                                     Line la) {
  const AtomSet dac = delta_set(v, Formula::conj(a, c));
  Line l = tactics::compose(b, la, tactics::disj_embed(b, chain_of(delta_set(v, a)), chain_of(dac)));
  Line x = tactics::compose(b, b.ax7(a, c), l);
  Line y = tactics::compose(b, b.ax8(c, a), l);
  return {x, y};
}

void require_value(const Assignment& v, const Formula& f, bool want, const char* what) {
  if (eval(v, f) != want)
    throw Error(ErrorCode::Precondition,
                std::string(what) + ": " + print(f) + " must be " + (want ? "true" : "false") + " under " + to_string(v));
}

void require_covered(const Assignment& v, const Formula& f) {
  if (!v.defines(atoms_of(f)))
    throw Error(ErrorCode::MissingAtom, "assignment does not cover the atoms of " + print(f));
}

void require_premise(const Derivation& d, const Assignment& v, const Formula& f, const char* what) {
  require_checked(d, what);
  if (!(d.conclusion() == encoded(v, f)))
    throw Error(ErrorCode::Precondition, std::string(what) + ": premise concludes " + print(d.conclusion()) +
                                             ", expected " + print(encoded(v, f)));
}

std::vector<Formula> union_hyps(std::initializer_list<const Derivation*> ds) {
  std::vector<Formula> out;
  for (const auto* d : ds) out.insert(out.end(), d->hypotheses().begin(), d->hypotheses().end());
  return out;
}

CalculusId join_with(CalculusId base, std::initializer_list<const Derivation*> ds) {
  for (const auto* d : ds) base = calculus_join(base, d->calculus());
  return base;
}

}  // namespace

Formula encoded(const Assignment& v, const Formula& a) {
  return eval(v, a) ? pos_encode(delta_set(v, a), a) : neg_encode(delta_set(v, a), a);
}

Derivation assume(CalculusId c, const Formula& f) { return Derivation(c, {f}, {Step::hypothesis(f)}); }

Derivation lift_true_consequent(const Assignment& v, const Formula& a, const Formula& b, const Derivation& db) {
  require_value(v, b, true, "lift_true_consequent");
  require_premise(db, v, b, "lift_true_consequent");
  require_covered(v, a);
  ProofBuilder pb(join_with(CalculusId::ID, {&db}), union_hyps({&db}));
  Line l = true_consequent(pb, v, a, b, pb.splice(db));
  return pb.finish_checked(l, "lift_true_consequent");
}

Derivation lift_false_antecedent(const Assignment& v, const Formula& a, const Formula& b, const Derivation& da) {
  require_value(v, a, false, "lift_false_antecedent");
  require_premise(da, v, a, "lift_false_antecedent");
  require_covered(v, b);
  ProofBuilder pb(join_with(CalculusId::ID, {&da}), union_hyps({&da}));
  Line l = false_antecedent(pb, v, a, b, pb.splice(da));
  return pb.finish_checked(l, "lift_false_antecedent");
}

Derivation lift_false_implication(const Assignment& v, const Formula& a, const Formula& b, const Derivation& da,
                                  const Derivation& db) {
  require_value(v, b, false, "lift_false_implication");
  require_premise(da, v, a, "lift_false_implication");
  require_premise(db, v, b, "lift_false_implication");
  if (!eval(v, a)) throw Error(ErrorCode::Precondition, "lift_false_implication: antecedent must be true");
  ProofBuilder pb(join_with(CalculusId::ID, {&da, &db}), union_hyps({&da, &db}));
  Line x = pb.splice(da);
  Line y = pb.splice(db);
  return pb.finish_checked(false_implication(pb, v, a, b, x, y), "lift_false_implication");
}

std::pair<Derivation, Derivation> lift_true_disjunct(const Assignment& v, const Formula& a, const Formula& b,
                                                     const Derivation& da) {
  require_value(v, a, true, "lift_true_disjunct");
  require_premise(da, v, a, "lift_true_disjunct");
  require_covered(v, b);
  auto one = [&](const Formula& compound) {
    ProofBuilder pb(join_with(CalculusId::ID, {&da}), union_hyps({&da}));
    Line l = tactics::disj_weaken(pb, pb.splice(da), pos_encode(delta_set(v, compound), compound));
    return pb.finish_checked(l, "lift_true_disjunct");
  };
  return {one(Formula::disj(a, b)), one(Formula::disj(b, a))};
}

Derivation lift_false_disjunction(const Assignment& v, const Formula& a, const Formula& b, const Derivation& da,
                                  const Derivation& db) {
  require_value(v, a, false, "lift_false_disjunction");
  require_value(v, b, false, "lift_false_disjunction");
  require_premise(da, v, a, "lift_false_disjunction");
  require_premise(db, v, b, "lift_false_disjunction");
  ProofBuilder pb(join_with(CalculusId::ID, {&da, &db}), union_hyps({&da, &db}));
  Line x = pb.splice(da);
  Line y = pb.splice(db);
  return pb.finish_checked(false_disjunction(pb, v, a, b, x, y), "lift_false_disjunction");
}

Derivation lift_true_conjunction(const Assignment& v, const Formula& a, const Formula& b, const Derivation& da,
                                 const Derivation& db) {
  require_value(v, a, true, "lift_true_conjunction");
  require_value(v, b, true, "lift_true_conjunction");
  require_premise(da, v, a, "lift_true_conjunction");
  require_premise(db, v, b, "lift_true_conjunction");
  ProofBuilder pb(join_with(CalculusId::P, {&da, &db}), union_hyps({&da, &db}));
  Line x = pb.splice(da);
  Line y = pb.splice(db);
  return pb.finish_checked(true_conjunction(pb, v, a, b, x, y), "lift_true_conjunction");
}

std::pair<Derivation, Derivation> lift_false_conjunct(const Assignment& v, const Formula& a, const Formula& b,
                                                      const Derivation& da) {
  require_value(v, a, false, "lift_false_conjunct");
  require_premise(da, v, a, "lift_false_conjunct");
  require_covered(v, b);
  ProofBuilder pb(join_with(CalculusId::P, {&da}), union_hyps({&da}));
  auto [x, y] = false_conjunct(pb, v, a, b, pb.splice(da));
  Derivation first = pb.finish_checked(x, "lift_false_conjunct");
  Derivation second = pb.finish_checked(y, "lift_false_conjunct");
  return {std::move(first), std::move(second)};
}

std::pair<Line, bool> emit_line(ProofBuilder& b, const Assignment& v, const Formula& a) {
  switch (a.kind()) {
    case Connective::Atom:
      if (eval(v, a)) return {b.hyp(a), true};
      return {tactics::identity(b, a), false};
    case Connective::Impl: {
      const Formula& x = a.left();
      const Formula& y = a.right();
      if (eval(v, y)) {
        Line ly = emit_line(b, v, y).first;
        return {true_consequent(b, v, x, y, ly), true};
      }
      auto [lx, vx] = emit_line(b, v, x);
      if (!vx) return {false_antecedent(b, v, x, y, lx), true};
      Line ly = emit_line(b, v, y).first;
      return {false_implication(b, v, x, y, lx, ly), false};
    }
    case Connective::Disj: {
      const Formula& x = a.left();
      const Formula& y = a.right();
      if (eval(v, x)) {
        Line lx = emit_line(b, v, x).first;
        return {tactics::disj_weaken(b, lx, pos_encode(delta_set(v, a), a)), true};
      }
      if (eval(v, y)) {
        Line ly = emit_line(b, v, y).first;
        return {tactics::disj_weaken(b, ly, pos_encode(delta_set(v, a), a)), true};
      }
      Line lx = emit_line(b, v, x).first;
      Line ly = emit_line(b, v, y).first;
      return {false_disjunction(b, v, x, y, lx, ly), false};
    }
    case Connective::Conj: {
      const Formula& x = a.left();
      const Formula& y = a.right();
      auto [lx, vx] = emit_line(b, v, x);
      if (!vx) return {false_conjunct(b, v, x, y, lx).first, false};
      auto [ly, vy] = emit_line(b, v, y);
      if (!vy) return {false_conjunct(b, v, y, x, ly).second, false};
      return {true_conjunction(b, v, x, y, lx, ly), true};
    }
  }
  throw std::logic_error("unknown connective");
}

namespace {

void require_engine_calculus(const Formula& a, CalculusId calc, const char* what) {
  if (calc != CalculusId::ID && calc != CalculusId::P)
    throw Error(ErrorCode::Precondition, std::string(what) + " runs in ID or P, not " + to_string(calc));
  if (!in_fragment(a, fragment_of(calc)))
    throw Error(ErrorCode::FragmentViolation, print(a) + " is outside calculus " + to_string(calc));
}

}  // namespace

LineCertificate build_line(const Assignment& v, const Formula& a, CalculusId calc) {
  require_engine_calculus(a, calc, "build_line");
  require_covered(v, a);
  ProofBuilder b(calc, gamma_set(v, a).formulas());
  auto [l, value] = emit_line(b, v, a);
  Derivation d = b.finish_checked(l, "build_line");
  return {a, v, value ? Polarity::Positive : Polarity::Negative, std::move(d)};
}

namespace {

std::vector<Partition> partitions_of(const AtomSet& k) {
  const auto& idx = k.indices();
  const std::size_t n = idx.size();
  std::vector<Partition> out;
  out.reserve(std::size_t{1} << n);
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    Partition p;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask >> (n - 1 - i) & 1U) p.true_atoms.insert(idx[i]);
      else p.false_atoms.insert(idx[i]);
    }
    out.push_back(std::move(p));
  }
  return out;
}

std::string describe(const Partition& p) {
  auto side = [](const AtomSet& k) {
    std::string out = "{";
    for (auto i : k) out += (out.size() > 1 ? ", p" : "p") + std::to_string(i);
    return out + "}";
  };
  return side(p.true_atoms) + " | " + side(p.false_atoms);
}

}  // namespace

Derivation eliminate(const Formula& a, const AtomSet& atoms, const Leaves& leaves, CalculusId calc) {
  // Validate every leaf up front.
  for (const auto& p : partitions_of(atoms)) {
    auto it = leaves.find(p);
    if (it == leaves.end())
      throw Error(ErrorCode::MissingPartition, "no leaf for the partition " + describe(p));
    const Derivation& d = it->second;
    const Formula want = pos_encode(p.false_atoms, a);
    if (d.size() == 0 || !(d.conclusion() == want))
      throw Error(ErrorCode::LeafMismatch, "leaf concludes " + (d.size() ? print(d.conclusion()) : std::string("nothing")) +
                                               ", expected " + print(want));
    for (const auto& h : d.hypotheses())
      if (!h.is_atom() || !p.true_atoms.contains(h.atom_index()))
        throw Error(ErrorCode::LeafMismatch, "leaf hypothesis " + print(h) + " is not a true atom of its partition");
    if (!calculus_within(d.calculus(), calc))
      throw Error(ErrorCode::CalculusMismatch, std::string("leaf in calculus ") + to_string(d.calculus()));
  }

  Leaves current = leaves;
  AtomSet k = atoms;
  while (!k.empty()) {
    const std::uint32_t first = k.indices().front();
    const Formula b1 = Formula::atom(first);
    AtomSet rest = k;
    rest.erase(first);
    Leaves next;
    for (auto& p : partitions_of(rest)) {
      Partition with_true{p.true_atoms, p.false_atoms};
      with_true.true_atoms.insert(first);
      Partition with_false{p.true_atoms, p.false_atoms};
      with_false.false_atoms.insert(first);
      const Derivation& d6 = current.at(with_true);
      const Derivation& d7 = current.at(with_false);
      ProofBuilder b(calc, p.true_atoms.formulas());
      Line l8 = b.suppose(b1, [&](ProofBuilder& i) { return i.splice(d6); });
      Line l10 = b.splice(d7);
      Line l = tactics::disjunction_resolve(b, l10, l8);
      next.emplace(std::move(p), b.finish(l));
    }
    current = std::move(next);
    k = std::move(rest);
  }
  Derivation out = current.at(Partition{});
  out = tactics::weaken_calculus(out, calc);
  require_checked(out, "eliminate");
  return out;
}

namespace {

// The elimination tree of `eliminate`, built in place: atoms above `depth`
// are fixed in `v`, the true ones assumed by the enclosing builders. Returns
// the line of pos_encode(false atoms of v, a).
Line eliminate_into(ProofBuilder& b, const Formula& a, const std::vector<std::uint32_t>& atoms, std::size_t depth,
                    Assignment& v) {
  if (depth == 0) return emit_line(b, v, a).first;
  const std::uint32_t atom = atoms[depth - 1];
  v.set(atom, true);
  Line l8 = b.suppose(Formula::atom(atom), [&](ProofBuilder& i) { return eliminate_into(i, a, atoms, depth - 1, v); });
  v.set(atom, false);
  Line l10 = eliminate_into(b, a, atoms, depth - 1, v);
  return tactics::disjunction_resolve(b, l10, l8);
}

}  // namespace

ProofOrCountermodel prove(const Formula& a, CalculusId calc) {
  require_engine_calculus(a, calc, "prove");
  Verdict verdict = is_tautology(a);
  if (!verdict) return *verdict.countermodel;
  const AtomSet k = atoms_of(a);
  ProofBuilder b(calc, {});
  Assignment v;
  Line l = eliminate_into(b, a, k.indices(), k.size(), v);
  return b.finish_checked(l, "prove");
}

ProofOrCountermodel derive_from_hypotheses(std::span<const Formula> hyps, const Formula& a, CalculusId calc) {
  require_engine_calculus(a, calc, "derive_from_hypotheses");
  for (const auto& h : hyps) require_engine_calculus(h, calc, "derive_from_hypotheses");
  Verdict verdict = entails(hyps, a);
  if (!verdict) return *verdict.countermodel;
  if (hyps.empty()) return prove(a, calc);
  auto chained = prove(implication_chain(hyps, a), calc);
  const Derivation& d = std::get<Derivation>(chained);
  ProofBuilder b(calc, std::vector<Formula>(hyps.begin(), hyps.end()));
  Line l = b.splice(d);
  for (const auto& h : hyps) l = b.mp(l, b.hyp(h));
  return b.finish_checked(l, "derive_from_hypotheses");
}

}  // namespace posprop::kalmar
