#include "posprop/tactics.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>

#include "posprop/error.hpp"

namespace posprop::tactics {

namespace {

using F = Formula;

F imp(const F& a, const F& b) { return F::impl(a, b); }
F dis(const F& a, const F& b) { return F::disj(a, b); }
F con(const F& a, const F& b) { return F::conj(a, b); }

[[noreturn]] void misuse(const char* what, const F& f) {
  throw std::logic_error(std::string(what) + ": unexpected premise " + print(f));
}

const F& expect_impl(const F& f, const char* what) {
  if (!f.is_impl()) misuse(what, f);
  return f;
}

F m(std::uint32_t i) { return Schema::meta(i); }

// Compiles the lines `body` emits from `premises` over metavariables.
template <class Body>
Schema schema(CalculusId c, std::vector<F> premises, Body&& body) {
  ProofBuilder b(c, std::move(premises));
  return Schema(b.finish_checked(body(b), "schema"));
}

}  // namespace

// ---------------------------------------------------------------- emitters

Line identity(ProofBuilder& b, const Formula& a) {
  const F aa = imp(a, a);
  if (auto l = b.find(aa)) return *l;
  Line l1 = b.ax2(a, aa, a);
  Line l2 = b.ax1(a, aa);
  Line l3 = b.mp(l1, l2);
  Line l4 = b.ax1(a, a);
  return b.mp(l3, l4);
}

Line compose(ProofBuilder& b, Line ab, Line bc) {
  const F fab = expect_impl(b.formula(ab), "compose");
  const F fbc = expect_impl(b.formula(bc), "compose");
  if (!(fab.right() == fbc.left())) misuse("compose", fbc);
  const F& a = fab.left();
  const F& bf = fab.right();
  const F& c = fbc.right();
  if (a == bf) return bc;
  if (bf == c) return ab;
  if (auto l = b.find(imp(a, c))) return *l;
  Line l1 = b.ax1(fbc, a);
  Line l2 = b.mp(l1, bc);
  Line l3 = b.ax2(a, bf, c);
  Line l4 = b.mp(l3, l2);
  return b.mp(l4, ab);
}

static Line assertion_steps(ProofBuilder& b, const Formula& a, const Formula& bf) {
  const F ab = imp(a, bf);
  return b.suppose(a, [&](ProofBuilder& i) {
    return i.suppose(ab, [&](ProofBuilder& j) { return j.mp(j.hyp(ab), j.hyp(a)); });
  });
}

Line assertion(ProofBuilder& b, const Formula& a, const Formula& bf) {
  static const Schema s = schema(CalculusId::I, {}, [](ProofBuilder& t) { return assertion_steps(t, m(0), m(1)); });
  return b.instantiate(s, std::array{a, bf});
}

static Line reabsorb_steps(ProofBuilder& b, const Formula& a, const Formula& bf) {
  return b.suppose(a, [&](ProofBuilder& i) {
    return i.suppose(imp(bf, a), [&](ProofBuilder& j) { return j.hyp(a); });
  });
}

Line reabsorb(ProofBuilder& b, const Formula& a, const Formula& bf) {
  static const Schema s = schema(CalculusId::I, {}, [](ProofBuilder& t) { return reabsorb_steps(t, m(0), m(1)); });
  return b.instantiate(s, std::array{a, bf});
}

static Line contraction_steps(ProofBuilder& b, const Formula& a, const Formula& bf) {
  const F aab = imp(a, imp(a, bf));
  return b.suppose(aab, [&](ProofBuilder& i) {
    return i.suppose(a, [&](ProofBuilder& j) {
      Line x = j.hyp(a);
      return j.mp(j.mp(j.hyp(aab), x), x);
    });
  });
}

Line contraction(ProofBuilder& b, const Formula& a, const Formula& bf) {
  static const Schema s = schema(CalculusId::I, {}, [](ProofBuilder& t) { return contraction_steps(t, m(0), m(1)); });
  return b.instantiate(s, std::array{a, bf});
}

static Line implicative_disjunct_map_steps(ProofBuilder& b, Line ab_b, Line ac) {
  const F fabb = b.formula(ab_b);
  const F fac = b.formula(ac);
  if (!fabb.is_impl() || !fabb.left().is_impl() || !(fabb.left().right() == fabb.right())) misuse("implicative_disjunct_map", fabb);
  const F& bf = fabb.right();
  const F& c = expect_impl(fac, "implicative_disjunct_map").right();
  if (!(fac.left() == fabb.left().left())) misuse("implicative_disjunct_map", fac);
  return b.suppose(imp(c, bf), [&](ProofBuilder& i) {
    Line ab = compose(i, i.hyp(fac), i.hyp(imp(c, bf)));
    return i.mp(i.hyp(fabb), ab);
  });
}

Line implicative_disjunct_map(ProofBuilder& b, Line ab_b, Line ac) {
  const F fabb = b.formula(ab_b);
  const F fac = b.formula(ac);
  if (!fabb.is_impl() || !fabb.left().is_impl() || !(fabb.left().right() == fabb.right())) misuse("implicative_disjunct_map", fabb);
  if (!fac.is_impl() || !(fac.left() == fabb.left().left())) misuse("implicative_disjunct_map", fac);
  static const Schema s = schema(CalculusId::I, {imp(imp(m(0), m(1)), m(1)), imp(m(0), m(2))}, [](ProofBuilder& t) {
    return implicative_disjunct_map_steps(t, t.hyp(imp(imp(m(0), m(1)), m(1))), t.hyp(imp(m(0), m(2))));
  });
  return b.instantiate(s, std::array{fac.left(), fabb.right(), fac.right()});
}

static Line excluded_middle_steps(ProofBuilder& b, const Formula& a, const Formula& bf) {
  const F ab = imp(a, bf);
  const F d = dis(a, ab);
  if (auto l = b.find(d)) return *l;
  const F db = imp(d, bf);
  Line dbd = b.suppose(db, [&](ProofBuilder& i) {
    Line ab_line = i.suppose(a, [&](ProofBuilder& j) {
      Line dl = j.mp(j.ax4(a, ab), j.hyp(a));
      return j.mp(j.hyp(db), dl);
    });
    return i.mp(i.ax5(ab, a), ab_line);
  });
  return b.mp(b.ax3(d, bf), dbd);
}

Line excluded_middle(ProofBuilder& b, const Formula& a, const Formula& bf) {
  if (auto l = b.find(dis(a, imp(a, bf)))) return *l;
  static const Schema s = schema(CalculusId::ID, {}, [](ProofBuilder& t) { return excluded_middle_steps(t, m(0), m(1)); });
  return b.instantiate(s, std::array{a, bf});
}

Line disj_elim(ProofBuilder& b, Line a_or_b, Line ac, Line bc) {
  const F fo = b.formula(a_or_b);
  const F fac = b.formula(ac);
  if (!fo.is_disj()) misuse("disj_elim", fo);
  Line l = b.ax6(fo.left(), fo.right(), expect_impl(fac, "disj_elim").right());
  return b.mp(b.mp(b.mp(l, ac), bc), a_or_b);
}

Line disj_map(ProofBuilder& b, Line a_or_b, Line ac, Line bd) {
  const F c = expect_impl(b.formula(ac), "disj_map").right();
  const F d = expect_impl(b.formula(bd), "disj_map").right();
  const F fo = b.formula(a_or_b);
  if (fo == dis(c, d)) return a_or_b;
  Line l1 = compose(b, ac, b.ax4(c, d));
  Line l2 = compose(b, bd, b.ax5(d, c));
  return disj_elim(b, a_or_b, l1, l2);
}

static Line implication_split_steps(ProofBuilder& b, Line ab, const Formula& c) {
  const F fab = expect_impl(b.formula(ab), "implication_split");
  const F& a = fab.left();
  const F& bf = fab.right();
  const F ac = imp(a, c);
  Line em = excluded_middle(b, a, c);
  Line l1 = compose(b, ab, b.ax4(bf, ac));
  Line l2 = b.ax5(ac, bf);
  return disj_elim(b, em, l1, l2);
}

Line implication_split(ProofBuilder& b, Line ab, const Formula& c) {
  const F fab = expect_impl(b.formula(ab), "implication_split");
  static const Schema s = schema(CalculusId::ID, {imp(m(0), m(1))}, [](ProofBuilder& t) {
    return implication_split_steps(t, t.hyp(imp(m(0), m(1))), m(2));
  });
  return b.instantiate(s, std::array{fab.left(), fab.right(), c});
}

Line weaken_to_disjunct(ProofBuilder& b, Line a, const Formula& bf, const Formula& c) {
  const F fa = b.formula(a);
  Line ca = b.mp(b.ax1(fa, c), a);
  return b.mp(b.ax5(imp(c, fa), bf), ca);
}

namespace {

bool contains_disjunct(const F& t, const F& s) {
  if (t == s) return true;
  return t.is_disj() && (contains_disjunct(t.left(), s) || contains_disjunct(t.right(), s));
}

// s -> t for a v-subtree s of t.
Line inject(ProofBuilder& b, const F& s, const F& t) {
  if (s == t) return identity(b, s);
  if (auto l = b.find(imp(s, t))) return *l;
  const F& u = t.left();
  const F& w = t.right();
  if (contains_disjunct(u, s)) {
    Line uw = b.ax4(u, w);
    return u == s ? uw : compose(b, inject(b, s, u), uw);
  }
  Line wu = b.ax5(w, u);
  return w == s ? wu : compose(b, inject(b, s, w), wu);
}

}  // namespace

bool disj_embeddable(const Formula& src, const Formula& target) {
  if (contains_disjunct(target, src)) return true;
  return src.is_disj() && disj_embeddable(src.left(), target) && disj_embeddable(src.right(), target);
}

Line disj_embed(ProofBuilder& b, const Formula& src, const Formula& target) {
  if (contains_disjunct(target, src)) return inject(b, src, target);
  if (!src.is_disj())
    throw Error(ErrorCode::Precondition, print(src) + " is not a disjunct of " + print(target));
  if (auto l = b.find(imp(src, target))) return *l;
  Line l = b.ax6(src.left(), src.right(), target);
  Line lx = disj_embed(b, src.left(), target);
  l = b.mp(l, lx);
  Line ly = disj_embed(b, src.right(), target);
  return b.mp(l, ly);
}

Line disj_weaken(ProofBuilder& b, Line l, const Formula& target) {
  const F f = b.formula(l);
  if (f == target) return l;
  Line e = disj_embed(b, f, target);
  return b.mp(e, l);
}

static Line disjunctive_implication_steps(ProofBuilder& b, Line a_or_b, Line ca) {
  const F fo = b.formula(a_or_b);
  const F fca = expect_impl(b.formula(ca), "disjunctive_implication");
  if (!fo.is_disj() || !(fo.left() == fca.right())) misuse("disjunctive_implication", fo);
  const F& a = fo.left();
  const F& bf = fo.right();
  const F bc = imp(bf, fca.left());
  Line aa = identity(b, a);
  const F faa = b.formula(aa);
  return b.suppose(bc, [&](ProofBuilder& i) {
    Line ba = compose(i, i.hyp(bc), i.hyp(fca));
    return disj_elim(i, i.hyp(fo), i.hyp(faa), ba);
  });
}

Line disjunctive_implication(ProofBuilder& b, Line a_or_b, Line ca) {
  const F fo = b.formula(a_or_b);
  const F fca = expect_impl(b.formula(ca), "disjunctive_implication");
  if (!fo.is_disj() || !(fo.left() == fca.right())) misuse("disjunctive_implication", fo);
  static const Schema s = schema(CalculusId::ID, {dis(m(0), m(1)), imp(m(2), m(0))}, [](ProofBuilder& t) {
    return disjunctive_implication_steps(t, t.hyp(dis(m(0), m(1))), t.hyp(imp(m(2), m(0))));
  });
  return b.instantiate(s, std::array{fo.left(), fo.right(), fca.left()});
}

Line disjunction_resolve(ProofBuilder& b, Line a_or_b, Line ab) {
  const F fo = b.formula(a_or_b);
  if (!fo.is_disj()) misuse("disjunction_resolve", fo);
  Line bb = identity(b, fo.right());
  return disj_elim(b, a_or_b, ab, bb);
}

static Line implicative_disjunction_steps(ProofBuilder& b, Line ab_b) {
  const F f = b.formula(ab_b);
  if (!f.is_impl() || !f.left().is_impl() || !(f.left().right() == f.right())) misuse("implicative_disjunction", f);
  const F& a = f.left().left();
  const F& bf = f.right();
  const F d = dis(a, bf);
  if (auto l = b.find(d)) return *l;
  const F db = imp(d, bf);
  Line dbd = b.suppose(db, [&](ProofBuilder& i) {
    Line ab = compose(i, i.ax4(a, bf), i.hyp(db));
    Line bl = i.mp(i.hyp(f), ab);
    return i.mp(i.ax5(bf, a), bl);
  });
  return b.mp(b.ax3(d, bf), dbd);
}

Line implicative_disjunction(ProofBuilder& b, Line ab_b) {
  const F f = b.formula(ab_b);
  if (!f.is_impl() || !f.left().is_impl() || !(f.left().right() == f.right())) misuse("implicative_disjunction", f);
  if (auto l = b.find(dis(f.left().left(), f.right()))) return *l;
  static const Schema s = schema(CalculusId::ID, {imp(imp(m(0), m(1)), m(1))}, [](ProofBuilder& t) {
    return implicative_disjunction_steps(t, t.hyp(imp(imp(m(0), m(1)), m(1))));
  });
  return b.instantiate(s, std::array{f.left().left(), f.right()});
}

static Line implicative_disjunction_elim_steps(ProofBuilder& b, Line bd, Line cd, Line bc_c) {
  const F fbd = expect_impl(b.formula(bd), "implicative_disjunction_elim");
  const F fcd = expect_impl(b.formula(cd), "implicative_disjunction_elim");
  const F& d = fbd.right();
  const F& c = fcd.left();
  Line dc_c = implicative_disjunct_map(b, bc_c, bd);
  Line dc_d = compose(b, dc_c, cd);
  return b.mp(b.ax3(d, c), dc_d);
}

Line implicative_disjunction_elim(ProofBuilder& b, Line bd, Line cd, Line bc_c) {
  const F fbd = expect_impl(b.formula(bd), "implicative_disjunction_elim");
  const F fcd = expect_impl(b.formula(cd), "implicative_disjunction_elim");
  const F fbcc = b.formula(bc_c);
  if (!(fbcc == imp(imp(fbd.left(), fcd.left()), fcd.left())) || !(fbd.right() == fcd.right()))
    misuse("implicative_disjunction_elim", fbcc);
  static const Schema s =
      schema(CalculusId::I, {imp(m(0), m(2)), imp(m(1), m(2)), imp(imp(m(0), m(1)), m(1))}, [](ProofBuilder& t) {
        return implicative_disjunction_elim_steps(t, t.hyp(imp(m(0), m(2))), t.hyp(imp(m(1), m(2))),
                                                  t.hyp(imp(imp(m(0), m(1)), m(1))));
      });
  return b.instantiate(s, std::array{fbd.left(), fcd.left(), fbd.right()});
}

Line conj_intro(ProofBuilder& b, Line a, Line bl) {
  const F fa = b.formula(a);
  const F fb = b.formula(bl);
  if (auto l = b.find(con(fa, fb))) return *l;
  return b.mp(b.mp(b.ax9(fa, fb), a), bl);
}

Line conj_left(ProofBuilder& b, Line ab) {
  const F f = b.formula(ab);
  if (!f.is_conj()) misuse("conj_left", f);
  if (auto l = b.find(f.left())) return *l;
  return b.mp(b.ax7(f.left(), f.right()), ab);
}

Line conj_right(ProofBuilder& b, Line ab) {
  const F f = b.formula(ab);
  if (!f.is_conj()) misuse("conj_right", f);
  if (auto l = b.find(f.right())) return *l;
  return b.mp(b.ax8(f.left(), f.right()), ab);
}

namespace {

bool conj_path(const F& src, const F& target, Path& path) {
  if (src == target) return true;
  if (!src.is_conj()) return false;
  path.push_back(0);
  if (conj_path(src.left(), target, path)) return true;
  path.back() = 1;
  if (conj_path(src.right(), target, path)) return true;
  path.pop_back();
  return false;
}

}  // namespace

Line conj_rearrange(ProofBuilder& b, Line l, const Formula& target) {
  const F src = b.formula(l);
  Path path;
  if (conj_path(src, target, path)) {
    Line cur = l;
    for (auto dir : path) cur = dir == 0 ? conj_left(b, cur) : conj_right(b, cur);
    return cur;
  }
  if (!target.is_conj())
    throw Error(ErrorCode::Precondition, print(target) + " is not a conjunct of " + print(src));
  Line x = conj_rearrange(b, l, target.left());
  Line y = conj_rearrange(b, l, target.right());
  return conj_intro(b, x, y);
}

static Line impl_conj_distribute_steps(ProofBuilder& b, Line l) {
  const F f = b.formula(l);
  if (!f.is_impl() || !f.right().is_conj()) misuse("impl_conj_distribute", f);
  const F& a = f.left();
  Line ab = b.suppose(a, [&](ProofBuilder& i) { return conj_left(i, i.mp(i.hyp(f), i.hyp(a))); });
  Line ac = b.suppose(a, [&](ProofBuilder& i) { return conj_right(i, i.mp(i.hyp(f), i.hyp(a))); });
  return conj_intro(b, ab, ac);
}

Line impl_conj_distribute(ProofBuilder& b, Line l) {
  const F f = b.formula(l);
  if (!(f.is_impl() && f.right().is_conj())) misuse("impl_conj_distribute", f);
  static const Schema s = schema(CalculusId::IC, {imp(m(0), con(m(1), m(2)))}, [](ProofBuilder& t) { return impl_conj_distribute_steps(t, t.hyp(imp(m(0), con(m(1), m(2))))); });
  return b.instantiate(s, std::array{f.left(), f.right().left(), f.right().right()});
}

static Line impl_conj_collect_steps(ProofBuilder& b, Line l) {
  const F f = b.formula(l);
  if (!f.is_conj() || !f.left().is_impl() || !f.right().is_impl() || !(f.left().left() == f.right().left()))
    misuse("impl_conj_collect", f);
  const F& a = f.left().left();
  return b.suppose(a, [&](ProofBuilder& i) {
    Line h = i.hyp(f);
    Line x = i.hyp(a);
    Line bl = i.mp(conj_left(i, h), x);
    Line cl = i.mp(conj_right(i, h), x);
    return conj_intro(i, bl, cl);
  });
}

Line impl_conj_collect(ProofBuilder& b, Line l) {
  const F f = b.formula(l);
  if (!(f.is_conj() && f.left().is_impl() && f.right().is_impl() && f.left().left() == f.right().left())) misuse("impl_conj_collect", f);
  static const Schema s = schema(CalculusId::IC, {con(imp(m(0), m(1)), imp(m(0), m(2)))}, [](ProofBuilder& t) { return impl_conj_collect_steps(t, t.hyp(con(imp(m(0), m(1)), imp(m(0), m(2))))); });
  return b.instantiate(s, std::array{f.left().left(), f.left().right(), f.right().right()});
}

static Line curry_steps(ProofBuilder& b, Line l) {
  const F f = b.formula(l);
  if (!f.is_impl() || !f.left().is_conj()) misuse("curry", f);
  const F& a = f.left().left();
  const F& bf = f.left().right();
  return b.suppose(a, [&](ProofBuilder& i) {
    return i.suppose(bf, [&](ProofBuilder& j) {
      Line ab = conj_intro(j, j.hyp(a), j.hyp(bf));
      return j.mp(j.hyp(f), ab);
    });
  });
}

Line curry(ProofBuilder& b, Line l) {
  const F f = b.formula(l);
  if (!(f.is_impl() && f.left().is_conj())) misuse("curry", f);
  static const Schema s = schema(CalculusId::IC, {imp(con(m(0), m(1)), m(2))}, [](ProofBuilder& t) { return curry_steps(t, t.hyp(imp(con(m(0), m(1)), m(2)))); });
  return b.instantiate(s, std::array{f.left().left(), f.left().right(), f.right()});
}

static Line uncurry_steps(ProofBuilder& b, Line l) {
  const F f = b.formula(l);
  if (!f.is_impl() || !f.right().is_impl()) misuse("uncurry", f);
  const F ab = con(f.left(), f.right().left());
  return b.suppose(ab, [&](ProofBuilder& i) {
    Line h = i.hyp(ab);
    Line x = conj_left(i, h);
    Line y = conj_right(i, h);
    return i.mp(i.mp(i.hyp(f), x), y);
  });
}

Line uncurry(ProofBuilder& b, Line l) {
  const F f = b.formula(l);
  if (!(f.is_impl() && f.right().is_impl())) misuse("uncurry", f);
  static const Schema s = schema(CalculusId::IC, {imp(m(0), imp(m(1), m(2)))}, [](ProofBuilder& t) { return uncurry_steps(t, t.hyp(imp(m(0), imp(m(1), m(2))))); });
  return b.instantiate(s, std::array{f.left(), f.right().left(), f.right().right()});
}

static Line disj_conj_distribute_left_steps(ProofBuilder& b, Line l) {
  const F f = b.formula(l);
  if (!f.is_disj() || !f.right().is_conj()) misuse("disj_conj_distribute_left", f);
  const F& c = f.left();
  const F& a = f.right().left();
  const F& bf = f.right().right();
  Line cc = identity(b, c);
  Line ca = disj_map(b, l, cc, b.ax7(a, bf));
  Line cb = disj_map(b, l, cc, b.ax8(a, bf));
  return conj_intro(b, ca, cb);
}

Line disj_conj_distribute_left(ProofBuilder& b, Line l) {
  const F f = b.formula(l);
  if (!(f.is_disj() && f.right().is_conj())) misuse("disj_conj_distribute_left", f);
  static const Schema s = schema(CalculusId::P, {dis(m(0), con(m(1), m(2)))}, [](ProofBuilder& t) { return disj_conj_distribute_left_steps(t, t.hyp(dis(m(0), con(m(1), m(2))))); });
  return b.instantiate(s, std::array{f.left(), f.right().left(), f.right().right()});
}

static Line disj_conj_collect_left_steps(ProofBuilder& b, Line l) {
  const F f = b.formula(l);
  if (!f.is_conj() || !f.left().is_disj() || !f.right().is_disj() || !(f.left().left() == f.right().left()))
    misuse("disj_conj_collect_left", f);
  const F& c = f.left().left();
  const F& a = f.left().right();
  const F& bf = f.right().right();
  const F ab = con(a, bf);
  Line ca = conj_left(b, l);
  Line cb = conj_right(b, l);
  Line ct = b.ax4(c, ab);
  const F fcb = b.formula(cb);
  const F fct = b.formula(ct);
  Line at = b.suppose(a, [&](ProofBuilder& i) {
    Line bt = i.suppose(bf, [&](ProofBuilder& j) {
      Line x = conj_intro(j, j.hyp(a), j.hyp(bf));
      return j.mp(j.ax5(ab, c), x);
    });
    return disj_elim(i, i.hyp(fcb), i.hyp(fct), bt);
  });
  return disj_elim(b, ca, ct, at);
}

Line disj_conj_collect_left(ProofBuilder& b, Line l) {
  const F f = b.formula(l);
  if (!(f.is_conj() && f.left().is_disj() && f.right().is_disj() && f.left().left() == f.right().left())) misuse("disj_conj_collect_left", f);
  static const Schema s = schema(CalculusId::P, {con(dis(m(0), m(1)), dis(m(0), m(2)))}, [](ProofBuilder& t) { return disj_conj_collect_left_steps(t, t.hyp(con(dis(m(0), m(1)), dis(m(0), m(2))))); });
  return b.instantiate(s, std::array{f.left().left(), f.left().right(), f.right().right()});
}

static Line disj_conj_distribute_right_steps(ProofBuilder& b, Line l) {
  const F f = b.formula(l);
  if (!f.is_disj() || !f.left().is_conj()) misuse("disj_conj_distribute_right", f);
  const F& a = f.left().left();
  const F& bf = f.left().right();
  const F& c = f.right();
  Line cc = identity(b, c);
  Line ac = disj_map(b, l, b.ax7(a, bf), cc);
  Line bc = disj_map(b, l, b.ax8(a, bf), cc);
  return conj_intro(b, ac, bc);
}

Line disj_conj_distribute_right(ProofBuilder& b, Line l) {
  const F f = b.formula(l);
  if (!(f.is_disj() && f.left().is_conj())) misuse("disj_conj_distribute_right", f);
  static const Schema s = schema(CalculusId::P, {dis(con(m(0), m(1)), m(2))}, [](ProofBuilder& t) { return disj_conj_distribute_right_steps(t, t.hyp(dis(con(m(0), m(1)), m(2)))); });
  return b.instantiate(s, std::array{f.left().left(), f.left().right(), f.right()});
}

static Line disj_conj_collect_right_steps(ProofBuilder& b, Line l) {
  const F f = b.formula(l);
  if (!f.is_conj() || !f.left().is_disj() || !f.right().is_disj() || !(f.left().right() == f.right().right()))
    misuse("disj_conj_collect_right", f);
  const F& a = f.left().left();
  const F& bf = f.right().left();
  const F& c = f.left().right();
  const F ab = con(a, bf);
  Line ac = conj_left(b, l);
  Line bc = conj_right(b, l);
  Line ct = b.ax5(c, ab);
  const F fbc = b.formula(bc);
  const F fct = b.formula(ct);
  Line at = b.suppose(a, [&](ProofBuilder& i) {
    Line bt = i.suppose(bf, [&](ProofBuilder& j) {
      Line x = conj_intro(j, j.hyp(a), j.hyp(bf));
      return j.mp(j.ax4(ab, c), x);
    });
    return disj_elim(i, i.hyp(fbc), bt, i.hyp(fct));
  });
  return disj_elim(b, ac, at, ct);
}

Line disj_conj_collect_right(ProofBuilder& b, Line l) {
  const F f = b.formula(l);
  if (!(f.is_conj() && f.left().is_disj() && f.right().is_disj() && f.left().right() == f.right().right())) misuse("disj_conj_collect_right", f);
  static const Schema s = schema(CalculusId::P, {con(dis(m(0), m(2)), dis(m(1), m(2)))}, [](ProofBuilder& t) { return disj_conj_collect_right_steps(t, t.hyp(con(dis(m(0), m(2)), dis(m(1), m(2))))); });
  return b.instantiate(s, std::array{f.left().left(), f.right().left(), f.left().right()});
}

// ---------------------------------------------------------------- derivations

Derivation deduction(const Derivation& d, const Formula& a) {
  require_checked(d, "deduction input");
  if (!d.has_hypothesis(a))
    throw Error(ErrorCode::NotAHypothesis, print(a) + " is not a hypothesis of the derivation");
  std::vector<F> rest;
  for (const auto& h : d.hypotheses())
    if (!(h == a)) rest.push_back(h);
  ProofBuilder b(d.calculus(), std::move(rest));
  Line l = b.discharge(d.steps(), d.size() - 1, a);
  return b.finish_checked(l, "deduction");
}

Derivation weaken_calculus(const Derivation& d, CalculusId c) {
  if (!calculus_within(d.calculus(), c))
    throw Error(ErrorCode::CalculusMismatch,
                std::string("cannot relabel ") + to_string(d.calculus()) + " as " + to_string(c));
  if (d.calculus() == c) return d;
  return Derivation(c, d.hypotheses(), d.steps());
}

Derivation cut(const Derivation& premise, const Derivation& consumer) {
  const F& mid = premise.conclusion();
  std::vector<F> hyps = premise.hypotheses();
  for (const auto& h : consumer.hypotheses())
    if (!(h == mid)) hyps.push_back(h);
  ProofBuilder b(calculus_join(premise.calculus(), consumer.calculus()), std::move(hyps));
  b.splice(premise);
  Line l = b.splice(consumer);
  return b.finish_checked(l, "cut");
}

Derivation conjoin(std::span<const Derivation> ds) {
  if (ds.empty()) throw Error(ErrorCode::Precondition, "conjoin needs at least one derivation");
  CalculusId c = ds.front().calculus();
  for (const auto& d : ds) {
    if (!d.closed()) throw Error(ErrorCode::OpenHypotheses, "conjoin expects closed derivations");
    c = calculus_join(c, d.calculus());
  }
  if (ds.size() == 1) return ds.front();
  if (!has_scheme(c, SchemeId::Ax9))
    throw Error(ErrorCode::InsufficientCalculus, std::string("calculus ") + to_string(c) + " has no conjunction");
  ProofBuilder b(c, {});
  std::vector<Line> lines;
  for (const auto& d : ds) lines.push_back(b.splice(d));
  Line acc = lines.back();
  for (std::size_t i = lines.size() - 1; i-- > 0;) acc = conj_intro(b, lines[i], acc);
  return b.finish_checked(acc, "conjoin");
}

std::vector<Derivation> split_conjunction(const Derivation& d, std::size_t n) {
  if (!d.closed()) throw Error(ErrorCode::OpenHypotheses, "split_conjunction expects a closed derivation");
  if (n == 0) throw Error(ErrorCode::Precondition, "split_conjunction needs n >= 1");
  const F* cur = &d.conclusion();
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (!cur->is_conj())
      throw Error(ErrorCode::Precondition, print(d.conclusion()) + " has fewer than " + std::to_string(n) + " conjuncts");
    cur = &cur->right();
  }
  std::vector<Derivation> out;
  for (std::size_t j = 0; j < n; ++j) {
    if (n == 1) {
      out.push_back(d);
      break;
    }
    ProofBuilder b(d.calculus(), {});
    Line l = b.splice(d);
    for (std::size_t k = 0; k < j; ++k) l = conj_right(b, l);
    if (j + 1 < n) l = conj_left(b, l);
    out.push_back(b.finish_checked(l, "split_conjunction"));
  }
  return out;
}

// ---------------------------------------------------------------- equivalences

EquivalencePair reflexive(CalculusId c, const Formula& a) {
  if (!in_fragment(a, fragment_of(c)))
    throw Error(ErrorCode::FragmentViolation, print(a) + " is outside calculus " + to_string(c));
  Derivation d(c, {a}, {Step::hypothesis(a)});
  return {a, a, d, d, EquivalenceMode::Derivability};
}

EquivalencePair symmetric(const EquivalencePair& e) {
  return {e.right, e.left, e.backward, e.forward, e.mode};
}

EquivalencePair to_derivability(const EquivalencePair& e) {
  if (e.mode == EquivalenceMode::Derivability) return e;
  auto convert = [](const Derivation& thesis, const F& from) {
    ProofBuilder b(thesis.calculus(), {from});
    Line t = b.splice(thesis);
    Line x = b.hyp(from);
    return b.finish_checked(b.mp(t, x), "equivalence conversion");
  };
  return {e.left, e.right, convert(e.forward, e.left), convert(e.backward, e.right), EquivalenceMode::Derivability};
}

EquivalencePair to_thesis(const EquivalencePair& e) {
  if (e.mode == EquivalenceMode::Thesis) return e;
  return {e.left, e.right, deduction(e.forward, e.left), deduction(e.backward, e.right), EquivalenceMode::Thesis};
}

EquivalencePair compose(const EquivalencePair& ab, const EquivalencePair& bc) {
  if (!(ab.right == bc.left))
    throw Error(ErrorCode::Precondition, "cannot chain equivalences: " + print(ab.right) + " vs " + print(bc.left));
  const CalculusId c = calculus_join(ab.calculus(), bc.calculus());
  EquivalencePair x = to_derivability(ab);
  EquivalencePair y = to_derivability(bc);
  if (x.left == x.right) {
    y.forward = weaken_calculus(y.forward, c);
    y.backward = weaken_calculus(y.backward, c);
    return y;
  }
  if (y.left == y.right) {
    x.forward = weaken_calculus(x.forward, c);
    x.backward = weaken_calculus(x.backward, c);
    return x;
  }
  auto chain = [c](const Derivation& first, const Derivation& second, const F& from) {
    ProofBuilder b(c, {from});
    b.splice(first);
    return b.finish_checked(b.splice(second), "equivalence chain");
  };
  return {x.left, y.right, chain(x.forward, y.forward, x.left), chain(y.backward, x.backward, y.right),
          EquivalenceMode::Derivability};
}

bool check_equivalence(const EquivalencePair& e) {
  if (!check(e.forward).ok() || !check(e.backward).ok()) return false;
  if (e.forward.calculus() != e.backward.calculus()) return false;
  if (e.mode == EquivalenceMode::Thesis) {
    return e.forward.closed() && e.backward.closed() && e.forward.conclusion() == imp(e.left, e.right) &&
           e.backward.conclusion() == imp(e.right, e.left);
  }
  auto only = [](const Derivation& d, const F& h) {
    return d.hypotheses().size() == 1 && d.hypotheses().front() == h;
  };
  return only(e.forward, e.left) && e.forward.conclusion() == e.right && only(e.backward, e.right) &&
         e.backward.conclusion() == e.left;
}

Derivation biconditional(const EquivalencePair& e) {
  EquivalencePair t = to_thesis(e);
  if (!has_scheme(t.calculus(), SchemeId::Ax9))
    throw Error(ErrorCode::InsufficientCalculus, std::string("calculus ") + to_string(t.calculus()) + " has no conjunction");
  ProofBuilder b(t.calculus(), {});
  Line x = b.splice(t.forward);
  Line y = b.splice(t.backward);
  return b.finish_checked(conj_intro(b, x, y), "biconditional");
}

EquivalencePair from_biconditional(const Derivation& d) {
  require_checked(d, "biconditional");
  const F& f = d.conclusion();
  if (!d.closed() || !f.is_conj() || !f.left().is_impl() || !f.right().is_impl() ||
      !(f.left().left() == f.right().right()) || !(f.left().right() == f.right().left()))
    throw Error(ErrorCode::Precondition, print(f) + " is not a closed biconditional");
  auto side = [&](bool left) {
    ProofBuilder b(d.calculus(), {});
    Line l = b.splice(d);
    return b.finish_checked(left ? conj_left(b, l) : conj_right(b, l), "biconditional projection");
  };
  return {f.left().left(), f.left().right(), side(true), side(false), EquivalenceMode::Thesis};
}

Line substitute(ProofBuilder& b, Line l, std::span<const std::uint8_t> path, const Formula& from, const Formula& to,
                const Emitter& there, const Emitter& back) {
  if (path.empty()) return there(b, l);
  const F f = b.formula(l);
  const auto rest = path.subspan(1);
  const bool left = path[0] == 0;
  switch (f.kind()) {
    case Connective::Impl:
      if (!left) {
        const F& p = f.left();
        return b.suppose(p, [&](ProofBuilder& i) {
          Line q = i.mp(i.hyp(f), i.hyp(p));
          return substitute(i, q, rest, from, to, there, back);
        });
      } else {
        // Contravariant: the new antecedent is carried back to the old one.
        const F p2 = replace_at(f.left(), rest, to);
        return b.suppose(p2, [&](ProofBuilder& i) {
          Line p = substitute(i, i.hyp(p2), rest, to, from, back, there);
          return i.mp(i.hyp(f), p);
        });
      }
    case Connective::Disj: {
      const F& part = left ? f.left() : f.right();
      Line moved = b.suppose(part, [&](ProofBuilder& i) {
        return substitute(i, i.hyp(part), rest, from, to, there, back);
      });
      Line same = identity(b, left ? f.right() : f.left());
      return left ? disj_map(b, l, moved, same) : disj_map(b, l, same, moved);
    }
    case Connective::Conj: {
      Line x = conj_left(b, l);
      Line z = conj_right(b, l);
      if (left) x = substitute(b, x, rest, from, to, there, back);
      else z = substitute(b, z, rest, from, to, there, back);
      return conj_intro(b, x, z);
    }
    case Connective::Atom: break;
  }
  throw Error(ErrorCode::InvalidPath, "path leaves the formula");
}

EquivalencePair substitute_equivalents(const Formula& c, const Path& path, const EquivalencePair& e) {
  const F& at = subformula_at(c, path);
  if (!(at == e.left))
    throw Error(ErrorCode::Precondition, "subformula " + print(at) + " does not match " + print(e.left));
  EquivalencePair d = to_derivability(e);
  if (path.empty()) return d;
  const F c2 = replace_at(c, path, e.right);
  const CalculusId calc =
      calculus_join(d.calculus(), calculus_for(fragment_join(fragment_of(c), fragment_of(c2))));
  if (d.left == d.right) return reflexive(calc, c);
  auto run = [&](const F& from, const Derivation& there, const Derivation& back) {
    ProofBuilder b(calc, {from});
    const Emitter go = [&](ProofBuilder& x, Line) { return x.splice(there); };
    const Emitter come = [&](ProofBuilder& x, Line) { return x.splice(back); };
    Line l = substitute(b, b.hyp(from), path, subformula_at(from, path), there.conclusion(), go, come);
    return b.finish_checked(l, "substitution of equivalents");
  };
  return {c, c2, run(c, d.forward, d.backward), run(c2, d.backward, d.forward), EquivalenceMode::Derivability};
}

// ---------------------------------------------------------------- lemma library

namespace {

struct LemmaInfo {
  LemmaId id;
  const char* name;
  int arity;  // -1 for variadic
  CalculusId calculus;
  bool equivalence;
};

constexpr std::array<LemmaInfo, lemma_count> lemma_table{{
    {LemmaId::Identity, "Identity", 1, CalculusId::I, false},
    {LemmaId::Transitivity, "Transitivity", 3, CalculusId::I, false},
    {LemmaId::Assertion, "Assertion", 2, CalculusId::I, false},
    {LemmaId::Reabsorb, "Reabsorb", 2, CalculusId::I, false},
    {LemmaId::Contraction, "Contraction", 2, CalculusId::I, false},
    {LemmaId::ImplicativeDisjunctMap, "ImplicativeDisjunctMap", 3, CalculusId::I, false},
    {LemmaId::ExcludedMiddle, "ExcludedMiddle", 2, CalculusId::ID, false},
    {LemmaId::DisjunctionMap, "DisjunctionMap", 4, CalculusId::ID, false},
    {LemmaId::ImplicationSplit, "ImplicationSplit", 3, CalculusId::ID, false},
    {LemmaId::WeakenToDisjunct, "WeakenToDisjunct", 3, CalculusId::ID, false},
    {LemmaId::DisjunctionReassociate, "DisjunctionReassociate", -1, CalculusId::ID, true},
    {LemmaId::DisjunctInclusion, "DisjunctInclusion", -1, CalculusId::ID, false},
    {LemmaId::DisjunctiveImplication, "DisjunctiveImplication", 3, CalculusId::ID, false},
    {LemmaId::DisjunctionResolve, "DisjunctionResolve", 2, CalculusId::ID, false},
    {LemmaId::ImplicativeDisjunction, "ImplicativeDisjunction", 2, CalculusId::ID, false},
    {LemmaId::BiconditionalIntro, "BiconditionalIntro", 2, CalculusId::IC, false},
    {LemmaId::ImplicationOverConjunction, "ImplicationOverConjunction", 3, CalculusId::IC, true},
    {LemmaId::Currying, "Currying", 3, CalculusId::IC, true},
    {LemmaId::ConjunctionReassociate, "ConjunctionReassociate", -1, CalculusId::IC, true},
    {LemmaId::ConjunctionIntro, "ConjunctionIntro", -1, CalculusId::IC, false},
    {LemmaId::DisjunctionOverConjunctionLeft, "DisjunctionOverConjunctionLeft", 3, CalculusId::P, true},
    {LemmaId::DisjunctionOverConjunctionRight, "DisjunctionOverConjunctionRight", 3, CalculusId::P, true},
    {LemmaId::ImplicativeDisjunctionElim, "ImplicativeDisjunctionElim", 3, CalculusId::I, false},
}};

const LemmaInfo& info(LemmaId id) { return lemma_table.at(static_cast<std::size_t>(id)); }

template <class Body>
Derivation build(CalculusId c, std::vector<F> hyps, const char* name, Body&& body) {
  ProofBuilder b(c, std::move(hyps));
  Line l = body(b);
  return b.finish_checked(l, name);
}

template <class Fwd, class Bwd>
EquivalencePair build_pair(CalculusId c, const F& left, const F& right, const char* name, Fwd&& fwd, Bwd&& bwd) {
  Derivation f = build(c, {left}, name, [&](ProofBuilder& b) { return fwd(b, b.hyp(left)); });
  Derivation g = build(c, {right}, name, [&](ProofBuilder& b) { return bwd(b, b.hyp(right)); });
  return {left, right, std::move(f), std::move(g), EquivalenceMode::Derivability};
}

}  // namespace

const char* to_string(LemmaId id) { return info(id).name; }

std::optional<LemmaId> lemma_from_string(std::string_view s) {
  for (const auto& i : lemma_table)
    if (s == i.name) return i.id;
  return std::nullopt;
}

std::optional<std::size_t> lemma_arity(LemmaId id) {
  int a = info(id).arity;
  if (a < 0) return std::nullopt;
  return static_cast<std::size_t>(a);
}

CalculusId lemma_calculus(LemmaId id) { return info(id).calculus; }
bool lemma_is_equivalence(LemmaId id) { return info(id).equivalence; }

LemmaResult lemma(LemmaId id, std::span<const Formula> args, CalculusId target, std::size_t split) {
  const LemmaInfo& li = info(id);
  const std::size_t n = args.size();
  auto arity_error = [&](const std::string& want) {
    return Error(ErrorCode::ArityMismatch,
                 std::string(li.name) + " expects " + want + " arguments, got " + std::to_string(n));
  };
  if (li.arity >= 0 && n != static_cast<std::size_t>(li.arity)) throw arity_error(std::to_string(li.arity));
  switch (id) {
    case LemmaId::DisjunctionReassociate:
    case LemmaId::ConjunctionReassociate:
      if (n < 2) throw arity_error("at least 2");
      break;
    case LemmaId::ConjunctionIntro:
      if (n < 1) throw arity_error("at least 1");
      break;
    case LemmaId::DisjunctInclusion:
      if (split < 1 || split >= n)
        throw Error(ErrorCode::ArityMismatch, "DisjunctInclusion needs non-empty left and right lists");
      break;
    default: break;
  }
  if (!calculus_within(li.calculus, target))
    throw Error(ErrorCode::InsufficientCalculus,
                std::string(li.name) + " needs calculus " + to_string(li.calculus) + ", got " + to_string(target));
  for (const auto& a : args)
    if (!in_fragment(a, fragment_of(target)))
      throw Error(ErrorCode::FragmentViolation, print(a) + " is outside calculus " + to_string(target));

  const CalculusId c = target;
  const char* name = li.name;
  auto arg = [&](std::size_t i) -> const F& { return args[i]; };

  switch (id) {
    case LemmaId::Identity:
      return build(c, {}, name, [&](ProofBuilder& b) { return identity(b, arg(0)); });
    case LemmaId::Transitivity: {
      const F ab = imp(arg(0), arg(1)), bc = imp(arg(1), arg(2));
      return build(c, {ab, bc}, name, [&](ProofBuilder& b) { return compose(b, b.hyp(ab), b.hyp(bc)); });
    }
    case LemmaId::Assertion:
      return build(c, {}, name, [&](ProofBuilder& b) { return assertion(b, arg(0), arg(1)); });
    case LemmaId::Reabsorb:
      return build(c, {}, name, [&](ProofBuilder& b) { return reabsorb(b, arg(0), arg(1)); });
    case LemmaId::Contraction:
      return build(c, {}, name, [&](ProofBuilder& b) { return contraction(b, arg(0), arg(1)); });
    case LemmaId::ImplicativeDisjunctMap: {
      const F abb = imp(imp(arg(0), arg(1)), arg(1)), ac = imp(arg(0), arg(2));
      return build(c, {abb, ac}, name,
                   [&](ProofBuilder& b) { return implicative_disjunct_map(b, b.hyp(abb), b.hyp(ac)); });
    }
    case LemmaId::ExcludedMiddle:
      return build(c, {}, name, [&](ProofBuilder& b) { return excluded_middle(b, arg(0), arg(1)); });
    case LemmaId::DisjunctionMap: {
      const F ab = dis(arg(0), arg(1)), ac = imp(arg(0), arg(2)), bd = imp(arg(1), arg(3));
      return build(c, {ab, ac, bd}, name,
                   [&](ProofBuilder& b) { return disj_map(b, b.hyp(ab), b.hyp(ac), b.hyp(bd)); });
    }
    case LemmaId::ImplicationSplit: {
      const F ab = imp(arg(0), arg(1));
      return build(c, {ab}, name, [&](ProofBuilder& b) { return implication_split(b, b.hyp(ab), arg(2)); });
    }
    case LemmaId::WeakenToDisjunct:
      return build(c, {arg(0)}, name,
                   [&](ProofBuilder& b) { return weaken_to_disjunct(b, b.hyp(arg(0)), arg(1), arg(2)); });
    case LemmaId::DisjunctionReassociate: {
      const F left = dis(disjunction_chain(args.first(n - 1)), args.back());
      const F right = disjunction_chain(args);
      auto to = [](const F& t) { return [t](ProofBuilder& b, Line l) { return disj_weaken(b, l, t); }; };
      return build_pair(c, left, right, name, to(right), to(left));
    }
    case LemmaId::DisjunctInclusion: {
      auto lhs = args.first(split);
      auto rhs = args.subspan(split);
      for (const auto& a : lhs)
        if (std::find(rhs.begin(), rhs.end(), a) == rhs.end())
          throw Error(ErrorCode::Precondition, print(a) + " is not among the right-hand disjuncts");
      const F from = disjunction_chain(lhs);
      const F to = disjunction_chain(rhs);
      return build(c, {from}, name, [&](ProofBuilder& b) { return disj_weaken(b, b.hyp(from), to); });
    }
    case LemmaId::DisjunctiveImplication: {
      const F ab = dis(arg(0), arg(1)), ca = imp(arg(2), arg(0));
      return build(c, {ab, ca}, name,
                   [&](ProofBuilder& b) { return disjunctive_implication(b, b.hyp(ab), b.hyp(ca)); });
    }
    case LemmaId::DisjunctionResolve: {
      const F ab = dis(arg(0), arg(1)), ab2 = imp(arg(0), arg(1));
      return build(c, {ab, ab2}, name,
                   [&](ProofBuilder& b) { return disjunction_resolve(b, b.hyp(ab), b.hyp(ab2)); });
    }
    case LemmaId::ImplicativeDisjunction: {
      const F abb = imp(imp(arg(0), arg(1)), arg(1));
      return build(c, {abb}, name, [&](ProofBuilder& b) { return implicative_disjunction(b, b.hyp(abb)); });
    }
    case LemmaId::BiconditionalIntro: {
      const F ab = imp(arg(0), arg(1)), ba = imp(arg(1), arg(0));
      return build(c, {ab, ba}, name, [&](ProofBuilder& b) { return conj_intro(b, b.hyp(ab), b.hyp(ba)); });
    }
    case LemmaId::ImplicationOverConjunction: {
      const F left = imp(arg(0), con(arg(1), arg(2)));
      const F right = con(imp(arg(0), arg(1)), imp(arg(0), arg(2)));
      return build_pair(c, left, right, name, impl_conj_distribute, impl_conj_collect);
    }
    case LemmaId::Currying: {
      const F left = imp(con(arg(0), arg(1)), arg(2));
      const F right = imp(arg(0), imp(arg(1), arg(2)));
      return build_pair(c, left, right, name, curry, uncurry);
    }
    case LemmaId::ConjunctionReassociate: {
      const F left = con(conjunction_chain(args.first(n - 1)), args.back());
      const F right = conjunction_chain(args);
      auto to = [](const F& t) { return [t](ProofBuilder& b, Line l) { return conj_rearrange(b, l, t); }; };
      return build_pair(c, left, right, name, to(right), to(left));
    }
    case LemmaId::ConjunctionIntro: {
      std::vector<F> hyps(args.begin(), args.end());
      return build(c, hyps, name, [&](ProofBuilder& b) {
        Line acc = b.hyp(args.back());
        for (std::size_t i = n - 1; i-- > 0;) acc = conj_intro(b, b.hyp(args[i]), acc);
        return acc;
      });
    }
    case LemmaId::DisjunctionOverConjunctionLeft: {
      // Arguments C, A, B.
      const F left = dis(arg(0), con(arg(1), arg(2)));
      const F right = con(dis(arg(0), arg(1)), dis(arg(0), arg(2)));
      return build_pair(c, left, right, name, disj_conj_distribute_left, disj_conj_collect_left);
    }
    case LemmaId::DisjunctionOverConjunctionRight: {
      const F left = dis(con(arg(0), arg(1)), arg(2));
      const F right = con(dis(arg(0), arg(2)), dis(arg(1), arg(2)));
      return build_pair(c, left, right, name, disj_conj_distribute_right, disj_conj_collect_right);
    }
    case LemmaId::ImplicativeDisjunctionElim: {
      // Arguments B, C, D.
      const F bd = imp(arg(0), arg(2)), cd = imp(arg(1), arg(2)), bcc = imp(imp(arg(0), arg(1)), arg(1));
      return build(c, {bd, cd, bcc}, name, [&](ProofBuilder& b) {
        return implicative_disjunction_elim(b, b.hyp(bd), b.hyp(cd), b.hyp(bcc));
      });
    }
  }
  throw std::logic_error("unknown lemma id");
}

}  // namespace posprop::tactics
