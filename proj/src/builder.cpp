#include "posprop/builder.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

#include "posprop/error.hpp"

namespace posprop::tactics {

Schema::Schema(const Derivation& d) : calculus_(d.calculus()) {
  std::unordered_map<Formula, std::uint32_t> ids;
  auto intern = [&](auto&& self, const Formula& f) -> std::uint32_t {
    if (auto it = ids.find(f); it != ids.end()) return it->second;
    Node n{f.kind(), 0, 0, 0};
    if (f.is_atom()) {
      n.atom = f.atom_index();
    } else {
      n.left = self(self, f.left());
      n.right = self(self, f.right());
    }
    const auto id = static_cast<std::uint32_t>(nodes_.size());
    nodes_.push_back(n);
    ids.emplace(f, id);
    return id;
  };
  steps_.reserve(d.size());
  for (const auto& st : d.steps()) {
    Entry e{st.rule, st.scheme, 0, 0, 0};
    if (st.rule == Rule::ModusPonens) {
      e.major = static_cast<std::uint32_t>(st.major);
      e.minor = static_cast<std::uint32_t>(st.minor);
    } else {
      e.node = intern(intern, st.formula);
    }
    steps_.push_back(e);
  }
}


ProofBuilder::ProofBuilder(CalculusId calculus, std::vector<Formula> hypotheses)
    : calculus_(calculus), hypotheses_(std::move(hypotheses)) {
  std::sort(hypotheses_.begin(), hypotheses_.end(), RLess{});
  hypotheses_.erase(std::unique(hypotheses_.begin(), hypotheses_.end()), hypotheses_.end());
  steps_.reserve(64);
  index_.assign(128, no_line);
}

ProofBuilder::ProofBuilder(const ProofBuilder* parent, const Formula& assumption)
    : parent_(parent), calculus_(parent->calculus_), hypotheses_{assumption} {
  steps_.reserve(32);
  index_.assign(64, no_line);
}

std::optional<ProofBuilder::Line> ProofBuilder::find(const Formula& f) const {
  const std::size_t mask = index_.size() - 1;
  for (std::size_t i = f.hash() & mask;; i = (i + 1) & mask) {
    Line l = index_[i];
    if (l == no_line) return std::nullopt;
    if (steps_[l].formula == f) return l;
  }
}

bool ProofBuilder::assumes(const Formula& f) const {
  return std::find(hypotheses_.begin(), hypotheses_.end(), f) != hypotheses_.end();
}

bool ProofBuilder::available(const Formula& f) const {
  return assumes(f) || find(f) || (parent_ && parent_->available(f));
}

void ProofBuilder::grow_index() {
  index_.assign(index_.size() * 2, no_line);
  const std::size_t mask = index_.size() - 1;
  for (Line l = 0; l < steps_.size(); ++l) {
    std::size_t i = steps_[l].formula.hash() & mask;
    while (index_[i] != no_line) i = (i + 1) & mask;
    index_[i] = l;
  }
}

// Callers have already checked that the formula is absent.
ProofBuilder::Line ProofBuilder::push(Step step) {
  if (2 * (steps_.size() + 1) > index_.size()) grow_index();
  const std::size_t mask = index_.size() - 1;
  std::size_t i = step.formula.hash() & mask;
  while (index_[i] != no_line) i = (i + 1) & mask;
  const Line l = static_cast<Line>(steps_.size());
  index_[i] = l;
  steps_.push_back(std::move(step));
  return l;
}

ProofBuilder::Line ProofBuilder::hyp(const Formula& f) {
  if (auto l = find(f)) return *l;
  if (!assumes(f) && !(parent_ && parent_->available(f)))
    throw Error(ErrorCode::NotAHypothesis, print(f) + " is neither derived nor assumed here");
  return push(Step::hypothesis(f));
}

ProofBuilder::Line ProofBuilder::axiom(SchemeId s, Formula instance) {
  if (!has_scheme(calculus_, s))
    throw Error(ErrorCode::InsufficientCalculus,
                std::string(to_string(s)) + " is not available in calculus " + to_string(calculus_));
  if (auto l = find(instance)) return *l;
  return push(Step::axiom(s, std::move(instance)));
}

ProofBuilder::Line ProofBuilder::mp(Line major, Line minor) {
  const Formula& imp = formula(major);
  if (!imp.is_impl() || !(imp.left() == formula(minor)))
    throw std::logic_error("mp misuse: " + print(imp) + " applied to " + print(formula(minor)));
  Formula result = imp.right();
  if (auto l = find(result)) return *l;
  return push(Step::modus_ponens(major, minor, std::move(result)));
}

ProofBuilder::Line ProofBuilder::splice(const Derivation& d) {
  if (!calculus_within(d.calculus(), calculus_))
    throw Error(ErrorCode::CalculusMismatch,
                std::string("cannot splice a ") + to_string(d.calculus()) + " derivation into " + to_string(calculus_));
  std::vector<Line> map;
  map.reserve(d.size());
  for (const auto& s : d.steps()) {
    switch (s.rule) {
      case Rule::Hypothesis: map.push_back(hyp(s.formula)); break;
      case Rule::Axiom: map.push_back(axiom(s.scheme, s.formula)); break;
      case Rule::ModusPonens: map.push_back(mp(map.at(s.major), map.at(s.minor))); break;
    }
  }
  return map.back();
}

ProofBuilder::Line ProofBuilder::instantiate(const Schema& s, std::span<const Formula> args) {
  std::vector<Formula> built;
  built.reserve(s.nodes_.size());
  for (const auto& n : s.nodes_) {
    if (n.kind == Connective::Atom) {
      built.push_back(n.atom >= Schema::meta_base ? args[n.atom - Schema::meta_base] : Formula::atom(n.atom));
    } else {
      const Formula& l = built[n.left];
      const Formula& r = built[n.right];
      built.push_back(n.kind == Connective::Impl   ? Formula::impl(l, r)
                      : n.kind == Connective::Disj ? Formula::disj(l, r)
                                                   : Formula::conj(l, r));
    }
  }
  std::vector<Line> map;
  map.reserve(s.steps_.size());
  for (const auto& e : s.steps_) {
    switch (e.rule) {
      case Rule::Hypothesis: map.push_back(hyp(built[e.node])); break;
      case Rule::Axiom: map.push_back(axiom(e.scheme, built[e.node])); break;
      case Rule::ModusPonens: map.push_back(mp(map[e.major], map[e.minor])); break;
    }
  }
  return map.back();
}

// a -> formula(l), from l by an Ax1 instance.
ProofBuilder::Line ProofBuilder::lift(Line l, const Formula& a) {
  const Formula f = formula(l);
  if (auto done = find(Formula::impl(a, f))) return *done;
  return mp(ax1(f, a), l);
}

ProofBuilder::Line ProofBuilder::discharge(std::span<const Step> steps, std::size_t conclusion, const Formula& a) {
  std::vector<char> live(conclusion + 1, 0);
  live[conclusion] = 1;
  for (std::size_t i = conclusion + 1; i-- > 0;) {
    if (live[i] && steps[i].rule == Rule::ModusPonens) {
      live[steps[i].major] = 1;
      live[steps[i].minor] = 1;
    }
  }
  // plain[i]: the line itself, when it does not depend on `a`.
  // lifted[i]: a -> formula(i).
  std::vector<std::optional<Line>> plain(conclusion + 1), lifted(conclusion + 1);
  auto lifted_line = [&](std::size_t i) {
    if (!lifted[i]) lifted[i] = lift(*plain[i], a);
    return *lifted[i];
  };
  for (std::size_t i = 0; i <= conclusion; ++i) {
    if (!live[i]) continue;
    const Step& s = steps[i];
    switch (s.rule) {
      case Rule::Hypothesis:
        if (s.formula == a) {
          // a -> a
          const Formula aa = Formula::impl(a, a);
          if (auto done = find(aa)) {
            lifted[i] = *done;
          } else {
            Line l1 = ax2(a, aa, a);
            Line l2 = ax1(a, aa);
            Line l3 = mp(l1, l2);
            Line l4 = ax1(a, a);
            lifted[i] = mp(l3, l4);
          }
        } else {
          plain[i] = hyp(s.formula);
        }
        break;
      case Rule::Axiom:
        plain[i] = axiom(s.scheme, s.formula);
        break;
      case Rule::ModusPonens:
        if (plain[s.major] && plain[s.minor]) {
          plain[i] = mp(*plain[s.major], *plain[s.minor]);
        } else {
          const Formula& imp = steps[s.major].formula;
          Line major = lifted_line(s.major);
          Line minor = lifted_line(s.minor);
          Line dist = ax2(a, imp.left(), imp.right());
          lifted[i] = mp(mp(dist, major), minor);
        }
        break;
    }
  }
  return lifted_line(conclusion);
}

Derivation ProofBuilder::finish(Line conclusion) const {
  if (parent_) throw std::logic_error("finish called on a nested builder");
  std::vector<char> live(conclusion + 1, 0);
  live[conclusion] = 1;
  for (std::size_t i = conclusion + 1; i-- > 0;) {
    if (live[i] && steps_[i].rule == Rule::ModusPonens) {
      live[steps_[i].major] = 1;
      live[steps_[i].minor] = 1;
    }
  }
  std::vector<Line> renumber(conclusion + 1, 0);
  std::vector<Step> out;
  for (std::size_t i = 0; i <= conclusion; ++i) {
    if (!live[i]) continue;
    Step s = steps_[i];
    if (s.rule == Rule::ModusPonens) {
      s.major = renumber[s.major];
      s.minor = renumber[s.minor];
    }
    renumber[i] = static_cast<Line>(out.size());
    out.push_back(std::move(s));
  }
  return Derivation(calculus_, hypotheses_, std::move(out));
}

Derivation ProofBuilder::finish_checked(Line conclusion, std::string_view context) const {
  Derivation d = finish(conclusion);
  require_checked(d, context);
  return d;
}

}  // namespace posprop::tactics
