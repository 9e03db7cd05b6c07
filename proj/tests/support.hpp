#pragma once

// Shared test helpers: shorthand constructors, hand-rolled random generators
// and oracles that do not go through the library under test.

#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "posprop/formula.hpp"
#include "posprop/kernel.hpp"
#include "posprop/semantics.hpp"

namespace testing {

using posprop::Formula;

inline Formula p(std::uint32_t i) { return Formula::atom(i); }
inline Formula F(std::string_view s) { return posprop::parse(s); }

inline std::vector<Formula> Fs(std::initializer_list<std::string_view> texts) {
  std::vector<Formula> out;
  for (auto t : texts) out.push_back(F(t));
  return out;
}

// Random formula with exactly `connectives` binary nodes over p1..p{atoms},
// drawn from the connectives allowed in `lang`.
class FormulaGen {
 public:
  FormulaGen(std::uint64_t seed, posprop::Fragment lang) : rng_(seed), lang_(lang) {}

  Formula exact(unsigned connectives, unsigned atoms) {
    if (connectives == 0) return p(pick(1, atoms));
    unsigned left = pick(0, connectives - 1);
    Formula l = exact(left, atoms);
    Formula r = exact(connectives - 1 - left, atoms);
    switch (connective()) {
      case posprop::Connective::Disj: return Formula::disj(l, r);
      case posprop::Connective::Conj: return Formula::conj(l, r);
      default: return Formula::impl(l, r);
    }
  }

  Formula upto(unsigned max_connectives, unsigned atoms) { return exact(pick(0, max_connectives), atoms); }

  posprop::Assignment assignment(unsigned atoms) {
    posprop::Assignment v;
    for (unsigned i = 1; i <= atoms; ++i) v.set(i, pick(0, 1) == 1);
    return v;
  }

  unsigned pick(unsigned lo, unsigned hi) { return std::uniform_int_distribution<unsigned>(lo, hi)(rng_); }
  std::mt19937_64& rng() { return rng_; }

 private:
  posprop::Connective connective() {
    using posprop::Connective;
    using posprop::Fragment;
    switch (lang_) {
      case Fragment::Implicative: return Connective::Impl;
      case Fragment::ImplicativeDisjunctive: return pick(0, 1) ? Connective::Disj : Connective::Impl;
      case Fragment::ImplicativeConjunctive: return pick(0, 1) ? Connective::Conj : Connective::Impl;
      case Fragment::Positive: break;
    }
    static constexpr Connective all[] = {Connective::Impl, Connective::Disj, Connective::Conj};
    return all[pick(0, 2)];
  }

  std::mt19937_64 rng_;
  posprop::Fragment lang_;
};

// --- oracles --------------------------------------------------------------

// Truth value with atom p_i read from bit (i-1) of `row`.
inline bool oracle_eval(const Formula& f, std::uint32_t row) {
  switch (f.kind()) {
    case posprop::Connective::Atom: return (row >> (f.atom_index() - 1)) & 1U;
    case posprop::Connective::Impl: return !oracle_eval(f.left(), row) || oracle_eval(f.right(), row);
    case posprop::Connective::Disj: return oracle_eval(f.left(), row) || oracle_eval(f.right(), row);
    case posprop::Connective::Conj: return oracle_eval(f.left(), row) && oracle_eval(f.right(), row);
  }
  return false;
}

// Truth table over p1..p{atoms} packed into one word; atoms <= 6.
inline std::uint64_t oracle_table(const Formula& f, unsigned atoms) {
  std::uint64_t t = 0;
  for (std::uint32_t r = 0; r < (1U << atoms); ++r)
    if (oracle_eval(f, r)) t |= std::uint64_t{1} << r;
  return t;
}

inline bool oracle_tautology(const Formula& f, unsigned atoms) {
  std::uint64_t all = atoms == 6 ? ~std::uint64_t{0} : (std::uint64_t{1} << (1U << atoms)) - 1;
  return oracle_table(f, atoms) == all;
}

// Hypotheses all true implies the conclusion, over p1..p{atoms}.
inline bool oracle_entails(const std::vector<Formula>& hyps, const Formula& f, unsigned atoms) {
  for (std::uint32_t r = 0; r < (1U << atoms); ++r) {
    bool premises = true;
    for (const auto& h : hyps) premises = premises && oracle_eval(h, r);
    if (premises && !oracle_eval(f, r)) return false;
  }
  return true;
}

inline void oracle_atoms(const Formula& f, std::set<std::uint32_t>& out) {
  if (f.is_atom()) {
    out.insert(f.atom_index());
    return;
  }
  oracle_atoms(f.left(), out);
  oracle_atoms(f.right(), out);
}

inline std::uint32_t max_atom(const Formula& f) {
  std::set<std::uint32_t> s;
  oracle_atoms(f, s);
  return s.empty() ? 0 : *s.rbegin();
}

// Fully parenthesized rendering, used to check the printer's minimal form.
inline std::string oracle_render(const Formula& f) {
  switch (f.kind()) {
    case posprop::Connective::Atom: return "p" + std::to_string(f.atom_index());
    case posprop::Connective::Impl: return "(" + oracle_render(f.left()) + " -> " + oracle_render(f.right()) + ")";
    case posprop::Connective::Disj: return "(" + oracle_render(f.left()) + " v " + oracle_render(f.right()) + ")";
    case posprop::Connective::Conj: return "(" + oracle_render(f.left()) + " & " + oracle_render(f.right()) + ")";
  }
  return {};
}

// Any of the four conjunction-raising shapes at the root.
inline bool oracle_gamma_redex(const Formula& f, bool implicative_only = false) {
  if (f.is_impl() && (f.right().is_conj() || f.left().is_conj())) return true;
  if (implicative_only) return false;
  return f.is_disj() && (f.left().is_conj() || f.right().is_conj());
}

inline bool oracle_gamma_normal(const Formula& f, bool implicative_only = false) {
  if (f.is_atom()) return true;
  return !oracle_gamma_redex(f, implicative_only) && oracle_gamma_normal(f.left(), implicative_only) &&
         oracle_gamma_normal(f.right(), implicative_only);
}

inline bool oracle_has(const Formula& f, posprop::Connective c) {
  if (f.is_atom()) return false;
  return f.kind() == c || oracle_has(f.left(), c) || oracle_has(f.right(), c);
}

// Number of formulas with at most `n` connectives over `atoms` atoms and
// `kinds` binary connectives: sum over k of Catalan(k) * kinds^k * atoms^(k+1).
inline std::uint64_t oracle_formula_count(unsigned n, std::uint64_t atoms, std::uint64_t kinds) {
  std::uint64_t total = 0, catalan = 1;
  for (unsigned k = 0; k <= n; ++k) {
    std::uint64_t term = catalan;
    for (unsigned i = 0; i < k; ++i) term *= kinds;
    for (unsigned i = 0; i <= k; ++i) term *= atoms;
    total += term;
    catalan = catalan * 2 * (2 * k + 1) / (k + 2);
  }
  return total;
}

}  // namespace testing
