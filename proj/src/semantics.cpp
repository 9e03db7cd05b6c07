#include "posprop/semantics.hpp"

#include <algorithm>
#include <bit>

#include "posprop/error.hpp"

namespace posprop {

std::optional<bool> Assignment::get(std::uint32_t atom) const {
  auto it = values_.find(atom);
  if (it == values_.end()) return std::nullopt;
  return it->second;
}

bool Assignment::defines(const AtomSet& atoms) const {
  for (auto a : atoms)
    if (!values_.contains(a)) return false;
  return true;
}

Assignment Assignment::from_partition(const AtomSet& atoms, const AtomSet& truths) {
  Assignment v;
  for (auto a : atoms) v.set(a, truths.contains(a));
  return v;
}

std::string to_string(const Assignment& v) {
  std::string out;
  for (const auto& [atom, value] : v.values()) {
    if (!out.empty()) out += ' ';
    out += 'p' + std::to_string(atom) + (value ? "=T" : "=F");
  }
  return out;
}

bool eval(const Assignment& v, const Formula& f) {
  switch (f.kind()) {
    case Connective::Atom: {
      auto value = v.get(f.atom_index());
      if (!value)
        throw Error(ErrorCode::MissingAtom, "assignment does not define p" + std::to_string(f.atom_index()));
      return *value;
    }
    case Connective::Impl: return !eval(v, f.left()) || eval(v, f.right());
    case Connective::Disj: return eval(v, f.left()) || eval(v, f.right());
    case Connective::Conj: return eval(v, f.left()) && eval(v, f.right());
  }
  return false;
}

namespace {
AtomSet atoms_with_value(const Assignment& v, const Formula& a, bool wanted) {
  std::vector<std::uint32_t> out;
  for (auto atom : atoms_of(a)) {
    auto value = v.get(atom);
    if (!value) throw Error(ErrorCode::MissingAtom, "assignment does not define p" + std::to_string(atom));
    if (*value == wanted) out.push_back(atom);
  }
  return AtomSet(std::move(out));
}
}  // namespace

AtomSet gamma_set(const Assignment& v, const Formula& a) { return atoms_with_value(v, a, true); }
AtomSet delta_set(const Assignment& v, const Formula& a) { return atoms_with_value(v, a, false); }

// ---------------------------------------------------------------- truth tables

namespace {

// Bit pattern of atom position `i` (of n) across the 64 rows of word `w`.
std::uint64_t atom_word(std::size_t i, std::size_t n, std::size_t w) {
  const std::size_t shift = n - 1 - i;
  if (shift >= 6) return ((w >> (shift - 6)) & 1U) ? ~0ULL : 0ULL;
  static constexpr std::uint64_t kPatterns[6] = {
      0xAAAAAAAAAAAAAAAAULL, 0xCCCCCCCCCCCCCCCCULL, 0xF0F0F0F0F0F0F0F0ULL,
      0xFF00FF00FF00FF00ULL, 0xFFFF0000FFFF0000ULL, 0xFFFFFFFF00000000ULL,
  };
  return kPatterns[shift];
}

std::uint64_t eval_word(const Formula& f, const AtomSet& atoms, std::size_t w) {
  switch (f.kind()) {
    case Connective::Atom: {
      const auto& idx = atoms.indices();
      auto it = std::lower_bound(idx.begin(), idx.end(), f.atom_index());
      if (it == idx.end() || *it != f.atom_index())
        throw Error(ErrorCode::MissingAtom, "truth table does not cover p" + std::to_string(f.atom_index()));
      return atom_word(static_cast<std::size_t>(it - idx.begin()), idx.size(), w);
    }
    case Connective::Impl: return ~eval_word(f.left(), atoms, w) | eval_word(f.right(), atoms, w);
    case Connective::Disj: return eval_word(f.left(), atoms, w) | eval_word(f.right(), atoms, w);
    case Connective::Conj: return eval_word(f.left(), atoms, w) & eval_word(f.right(), atoms, w);
  }
  return 0;
}

std::uint64_t row_mask(std::size_t rows, std::size_t w) {
  const std::size_t remaining = rows - w * 64;
  return remaining >= 64 ? ~0ULL : ((1ULL << remaining) - 1);
}

Assignment row_assignment(const AtomSet& atoms, std::size_t row) {
  Assignment v;
  const std::size_t n = atoms.size();
  for (std::size_t i = 0; i < n; ++i) v.set(atoms.indices()[i], (row >> (n - 1 - i)) & 1U);
  return v;
}

}  // namespace

TruthTable::TruthTable(const Formula& f, const AtomSet& atoms) : rows_(std::size_t{1} << atoms.size()) {
  const std::size_t nwords = (rows_ + 63) / 64;
  words_.resize(nwords);
  for (std::size_t w = 0; w < nwords; ++w) words_[w] = eval_word(f, atoms, w) & row_mask(rows_, w);
}

Verdict entails(std::span<const Formula> hyps, const Formula& f) {
  AtomSet atoms = atoms_of(hyps).unite(atoms_of(f));
  const std::size_t rows = std::size_t{1} << atoms.size();
  const std::size_t nwords = (rows + 63) / 64;
  for (std::size_t w = 0; w < nwords; ++w) {
    std::uint64_t bad = ~eval_word(f, atoms, w) & row_mask(rows, w);
    for (const auto& h : hyps) {
      if (!bad) break;
      bad &= eval_word(h, atoms, w);
    }
    if (bad) return Verdict{row_assignment(atoms, w * 64 + static_cast<std::size_t>(std::countr_zero(bad)))};
  }
  return Verdict{};
}

Verdict is_tautology(const Formula& f) { return entails({}, f); }

bool semantically_equivalent(const Formula& a, const Formula& b) {
  AtomSet atoms = atoms_of(a).unite(atoms_of(b));
  return TruthTable(a, atoms) == TruthTable(b, atoms);
}

}  // namespace posprop
