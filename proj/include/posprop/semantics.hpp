#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "posprop/formula.hpp"

namespace posprop {

/// Finite map from atom index to truth value.
class Assignment {
 public:
  Assignment() = default;
  Assignment(std::initializer_list<std::pair<const std::uint32_t, bool>> values) : values_(values) {}

  void set(std::uint32_t atom, bool value) { values_[atom] = value; }
  std::optional<bool> get(std::uint32_t atom) const;
  bool defines(const AtomSet& atoms) const;
  const std::map<std::uint32_t, bool>& values() const noexcept { return values_; }

  /// The assignment making exactly the atoms of `truths` true among `atoms`.
  static Assignment from_partition(const AtomSet& atoms, const AtomSet& truths);

  friend bool operator==(const Assignment&, const Assignment&) = default;

 private:
  std::map<std::uint32_t, bool> values_;
};

/// "p1=T p2=F", atoms in R order.
std::string to_string(const Assignment& v);

/// Throws Error(MissingAtom) naming the first undefined atom encountered.
bool eval(const Assignment& v, const Formula& f);

/// Γ[v; a] and Δ[v; a]: the atoms of `a` that `v` makes true / false.
AtomSet gamma_set(const Assignment& v, const Formula& a);
AtomSet delta_set(const Assignment& v, const Formula& a);

/// Outcome of a semantic decision: holds, or the first falsifying row.
struct Verdict {
  std::optional<Assignment> countermodel;
  bool holds() const noexcept { return !countermodel; }
  explicit operator bool() const noexcept { return holds(); }
};

/// Truth table of `f` over `atoms` (which must cover atoms_of(f)). Row r gives
/// the i-th atom (R order) the value of bit (n-1-i) of r, so row 0 is all-F
/// and rows run in lexicographic order with F before T.
class TruthTable {
 public:
  TruthTable(const Formula& f, const AtomSet& atoms);

  std::size_t rows() const noexcept { return rows_; }
  bool at(std::size_t row) const { return (words_[row >> 6] >> (row & 63)) & 1U; }
  const std::vector<std::uint64_t>& words() const noexcept { return words_; }

  friend bool operator==(const TruthTable&, const TruthTable&) = default;

 private:
  std::size_t rows_ = 0;
  std::vector<std::uint64_t> words_;
};

/// Enumeration is exhaustive; intended for formulas with at most ~20 atoms.
Verdict is_tautology(const Formula& f);
Verdict entails(std::span<const Formula> hyps, const Formula& f);
bool semantically_equivalent(const Formula& a, const Formula& b);

}  // namespace posprop
