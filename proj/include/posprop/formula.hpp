#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace posprop {

enum class Connective : std::uint8_t { Atom, Impl, Disj, Conj };

/// Immutable positive formula over atoms p1, p2, ...
///
/// Nodes are shared; copying a Formula is a reference-count bump. Equality is
/// structural, with the cached hash and node count used as early exits.
class Formula {
 public:
  static Formula atom(std::uint32_t index);
  static Formula impl(Formula antecedent, Formula consequent);
  static Formula disj(Formula left, Formula right);
  static Formula conj(Formula left, Formula right);

  Connective kind() const noexcept;
  bool is_atom() const noexcept;
  bool is_impl() const noexcept;
  bool is_disj() const noexcept;
  bool is_conj() const noexcept;

  std::uint32_t atom_index() const noexcept;
  // Antecedent / left disjunct / left conjunct. Undefined on atoms.
  const Formula& left() const noexcept;
  const Formula& right() const noexcept;

  std::uint32_t size() const noexcept;
  std::uint64_t hash() const noexcept;
  bool has_disj() const noexcept;
  bool has_conj() const noexcept;

  friend bool operator==(const Formula& a, const Formula& b) noexcept;

 private:
  struct Node;
  static std::shared_ptr<Node> new_node();
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  Formula() = default;
  static Formula make(Connective kind, Formula left, Formula right);

  std::shared_ptr<const Node> node_;
};

struct Formula::Node {
  Connective kind = Connective::Atom;
  bool has_disj = false;
  bool has_conj = false;
  std::uint32_t atom = 0;
  std::uint32_t size = 1;
  std::uint64_t hash = 0;
  Formula left;
  Formula right;
};

inline Connective Formula::kind() const noexcept { return node_->kind; }
inline bool Formula::is_atom() const noexcept { return kind() == Connective::Atom; }
inline bool Formula::is_impl() const noexcept { return kind() == Connective::Impl; }
inline bool Formula::is_disj() const noexcept { return kind() == Connective::Disj; }
inline bool Formula::is_conj() const noexcept { return kind() == Connective::Conj; }
inline std::uint32_t Formula::atom_index() const noexcept { return node_->atom; }
inline const Formula& Formula::left() const noexcept { return node_->left; }
inline const Formula& Formula::right() const noexcept { return node_->right; }
inline std::uint32_t Formula::size() const noexcept { return node_->size; }
inline std::uint64_t Formula::hash() const noexcept { return node_->hash; }
inline bool Formula::has_disj() const noexcept { return node_->has_disj; }
inline bool Formula::has_conj() const noexcept { return node_->has_conj; }

enum class Fragment { Implicative, ImplicativeDisjunctive, ImplicativeConjunctive, Positive };

const char* to_string(Fragment f);

/// Least fragment containing `f`.
Fragment fragment_of(const Formula& f);
/// True if every formula of `inner` is a formula of `outer`.
bool fragment_within(Fragment inner, Fragment outer);
/// Least fragment containing both.
Fragment fragment_join(Fragment a, Fragment b);
bool in_fragment(const Formula& f, Fragment lang);

/// The fixed linear order R: atoms by index; otherwise node count first, then
/// the preorder serialization compared lexicographically with the symbol order
/// -> < v < & < p1 < p2 < ...
std::strong_ordering compare_r(const Formula& a, const Formula& b);

struct RLess {
  bool operator()(const Formula& a, const Formula& b) const {
    return compare_r(a, b) < 0;
  }
};

/// Finite set of atom indices, iterated in increasing R order.
class AtomSet {
 public:
  AtomSet() = default;
  explicit AtomSet(std::vector<std::uint32_t> indices);

  const std::vector<std::uint32_t>& indices() const noexcept { return indices_; }
  std::size_t size() const noexcept { return indices_.size(); }
  bool empty() const noexcept { return indices_.empty(); }
  bool contains(std::uint32_t index) const;
  bool contains(const AtomSet& other) const;
  /// Atoms as formulas, in R order.
  std::vector<Formula> formulas() const;

  void insert(std::uint32_t index);
  void erase(std::uint32_t index);
  AtomSet unite(const AtomSet& other) const;

  auto begin() const { return indices_.begin(); }
  auto end() const { return indices_.end(); }

  friend bool operator==(const AtomSet&, const AtomSet&) = default;
  friend auto operator<=>(const AtomSet&, const AtomSet&) = default;

 private:
  std::vector<std::uint32_t> indices_;
};

AtomSet atoms_of(const Formula& f);
AtomSet atoms_of(std::span<const Formula> fs);

/// Position of a subformula: 0 selects left(), 1 selects right().
using Path = std::vector<std::uint8_t>;

const Formula& subformula_at(const Formula& f, std::span<const std::uint8_t> path);
Formula replace_at(const Formula& f, std::span<const std::uint8_t> path, const Formula& replacement);

/// B_1 v ... v B_n, right-associated. Requires a non-empty list.
Formula disjunction_chain(std::span<const Formula> parts);
/// B_1 & ... & B_n, right-associated. Requires a non-empty list.
Formula conjunction_chain(std::span<const Formula> parts);
/// A_1 -> ... -> A_n -> B.
Formula implication_chain(std::span<const Formula> antecedents, const Formula& consequent);
/// Maximal &-spine of `f` read left to right.
std::vector<Formula> conjunction_leaves(const Formula& f);

/// (K)^A: `a` itself when k is empty, otherwise B_1 v ... v B_n v a.
Formula pos_encode(const AtomSet& k, const Formula& a);
/// (K)^{~A}: `a` itself when k is empty, otherwise a -> (B_1 v ... v B_n).
Formula neg_encode(const AtomSet& k, const Formula& a);

Formula parse(std::string_view text);
std::string print(const Formula& f);

/// Every formula of `lang` with at most `max_connectives` connectives over
/// atoms p1..p{max_atoms}, grouped by connective count and in R order within
/// each group (hence in R order overall).
std::vector<Formula> enumerate_formulas(unsigned max_connectives, unsigned max_atoms, Fragment lang);

/// Streaming variant; `visit` is called in the same order as above.
void for_each_formula(unsigned max_connectives, unsigned max_atoms, Fragment lang,
                      const std::function<void(const Formula&)>& visit);

}  // namespace posprop

template <>
struct std::hash<posprop::Formula> {
  std::size_t operator()(const posprop::Formula& f) const noexcept {
    return static_cast<std::size_t>(f.hash());
  }
};
