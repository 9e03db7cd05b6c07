#include "posprop/formula.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <memory_resource>

#include "posprop/error.hpp"

namespace posprop {

namespace {

// Nodes are small, numerous and short-lived; a pooled resource keeps them
// off the general-purpose heap.
std::pmr::synchronized_pool_resource& node_pool() {
  static std::pmr::synchronized_pool_resource pool;
  return pool;
}

}  // namespace

std::shared_ptr<Formula::Node> Formula::new_node() {
  return std::allocate_shared<Node>(std::pmr::polymorphic_allocator<Node>(&node_pool()));
}

namespace {

std::uint64_t mix(std::uint64_t h) {
  h ^= h >> 33;
  h *= 0xff51afd7ed558ccdULL;
  h ^= h >> 33;
  h *= 0xc4ceb9fe1a85ec53ULL;
  h ^= h >> 33;
  return h;
}

constexpr std::uint32_t kCachedAtoms = 64;

// Pure lexicographic comparison of preorder serializations. Preorder codes of
// full binary trees are prefix-free, so comparing subtree by subtree is exact.
int symbol_key(const Formula& f) {
  switch (f.kind()) {
    case Connective::Impl: return 0;
    case Connective::Disj: return 1;
    case Connective::Conj: return 2;
    case Connective::Atom: break;
  }
  return 3;
}

std::strong_ordering lex_compare(const Formula& a, const Formula& b) {
  if (a == b) return std::strong_ordering::equal;
  if (auto c = symbol_key(a) <=> symbol_key(b); c != 0) return c;
  if (a.is_atom()) return a.atom_index() <=> b.atom_index();
  if (auto c = lex_compare(a.left(), b.left()); c != 0) return c;
  return lex_compare(a.right(), b.right());
}

}  // namespace

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::Syntax: return "syntax-error";
    case ErrorCode::MissingAtom: return "missing-atom";
    case ErrorCode::SchemeNotInCalculus: return "scheme-not-in-calculus";
    case ErrorCode::FragmentViolation: return "fragment-violation";
    case ErrorCode::CalculusMismatch: return "calculus-mismatch";
    case ErrorCode::InsufficientCalculus: return "insufficient-calculus";
    case ErrorCode::NotAHypothesis: return "not-a-hypothesis";
    case ErrorCode::OpenHypotheses: return "open-hypotheses";
    case ErrorCode::ArityMismatch: return "arity-mismatch";
    case ErrorCode::Precondition: return "precondition-violation";
    case ErrorCode::InvalidPath: return "invalid-path";
    case ErrorCode::MissingPartition: return "missing-partition";
    case ErrorCode::LeafMismatch: return "leaf-mismatch";
    case ErrorCode::UncheckedInput: return "unchecked-input";
  }
  return "error";
}

Formula Formula::atom(std::uint32_t index) {
  if (index == 0) throw Error(ErrorCode::Precondition, "atom indices start at 1");
  static const std::vector<Formula> cache = [] {
    std::vector<Formula> out;
    for (std::uint32_t i = 0; i < kCachedAtoms; ++i) {
      auto node = new_node();
      node->atom = i;
      node->hash = mix(i);
      out.push_back(Formula(std::move(node)));
    }
    return out;
  }();
  if (index < kCachedAtoms) return cache[index];
  auto node = new_node();
  node->atom = index;
  node->hash = mix(index);
  return Formula(std::move(node));
}

Formula Formula::make(Connective kind, Formula left, Formula right) {
  auto node = new_node();
  node->kind = kind;
  node->size = 1 + left.size() + right.size();
  node->has_disj = kind == Connective::Disj || left.has_disj() || right.has_disj();
  node->has_conj = kind == Connective::Conj || left.has_conj() || right.has_conj();
  node->hash = mix((static_cast<std::uint64_t>(kind) << 56) ^ (left.hash() * 0x9e3779b97f4a7c15ULL) ^
                   (right.hash() + 0x632be59bd9b4e019ULL));
  node->left = std::move(left);
  node->right = std::move(right);
  return Formula(std::move(node));
}

Formula Formula::impl(Formula a, Formula b) { return make(Connective::Impl, std::move(a), std::move(b)); }
Formula Formula::disj(Formula a, Formula b) { return make(Connective::Disj, std::move(a), std::move(b)); }
Formula Formula::conj(Formula a, Formula b) { return make(Connective::Conj, std::move(a), std::move(b)); }

bool operator==(const Formula& a, const Formula& b) noexcept {
  const Formula::Node* x = a.node_.get();
  const Formula::Node* y = b.node_.get();
  if (x == y) return true;
  if (x->hash != y->hash || x->size != y->size || x->kind != y->kind) return false;
  if (x->kind == Connective::Atom) return x->atom == y->atom;
  return x->left == y->left && x->right == y->right;
}

const char* to_string(Fragment f) {
  switch (f) {
    case Fragment::Implicative: return "implicative";
    case Fragment::ImplicativeDisjunctive: return "implicative-disjunctive";
    case Fragment::ImplicativeConjunctive: return "implicative-conjunctive";
    case Fragment::Positive: return "positive";
  }
  return "?";
}

namespace {
Fragment fragment_from_flags(bool disj, bool conj) {
  if (disj && conj) return Fragment::Positive;
  if (disj) return Fragment::ImplicativeDisjunctive;
  if (conj) return Fragment::ImplicativeConjunctive;
  return Fragment::Implicative;
}
bool allows_disj(Fragment f) { return f == Fragment::ImplicativeDisjunctive || f == Fragment::Positive; }
bool allows_conj(Fragment f) { return f == Fragment::ImplicativeConjunctive || f == Fragment::Positive; }
}  // namespace

Fragment fragment_of(const Formula& f) { return fragment_from_flags(f.has_disj(), f.has_conj()); }

bool fragment_within(Fragment inner, Fragment outer) {
  return (!allows_disj(inner) || allows_disj(outer)) && (!allows_conj(inner) || allows_conj(outer));
}

Fragment fragment_join(Fragment a, Fragment b) {
  return fragment_from_flags(allows_disj(a) || allows_disj(b), allows_conj(a) || allows_conj(b));
}

bool in_fragment(const Formula& f, Fragment lang) {
  return (!f.has_disj() || allows_disj(lang)) && (!f.has_conj() || allows_conj(lang));
}

std::strong_ordering compare_r(const Formula& a, const Formula& b) {
  if (auto c = a.size() <=> b.size(); c != 0) return c;
  return lex_compare(a, b);
}

// ---------------------------------------------------------------- AtomSet

AtomSet::AtomSet(std::vector<std::uint32_t> indices) : indices_(std::move(indices)) {
  std::sort(indices_.begin(), indices_.end());
  indices_.erase(std::unique(indices_.begin(), indices_.end()), indices_.end());
}

bool AtomSet::contains(std::uint32_t index) const {
  return std::binary_search(indices_.begin(), indices_.end(), index);
}

bool AtomSet::contains(const AtomSet& other) const {
  return std::includes(indices_.begin(), indices_.end(), other.indices_.begin(), other.indices_.end());
}

std::vector<Formula> AtomSet::formulas() const {
  std::vector<Formula> out;
  out.reserve(indices_.size());
  for (auto i : indices_) out.push_back(Formula::atom(i));
  return out;
}

void AtomSet::insert(std::uint32_t index) {
  auto it = std::lower_bound(indices_.begin(), indices_.end(), index);
  if (it == indices_.end() || *it != index) indices_.insert(it, index);
}

void AtomSet::erase(std::uint32_t index) {
  auto it = std::lower_bound(indices_.begin(), indices_.end(), index);
  if (it != indices_.end() && *it == index) indices_.erase(it);
}

AtomSet AtomSet::unite(const AtomSet& other) const {
  std::vector<std::uint32_t> out;
  std::set_union(indices_.begin(), indices_.end(), other.indices_.begin(), other.indices_.end(),
                 std::back_inserter(out));
  AtomSet s;
  s.indices_ = std::move(out);
  return s;
}

namespace {
void collect_atoms(const Formula& f, std::vector<std::uint32_t>& out) {
  if (f.is_atom()) {
    out.push_back(f.atom_index());
    return;
  }
  collect_atoms(f.left(), out);
  collect_atoms(f.right(), out);
}
}  // namespace

AtomSet atoms_of(const Formula& f) {
  std::vector<std::uint32_t> out;
  collect_atoms(f, out);
  return AtomSet(std::move(out));
}

AtomSet atoms_of(std::span<const Formula> fs) {
  std::vector<std::uint32_t> out;
  for (const auto& f : fs) collect_atoms(f, out);
  return AtomSet(std::move(out));
}

// ---------------------------------------------------------------- paths

const Formula& subformula_at(const Formula& f, std::span<const std::uint8_t> path) {
  const Formula* cur = &f;
  for (auto dir : path) {
    if (cur->is_atom() || dir > 1) throw Error(ErrorCode::InvalidPath, "path leaves the formula");
    cur = dir == 0 ? &cur->left() : &cur->right();
  }
  return *cur;
}

Formula replace_at(const Formula& f, std::span<const std::uint8_t> path, const Formula& replacement) {
  if (path.empty()) return replacement;
  if (f.is_atom() || path[0] > 1) throw Error(ErrorCode::InvalidPath, "path leaves the formula");
  auto rest = path.subspan(1);
  Formula l = path[0] == 0 ? replace_at(f.left(), rest, replacement) : f.left();
  Formula r = path[0] == 1 ? replace_at(f.right(), rest, replacement) : f.right();
  switch (f.kind()) {
    case Connective::Impl: return Formula::impl(std::move(l), std::move(r));
    case Connective::Disj: return Formula::disj(std::move(l), std::move(r));
    default: return Formula::conj(std::move(l), std::move(r));
  }
}

// ---------------------------------------------------------------- chains

Formula disjunction_chain(std::span<const Formula> parts) {
  assert(!parts.empty());
  Formula acc = parts.back();
  for (std::size_t i = parts.size() - 1; i-- > 0;) acc = Formula::disj(parts[i], std::move(acc));
  return acc;
}

Formula conjunction_chain(std::span<const Formula> parts) {
  assert(!parts.empty());
  Formula acc = parts.back();
  for (std::size_t i = parts.size() - 1; i-- > 0;) acc = Formula::conj(parts[i], std::move(acc));
  return acc;
}

Formula implication_chain(std::span<const Formula> antecedents, const Formula& consequent) {
  Formula acc = consequent;
  for (std::size_t i = antecedents.size(); i-- > 0;) acc = Formula::impl(antecedents[i], std::move(acc));
  return acc;
}

std::vector<Formula> conjunction_leaves(const Formula& f) {
  std::vector<Formula> out;
  std::vector<const Formula*> stack{&f};
  while (!stack.empty()) {
    const Formula* cur = stack.back();
    stack.pop_back();
    if (cur->is_conj()) {
      stack.push_back(&cur->right());
      stack.push_back(&cur->left());
    } else {
      out.push_back(*cur);
    }
  }
  return out;
}

Formula pos_encode(const AtomSet& k, const Formula& a) {
  if (k.empty()) return a;
  auto parts = k.formulas();
  parts.push_back(a);
  return disjunction_chain(parts);
}

Formula neg_encode(const AtomSet& k, const Formula& a) {
  if (k.empty()) return a;
  return Formula::impl(a, disjunction_chain(k.formulas()));
}

// ---------------------------------------------------------------- enumeration

namespace {

std::vector<Connective> connectives_of(Fragment lang) {
  std::vector<Connective> out{Connective::Impl};
  if (allows_disj(lang)) out.push_back(Connective::Disj);
  if (allows_conj(lang)) out.push_back(Connective::Conj);
  return out;
}

Formula combine(Connective c, const Formula& l, const Formula& r) {
  switch (c) {
    case Connective::Impl: return Formula::impl(l, r);
    case Connective::Disj: return Formula::disj(l, r);
    default: return Formula::conj(l, r);
  }
}

}  // namespace

void for_each_formula(unsigned max_connectives, unsigned max_atoms, Fragment lang,
                      const std::function<void(const Formula&)>& visit) {
  if (max_atoms == 0) return;
  const auto ops = connectives_of(lang);
  // by_count[k]: all formulas with exactly k connectives, in pure preorder
  // lexicographic order (which is R order within one size).
  std::vector<std::vector<Formula>> by_count;
  by_count.emplace_back();
  for (std::uint32_t i = 1; i <= max_atoms; ++i) by_count[0].push_back(Formula::atom(i));
  for (const auto& f : by_count[0]) visit(f);

  // Left subtrees are ordered by pure preorder lexicographic order across all
  // sizes, so the children pool is kept merged in that order.
  std::vector<Formula> pool = by_count[0];
  for (unsigned k = 1; k <= max_connectives; ++k) {
    const bool last = k == max_connectives;
    std::vector<Formula> layer;
    for (Connective c : ops) {
      for (const auto& l : pool) {
        unsigned lk = (l.size() - 1) / 2;
        if (lk > k - 1) continue;
        for (const auto& r : by_count[k - 1 - lk]) {
          Formula f = combine(c, l, r);
          visit(f);
          if (!last) layer.push_back(std::move(f));
        }
      }
    }
    if (last) break;
    std::vector<Formula> merged;
    merged.reserve(pool.size() + layer.size());
    std::merge(pool.begin(), pool.end(), layer.begin(), layer.end(), std::back_inserter(merged),
               [](const Formula& a, const Formula& b) { return lex_compare(a, b) < 0; });
    pool = std::move(merged);
    by_count.push_back(std::move(layer));
  }
}

std::vector<Formula> enumerate_formulas(unsigned max_connectives, unsigned max_atoms, Fragment lang) {
  std::vector<Formula> out;
  for_each_formula(max_connectives, max_atoms, lang, [&](const Formula& f) { out.push_back(f); });
  return out;
}

}  // namespace posprop
