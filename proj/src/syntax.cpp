// Concrete syntax for formulas.
//
//   formula := impl
//   impl    := disj ("->" impl)?
//   disj    := conj ("v" disj)?
//   conj    := primary ("&" conj)?
//   primary := atom | "(" formula ")"
//   atom    := "p" [1-9][0-9]*
//
// Precedence is & > v > ->, and every binary connective associates to the right.

#include <cctype>
#include <limits>

#include "posprop/error.hpp"
#include "posprop/formula.hpp"

namespace posprop {

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Formula parse_all() {
    Formula f = parse_impl();
    skip_ws();
    if (pos_ != text_.size()) fail("'->', 'v', '&' or end of input");
    return f;
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(std::string_view tok) {
    skip_ws();
    if (text_.substr(pos_, tok.size()) == tok) {
      pos_ += tok.size();
      return true;
    }
    return false;
  }

  [[noreturn]] void fail(const std::string& expected) const {
    std::string found = pos_ < text_.size() ? "'" + std::string(1, text_[pos_]) + "'" : "end of input";
    throw ParseError(pos_ + 1, expected,
                     "column " + std::to_string(pos_ + 1) + ": expected " + expected + ", found " + found);
  }

  Formula parse_impl() {
    Formula lhs = parse_disj();
    if (accept("->")) return Formula::impl(std::move(lhs), parse_impl());
    return lhs;
  }

  Formula parse_disj() {
    Formula lhs = parse_conj();
    if (accept("v")) return Formula::disj(std::move(lhs), parse_disj());
    return lhs;
  }

  Formula parse_conj() {
    Formula lhs = parse_primary();
    if (accept("&")) return Formula::conj(std::move(lhs), parse_conj());
    return lhs;
  }

  Formula parse_primary() {
    skip_ws();
    if (accept("(")) {
      Formula inner = parse_impl();
      if (!accept(")")) fail("')'");
      return inner;
    }
    if (pos_ < text_.size() && text_[pos_] == 'p') {
      std::size_t start = pos_;
      ++pos_;
      if (pos_ >= text_.size() || text_[pos_] < '1' || text_[pos_] > '9') fail("atom index [1-9][0-9]*");
      std::uint64_t index = 0;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        index = index * 10 + static_cast<unsigned>(text_[pos_] - '0');
        if (index > std::numeric_limits<std::uint32_t>::max()) {
          pos_ = start;
          fail("atom index below 2^32");
        }
        ++pos_;
      }
      return Formula::atom(static_cast<std::uint32_t>(index));
    }
    fail("atom or '('");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

int precedence(Connective c) {
  switch (c) {
    case Connective::Impl: return 1;
    case Connective::Disj: return 2;
    case Connective::Conj: return 3;
    case Connective::Atom: break;
  }
  return 4;
}

const char* symbol(Connective c) {
  switch (c) {
    case Connective::Impl: return " -> ";
    case Connective::Disj: return " v ";
    default: return " & ";
  }
}

void print_into(const Formula& f, std::string& out) {
  if (f.is_atom()) {
    out += 'p';
    out += std::to_string(f.atom_index());
    return;
  }
  const int prec = precedence(f.kind());
  // A left operand of the same connective needs parentheses (right association);
  // a right operand only when it binds more loosely.
  const bool paren_left = precedence(f.left().kind()) <= prec;
  const bool paren_right = precedence(f.right().kind()) < prec;
  if (paren_left) out += '(';
  print_into(f.left(), out);
  if (paren_left) out += ')';
  out += symbol(f.kind());
  if (paren_right) out += '(';
  print_into(f.right(), out);
  if (paren_right) out += ')';
}

}  // namespace

Formula parse(std::string_view text) { return Parser(text).parse_all(); }

std::string print(const Formula& f) {
  std::string out;
  print_into(f, out);
  return out;
}

}  // namespace posprop
