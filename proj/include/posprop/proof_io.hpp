#pragma once

// Proof files.
//
// Text form, one item per line, each line terminated by '\n':
//
//   calculus: ID
//   hyp: p1 v p2
//   hyp: p1 -> p2
//   1. hyp p1 v p2
//   2. axiom Ax1 p2 -> p1 -> p2
//   3. mp 2 1 p1 -> p2
//
// Hypotheses are written in R order. Steps are numbered from 1; `mp i j`
// cites the implication first. Writing is canonical, so write(read(s)) == s
// for every file produced by write.

#include <string>
#include <string_view>

#include <json.hpp>

#include "posprop/kernel.hpp"

namespace posprop {

std::string write_proof(const Derivation& d);
/// Throws ParseError whose column() is the 1-based line number.
Derivation read_proof(std::string_view text);

nlohmann::json proof_to_json(const Derivation& d);
Derivation proof_from_json(const nlohmann::json& j);

}  // namespace posprop
