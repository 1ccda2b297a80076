//
// Project aisens - Copyright 2026 The aisens Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef AISENS_CHEM_SMILES_LEXER_HPP_
#define AISENS_CHEM_SMILES_LEXER_HPP_

#include <cstdint>
#include <string_view>
#include <vector>

#include "aisens/chem/molecule.hpp"

namespace aisens::chem {

enum class LexKind : std::uint8_t {
  kAtom,         // organic-subset symbol or a whole bracket expression
  kBond,         // - = # : / backslash
  kRingBond,     // digit or %nn
  kBranchOpen,   // (
  kBranchClose,  // )
  kDot,          // .
};

struct LexToken {
  LexKind kind;
  Span span;
};

/// Splits a SMILES string into lexical tokens. Only checks local token
/// shape (unterminated brackets, unknown characters); grammar is enforced
/// by parse_smiles. Throws SyntaxError.
std::vector<LexToken> lex_smiles(std::string_view smiles);

}  // namespace aisens::chem

#endif  // AISENS_CHEM_SMILES_LEXER_HPP_
