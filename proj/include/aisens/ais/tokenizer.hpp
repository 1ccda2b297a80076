//
// Project aisens - Copyright 2026 The aisens Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef AISENS_AIS_TOKENIZER_HPP_
#define AISENS_AIS_TOKENIZER_HPP_

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "aisens/chem/molecule.hpp"

// Atom-in-SMILES tokens. Each atom of a SMILES string becomes
//
//   [central;ring;neighbors]
//
// where `central` is the atom symbol (lowercase when aromatic) followed by
// its hydrogen count, charge and chirality, `ring` is R or !R, and
// `neighbors` concatenates the symbols of the bonded heavy atoms. All other
// SMILES characters (bonds, branches, ring digits, dots) pass through as
// structural tokens, so an AIS sequence maps one-to-one onto its SMILES.
namespace aisens::ais {

struct AtomToken {
  std::optional<int> isotope;
  // Element symbol; lowercase first letter encodes aromaticity ("c", "se").
  std::string element;
  int h_count = 0;
  int charge = 0;
  chem::Chirality chirality = chem::Chirality::kNone;
  bool in_ring = false;
  // Kept in canonical order: aromatic symbols first, then aliphatic, each
  // group sorted lexicographically.
  std::vector<std::string> neighbors;

  bool operator==(const AtomToken &) const = default;
};

struct StructuralToken {
  std::string symbol;

  bool operator==(const StructuralToken &) const = default;
};

using AisToken = std::variant<AtomToken, StructuralToken>;

/// Sorts neighbor symbols into the canonical rendering order.
void canonicalize_neighbors(std::vector<std::string> &symbols);

std::string render_central(const AtomToken &t);
std::string render(const AtomToken &t);
std::string render(const AisToken &t);

/// Inverse of render. Throws MalformedToken.
AisToken parse_token(std::string_view text);

/// True for the non-atomic SMILES symbols kept verbatim in AIS sequences.
bool is_structural_symbol(std::string_view text) noexcept;

struct AisSequence {
  std::vector<AisToken> tokens;
  std::string source_smiles;

  std::size_t atom_count() const noexcept;
  std::vector<std::string> rendered() const;
  /// Space-separated single-line form.
  std::string to_line() const;
  static AisSequence from_line(std::string_view line);
};

/// Converts SMILES to AIS. Propagates parse errors from chem::parse_smiles.
AisSequence smiles_to_ais(std::string_view smiles);

/// Builds the AIS sequence of an already parsed molecule.
AisSequence molecule_to_ais(const chem::Molecule &mol);

/// Reassembles a SMILES string. Atoms are written without brackets whenever
/// the valence model reproduces their hydrogen count. Throws MalformedToken
/// for atom tokens that do not denote a legal SMILES atom.
std::string ais_to_smiles(const AisSequence &seq);

/// Splits SMILES into atom symbols (bracket expressions whole), bond
/// symbols, parentheses, dots and ring-closure labels. Validates the
/// string by parsing it first.
std::vector<std::string> smiles_atom_tokenize(std::string_view smiles);

}  // namespace aisens::ais

#endif  // AISENS_AIS_TOKENIZER_HPP_
