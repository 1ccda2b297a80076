//
// Project aisens - Copyright 2026 The aisens Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef AISENS_CHEM_MOLECULE_HPP_
#define AISENS_CHEM_MOLECULE_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace aisens::chem {

enum class Chirality : std::uint8_t {
  kNone,
  kAntiClockwise,  // @
  kClockwise,      // @@
};

enum class BondOrder : std::uint8_t {
  kSingle,
  kDouble,
  kTriple,
  kAromatic,
};

/// Bond order contribution to an atom's valence. Aromatic bonds count 1;
/// the extra electron of an aromatic atom is handled by the valence model.
int valence_contribution(BondOrder order) noexcept;

struct Atom {
  int index = 0;
  int atomic_number = 6;
  bool aromatic = false;
  int formal_charge = 0;
  std::optional<int> isotope;
  Chirality chirality = Chirality::kNone;
  // Set only for bracket atoms (0 when the bracket has no H).
  std::optional<int> explicit_h;
  int implicit_h = 0;
  bool in_ring = false;

  std::string_view symbol() const;
  bool bracket() const noexcept { return explicit_h.has_value(); }
  int total_h() const noexcept { return explicit_h.value_or(0) + implicit_h; }
};

struct Bond {
  int a = 0;
  int b = 0;
  BondOrder order = BondOrder::kSingle;
  bool in_ring = false;

  int other(int atom) const noexcept { return atom == a ? b : a; }
};

/// Half-open byte range [begin, end).
struct Span {
  std::size_t begin = 0;
  std::size_t end = 0;

  std::size_t size() const noexcept { return end - begin; }
  bool operator==(const Span &) const = default;
};

struct Neighbor {
  int atom;
  int bond;
};

/// Attributed molecular graph. Values are immutable once built; the free
/// functions below return modified copies.
class Molecule {
public:
  Molecule() = default;

  std::span<const Atom> atoms() const noexcept { return atoms_; }
  std::span<const Bond> bonds() const noexcept { return bonds_; }
  const Atom &atom(int i) const { return atoms_[static_cast<std::size_t>(i)]; }
  const Bond &bond(int i) const { return bonds_[static_cast<std::size_t>(i)]; }
  int num_atoms() const noexcept { return static_cast<int>(atoms_.size()); }
  int num_bonds() const noexcept { return static_cast<int>(bonds_.size()); }

  std::span<const Neighbor> neighbors(int i) const {
    return adjacency_[static_cast<std::size_t>(i)];
  }

  // Empty for molecules built programmatically.
  const std::string &source() const noexcept { return source_; }
  std::span<const Span> token_spans() const noexcept { return spans_; }

  /// Index of the bond between atoms a and b, or -1.
  int find_bond(int a, int b) const;

  /// Sum of bond valence contributions at atom i.
  int bond_order_sum(int i) const;

private:
  friend class MoleculeBuilder;
  friend Molecule compute_implicit_hydrogens(Molecule m, bool strict);
  friend Molecule perceive_rings(Molecule m);
  friend struct SmilesParser;

  void add_bond_internal(int a, int b, BondOrder order);

  std::vector<Atom> atoms_;
  std::vector<Bond> bonds_;
  std::vector<std::vector<Neighbor>> adjacency_;
  std::string source_;
  std::vector<Span> spans_;
};

struct ParseOptions {
  // When false, organic-subset atoms whose bond sum exceeds every allowed
  // valence get zero implicit hydrogens instead of raising ValenceError.
  bool strict_valence = true;
};

/// Parses an OpenSMILES string. Throws SyntaxError, RingClosureError or
/// ValenceError on invalid input; never anything else for arbitrary bytes.
Molecule parse_smiles(std::string_view smiles, const ParseOptions &opts = {});

/// Fills implicit_h of organic-subset atoms from the default-valence table.
/// Aromatic atoms lose one available hydrogen to the aromatic system.
Molecule compute_implicit_hydrogens(Molecule m, bool strict = true);

/// Marks every non-bridge bond, and every atom touching one, as in_ring.
Molecule perceive_rings(Molecule m);

/// Returns the source string for parsed molecules; otherwise emits a SMILES
/// by depth-first traversal that re-parses to an isomorphic graph.
std::string write_smiles(const Molecule &m);

struct AtomSpec {
  int atomic_number = 6;
  bool aromatic = false;
  int formal_charge = 0;
  std::optional<int> isotope;
  Chirality chirality = Chirality::kNone;
  std::optional<int> explicit_h;
};

class MoleculeBuilder {
public:
  int add_atom(const AtomSpec &spec);
  int add_atom(std::string_view symbol);
  void add_bond(int a, int b, BondOrder order = BondOrder::kSingle);

  /// Validates the graph and resolves hydrogens and ring flags.
  Molecule build() &&;

private:
  Molecule mol_;
};

}  // namespace aisens::chem

#endif  // AISENS_CHEM_MOLECULE_HPP_
