//
// Project aisens - Copyright 2026 The aisens Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <array>
#include <cctype>
#include <string>
#include <vector>

#include "aisens/chem/molecule.hpp"

namespace aisens::chem {
namespace {

std::string atom_text(const Atom &a) {
  std::string sym(a.symbol());
  if (a.aromatic)
    sym[0] = static_cast<char>(std::tolower(static_cast<unsigned char>(sym[0])));
  if (!a.bracket())
    return sym;

  std::string out = "[";
  if (a.isotope)
    out += std::to_string(*a.isotope);
  out += sym;
  if (a.chirality == Chirality::kAntiClockwise)
    out += "@";
  else if (a.chirality == Chirality::kClockwise)
    out += "@@";
  const int h = *a.explicit_h;
  if (h > 0) {
    out += "H";
    if (h > 1)
      out += std::to_string(h);
  }
  if (a.formal_charge != 0) {
    out += a.formal_charge > 0 ? "+" : "-";
    const int mag = a.formal_charge > 0 ? a.formal_charge : -a.formal_charge;
    if (mag > 1)
      out += std::to_string(mag);
  }
  out += "]";
  return out;
}

std::string bond_text(const Molecule &m, const Bond &b) {
  const bool both_aromatic = m.atom(b.a).aromatic && m.atom(b.b).aromatic;
  switch (b.order) {
  case BondOrder::kSingle:
    return both_aromatic ? "-" : "";
  case BondOrder::kDouble:
    return "=";
  case BondOrder::kTriple:
    return "#";
  case BondOrder::kAromatic:
  default:
    return both_aromatic ? "" : ":";
  }
}

std::string ring_label(int digit) {
  if (digit < 10)
    return std::to_string(digit);
  return "%" + std::to_string(digit);
}

class Writer {
public:
  explicit Writer(const Molecule &m)
      : m_(m), visited_(static_cast<std::size_t>(m.num_atoms()), 0),
        tree_(static_cast<std::size_t>(m.num_bonds()), 0),
        ring_digit_(static_cast<std::size_t>(m.num_bonds()), -1),
        order_(static_cast<std::size_t>(m.num_atoms()), -1) { }

  std::string run() {
    std::string out;
    for (int root = 0; root < m_.num_atoms(); ++root) {
      if (visited_[static_cast<std::size_t>(root)])
        continue;
      classify(root);
      if (!out.empty())
        out += ".";
      emit(root, -1, out);
    }
    return out;
  }

private:
  // First pass: DFS spanning tree; everything else becomes a ring closure.
  void classify(int root) {
    std::vector<int> stack { root };
    std::vector<std::size_t> next { 0 };
    visited_[static_cast<std::size_t>(root)] = 1;
    order_[static_cast<std::size_t>(root)] = counter_++;
    while (!stack.empty()) {
      const int u = stack.back();
      const auto nbrs = m_.neighbors(u);
      if (next.back() < nbrs.size()) {
        const Neighbor nb = nbrs[next.back()++];
        if (!visited_[static_cast<std::size_t>(nb.atom)]) {
          visited_[static_cast<std::size_t>(nb.atom)] = 1;
          order_[static_cast<std::size_t>(nb.atom)] = counter_++;
          tree_[static_cast<std::size_t>(nb.bond)] = 1;
          stack.push_back(nb.atom);
          next.push_back(0);
        }
        continue;
      }
      stack.pop_back();
      next.pop_back();
    }
  }

  void emit(int u, int parent_bond, std::string &out) {
    out += atom_text(m_.atom(u));

    std::vector<Neighbor> children;
    for (const Neighbor &nb: m_.neighbors(u)) {
      if (nb.bond == parent_bond)
        continue;
      const auto bi = static_cast<std::size_t>(nb.bond);
      if (tree_[bi]) {
        if (order_[static_cast<std::size_t>(nb.atom)]
            > order_[static_cast<std::size_t>(u)])
          children.push_back(nb);
        continue;
      }
      // Ring closure: opened by whichever end is written first.
      if (ring_digit_[bi] < 0) {
        const int digit = take_digit();
        ring_digit_[bi] = digit;
        out += bond_text(m_, m_.bond(nb.bond));
        out += ring_label(digit);
      } else {
        out += ring_label(ring_digit_[bi]);
        free_digit(ring_digit_[bi]);
        ring_digit_[bi] = 100;  // closed
      }
    }

    for (std::size_t k = 0; k < children.size(); ++k) {
      const bool last = k + 1 == children.size();
      if (!last)
        out += "(";
      out += bond_text(m_, m_.bond(children[k].bond));
      emit(children[k].atom, children[k].bond, out);
      if (!last)
        out += ")";
    }
  }

  int take_digit() {
    for (int d = 1; d < 100; ++d) {
      if (!in_use_[static_cast<std::size_t>(d)]) {
        in_use_[static_cast<std::size_t>(d)] = true;
        return d;
      }
    }
    return 99;
  }

  void free_digit(int d) { in_use_[static_cast<std::size_t>(d)] = false; }

  const Molecule &m_;
  std::vector<char> visited_;
  std::vector<char> tree_;
  std::vector<int> ring_digit_;
  std::vector<int> order_;
  std::array<bool, 100> in_use_ {};
  int counter_ = 0;
};

}  // namespace

std::string write_smiles(const Molecule &m) {
  if (!m.source().empty())
    return m.source();
  return Writer(m).run();
}

}  // namespace aisens::chem
