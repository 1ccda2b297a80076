//
// Project aisens - Copyright 2026 The aisens Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <algorithm>
#include <array>
#include <cctype>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "aisens/chem/element.hpp"
#include "aisens/chem/molecule.hpp"
#include "aisens/chem/smiles_lexer.hpp"
#include "aisens/error.hpp"

namespace aisens::chem {
namespace {

bool is_digit(char c) {
  return c >= '0' && c <= '9';
}

bool is_upper(char c) {
  return c >= 'A' && c <= 'Z';
}

bool is_lower(char c) {
  return c >= 'a' && c <= 'z';
}

std::string describe(char c) {
  auto u = static_cast<unsigned char>(c);
  if (u >= 0x20 && u < 0x7f)
    return std::string("'") + c + "'";
  static constexpr char kHex[] = "0123456789abcdef";
  return std::string("byte 0x") + kHex[u >> 4] + kHex[u & 0xf];
}

BondOrder bond_order_of(char c) {
  switch (c) {
  case '=':
    return BondOrder::kDouble;
  case '#':
    return BondOrder::kTriple;
  case ':':
    return BondOrder::kAromatic;
  default:
    return BondOrder::kSingle;
  }
}

struct BracketAtom {
  AtomSpec spec;
};

// Parses the text between '[' and ']'.
BracketAtom parse_bracket(std::string_view body, std::size_t offset) {
  BracketAtom out;
  AtomSpec &spec = out.spec;
  std::size_t i = 0;
  auto fail = [&](const std::string &what) -> SyntaxError {
    return SyntaxError(what, offset + i);
  };

  if (i < body.size() && is_digit(body[i])) {
    int iso = 0;
    while (i < body.size() && is_digit(body[i])) {
      if (iso > 9999)
        throw fail("isotope out of range");
      iso = iso * 10 + (body[i] - '0');
      ++i;
    }
    if (iso == 0)
      throw fail("isotope must be positive");
    spec.isotope = iso;
  }

  if (i >= body.size())
    throw fail("missing element symbol in bracket atom");

  if (body[i] == '*')
    throw fail("wildcard atom '*' is not supported");

  const Element *elem = nullptr;
  if (is_lower(body[i])) {
    // Two-letter aromatic symbols first.
    if (body.substr(i, 2) == "se") {
      elem = find_element("Se");
      i += 2;
    } else if (body.substr(i, 2) == "as") {
      elem = find_element("As");
      i += 2;
    } else {
      switch (body[i]) {
      case 'b':
        elem = find_element("B");
        break;
      case 'c':
        elem = find_element("C");
        break;
      case 'n':
        elem = find_element("N");
        break;
      case 'o':
        elem = find_element("O");
        break;
      case 'p':
        elem = find_element("P");
        break;
      case 's':
        elem = find_element("S");
        break;
      default:
        throw fail("unknown aromatic symbol " + describe(body[i]));
      }
      ++i;
    }
    spec.aromatic = true;
  } else if (is_upper(body[i])) {
    if (i + 1 < body.size() && is_lower(body[i + 1]))
      elem = find_element(body.substr(i, 2));
    if (elem != nullptr) {
      i += 2;
    } else {
      elem = find_element(body.substr(i, 1));
      if (elem == nullptr)
        throw fail("unknown element symbol");
      ++i;
    }
  } else {
    throw fail("expected element symbol, got " + describe(body[i]));
  }
  spec.atomic_number = elem->atomic_number;

  if (i < body.size() && body[i] == '@') {
    ++i;
    if (i < body.size() && body[i] == '@') {
      ++i;
      spec.chirality = Chirality::kClockwise;
    } else {
      spec.chirality = Chirality::kAntiClockwise;
    }
    if (i < body.size() && is_upper(body[i]) && body[i] != 'H')
      throw fail("extended chirality classes are not supported");
  }

  int hcount = 0;
  if (i < body.size() && body[i] == 'H') {
    ++i;
    hcount = 1;
    if (i < body.size() && is_digit(body[i])) {
      hcount = body[i] - '0';
      ++i;
    }
  }
  spec.explicit_h = hcount;

  if (i < body.size() && (body[i] == '+' || body[i] == '-')) {
    const char sign = body[i];
    const int unit = sign == '+' ? 1 : -1;
    ++i;
    int magnitude = 1;
    if (i < body.size() && is_digit(body[i])) {
      magnitude = body[i] - '0';
      ++i;
      if (i < body.size() && is_digit(body[i])) {
        magnitude = magnitude * 10 + (body[i] - '0');
        ++i;
      }
    } else {
      while (i < body.size() && body[i] == sign) {
        ++magnitude;
        ++i;
      }
    }
    if (magnitude > 15)
      throw fail("charge out of range");
    spec.formal_charge = unit * magnitude;
  }

  if (i < body.size() && body[i] == ':') {
    ++i;
    if (i >= body.size() || !is_digit(body[i]))
      throw fail("atom class requires digits");
    while (i < body.size() && is_digit(body[i]))
      ++i;
  }

  if (i != body.size())
    throw fail("unexpected " + describe(body[i]) + " in bracket atom");

  if (spec.aromatic && !can_be_aromatic(spec.atomic_number))
    throw fail("element cannot be aromatic");

  return out;
}

AtomSpec parse_organic(std::string_view text) {
  AtomSpec spec;
  if (is_lower(text[0])) {
    spec.aromatic = true;
    const char up = static_cast<char>(text[0] - 'a' + 'A');
    spec.atomic_number = find_element(std::string_view(&up, 1))->atomic_number;
  } else {
    spec.atomic_number = find_element(text)->atomic_number;
  }
  return spec;
}

}  // namespace

int valence_contribution(BondOrder order) noexcept {
  switch (order) {
  case BondOrder::kDouble:
    return 2;
  case BondOrder::kTriple:
    return 3;
  case BondOrder::kSingle:
  case BondOrder::kAromatic:
  default:
    return 1;
  }
}

std::string_view Atom::symbol() const {
  return element_by_number(atomic_number).symbol;
}

int Molecule::find_bond(int a, int b) const {
  for (const Neighbor &n: neighbors(a)) {
    if (n.atom == b)
      return n.bond;
  }
  return -1;
}

int Molecule::bond_order_sum(int i) const {
  int sum = 0;
  for (const Neighbor &n: neighbors(i))
    sum += valence_contribution(bond(n.bond).order);
  return sum;
}

void Molecule::add_bond_internal(int a, int b, BondOrder order) {
  const int id = static_cast<int>(bonds_.size());
  bonds_.push_back({ a, b, order, false });
  adjacency_[static_cast<std::size_t>(a)].push_back({ b, id });
  adjacency_[static_cast<std::size_t>(b)].push_back({ a, id });
}

std::vector<LexToken> lex_smiles(std::string_view s) {
  std::vector<LexToken> out;
  std::size_t i = 0;
  while (i < s.size()) {
    const char c = s[i];
    const std::size_t start = i;
    switch (c) {
    case '[': {
      const std::size_t close = s.find_first_of("[]", i + 1);
      if (close == std::string_view::npos || s[close] == '[')
        throw SyntaxError("unterminated bracket atom", start);
      out.push_back({ LexKind::kAtom, { start, close + 1 } });
      i = close + 1;
      continue;
    }
    case ']':
      throw SyntaxError("unbalanced ']'", start);
    case 'B':
    case 'C': {
      const char second = c == 'B' ? 'r' : 'l';
      i += (i + 1 < s.size() && s[i + 1] == second) ? 2 : 1;
      out.push_back({ LexKind::kAtom, { start, i } });
      continue;
    }
    case 'N':
    case 'O':
    case 'P':
    case 'S':
    case 'F':
    case 'I':
    case 'b':
    case 'c':
    case 'n':
    case 'o':
    case 'p':
    case 's':
      out.push_back({ LexKind::kAtom, { start, ++i } });
      continue;
    case '-':
    case '=':
    case '#':
    case ':':
    case '/':
    case '\\':
      out.push_back({ LexKind::kBond, { start, ++i } });
      continue;
    case '$':
      throw SyntaxError("quadruple bonds are not supported", start);
    case '(':
      out.push_back({ LexKind::kBranchOpen, { start, ++i } });
      continue;
    case ')':
      out.push_back({ LexKind::kBranchClose, { start, ++i } });
      continue;
    case '.':
      out.push_back({ LexKind::kDot, { start, ++i } });
      continue;
    case '%':
      if (i + 2 < s.size() && is_digit(s[i + 1]) && is_digit(s[i + 2])) {
        i += 3;
        out.push_back({ LexKind::kRingBond, { start, i } });
        continue;
      }
      throw SyntaxError("'%' must be followed by two digits", start);
    case '*':
      throw SyntaxError("wildcard atom '*' is not supported", start);
    case '>':
      throw SyntaxError("reaction SMILES are not supported", start);
    default:
      if (is_digit(c)) {
        out.push_back({ LexKind::kRingBond, { start, ++i } });
        continue;
      }
      throw SyntaxError("unexpected " + describe(c), start);
    }
  }
  return out;
}

struct SmilesParser {
  struct OpenRing {
    int atom = -1;
    std::optional<char> bond;
    std::size_t pos = 0;
  };

  std::string_view src;
  Molecule mol;
  std::array<OpenRing, 100> rings {};
  int open_rings = 0;

  explicit SmilesParser(std::string_view s): src(s) { }

  int add_atom(const AtomSpec &spec, Span span) {
    Atom a;
    a.index = mol.num_atoms();
    a.atomic_number = spec.atomic_number;
    a.aromatic = spec.aromatic;
    a.formal_charge = spec.formal_charge;
    a.isotope = spec.isotope;
    a.chirality = spec.chirality;
    a.explicit_h = spec.explicit_h;
    mol.atoms_.push_back(a);
    mol.adjacency_.emplace_back();
    mol.spans_.push_back(span);
    return a.index;
  }

  BondOrder default_order(int a, int b) const {
    return mol.atom(a).aromatic && mol.atom(b).aromatic ? BondOrder::kAromatic
                                                        : BondOrder::kSingle;
  }

  void close_ring(int digit, int atom, std::optional<char> bond,
                  std::size_t pos) {
    OpenRing &open = rings[static_cast<std::size_t>(digit)];
    if (open.atom == atom)
      throw RingClosureError("ring closure to the same atom", pos);
    if (mol.find_bond(open.atom, atom) >= 0)
      throw RingClosureError("ring closure duplicates an existing bond", pos);
    std::optional<char> sym = open.bond ? open.bond : bond;
    if (open.bond && bond
        && bond_order_of(*open.bond) != bond_order_of(*bond))
      throw RingClosureError("conflicting ring-closure bond symbols", pos);
    const BondOrder order = sym ? bond_order_of(*sym)
                                : default_order(open.atom, atom);
    mol.add_bond_internal(open.atom, atom, order);
    open.atom = -1;
    --open_rings;
  }

  Molecule run() {
    if (src.empty())
      throw SyntaxError("empty SMILES", 0);

    const std::vector<LexToken> tokens = lex_smiles(src);
    mol.source_ = std::string(src);

    int prev = -1;
    std::optional<char> pending;
    std::size_t pending_pos = 0;
    // (atom before the branch, whether the branch has an atom yet)
    std::vector<std::pair<int, bool>> branches;

    for (const LexToken &tok: tokens) {
      const std::size_t pos = tok.span.begin;
      const std::string_view text = src.substr(tok.span.begin,
                                               tok.span.size());
      switch (tok.kind) {
      case LexKind::kAtom: {
        const AtomSpec spec =
            text[0] == '['
                ? parse_bracket(text.substr(1, text.size() - 2), pos + 1).spec
                : parse_organic(text);
        const int idx = add_atom(spec, tok.span);
        if (prev >= 0) {
          mol.add_bond_internal(prev, idx,
                                pending ? bond_order_of(*pending)
                                        : default_order(prev, idx));
        } else if (pending) {
          throw SyntaxError("bond symbol without a preceding atom",
                            pending_pos);
        }
        pending.reset();
        prev = idx;
        if (!branches.empty())
          branches.back().second = true;
        break;
      }
      case LexKind::kBond:
        if (prev < 0)
          throw SyntaxError("bond symbol without a preceding atom", pos);
        if (pending)
          throw SyntaxError("consecutive bond symbols", pos);
        pending = text[0];
        pending_pos = pos;
        break;
      case LexKind::kRingBond: {
        if (prev < 0)
          throw SyntaxError("ring-closure digit without a preceding atom",
                            pos);
        const int digit = text[0] == '%' ? (text[1] - '0') * 10
                                               + (text[2] - '0')
                                         : text[0] - '0';
        if (rings[static_cast<std::size_t>(digit)].atom >= 0) {
          close_ring(digit, prev, pending, pos);
        } else {
          rings[static_cast<std::size_t>(digit)] = { prev, pending, pos };
          ++open_rings;
        }
        pending.reset();
        break;
      }
      case LexKind::kBranchOpen:
        if (prev < 0)
          throw SyntaxError("branch without a preceding atom", pos);
        if (pending)
          throw SyntaxError("bond symbol before '('", pending_pos);
        if (!branches.empty() && !branches.back().second)
          throw SyntaxError("branch cannot start with '('", pos);
        branches.emplace_back(prev, false);
        break;
      case LexKind::kBranchClose:
        if (branches.empty())
          throw SyntaxError("unbalanced ')'", pos);
        if (pending)
          throw SyntaxError("dangling bond symbol", pending_pos);
        if (!branches.back().second)
          throw SyntaxError("empty branch", pos);
        prev = branches.back().first;
        branches.pop_back();
        break;
      case LexKind::kDot:
        if (prev < 0)
          throw SyntaxError("'.' without a preceding atom", pos);
        if (pending)
          throw SyntaxError("dangling bond symbol", pending_pos);
        if (!branches.empty())
          throw SyntaxError("'.' inside a branch is not supported", pos);
        prev = -1;
        break;
      }
    }

    if (pending)
      throw SyntaxError("dangling bond symbol", pending_pos);
    if (!branches.empty())
      throw SyntaxError("unbalanced '('", src.size());
    if (prev < 0)
      throw SyntaxError("SMILES ends without an atom", src.size());
    if (open_rings != 0) {
      for (const OpenRing &r: rings) {
        if (r.atom >= 0)
          throw RingClosureError("unclosed ring bond", r.pos);
      }
    }
    return std::move(mol);
  }
};

Molecule compute_implicit_hydrogens(Molecule m, bool strict) {
  for (Atom &a: m.atoms_) {
    if (a.bracket()) {
      a.implicit_h = 0;
      continue;
    }
    const std::span<const int> valences = default_valences(a.atomic_number);
    const int sum = m.bond_order_sum(a.index);
    const int max_valence = valences.back();
    if (sum > max_valence) {
      if (strict) {
        const Span span = a.index < static_cast<int>(m.spans_.size())
                              ? m.spans_[static_cast<std::size_t>(a.index)]
                              : Span {};
        throw ValenceError("bond order sum " + std::to_string(sum)
                               + " exceeds the maximum valence of "
                               + std::string(a.symbol()),
                           span.begin);
      }
      a.implicit_h = 0;
      continue;
    }
    if (a.aromatic) {
      a.implicit_h = std::max(0, valences.front() - sum - 1);
      continue;
    }
    for (int v: valences) {
      if (v >= sum) {
        a.implicit_h = v - sum;
        break;
      }
    }
  }
  return m;
}

Molecule perceive_rings(Molecule m) {
  const int n = m.num_atoms();
  std::vector<int> disc(static_cast<std::size_t>(n), -1);
  std::vector<int> low(static_cast<std::size_t>(n), 0);
  std::vector<char> bridge(m.bonds_.size(), 0);

  struct Frame {
    int atom;
    int via_bond;
    std::size_t next;
  };
  std::vector<Frame> stack;
  int timer = 0;

  for (int root = 0; root < n; ++root) {
    if (disc[static_cast<std::size_t>(root)] >= 0)
      continue;
    disc[static_cast<std::size_t>(root)] = low[static_cast<std::size_t>(root)]
        = timer++;
    stack.push_back({ root, -1, 0 });
    while (!stack.empty()) {
      Frame &f = stack.back();
      const auto nbrs = m.neighbors(f.atom);
      if (f.next < nbrs.size()) {
        const Neighbor nb = nbrs[f.next++];
        if (nb.bond == f.via_bond)
          continue;
        auto &dn = disc[static_cast<std::size_t>(nb.atom)];
        if (dn < 0) {
          dn = low[static_cast<std::size_t>(nb.atom)] = timer++;
          stack.push_back({ nb.atom, nb.bond, 0 });
        } else {
          auto &lf = low[static_cast<std::size_t>(f.atom)];
          lf = std::min(lf, dn);
        }
        continue;
      }
      const Frame done = f;
      stack.pop_back();
      if (!stack.empty()) {
        const int parent = stack.back().atom;
        auto &lp = low[static_cast<std::size_t>(parent)];
        const int ld = low[static_cast<std::size_t>(done.atom)];
        lp = std::min(lp, ld);
        if (ld > disc[static_cast<std::size_t>(parent)])
          bridge[static_cast<std::size_t>(done.via_bond)] = 1;
      }
    }
  }

  for (Atom &a: m.atoms_)
    a.in_ring = false;
  for (std::size_t i = 0; i < m.bonds_.size(); ++i) {
    Bond &b = m.bonds_[i];
    b.in_ring = bridge[i] == 0;
    if (b.in_ring) {
      m.atoms_[static_cast<std::size_t>(b.a)].in_ring = true;
      m.atoms_[static_cast<std::size_t>(b.b)].in_ring = true;
    }
  }
  return m;
}

Molecule parse_smiles(std::string_view smiles, const ParseOptions &opts) {
  SmilesParser parser(smiles);
  Molecule m = parser.run();
  m = compute_implicit_hydrogens(std::move(m), opts.strict_valence);
  return perceive_rings(std::move(m));
}

int MoleculeBuilder::add_atom(const AtomSpec &spec) {
  if (spec.aromatic && !can_be_aromatic(spec.atomic_number))
    throw SyntaxError("element cannot be aromatic", 0);
  element_by_number(spec.atomic_number);
  if (!spec.explicit_h && !is_organic_subset(spec.atomic_number))
    throw SyntaxError("element outside the organic subset needs explicit H",
                      0);
  Atom a;
  a.index = mol_.num_atoms();
  a.atomic_number = spec.atomic_number;
  a.aromatic = spec.aromatic;
  a.formal_charge = spec.formal_charge;
  a.isotope = spec.isotope;
  a.chirality = spec.chirality;
  a.explicit_h = spec.explicit_h;
  if (!a.explicit_h
      && (a.formal_charge != 0 || a.isotope || a.chirality != Chirality::kNone))
    a.explicit_h = 0;
  mol_.atoms_.push_back(a);
  mol_.adjacency_.emplace_back();
  return a.index;
}

int MoleculeBuilder::add_atom(std::string_view symbol) {
  AtomSpec spec;
  if (!symbol.empty() && is_lower(symbol[0])) {
    std::string up(symbol);
    up[0] = static_cast<char>(up[0] - 'a' + 'A');
    const Element *e = find_element(up);
    if (e == nullptr)
      throw UnknownElement("unknown element '" + std::string(symbol) + "'");
    spec.atomic_number = e->atomic_number;
    spec.aromatic = true;
  } else {
    const Element *e = find_element(symbol);
    if (e == nullptr)
      throw UnknownElement("unknown element '" + std::string(symbol) + "'");
    spec.atomic_number = e->atomic_number;
  }
  return add_atom(spec);
}

void MoleculeBuilder::add_bond(int a, int b, BondOrder order) {
  const int n = mol_.num_atoms();
  if (a < 0 || b < 0 || a >= n || b >= n)
    throw SyntaxError("bond references a missing atom", 0);
  if (a == b)
    throw SyntaxError("self bond", 0);
  if (mol_.find_bond(a, b) >= 0)
    throw SyntaxError("duplicate bond", 0);
  mol_.add_bond_internal(a, b, order);
}

Molecule MoleculeBuilder::build() && {
  Molecule m = compute_implicit_hydrogens(std::move(mol_));
  return perceive_rings(std::move(m));
}

}  // namespace aisens::chem
