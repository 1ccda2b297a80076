//
// Project aisens - Copyright 2026 The aisens Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "aisens/ais/tokenizer.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <string>
#include <vector>

#include "aisens/chem/element.hpp"
#include "aisens/chem/smiles_lexer.hpp"
#include "aisens/error.hpp"

namespace aisens::ais {
namespace {

constexpr std::array<std::string_view, 8> kAromaticSymbols = {
  "b", "c", "n", "o", "p", "s", "se", "as",
};

bool is_lower(char c) {
  return c >= 'a' && c <= 'z';
}

bool is_upper(char c) {
  return c >= 'A' && c <= 'Z';
}

bool is_digit(char c) {
  return c >= '0' && c <= '9';
}

std::string aromatic_case(std::string_view symbol, bool aromatic) {
  std::string s(symbol);
  if (aromatic)
    s[0] = static_cast<char>(std::tolower(static_cast<unsigned char>(s[0])));
  return s;
}

// Resolves a case-encoded symbol to (atomic number, aromatic); 0 if invalid.
std::pair<int, bool> resolve_symbol(std::string_view sym) {
  if (sym.empty())
    return { 0, false };
  if (is_lower(sym[0])) {
    if (std::find(kAromaticSymbols.begin(), kAromaticSymbols.end(), sym)
        == kAromaticSymbols.end())
      return { 0, false };
    std::string up(sym);
    up[0] = static_cast<char>(up[0] - 'a' + 'A');
    return { chem::find_element(up)->atomic_number, true };
  }
  const chem::Element *e = chem::find_element(sym);
  return { e != nullptr ? e->atomic_number : 0, false };
}

// Reads one case-encoded element symbol starting at i.
std::string_view read_symbol(std::string_view s, std::size_t &i,
                             bool require_known_pair) {
  const std::size_t start = i;
  if (i >= s.size())
    return { };
  if (is_lower(s[i])) {
    if (s.substr(i, 2) == "se" || s.substr(i, 2) == "as") {
      i += 2;
      return s.substr(start, 2);
    }
    ++i;
    return s.substr(start, 1);
  }
  if (is_upper(s[i])) {
    if (i + 1 < s.size() && is_lower(s[i + 1])
        && (chem::find_element(s.substr(i, 2)) != nullptr
            || !require_known_pair)) {
      i += 2;
      return s.substr(start, 2);
    }
    ++i;
    return s.substr(start, 1);
  }
  return { };
}

[[noreturn]] void malformed(std::string_view text, const std::string &why) {
  throw MalformedToken("malformed AIS token '" + std::string(text)
                       + "': " + why);
}

int read_int(std::string_view s, std::size_t &i) {
  int v = 0;
  int digits = 0;
  while (i < s.size() && is_digit(s[i]) && digits < 6) {
    v = v * 10 + (s[i] - '0');
    ++i;
    ++digits;
  }
  return v;
}

AtomToken parse_atom_token(std::string_view text) {
  const std::string_view body = text.substr(1, text.size() - 2);
  const std::size_t s1 = body.find(';');
  const std::size_t s2 = s1 == std::string_view::npos
                             ? std::string_view::npos
                             : body.find(';', s1 + 1);
  if (s2 == std::string_view::npos
      || body.find(';', s2 + 1) != std::string_view::npos)
    malformed(text, "expected three ';'-separated fields");

  const std::string_view central = body.substr(0, s1);
  const std::string_view ring = body.substr(s1 + 1, s2 - s1 - 1);
  const std::string_view nbrs = body.substr(s2 + 1);

  AtomToken t;
  std::size_t i = 0;
  if (i < central.size() && is_digit(central[i])) {
    const int iso = read_int(central, i);
    if (iso <= 0)
      malformed(text, "isotope must be positive");
    t.isotope = iso;
  }
  const std::string_view elem = read_symbol(central, i, true);
  if (elem.empty())
    malformed(text, "missing element symbol");
  if (resolve_symbol(elem).first == 0)
    malformed(text, "unknown element '" + std::string(elem) + "'");
  t.element = std::string(elem);

  if (i < central.size() && central[i] == 'H') {
    ++i;
    t.h_count = 1;
    if (i < central.size() && is_digit(central[i]))
      t.h_count = read_int(central, i);
    if (t.h_count < 2 && central[i - 1] != 'H')
      malformed(text, "explicit hydrogen count below 2");
  }
  if (i < central.size() && (central[i] == '+' || central[i] == '-')) {
    const int sign = central[i] == '+' ? 1 : -1;
    ++i;
    int mag = 1;
    if (i < central.size() && is_digit(central[i])) {
      mag = read_int(central, i);
      if (mag < 2)
        malformed(text, "charge magnitude below 2 written with digits");
    }
    t.charge = sign * mag;
  }
  if (i < central.size() && central[i] == '@') {
    ++i;
    t.chirality = chem::Chirality::kAntiClockwise;
    if (i < central.size() && central[i] == '@') {
      ++i;
      t.chirality = chem::Chirality::kClockwise;
    }
  }
  if (i != central.size())
    malformed(text, "unexpected trailing characters in central atom");

  if (ring == "R")
    t.in_ring = true;
  else if (ring == "!R")
    t.in_ring = false;
  else
    malformed(text, "ring field must be R or !R");

  std::size_t j = 0;
  bool seen_aliphatic = false;
  while (j < nbrs.size()) {
    const std::string_view sym = read_symbol(nbrs, j, true);
    if (sym.empty())
      malformed(text, "bad neighbor list");
    if (resolve_symbol(sym).first == 0)
      malformed(text, "unknown neighbor '" + std::string(sym) + "'");
    const bool aromatic = is_lower(sym[0]);
    if (aromatic && seen_aliphatic)
      malformed(text, "neighbor list is not in canonical order");
    seen_aliphatic = seen_aliphatic || !aromatic;
    t.neighbors.emplace_back(sym);
  }
  std::vector<std::string> sorted = t.neighbors;
  canonicalize_neighbors(sorted);
  if (sorted != t.neighbors)
    malformed(text, "neighbor list is not in canonical order");
  return t;
}

bool bare_allowed(const AtomToken &t) {
  if (t.isotope || t.charge != 0 || t.chirality != chem::Chirality::kNone)
    return false;
  const auto [z, aromatic] = resolve_symbol(t.element);
  if (!chem::is_organic_subset(z))
    return false;
  // Organic-subset aromatic atoms are b c n o p s only.
  return !aromatic || t.element.size() == 1;
}

std::string bracket_text(const AtomToken &t) {
  std::string out = "[";
  if (t.isotope)
    out += std::to_string(*t.isotope);
  out += t.element;
  if (t.chirality == chem::Chirality::kAntiClockwise)
    out += "@";
  else if (t.chirality == chem::Chirality::kClockwise)
    out += "@@";
  if (t.h_count > 0) {
    out += "H";
    if (t.h_count > 1)
      out += std::to_string(t.h_count);
  }
  if (t.charge != 0) {
    out += t.charge > 0 ? "+" : "-";
    const int mag = t.charge > 0 ? t.charge : -t.charge;
    if (mag > 1)
      out += std::to_string(mag);
  }
  out += "]";
  return out;
}

}  // namespace

void canonicalize_neighbors(std::vector<std::string> &symbols) {
  std::sort(symbols.begin(), symbols.end(),
            [](const std::string &a, const std::string &b) {
              const bool la = is_lower(a[0]);
              const bool lb = is_lower(b[0]);
              if (la != lb)
                return la;
              return a < b;
            });
}

std::string render_central(const AtomToken &t) {
  std::string out;
  if (t.isotope)
    out += std::to_string(*t.isotope);
  out += t.element;
  if (t.h_count > 0) {
    out += "H";
    if (t.h_count > 1)
      out += std::to_string(t.h_count);
  }
  if (t.charge != 0) {
    out += t.charge > 0 ? "+" : "-";
    const int mag = t.charge > 0 ? t.charge : -t.charge;
    if (mag > 1)
      out += std::to_string(mag);
  }
  if (t.chirality == chem::Chirality::kAntiClockwise)
    out += "@";
  else if (t.chirality == chem::Chirality::kClockwise)
    out += "@@";
  return out;
}

std::string render(const AtomToken &t) {
  std::string out = "[" + render_central(t) + ";";
  out += t.in_ring ? "R" : "!R";
  out += ";";
  for (const auto &n: t.neighbors)
    out += n;
  out += "]";
  return out;
}

std::string render(const AisToken &t) {
  if (const auto *a = std::get_if<AtomToken>(&t))
    return render(*a);
  return std::get<StructuralToken>(t).symbol;
}

bool is_structural_symbol(std::string_view s) noexcept {
  if (s.size() == 1) {
    switch (s[0]) {
    case '(':
    case ')':
    case '=':
    case '#':
    case '-':
    case ':':
    case '/':
    case '\\':
    case '.':
      return true;
    default:
      return is_digit(s[0]);
    }
  }
  return s.size() == 3 && s[0] == '%' && is_digit(s[1]) && is_digit(s[2]);
}

AisToken parse_token(std::string_view text) {
  if (is_structural_symbol(text))
    return StructuralToken { std::string(text) };
  if (text.size() >= 2 && text.front() == '[' && text.back() == ']')
    return parse_atom_token(text);
  malformed(text, "neither an atom token nor a structural symbol");
}

std::size_t AisSequence::atom_count() const noexcept {
  return static_cast<std::size_t>(
      std::count_if(tokens.begin(), tokens.end(), [](const AisToken &t) {
        return std::holds_alternative<AtomToken>(t);
      }));
}

std::vector<std::string> AisSequence::rendered() const {
  std::vector<std::string> out;
  out.reserve(tokens.size());
  for (const auto &t: tokens)
    out.push_back(render(t));
  return out;
}

std::string AisSequence::to_line() const {
  std::string out;
  for (const auto &t: tokens) {
    if (!out.empty())
      out += ' ';
    out += render(t);
  }
  return out;
}

AisSequence AisSequence::from_line(std::string_view line) {
  AisSequence seq;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && line[i] == ' ')
      ++i;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ')
      ++i;
    if (i > start)
      seq.tokens.push_back(parse_token(line.substr(start, i - start)));
  }
  return seq;
}

AisSequence molecule_to_ais(const chem::Molecule &mol) {
  AisSequence seq;
  seq.source_smiles = mol.source();
  const std::vector<chem::LexToken> lexed = chem::lex_smiles(mol.source());
  seq.tokens.reserve(lexed.size());
  int atom_index = 0;
  for (const chem::LexToken &lt: lexed) {
    if (lt.kind != chem::LexKind::kAtom) {
      seq.tokens.push_back(StructuralToken {
          mol.source().substr(lt.span.begin, lt.span.size()) });
      continue;
    }
    const chem::Atom &a = mol.atom(atom_index++);
    AtomToken t;
    t.isotope = a.isotope;
    t.element = aromatic_case(a.symbol(), a.aromatic);
    t.h_count = a.total_h();
    t.charge = a.formal_charge;
    t.chirality = a.chirality;
    t.in_ring = a.in_ring;
    for (const chem::Neighbor &nb: mol.neighbors(a.index)) {
      const chem::Atom &n = mol.atom(nb.atom);
      if (n.atomic_number == 1)
        continue;
      t.neighbors.push_back(aromatic_case(n.symbol(), n.aromatic));
    }
    canonicalize_neighbors(t.neighbors);
    seq.tokens.emplace_back(std::move(t));
  }
  return seq;
}

AisSequence smiles_to_ais(std::string_view smiles) {
  return molecule_to_ais(chem::parse_smiles(smiles));
}

std::string ais_to_smiles(const AisSequence &seq) {
  std::vector<const AtomToken *> atoms;
  for (const auto &t: seq.tokens) {
    if (const auto *a = std::get_if<AtomToken>(&t)) {
      if (resolve_symbol(a->element).first == 0)
        malformed(render(*a), "unknown element '" + a->element + "'");
      if (a->h_count < 0)
        malformed(render(*a), "negative hydrogen count");
      atoms.push_back(a);
    }
  }

  std::vector<char> bracket(atoms.size(), 0);
  for (std::size_t i = 0; i < atoms.size(); ++i)
    bracket[i] = !bare_allowed(*atoms[i]);

  auto assemble = [&]() {
    std::string out;
    std::size_t k = 0;
    for (const auto &t: seq.tokens) {
      if (const auto *a = std::get_if<AtomToken>(&t)) {
        out += bracket[k] ? bracket_text(*a) : a->element;
        ++k;
      } else {
        out += std::get<StructuralToken>(t).symbol;
      }
    }
    return out;
  };

  // Bracketing an atom never changes another atom's implicit hydrogens, so
  // one correction pass settles every atom.
  std::string smiles = assemble();
  const chem::Molecule mol = chem::parse_smiles(smiles, { .strict_valence = false });
  bool changed = false;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    if (!bracket[i] && mol.atom(static_cast<int>(i)).total_h() != atoms[i]->h_count) {
      bracket[i] = 1;
      changed = true;
    }
  }
  if (changed)
    smiles = assemble();
  return smiles;
}

std::vector<std::string> smiles_atom_tokenize(std::string_view smiles) {
  chem::parse_smiles(smiles);
  std::vector<std::string> out;
  for (const chem::LexToken &lt: chem::lex_smiles(smiles))
    out.emplace_back(smiles.substr(lt.span.begin, lt.span.size()));
  return out;
}

}  // namespace aisens::ais
