//
// Project aisens - Copyright 2026 The aisens Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef AISENS_CHEM_ELEMENT_HPP_
#define AISENS_CHEM_ELEMENT_HPP_

#include <optional>
#include <span>
#include <string_view>

namespace aisens::chem {

struct Element {
  int atomic_number;
  std::string_view symbol;
  // Standard atomic weight in g/mol; empty for elements without one.
  std::optional<double> weight;
};

/// Looks up an element by its case-sensitive symbol ("Cl", not "CL").
const Element *find_element(std::string_view symbol) noexcept;

const Element &element_by_number(int atomic_number);

/// Allowed valences for organic-subset atoms, lowest first. Empty for
/// elements outside the subset.
std::span<const int> default_valences(int atomic_number) noexcept;

/// B, C, N, O, P, S, F, Cl, Br, I.
bool is_organic_subset(int atomic_number) noexcept;

/// Elements that may be written lowercase: B, C, N, O, P, S, Se, As.
bool can_be_aromatic(int atomic_number) noexcept;

}  // namespace aisens::chem

#endif  // AISENS_CHEM_ELEMENT_HPP_
