//
// Project aisens - Copyright 2026 The aisens Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef AISENS_CHEM_ISOMORPHISM_HPP_
#define AISENS_CHEM_ISOMORPHISM_HPP_

#include <optional>
#include <vector>

#include "aisens/chem/molecule.hpp"

namespace aisens::chem {

struct IsomorphismOptions {
  bool compare_chirality = false;
};

/// Finds an atom mapping a -> b preserving element, aromaticity, charge,
/// isotope, total H count and bond orders. Returns nullopt when none exists.
std::optional<std::vector<int>>
find_isomorphism(const Molecule &a, const Molecule &b,
                 const IsomorphismOptions &opts = {});

inline bool are_isomorphic(const Molecule &a, const Molecule &b,
                           const IsomorphismOptions &opts = {}) {
  return find_isomorphism(a, b, opts).has_value();
}

}  // namespace aisens::chem

#endif  // AISENS_CHEM_ISOMORPHISM_HPP_
