//
// Project aisens - Copyright 2026 The aisens Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef AISENS_CHEM_DESCRIPTORS_HPP_
#define AISENS_CHEM_DESCRIPTORS_HPP_

#include "aisens/chem/molecule.hpp"

namespace aisens::chem {

inline constexpr double kHydrogenMass = 1.008;

/// Average molecular weight in g/mol. Atoms with an isotope label use the
/// mass number as their mass. Throws UnknownElement for elements without a
/// standard atomic weight.
double mol_weight(const Molecule &m);

}  // namespace aisens::chem

#endif  // AISENS_CHEM_DESCRIPTORS_HPP_
