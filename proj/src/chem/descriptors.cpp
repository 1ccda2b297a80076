//
// Project aisens - Copyright 2026 The aisens Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "aisens/chem/descriptors.hpp"

#include <string>

#include "aisens/chem/element.hpp"
#include "aisens/error.hpp"

namespace aisens::chem {

double mol_weight(const Molecule &m) {
  double total = 0;
  for (const Atom &a: m.atoms()) {
    if (a.isotope) {
      total += *a.isotope;
    } else {
      const Element &e = element_by_number(a.atomic_number);
      if (!e.weight)
        throw UnknownElement("no standard atomic weight for "
                             + std::string(e.symbol));
      total += *e.weight;
    }
    total += kHydrogenMass * a.total_h();
  }
  return total;
}

}  // namespace aisens::chem
