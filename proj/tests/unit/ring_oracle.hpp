//
// Project aisens - Copyright 2026 The aisens Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef AISENS_TESTS_RING_ORACLE_HPP_
#define AISENS_TESTS_RING_ORACLE_HPP_

#include <functional>
#include <vector>

#include "aisens/chem/molecule.hpp"

namespace aisens::test {

// Bond (u, v) lies on a cycle of length <= max_len iff some simple path
// from u to v avoiding that bond has at most max_len - 1 edges.
inline bool on_short_cycle(const chem::Molecule &m, int bond, int max_len) {
  const int u = m.bond(bond).a, v = m.bond(bond).b;
  std::vector<char> used(static_cast<std::size_t>(m.num_atoms()), 0);
  std::function<bool(int, int)> dfs = [&](int at, int depth) {
    if (at == v)
      return depth >= 2;
    if (depth >= max_len - 1)
      return false;
    used[static_cast<std::size_t>(at)] = 1;
    for (const chem::Neighbor &n: m.neighbors(at)) {
      if (n.bond == bond || used[static_cast<std::size_t>(n.atom)])
        continue;
      if (dfs(n.atom, depth + 1)) {
        used[static_cast<std::size_t>(at)] = 0;
        return true;
      }
    }
    used[static_cast<std::size_t>(at)] = 0;
    return false;
  };
  return dfs(u, 0);
}

}  // namespace aisens::test

#endif  // AISENS_TESTS_RING_ORACLE_HPP_
