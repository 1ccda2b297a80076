//
// Project aisens - Copyright 2026 The aisens Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef AISENS_TESTS_SYNTHETIC_HPP_
#define AISENS_TESTS_SYNTHETIC_HPP_

#include "aisens/data/dataset.hpp"
#include "aisens/util/random.hpp"

namespace aisens::test {

// Random sequences over ids 4..9 (200 train, 40 valid, 40 test); the target
// is 0.1 x the count of marker id 4.
struct Synthetic {
  data::EncodedSet train, valid, test;
};

inline Synthetic synthetic_task(std::uint64_t seed = 77) {
  util::Rng rng(seed);
  const int marker = 4;
  Synthetic s;
  for (auto *set: { &s.train, &s.valid, &s.test }) {
    set->max_len = 20;
    const int n = set == &s.train ? 200 : 40;
    for (int r = 0; r < n; ++r) {
      const int len = 4 + static_cast<int>(util::uniform_index(rng, 17));
      int count = 0;
      for (int t = 0; t < 20; ++t) {
        int id = 0;
        if (t == 0)
          id = 2;
        else if (t == len - 1)
          id = 3;
        else if (t < len)
          id = 4 + static_cast<int>(util::uniform_index(rng, 6));
        count += id == marker;
        set->ids.push_back(id);
      }
      set->lengths.push_back(len);
      set->targets.push_back(0.1 * count);
      set->record_index.push_back(static_cast<std::size_t>(r));
    }
  }
  return s;
}

}  // namespace aisens::test

#endif  // AISENS_TESTS_SYNTHETIC_HPP_
