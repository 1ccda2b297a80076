//
// Project aisens - Copyright 2026 The aisens Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "aisens/chem/isomorphism.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <tuple>
#include <vector>

namespace aisens::chem {
namespace {

using Color = std::int64_t;

std::vector<Color> initial_colors(const Molecule &m,
                                  const IsomorphismOptions &opts) {
  std::vector<Color> c;
  c.reserve(static_cast<std::size_t>(m.num_atoms()));
  for (const Atom &a: m.atoms()) {
    Color v = a.atomic_number;
    v = v * 2 + (a.aromatic ? 1 : 0);
    v = v * 64 + (a.formal_charge + 32);
    v = v * 1024 + a.isotope.value_or(0) % 1024;
    v = v * 16 + std::min(a.total_h(), 15);
    v = v * 16 + std::min(static_cast<int>(m.neighbors(a.index).size()), 15);
    if (opts.compare_chirality)
      v = v * 3 + static_cast<int>(a.chirality);
    c.push_back(v);
  }
  return c;
}

// Weisfeiler-Lehman refinement on the disjoint union so colors are
// comparable between the two graphs.
void refine(const Molecule &a, const Molecule &b, std::vector<Color> &ca,
            std::vector<Color> &cb) {
  const int rounds = std::max(a.num_atoms(), 1);
  for (int r = 0; r < rounds; ++r) {
    using Sig = std::pair<Color, std::vector<std::pair<int, Color>>>;
    auto signature = [](const Molecule &m, const std::vector<Color> &c, int i) {
      Sig s;
      s.first = c[static_cast<std::size_t>(i)];
      for (const Neighbor &nb: m.neighbors(i))
        s.second.emplace_back(static_cast<int>(m.bond(nb.bond).order),
                              c[static_cast<std::size_t>(nb.atom)]);
      std::sort(s.second.begin(), s.second.end());
      return s;
    };
    std::vector<Sig> sa, sb;
    for (int i = 0; i < a.num_atoms(); ++i)
      sa.push_back(signature(a, ca, i));
    for (int i = 0; i < b.num_atoms(); ++i)
      sb.push_back(signature(b, cb, i));

    std::map<Sig, Color> ids;
    for (const Sig &s: sa)
      ids.emplace(s, 0);
    for (const Sig &s: sb)
      ids.emplace(s, 0);
    Color next = 0;
    for (auto &[sig, id]: ids)
      id = next++;

    std::vector<Color> na, nbv;
    for (const Sig &s: sa)
      na.push_back(ids[s]);
    for (const Sig &s: sb)
      nbv.push_back(ids[s]);

    auto classes = [](const std::vector<Color> &v) {
      std::vector<Color> t = v;
      std::sort(t.begin(), t.end());
      return std::unique(t.begin(), t.end()) - t.begin();
    };
    const bool stable = classes(na) == classes(ca) && classes(nbv) == classes(cb);
    ca = std::move(na);
    cb = std::move(nbv);
    if (stable)
      break;
  }
}

class Matcher {
public:
  Matcher(const Molecule &a, const Molecule &b, std::vector<Color> ca,
          std::vector<Color> cb)
      : a_(a), b_(b), ca_(std::move(ca)), cb_(std::move(cb)),
        map_(static_cast<std::size_t>(a.num_atoms()), -1),
        used_(static_cast<std::size_t>(b.num_atoms()), 0) {
    // Visit atoms of `a` in BFS order so each new atom (after the first of
    // its component) is adjacent to a mapped one.
    std::vector<char> seen(static_cast<std::size_t>(a.num_atoms()), 0);
    for (int root = 0; root < a.num_atoms(); ++root) {
      if (seen[static_cast<std::size_t>(root)])
        continue;
      seen[static_cast<std::size_t>(root)] = 1;
      std::size_t head = order_.size();
      order_.push_back(root);
      while (head < order_.size()) {
        const int u = order_[head++];
        for (const Neighbor &nb: a.neighbors(u)) {
          if (!seen[static_cast<std::size_t>(nb.atom)]) {
            seen[static_cast<std::size_t>(nb.atom)] = 1;
            order_.push_back(nb.atom);
          }
        }
      }
    }
  }

  bool run() { return extend(0); }
  std::vector<int> mapping() const { return map_; }

private:
  bool feasible(int u, int v) const {
    if (ca_[static_cast<std::size_t>(u)] != cb_[static_cast<std::size_t>(v)])
      return false;
    for (const Neighbor &nb: a_.neighbors(u)) {
      const int mv = map_[static_cast<std::size_t>(nb.atom)];
      if (mv < 0)
        continue;
      const int bb = b_.find_bond(v, mv);
      if (bb < 0 || b_.bond(bb).order != a_.bond(nb.bond).order)
        return false;
    }
    return true;
  }

  bool extend(std::size_t depth) {
    if (depth == order_.size())
      return true;
    const int u = order_[depth];

    // Candidates: neighbors of the image of a mapped neighbor, if any.
    int anchor = -1;
    for (const Neighbor &nb: a_.neighbors(u)) {
      if (map_[static_cast<std::size_t>(nb.atom)] >= 0) {
        anchor = map_[static_cast<std::size_t>(nb.atom)];
        break;
      }
    }
    auto attempt = [&](int v) {
      if (used_[static_cast<std::size_t>(v)] || !feasible(u, v))
        return false;
      map_[static_cast<std::size_t>(u)] = v;
      used_[static_cast<std::size_t>(v)] = 1;
      if (extend(depth + 1))
        return true;
      map_[static_cast<std::size_t>(u)] = -1;
      used_[static_cast<std::size_t>(v)] = 0;
      return false;
    };
    if (anchor >= 0) {
      for (const Neighbor &nb: b_.neighbors(anchor)) {
        if (attempt(nb.atom))
          return true;
      }
      return false;
    }
    for (int v = 0; v < b_.num_atoms(); ++v) {
      if (attempt(v))
        return true;
    }
    return false;
  }

  const Molecule &a_;
  const Molecule &b_;
  std::vector<Color> ca_, cb_;
  std::vector<int> map_;
  std::vector<char> used_;
  std::vector<int> order_;
};

}  // namespace

std::optional<std::vector<int>>
find_isomorphism(const Molecule &a, const Molecule &b,
                 const IsomorphismOptions &opts) {
  if (a.num_atoms() != b.num_atoms() || a.num_bonds() != b.num_bonds())
    return std::nullopt;

  std::vector<Color> ca = initial_colors(a, opts);
  std::vector<Color> cb = initial_colors(b, opts);
  refine(a, b, ca, cb);

  std::vector<Color> sa = ca, sb = cb;
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  if (sa != sb)
    return std::nullopt;

  Matcher matcher(a, b, std::move(ca), std::move(cb));
  if (!matcher.run())
    return std::nullopt;
  return matcher.mapping();
}

}  // namespace aisens::chem
