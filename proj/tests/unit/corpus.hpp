//
// Project aisens - Copyright 2026 The aisens Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef AISENS_TESTS_CORPUS_HPP_
#define AISENS_TESTS_CORPUS_HPP_

#include <fstream>
#include <string>
#include <vector>

namespace aisens::test {

struct CorpusRow {
  std::string smiles;
  double molwt = 0;
};

// First `limit` rows of the bundled corpus (smiles,qed,logP,MolWt).
inline std::vector<CorpusRow> corpus_rows(std::size_t limit) {
  std::ifstream in(AISENS_DATA_DIR "/zinc_style_60k.csv");
  std::vector<CorpusRow> out;
  std::string line;
  std::getline(in, line);
  while (out.size() < limit && std::getline(in, line)) {
    const auto c1 = line.find(',');
    const auto c3 = line.rfind(',');
    out.push_back({ line.substr(0, c1), std::stod(line.substr(c3 + 1)) });
  }
  return out;
}

}  // namespace aisens::test

#endif  // AISENS_TESTS_CORPUS_HPP_
