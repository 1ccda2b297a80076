//
// Project aisens - Copyright 2026 The aisens Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <iostream>

#include "aisens/cli/cli.hpp"

int main(int argc, char **argv) {
  return aisens::cli::run_cli(argc, argv, std::cout, std::cerr);
}
