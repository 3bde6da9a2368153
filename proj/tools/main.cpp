// Copyright 2026 The Stylekit Authors
// SPDX-License-Identifier: Apache-2.0

#include <iostream>

#include "stylekit/cli/commands.hpp"

int main(int argc, char** argv) {
  return stylekit::cli::run_cli(argc, argv, std::cout, std::cerr);
}
