// Copyright 2026 The qri Authors.
// SPDX-License-Identifier: Apache-2.0

#include <iostream>

#include "qri/cli/cli.hpp"

int main(int argc, char **argv)
{
  return qri::cli::Run(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
